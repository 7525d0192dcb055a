//! Acceptance criteria 1-10, one PASS/FAIL line each. Exits nonzero on any failure.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_compound::compounding::{cg_reduction_deviation, generalized_cg_deviation};
use spin_compound::matrix::{representation_3d, representation_4d};
use spin_compound::*;

/// Agreement required of every analytic comparison.
const TOL: f64 = 1e-12;
/// Required closeness of the grid maximum of |S| to 2√2.
const CHSH_MAX_TOL: f64 = 1e-6;
/// Allowed excess of any grid value of |S| over 2√2.
const CHSH_BOUND_SLACK: f64 = 1e-9;
/// Width of the Monte Carlo acceptance band in standard deviations.
const SIGMAS: f64 = 5.0;
/// Monte Carlo sample size.
const SAMPLES: u64 = 100_000;
/// Grid points per setting in the CHSH scan.
const CHSH_STEPS: usize = 32;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn random_dir(rng: &mut ChaCha8Rng) -> Direction {
    Direction::random(rng)
}

fn within(err: f64, tol: f64) -> Verdict {
    verdict(err <= tol, format!("max error {err:.3e} (tol {tol:.0e})"))
}

fn criterion_1() -> Verdict {
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let c = random_dir(&mut rng);
        let state = CompoundState::singlet(random_dir(&mut rng));
        let q = joint_probabilities(state, c, c).expect("valid probabilities");
        worst = worst
            .max(q[JointOutcome::UP_UP].abs())
            .max(q[JointOutcome::DOWN_DOWN].abs())
            .max((q[JointOutcome::UP_DOWN] - 0.5).abs())
            .max((q[JointOutcome::DOWN_UP] - 0.5).abs());
    }
    within(worst, TOL)
}

fn criterion_2() -> Verdict {
    let mut rng = rng(2);
    let r = correlation_values();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (c1, c2) = (random_dir(&mut rng), random_dir(&mut rng));
        let target = -direction_dot(c1, c2);
        let state = CompoundState::singlet(random_dir(&mut rng));
        let analytic = singlet_correlation(c1, c2).value;
        let matrix = representation_4d(state, &r, c1, c2)
            .expectation()
            .expect("Hermitian");
        let weighted = joint_probabilities(state, c1, c2)
            .expect("valid")
            .weighted_sum(r.as_array());
        for v in [analytic, matrix, weighted] {
            worst = worst.max((v - target).abs());
        }
    }
    within(worst, TOL)
}

fn random_triplet(rng: &mut ChaCha8Rng) -> CompoundState {
    let m = TripletProjection::ALL[rng.gen_range(0..3)];
    CompoundState::triplet(m, random_dir(rng))
}

fn criterion_3() -> Verdict {
    let mut rng = rng(3);
    let (mut amp, mut norm) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let state = random_triplet(&mut rng);
        let (c1, c2) = (random_dir(&mut rng), random_dir(&mut rng));
        let mut total = 0.0;
        for out in JointOutcome::ALL {
            let closed = triplet_amplitude(state.projection(), state.axis(), out, c1, c2);
            amp = amp.max((closed - compound_amplitude_oracle(state, out, c1, c2)).norm());
            total += closed.norm_sqr();
        }
        norm = norm.max((total - 1.0).abs());
    }
    verdict(
        amp <= TOL && norm <= TOL,
        format!("amplitude error {amp:.3e}, normalization error {norm:.3e} (tol {TOL:.0e})"),
    )
}

fn criterion_4() -> Verdict {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let state = random_triplet(&mut rng);
        let (c1, c2) = (random_dir(&mut rng), random_dir(&mut rng));
        let r = if i % 2 == 0 {
            correlation_values()
        } else {
            OutcomeValues::new([(); 4].map(|_| rng.gen_range(-2.0..2.0))).expect("finite")
        };
        let direct = joint_probabilities(state, c1, c2)
            .expect("valid")
            .weighted_sum(r.as_array());
        let three = representation_3d(state, &r, c1, c2)
            .expect("triplet")
            .expectation()
            .expect("Hermitian");
        let four = representation_4d(state, &r, c1, c2)
            .expectation()
            .expect("Hermitian");
        let scalar = scalar_representation(state, &r, c1, c2)
            .expectation()
            .expect("Hermitian");
        for v in [three, four, scalar] {
            worst = worst.max((v - direct).abs());
        }
    }
    within(worst, TOL)
}

/// Both halves of criterion 5 under a given convention: the collinear k̂ limit and
/// axis independence of the generalized coefficients over `axes`.
fn cg_limits(convention: PhaseConvention, axes: &[Direction]) -> (f64, f64) {
    let limit = cg_reduction_deviation(convention);
    let independence = axes
        .iter()
        .map(|&a| generalized_cg_deviation(convention, a))
        .fold(0.0, f64::max);
    (limit, independence)
}

fn random_axes(criterion: u64) -> Vec<Direction> {
    let mut rng = rng(criterion);
    (0..1000).map(|_| random_dir(&mut rng)).collect()
}

fn criterion_5() -> Verdict {
    let entries = CgTable.entries().len();
    let (limit, independence) = cg_limits(PhaseConvention::Accepted, &random_axes(5));
    verdict(
        limit <= TOL && independence <= TOL,
        format!(
            "{entries} table entries, k-hat limit error {limit:.3e}, axis dependence {independence:.3e} (tol {TOL:.0e})"
        ),
    )
}

fn criterion_6() -> Verdict {
    let axes = random_axes(5);
    let (acc_limit, acc_ind) = cg_limits(PhaseConvention::Accepted, &axes);
    let (rej_limit, rej_ind) = cg_limits(PhaseConvention::Rejected, &axes);
    let accepted_passes = acc_limit <= TOL && acc_ind <= TOL;
    let rejected_fails = rej_limit > TOL || rej_ind > TOL;
    verdict(
        accepted_passes && rejected_fails,
        format!(
            "accepted: limit {acc_limit:.1e}, axis dependence {acc_ind:.1e}; rejected: limit {rej_limit:.1e}, axis dependence {rej_ind:.3}"
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = rng(7);
    let z = Direction::Z;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let t1 = (PI * i as f64 / 99.0).min(PI);
        let p1 = rng.gen_range(0.0..TAU);
        let c1 = Direction::new(t1, p1).expect("in range");
        let c2 = random_dir(&mut rng);
        let (t2, p2) = (c2.theta(), c2.phi());
        let plus = t1.cos() * t2.cos();
        let zero = -t1.cos() * t2.cos() + t1.sin() * t2.sin() * (p2 - p1).cos();
        worst = worst
            .max((triplet_correlation(TripletProjection::Plus, z, c1, c2).value - plus).abs())
            .max((triplet_correlation(TripletProjection::Minus, z, c1, c2).value - plus).abs())
            .max((triplet_correlation(TripletProjection::Zero, z, c1, c2).value - zero).abs())
            .max(
                (triplet_correlation(TripletProjection::Plus, z, c1, c1).value - t1.cos().powi(2))
                    .abs(),
            )
            .max(
                (triplet_correlation(TripletProjection::Minus, z, c1, c1).value - t1.cos().powi(2))
                    .abs(),
            )
            .max(
                (triplet_correlation(TripletProjection::Zero, z, c1, c1).value + (2.0 * t1).cos())
                    .abs(),
            );
    }
    within(worst, TOL)
}

fn criterion_8() -> Verdict {
    let mut rng = rng(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_dir(&mut rng);
        let (c1, c2) = (random_dir(&mut rng), random_dir(&mut rng));
        for state in [
            CompoundState::singlet(a),
            CompoundState::triplet(TripletProjection::Zero, a),
        ] {
            for sub in [Subsystem::First, Subsystem::Second] {
                for m in SpinHalf::ALL {
                    let p = marginal_probability(state, sub, m, c1, c2).expect("valid");
                    worst = worst.max((p - 0.5).abs());
                }
            }
        }
        let (t, p, t1, p1) = (a.theta(), a.phi(), c1.theta(), c1.phi());
        let expect = (t / 2.0).cos().powi(2) * (t1 / 2.0).cos().powi(2)
            + (t / 2.0).sin().powi(2) * (t1 / 2.0).sin().powi(2)
            + 0.5 * t.sin() * t1.sin() * (p1 - p).cos();
        let got = marginal_probability(
            CompoundState::triplet(TripletProjection::Plus, a),
            Subsystem::First,
            SpinHalf::Up,
            c1,
            c2,
        )
        .expect("valid");
        worst = worst.max((got - expect).abs());
    }
    within(worst, TOL)
}

fn criterion_9() -> Verdict {
    let scan = chsh_scan(CompoundState::singlet(Direction::Z), CHSH_STEPS).expect("nonempty grid");
    let bound = 2.0 * SQRT_2;
    let max_ok = (scan.max_abs - bound).abs() <= CHSH_MAX_TOL;
    let bound_ok = scan.max_abs <= bound + CHSH_BOUND_SLACK;
    verdict(
        max_ok && bound_ok,
        format!(
            "{CHSH_STEPS}^4 grid: max |S| = {:.12} at {:?}, 2*sqrt(2) = {bound:.12} (tol {CHSH_MAX_TOL:.0e}, slack {CHSH_BOUND_SLACK:.0e})",
            scan.max_abs, scan.settings
        ),
    )
}

fn criterion_10() -> Verdict {
    let mut rng = rng(10);
    let mut worst_z = 0.0f64;
    let mut reproducible = true;
    let mut impossible_drawn = false;
    for k in 0..10u64 {
        let i = rng.gen_range(0..4);
        let state = CompoundState::all(random_dir(&mut rng))[i];
        let (c1, c2) = (random_dir(&mut rng), random_dir(&mut rng));
        let seed = 1000 + k;
        let counts = sample_outcomes(state, c1, c2, SAMPLES, seed).expect("valid sample");
        reproducible &=
            counts == sample_outcomes(state, c1, c2, SAMPLES, seed).expect("valid sample");

        let q = joint_probabilities(state, c1, c2).expect("valid");
        let n = SAMPLES as f64;
        for out in JointOutcome::ALL {
            let p = q[out];
            let sigma = (p * (1.0 - p) / n).sqrt();
            let dev = (counts.frequency(out) - p).abs();
            if sigma == 0.0 {
                impossible_drawn |= dev > 0.0;
            } else {
                worst_z = worst_z.max(dev / sigma);
            }
        }
        let e = correlation(state, c1, c2).value;
        let sigma = ((1.0 - e * e) / n).sqrt();
        if sigma > 0.0 {
            worst_z = worst_z.max((counts.empirical_correlation - e).abs() / sigma);
        }
    }
    verdict(
        worst_z <= SIGMAS && reproducible && !impossible_drawn,
        format!("worst deviation {worst_z:.2} sigma (band {SIGMAS}), rerun bit-identical: {reproducible}"),
    )
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 10] = [
        ("singlet perfect anticorrelation", criterion_1),
        ("singlet correlation identity", criterion_2),
        ("triplet oracle equivalence", criterion_3),
        ("representation agreement", criterion_4),
        ("Clebsch-Gordan limits", criterion_5),
        ("phase-convention discrimination", criterion_6),
        ("standard limits", criterion_7),
        ("marginals", criterion_8),
        ("CHSH", criterion_9),
        ("Monte Carlo consistency", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.passed {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
