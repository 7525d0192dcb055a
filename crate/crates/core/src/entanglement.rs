//! The ±1 correlation observable, CHSH combinations and a seeded Monte Carlo
//! sampler of joint outcomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::OutcomeValues;
use crate::probabilities::joint_probabilities;
use crate::types::{CompoundState, Direction, JointOutcome, TotalSpin, TripletProjection};

/// Name of the generator behind [`sample_outcomes`], recorded in every report.
pub const RNG_NAME: &str = "chacha8";

/// r = +1 when both subsystems agree, −1 otherwise.
pub fn correlation_values() -> OutcomeValues {
    OutcomeValues::from_fn(|o| f64::from(o.sign_product())).expect("±1 values are finite")
}

/// ⟨R⟩ for the correlation observable.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct CorrelationResult {
    pub value: f64,
}

impl CorrelationResult {
    fn new(value: f64) -> Self {
        debug_assert!(
            value.abs() <= 1.0 + 1e-12,
            "correlation {value} outside [-1, 1]"
        );
        Self { value }
    }
}

/// −[cos(θ₂ − θ₁) − 2 sinθ₁ sinθ₂ sin²((φ₂ − φ₁)/2)], i.e. −ĉ₁·ĉ₂.
pub fn singlet_correlation(c1: Direction, c2: Direction) -> CorrelationResult {
    let (t1, p1, t2, p2) = (c1.theta(), c1.phi(), c2.theta(), c2.phi());
    let v = (t2 - t1).cos() - 2.0 * t1.sin() * t2.sin() * ((p2 - p1) / 2.0).sin().powi(2);
    CorrelationResult::new(-v)
}

/// ⟨R⟩ for the triplet state with projection `m` along `a`.
pub fn triplet_correlation(
    m: TripletProjection,
    a: Direction,
    c1: Direction,
    c2: Direction,
) -> CorrelationResult {
    let (theta, phi) = (a.theta(), a.phi());
    let (t1, p1, t2, p2) = (c1.theta(), c1.phi(), c2.theta(), c2.phi());
    let (st, ct) = theta.sin_cos();
    let x = t1.sin() * t2.sin() * (phi - p2).cos() * (phi - p1).cos();
    let y1 = t1.sin() * t2.cos() * (phi - p1).cos();
    let y2 = t2.sin() * t1.cos() * (phi - p2).cos();
    let v = match m {
        TripletProjection::Plus | TripletProjection::Minus => {
            ct * ct * t1.cos() * t2.cos() + st * st * x + st * ct * (y1 + y2)
        }
        TripletProjection::Zero => {
            -(2.0 * theta).cos() * t1.cos() * t2.cos() + t1.sin() * t2.sin() * (p2 - p1).cos()
                - 2.0 * st * st * x
                - (2.0 * theta).sin() * (y1 + y2)
        }
    };
    CorrelationResult::new(v)
}

/// Closed-form ⟨R⟩ for any compound state.
pub fn correlation(state: CompoundState, c1: Direction, c2: Direction) -> CorrelationResult {
    match state.spin() {
        TotalSpin::Singlet => singlet_correlation(c1, c2),
        TotalSpin::Triplet => triplet_correlation(state.projection(), state.axis(), c1, c2),
    }
}

/// E(a1,b1) + E(a1,b2) + E(a2,b1) − E(a2,b2), with `a` on subsystem 1 and `b` on subsystem 2.
pub fn chsh(
    state: CompoundState,
    a1: Direction,
    a2: Direction,
    b1: Direction,
    b2: Direction,
) -> f64 {
    let e = |a, b| correlation(state, a, b).value;
    e(a1, b1) + e(a1, b2) + e(a2, b1) - e(a2, b2)
}

/// Best CHSH value found on a coplanar grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshScan {
    pub steps: usize,
    /// Value with the largest magnitude.
    pub value: f64,
    /// In-plane angles (a1, a2, b1, b2), radians.
    pub settings: [f64; 4],
    /// Largest |S| seen anywhere on the grid.
    pub max_abs: f64,
}

/// Scans every combination of `steps` equally spaced in-plane angles for each of
/// the four detector settings.
pub fn chsh_scan(state: CompoundState, steps: usize) -> Result<ChshScan> {
    if steps == 0 {
        return Err(Error::EmptySample);
    }
    let angles: Vec<f64> = (0..steps)
        .map(|i| std::f64::consts::TAU * i as f64 / steps as f64)
        .collect();
    let dirs = angles
        .iter()
        .map(|&t| Direction::coplanar(t))
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<Vec<f64>> = dirs
        .iter()
        .map(|&a| {
            dirs.iter()
                .map(|&b| correlation(state, a, b).value)
                .collect()
        })
        .collect();

    let mut best = ChshScan {
        steps,
        value: 0.0,
        settings: [0.0; 4],
        max_abs: -1.0,
    };
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                for l in 0..steps {
                    let s = table[i][k] + table[i][l] + table[j][k] - table[j][l];
                    if s.abs() > best.max_abs {
                        best.max_abs = s.abs();
                        best.value = s;
                        best.settings = [angles[i], angles[j], angles[k], angles[l]];
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Outcome tallies from [`sample_outcomes`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleCounts {
    pub n: u64,
    pub seed: u64,
    pub rng: &'static str,
    #[serde(serialize_with = "counts_as_map")]
    pub counts: [u64; 4],
    pub empirical_correlation: f64,
}

fn counts_as_map<S: Serializer>(counts: &[u64; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(4))?;
    for (out, c) in JointOutcome::ALL.iter().zip(counts) {
        map.serialize_entry(out.label(), c)?;
    }
    map.end()
}

impl SampleCounts {
    pub fn get(&self, out: JointOutcome) -> u64 {
        self.counts[out.index()]
    }

    pub fn frequency(&self, out: JointOutcome) -> f64 {
        self.get(out) as f64 / self.n as f64
    }
}

/// Draws `n` joint outcomes by inverse CDF over (++, +−, −+, −−).
pub fn sample_outcomes(
    state: CompoundState,
    c1: Direction,
    c2: Direction,
    n: u64,
    seed: u64,
) -> Result<SampleCounts> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let p = joint_probabilities(state, c1, c2)?.as_array();
    let mut cdf = [0.0; 4];
    let mut acc = 0.0;
    for (c, pi) in cdf.iter_mut().zip(p) {
        acc += pi;
        *c = acc;
    }
    // Rounding can leave the last cumulative value just under 1; draws beyond it
    // go to the last outcome that can actually occur.
    let fallback = (0..4).rev().find(|&i| p[i] > 0.0).unwrap_or(3);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let u: f64 = rng.gen();
        let idx = (0..4)
            .find(|&i| u < cdf[i] && p[i] > 0.0)
            .unwrap_or(fallback);
        counts[idx] += 1;
    }

    let r = correlation_values();
    let empirical_correlation = JointOutcome::ALL
        .iter()
        .map(|&o| r.get(o) * counts[o.index()] as f64)
        .sum::<f64>()
        / n as f64;
    Ok(SampleCounts {
        n,
        seed,
        rng: RNG_NAME,
        counts,
        empirical_correlation,
    })
}

/// Seed used for batch `index` of a run started from `seed`.
pub fn batch_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}

/// Runs `batches` independent samples of size `n` in parallel, batch `i` seeded
/// with [`batch_seed`]`(seed, i)`.
pub fn sample_batches(
    state: CompoundState,
    c1: Direction,
    c2: Direction,
    n: u64,
    seed: u64,
    batches: u64,
) -> Result<Vec<SampleCounts>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..batches)
            .map(|i| scope.spawn(move || sample_outcomes(state, c1, c2, n, batch_seed(seed, i))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::representation_4d;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

    fn dir(t: f64, p: f64) -> Direction {
        Direction::new(t, p).unwrap()
    }

    #[test]
    fn correlation_values_signs() {
        let r = correlation_values();
        assert_eq!(r.get(JointOutcome::UP_UP), 1.0);
        assert_eq!(r.get(JointOutcome::DOWN_UP), -1.0);
        assert_eq!(r.as_array().iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn singlet_examples() {
        let c = dir(0.8, 3.0);
        assert!((singlet_correlation(c, c).value + 1.0).abs() < 1e-12);
        assert!((singlet_correlation(Direction::Z, dir(PI, 0.0)).value - 1.0).abs() < 1e-12);
        let v = singlet_correlation(dir(FRAC_PI_2, 0.0), dir(FRAC_PI_2, FRAC_PI_4)).value;
        assert!((v + FRAC_PI_4.cos()).abs() < 1e-12);
        let rep = representation_4d(
            CompoundState::singlet(Direction::Z),
            &correlation_values(),
            dir(FRAC_PI_2, 0.0),
            dir(FRAC_PI_2, FRAC_PI_4),
        );
        assert!((rep.expectation().unwrap() - v).abs() < 1e-12);
    }

    #[test]
    fn triplet_limits_at_z() {
        let z = Direction::Z;
        let (t1, p1, t2, p2) = (0.6, 1.0, 2.0, 2.5);
        let (c1, c2) = (dir(t1, p1), dir(t2, p2));
        let plus = triplet_correlation(TripletProjection::Plus, z, c1, c2).value;
        assert!((plus - t1.cos() * t2.cos()).abs() < 1e-12);
        let zero = triplet_correlation(TripletProjection::Zero, z, c1, c2).value;
        assert!(
            (zero - (-t1.cos() * t2.cos() + t1.sin() * t2.sin() * (p2 - p1).cos())).abs() < 1e-12
        );
        let same = triplet_correlation(TripletProjection::Zero, z, c1, c1).value;
        assert!((same + (2.0 * t1).cos()).abs() < 1e-12);
    }

    #[test]
    fn chsh_all_equal_is_minus_two() {
        let c = dir(1.0, 1.0);
        assert!((chsh(CompoundState::singlet(Direction::Z), c, c, c, c) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn chsh_maximal_settings() {
        let s = CompoundState::singlet(Direction::Z);
        let d = |t| Direction::coplanar(t).unwrap();
        let v = chsh(s, d(FRAC_PI_2), d(0.0), d(FRAC_PI_4), d(3.0 * FRAC_PI_4));
        assert!((v + 2.0 * SQRT_2).abs() < 1e-9);
        // In the other order the four terms cancel.
        let v = chsh(s, d(0.0), d(FRAC_PI_2), d(FRAC_PI_4), d(3.0 * FRAC_PI_4));
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn orthogonal_detectors_do_not_correlate() {
        let v = singlet_correlation(
            Direction::coplanar(0.3).unwrap(),
            Direction::coplanar(0.3 + FRAC_PI_2).unwrap(),
        );
        assert!(v.value.abs() < 1e-12);
    }

    #[test]
    fn scan_finds_tsirelson_bound() {
        let scan = chsh_scan(CompoundState::singlet(Direction::Z), 16).unwrap();
        assert!((scan.max_abs - 2.0 * SQRT_2).abs() < 1e-9);
        assert!(chsh_scan(CompoundState::singlet(Direction::Z), 0).is_err());
    }

    #[test]
    fn sampler_never_draws_impossible_outcomes() {
        let c = dir(1.2, 0.4);
        let s = sample_outcomes(CompoundState::singlet(Direction::Z), c, c, 20_000, 7).unwrap();
        assert_eq!(s.get(JointOutcome::UP_UP), 0);
        assert_eq!(s.get(JointOutcome::DOWN_DOWN), 0);
        assert_eq!(s.counts.iter().sum::<u64>(), 20_000);
        assert_eq!(s.empirical_correlation, -1.0);
    }

    #[test]
    fn sampler_is_deterministic() {
        let (c1, c2) = (dir(0.3, 1.0), dir(2.0, 5.0));
        let st = CompoundState::triplet(TripletProjection::Zero, dir(1.0, 2.0));
        let a = sample_outcomes(st, c1, c2, 5000, 42).unwrap();
        let b = sample_outcomes(st, c1, c2, 5000, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_outcomes(st, c1, c2, 5000, 43).unwrap();
        assert_ne!(a.counts, c.counts);
        assert!(sample_outcomes(st, c1, c2, 0, 1).is_err());
    }

    #[test]
    fn sampler_frequencies_within_five_sigma() {
        let s = CompoundState::singlet(Direction::Z);
        let (c1, c2) = (dir(FRAC_PI_2, 0.0), dir(FRAC_PI_2, FRAC_PI_2));
        let n = 100_000;
        let counts = sample_outcomes(s, c1, c2, n, 2024).unwrap();
        let sigma = (0.25 * 0.75 / n as f64).sqrt();
        for out in JointOutcome::ALL {
            assert!((counts.frequency(out) - 0.25).abs() < 5.0 * sigma);
        }
        let var = 1.0 - singlet_correlation(c1, c2).value.powi(2);
        assert!(
            (counts.empirical_correlation - singlet_correlation(c1, c2).value).abs()
                < 5.0 * (var / n as f64).sqrt()
        );
    }

    #[test]
    fn batches_use_derived_seeds() {
        let s = CompoundState::singlet(Direction::Z);
        let (c1, c2) = (dir(0.5, 0.0), dir(1.5, 1.0));
        let batches = sample_batches(s, c1, c2, 1000, u64::MAX, 3).unwrap();
        assert_eq!(batches[0].seed, u64::MAX);
        assert_eq!(batches[1].seed, 0);
        assert_eq!(batches[2], sample_outcomes(s, c1, c2, 1000, 1).unwrap());
    }

    #[test]
    fn sample_json_shape() {
        let s = sample_outcomes(
            CompoundState::singlet(Direction::Z),
            Direction::Z,
            Direction::Z,
            10,
            5,
        )
        .unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["n"], 10);
        assert_eq!(v["seed"], 5);
        assert_eq!(v["counts"]["++"], 0);
        assert_eq!(v["empirical_correlation"], -1.0);
    }

    fn direction() -> impl Strategy<Value = Direction> {
        (0.0..=PI, 0.0..TAU).prop_map(|(t, p)| Direction::new(t, p).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn singlet_is_minus_dot(c1 in direction(), c2 in direction()) {
            let v = singlet_correlation(c1, c2).value;
            prop_assert!((v + c1.dot(&c2)).abs() <= 1e-12);
            prop_assert!((v - singlet_correlation(c2, c1).value).abs() <= 1e-12);
        }

        #[test]
        fn closed_forms_match_matrix_expectation(i in 0usize..4, a in direction(), c1 in direction(), c2 in direction()) {
            let state = CompoundState::all(a)[i];
            let rep = representation_4d(state, &correlation_values(), c1, c2);
            prop_assert!((correlation(state, c1, c2).value - rep.expectation().unwrap()).abs() <= 1e-12);
        }

        #[test]
        fn plus_and_minus_share_correlation(a in direction(), c1 in direction(), c2 in direction()) {
            let p = triplet_correlation(TripletProjection::Plus, a, c1, c2).value;
            let m = triplet_correlation(TripletProjection::Minus, a, c1, c2).value;
            prop_assert!((p - m).abs() <= 1e-12);
            prop_assert!((p - a.dot(&c1) * a.dot(&c2)).abs() <= 1e-12);
        }
    }
}
