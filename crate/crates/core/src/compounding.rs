//! Compounding two spin-1/2 systems into singlet and triplet states.
//!
//! Two independent routes lead to the compound amplitude Ψ(s, M along â; out):
//!
//! * [`ExpansionChain`] builds it numerically by expanding through the z-axis
//!   twice: first over the spin-1 projections M_j (the χ factors), then over the
//!   four joint outcomes along k̂ (the Clebsch-Gordan η factors).
//! * [`singlet_amplitude`] and [`triplet_amplitude`] are closed forms written out
//!   in terms of half angles.
//!
//! The two routes share no arithmetic, so agreement between them is a real check.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::amplitudes::{spin_half_amplitude, spin_one_amplitude, PhaseConvention};
use crate::error::Result;
use crate::types::{
    Amplitude, CompoundState, Direction, JointOutcome, SpinHalf, TotalSpin, TripletProjection,
};

/// Clebsch-Gordan coefficients C(½ ½ s; m1 m2 M) for s ∈ {0, 1}.
#[derive(Debug, Clone, Copy, Default)]
pub struct CgTable;

impl CgTable {
    /// Table entry; zero whenever m1 + m2 ≠ M.
    pub fn get(&self, state_spin: TotalSpin, m: TripletProjection, out: JointOutcome) -> f64 {
        use SpinHalf::{Down, Up};
        use TripletProjection::{Minus, Plus, Zero};
        match (state_spin, m, out.m1, out.m2) {
            (TotalSpin::Singlet, Zero, Up, Down) => FRAC_1_SQRT_2,
            (TotalSpin::Singlet, Zero, Down, Up) => -FRAC_1_SQRT_2,
            (TotalSpin::Triplet, Plus, Up, Up) => 1.0,
            (TotalSpin::Triplet, Zero, Up, Down) => FRAC_1_SQRT_2,
            (TotalSpin::Triplet, Zero, Down, Up) => FRAC_1_SQRT_2,
            (TotalSpin::Triplet, Minus, Down, Down) => 1.0,
            _ => 0.0,
        }
    }

    /// Every valid (s, M, outcome) triple with its coefficient: 4 singlet and 12 triplet entries.
    pub fn entries(&self) -> Vec<(TotalSpin, TripletProjection, JointOutcome, f64)> {
        let mut rows = Vec::with_capacity(16);
        for out in JointOutcome::ALL {
            rows.push((
                TotalSpin::Singlet,
                TripletProjection::Zero,
                out,
                self.get(TotalSpin::Singlet, TripletProjection::Zero, out),
            ));
        }
        for m in TripletProjection::ALL {
            for out in JointOutcome::ALL {
                rows.push((
                    TotalSpin::Triplet,
                    m,
                    out,
                    self.get(TotalSpin::Triplet, m, out),
                ));
            }
        }
        rows
    }
}

/// C(½ ½ s; m1 m2 M).
pub fn clebsch_gordan(s: u8, m: i8, m1: SpinHalf, m2: SpinHalf) -> Result<f64> {
    let spin = TotalSpin::from_value(s)?;
    let projection = TripletProjection::from_value(m)?;
    spin.check_projection(projection)?;
    Ok(CgTable.get(spin, projection, JointOutcome::new(m1, m2)))
}

/// Numerical Landé expansion through the z-axis under a chosen phase convention.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpansionChain {
    pub convention: PhaseConvention,
}

impl ExpansionChain {
    pub fn new(convention: PhaseConvention) -> Self {
        Self { convention }
    }

    /// ψ(alpha along k̂ ; out along ĉ₁, ĉ₂) as a product of two single-system amplitudes.
    pub fn joint_uncoupled(
        &self,
        alpha: JointOutcome,
        out: JointOutcome,
        c1: Direction,
        c2: Direction,
    ) -> Amplitude {
        let z = Direction::Z;
        spin_half_amplitude(self.convention, alpha.m1, z, out.m1, c1)
            * spin_half_amplitude(self.convention, alpha.m2, z, out.m2, c2)
    }

    /// ξ(s, M_j along k̂ ; out) = Σ_α η(s, M_j; α) ψ(α; out).
    pub fn xi(
        &self,
        spin: TotalSpin,
        mj: TripletProjection,
        out: JointOutcome,
        c1: Direction,
        c2: Direction,
    ) -> Amplitude {
        JointOutcome::ALL
            .iter()
            .map(|&alpha| CgTable.get(spin, mj, alpha) * self.joint_uncoupled(alpha, out, c1, c2))
            .sum()
    }

    /// Ψ(s, M along â ; out). The singlet χ factor is 1.
    pub fn compound(
        &self,
        state: CompoundState,
        out: JointOutcome,
        c1: Direction,
        c2: Direction,
    ) -> Amplitude {
        match state.spin() {
            TotalSpin::Singlet => self.xi(TotalSpin::Singlet, TripletProjection::Zero, out, c1, c2),
            TotalSpin::Triplet => TripletProjection::ALL
                .iter()
                .map(|&mj| {
                    spin_one_amplitude(state.projection(), state.axis(), mj)
                        * self.xi(TotalSpin::Triplet, mj, out, c1, c2)
                })
                .sum(),
        }
    }

    /// Compound amplitude with both measurement axes set to the state axis.
    pub fn generalized_cg(&self, state: CompoundState, out: JointOutcome) -> Amplitude {
        self.compound(state, out, state.axis(), state.axis())
    }
}

/// ψ under the accepted convention.
pub fn joint_uncoupled_amplitude(
    alpha: JointOutcome,
    out: JointOutcome,
    c1: Direction,
    c2: Direction,
) -> Amplitude {
    ExpansionChain::default().joint_uncoupled(alpha, out, c1, c2)
}

/// ξ under the accepted convention.
pub fn xi_amplitude(
    mj: TripletProjection,
    s: u8,
    out: JointOutcome,
    c1: Direction,
    c2: Direction,
) -> Result<Amplitude> {
    let spin = TotalSpin::from_value(s)?;
    spin.check_projection(mj)?;
    Ok(ExpansionChain::default().xi(spin, mj, out, c1, c2))
}

/// Ψ computed through the expansion chain under the accepted convention.
pub fn compound_amplitude_oracle(
    state: CompoundState,
    out: JointOutcome,
    c1: Direction,
    c2: Direction,
) -> Amplitude {
    ExpansionChain::default().compound(state, out, c1, c2)
}

/// Half-angle trig factors and phases for the closed forms.
struct HalfAngles {
    c1: f64,
    s1: f64,
    c2: f64,
    s2: f64,
    e1: Complex64,
    e2: Complex64,
}

impl HalfAngles {
    fn new(c1: Direction, c2: Direction) -> Self {
        let (s1, cc1) = (c1.theta() / 2.0).sin_cos();
        let (s2, cc2) = (c2.theta() / 2.0).sin_cos();
        Self {
            c1: cc1,
            s1,
            c2: cc2,
            s2,
            e1: Complex64::from_polar(1.0, -c1.phi()),
            e2: Complex64::from_polar(1.0, -c2.phi()),
        }
    }
}

/// Closed-form singlet amplitude Ψ(0, 0 ; out). It does not depend on the state axis.
pub fn singlet_amplitude(out: JointOutcome, c1: Direction, c2: Direction) -> Amplitude {
    let HalfAngles {
        c1,
        s1,
        c2,
        s2,
        e1,
        e2,
    } = HalfAngles::new(c1, c2);
    let k = FRAC_1_SQRT_2;
    match out.index() {
        0 => k * (c1 * s2 * e2 - s1 * c2 * e1),
        1 => k * (c1 * c2 * e2 + s1 * s2 * e1),
        2 => -k * (s1 * s2 * e2 + c1 * c2 * e1),
        _ => k * (c1 * s2 * e1 - s1 * c2 * e2),
    }
}

/// Closed-form triplet amplitude Ψ(1, M along â ; out).
pub fn triplet_amplitude(
    m: TripletProjection,
    a: Direction,
    out: JointOutcome,
    c1: Direction,
    c2: Direction,
) -> Amplitude {
    let (theta, phi) = (a.theta(), a.phi());
    let HalfAngles {
        c1: cc1,
        s1,
        c2: cc2,
        s2,
        e1,
        e2,
    } = HalfAngles::new(c1, c2);
    let (sh, ch) = (theta / 2.0).sin_cos();
    let (ch2, sh2) = (ch * ch, sh * sh);
    let st = theta.sin();
    let ct = theta.cos();
    let e = Complex64::from_polar(1.0, -phi);
    let big_e = Complex64::from_polar(1.0, phi - c1.phi() - c2.phi());
    let k = FRAC_1_SQRT_2;
    let (c1, c2) = (cc1, cc2);

    use TripletProjection::{Minus, Plus, Zero};
    match (m, out.index()) {
        (Plus, 0) => {
            ch2 * c1 * c2 * e + sh2 * s1 * s2 * big_e + 0.5 * st * (c1 * s2 * e2 + s1 * c2 * e1)
        }
        (Plus, 1) => {
            -ch2 * c1 * s2 * e + sh2 * s1 * c2 * big_e + 0.5 * st * (c1 * c2 * e2 - s1 * s2 * e1)
        }
        (Plus, 2) => {
            -ch2 * s1 * c2 * e + sh2 * c1 * s2 * big_e + 0.5 * st * (c1 * c2 * e1 - s1 * s2 * e2)
        }
        (Plus, _) => {
            ch2 * s1 * s2 * e + sh2 * c1 * c2 * big_e - 0.5 * st * (s1 * c2 * e2 + c1 * s2 * e1)
        }
        (Zero, 0) => {
            k * st * (s1 * s2 * big_e - c1 * c2 * e) + k * ct * (c1 * s2 * e2 + s1 * c2 * e1)
        }
        (Zero, 1) => {
            k * st * (s1 * c2 * big_e + c1 * s2 * e) + k * ct * (c1 * c2 * e2 - s1 * s2 * e1)
        }
        (Zero, 2) => {
            k * st * (c1 * s2 * big_e + s1 * c2 * e) + k * ct * (c1 * c2 * e1 - s1 * s2 * e2)
        }
        (Zero, _) => {
            k * st * (c1 * c2 * big_e - s1 * s2 * e) - k * ct * (s1 * c2 * e2 + c1 * s2 * e1)
        }
        (Minus, 0) => {
            -sh2 * c1 * c2 * e - ch2 * s1 * s2 * big_e + 0.5 * st * (c1 * s2 * e2 + s1 * c2 * e1)
        }
        (Minus, 1) => {
            sh2 * c1 * s2 * e - ch2 * s1 * c2 * big_e + 0.5 * st * (c1 * c2 * e2 - s1 * s2 * e1)
        }
        (Minus, 2) => {
            sh2 * s1 * c2 * e - ch2 * c1 * s2 * big_e + 0.5 * st * (c1 * c2 * e1 - s1 * s2 * e2)
        }
        (Minus, _) => {
            -sh2 * s1 * s2 * e - ch2 * c1 * c2 * big_e - 0.5 * st * (c1 * s2 * e1 + s1 * c2 * e2)
        }
    }
}

/// Closed-form Ψ for any compound state.
pub fn compound_amplitude(
    state: CompoundState,
    out: JointOutcome,
    c1: Direction,
    c2: Direction,
) -> Amplitude {
    match state.spin() {
        TotalSpin::Singlet => singlet_amplitude(out, c1, c2),
        TotalSpin::Triplet => triplet_amplitude(state.projection(), state.axis(), out, c1, c2),
    }
}

/// Generalized Clebsch-Gordan coefficient: Ψ(s, M along â ; (m1, m2) along â).
pub fn generalized_cg(s: u8, m: i8, m1: SpinHalf, m2: SpinHalf, a: Direction) -> Result<Amplitude> {
    let spin = TotalSpin::from_value(s)?;
    let projection = TripletProjection::from_value(m)?;
    let state = CompoundState::new(spin, projection, a)?;
    Ok(compound_amplitude(state, JointOutcome::new(m1, m2), a, a))
}

/// Largest deviation of |Ψ(s, M along k̂ ; out along k̂)| from |C(½ ½ s; m1 m2 M)| over
/// all sixteen valid entries, under the given convention.
pub fn cg_reduction_deviation(convention: PhaseConvention) -> f64 {
    let chain = ExpansionChain::new(convention);
    CgTable
        .entries()
        .into_iter()
        .map(|(spin, m, out, cg)| {
            let state = CompoundState::new(spin, m, Direction::Z).expect("table entries are valid");
            (chain
                .compound(state, out, Direction::Z, Direction::Z)
                .norm()
                - cg.abs())
            .abs()
        })
        .fold(0.0, f64::max)
}

/// Largest deviation of |generalized CG at `a`| from |C(½ ½ s; m1 m2 M)| under the given convention.
pub fn generalized_cg_deviation(convention: PhaseConvention, a: Direction) -> f64 {
    let chain = ExpansionChain::new(convention);
    CgTable
        .entries()
        .into_iter()
        .map(|(spin, m, out, cg)| {
            let state = CompoundState::new(spin, m, a).expect("table entries are valid");
            (chain.generalized_cg(state, out).norm() - cg.abs()).abs()
        })
        .fold(0.0, f64::max)
}
