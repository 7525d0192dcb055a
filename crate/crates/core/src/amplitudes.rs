//! Transition amplitudes of an isolated spin-1/2 or spin-1 system.
//!
//! The spin-1/2 amplitudes connect a projection along one direction d̂ to a
//! projection along a second direction ê. Two phase conventions are available;
//! both give the same single-system probabilities, but only
//! [`PhaseConvention::Accepted`] compounds into amplitudes that reduce to the
//! Clebsch-Gordan coefficients.

use num_complex::Complex64;

use crate::types::{Amplitude, Direction, SpinHalf, TripletProjection};

/// Phase choice for the spin-1/2 transition amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PhaseConvention {
    /// Signs on the off-diagonal amplitudes as `+cos·sin − e^{iΔφ} sin·cos`.
    /// Compounding with these does not reproduce the Clebsch-Gordan limit.
    Rejected,
    /// Signs on the off-diagonal amplitudes as `−cos·sin + e^{iΔφ} sin·cos`.
    #[default]
    Accepted,
}

impl PhaseConvention {
    pub const ALL: [PhaseConvention; 2] = [PhaseConvention::Rejected, PhaseConvention::Accepted];

    pub fn name(self) -> &'static str {
        match self {
            PhaseConvention::Rejected => "rejected",
            PhaseConvention::Accepted => "accepted",
        }
    }
}

/// φ(m_from along d̂ ; m_to along ê).
///
/// With half angles `a = θ_d/2`, `b = θ_e/2` and `E = e^{i(φ_d − φ_e)}`:
///
/// | from → to | Accepted              | Rejected              |
/// |-----------|-----------------------|-----------------------|
/// | + → +     | cos a cos b + E sin a sin b | same            |
/// | + → −     | −cos a sin b + E sin a cos b | cos a sin b − E sin a cos b |
/// | − → +     | −sin a cos b + E cos a sin b | sin a cos b − E cos a sin b |
/// | − → −     | sin a sin b + E cos a cos b | same            |
pub fn spin_half_amplitude(
    conv: PhaseConvention,
    m_from: SpinHalf,
    d: Direction,
    m_to: SpinHalf,
    e: Direction,
) -> Amplitude {
    let (sa, ca) = (d.theta() / 2.0).sin_cos();
    let (sb, cb) = (e.theta() / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, d.phi() - e.phi());

    use SpinHalf::{Down, Up};
    let sign = match conv {
        PhaseConvention::Accepted => 1.0,
        PhaseConvention::Rejected => -1.0,
    };
    match (m_from, m_to) {
        (Up, Up) => ca * cb + phase * (sa * sb),
        (Up, Down) => sign * (-ca * sb + phase * (sa * cb)),
        (Down, Up) => sign * (-sa * cb + phase * (ca * sb)),
        (Down, Down) => sa * sb + phase * (ca * cb),
    }
}

/// χ(1, m_from along â ; 1, m_to along k̂) for a spin-1 system.
///
/// Rows indexed by `m_from`, columns by `m_to`, both in (+1, 0, −1) order:
///
/// ```text
///  M=+1:  cos²(θ/2) e^{−iφ}      sinθ/√2     sin²(θ/2) e^{iφ}
///  M= 0: −sinθ e^{−iφ}/√2        cosθ        sinθ e^{iφ}/√2
///  M=−1: −sin²(θ/2) e^{−iφ}      sinθ/√2    −cos²(θ/2) e^{iφ}
/// ```
pub fn spin_one_amplitude(
    m_from: TripletProjection,
    a: Direction,
    m_to: TripletProjection,
) -> Amplitude {
    use std::f64::consts::FRAC_1_SQRT_2;
    use TripletProjection::{Minus, Plus, Zero};

    let theta = a.theta();
    let (sh, ch) = (theta / 2.0).sin_cos();
    let e_minus = Complex64::from_polar(1.0, -a.phi());
    let e_plus = Complex64::from_polar(1.0, a.phi());
    let real = |x: f64| Complex64::new(x, 0.0);

    match (m_from, m_to) {
        (Plus, Plus) => e_minus * (ch * ch),
        (Plus, Zero) => real(FRAC_1_SQRT_2 * theta.sin()),
        (Plus, Minus) => e_plus * (sh * sh),
        (Zero, Plus) => e_minus * (-FRAC_1_SQRT_2 * theta.sin()),
        (Zero, Zero) => real(theta.cos()),
        (Zero, Minus) => e_plus * (FRAC_1_SQRT_2 * theta.sin()),
        (Minus, Plus) => e_minus * (-sh * sh),
        (Minus, Zero) => real(FRAC_1_SQRT_2 * theta.sin()),
        (Minus, Minus) => e_plus * (-ch * ch),
    }
}
