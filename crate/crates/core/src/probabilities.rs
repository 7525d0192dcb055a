//! Joint and marginal measurement probabilities.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::compounding::compound_amplitude;
use crate::error::{Error, Result};
use crate::types::{
    CompoundState, Direction, JointOutcome, SpinHalf, TotalSpin, TripletProjection,
};

/// Slack allowed on each raw probability before it is treated as an error.
pub const PROBABILITY_SLACK: f64 = 1e-9;
/// Allowed deviation of the four probabilities from a unit sum.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Probabilities of the four joint outcomes, in (++, +−, −+, −−) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityQuadruple {
    p: [f64; 4],
}

impl ProbabilityQuadruple {
    /// Validates raw values, then clamps them into [0, 1].
    pub fn from_raw(raw: [f64; 4]) -> Result<Self> {
        for (out, &v) in JointOutcome::ALL.iter().zip(&raw) {
            if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&v) {
                return Err(Error::ProbabilityOutOfRange {
                    outcome: out.label().to_string(),
                    value: v,
                });
            }
        }
        let sum: f64 = raw.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self {
            p: raw.map(|v| v.clamp(0.0, 1.0)),
        })
    }

    pub fn get(&self, out: JointOutcome) -> f64 {
        self.p[out.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.p
    }

    pub fn iter(&self) -> impl Iterator<Item = (JointOutcome, f64)> + '_ {
        JointOutcome::ALL.into_iter().zip(self.p)
    }

    /// Σ r(out) P(out).
    pub fn weighted_sum(&self, r: &[f64; 4]) -> f64 {
        self.p.iter().zip(r).map(|(p, r)| p * r).sum()
    }

    pub fn marginal(&self, subsystem: Subsystem, m: SpinHalf) -> f64 {
        self.iter()
            .filter(|(out, _)| subsystem.projection_of(*out) == m)
            .map(|(_, p)| p)
            .sum()
    }
}

impl std::ops::Index<JointOutcome> for ProbabilityQuadruple {
    type Output = f64;

    fn index(&self, out: JointOutcome) -> &f64 {
        &self.p[out.index()]
    }
}

impl Serialize for ProbabilityQuadruple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        for (out, p) in self.iter() {
            map.serialize_entry(out.label(), &p)?;
        }
        map.end()
    }
}

/// One of the two spin-1/2 subsystems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Subsystem::First),
            2 => Some(Subsystem::Second),
            _ => None,
        }
    }

    fn projection_of(self, out: JointOutcome) -> SpinHalf {
        match self {
            Subsystem::First => out.m1,
            Subsystem::Second => out.m2,
        }
    }
}

/// |Ψ(state ; out)|² for the four outcomes.
pub fn joint_probabilities(
    state: CompoundState,
    c1: Direction,
    c2: Direction,
) -> Result<ProbabilityQuadruple> {
    ProbabilityQuadruple::from_raw(
        JointOutcome::ALL.map(|out| compound_amplitude(state, out, c1, c2).norm_sqr()),
    )
}

/// Probability that `subsystem` is found with projection `m`, whatever the other one does.
pub fn marginal_probability(
    state: CompoundState,
    subsystem: Subsystem,
    m: SpinHalf,
    c1: Direction,
    c2: Direction,
) -> Result<f64> {
    Ok(joint_probabilities(state, c1, c2)?.marginal(subsystem, m))
}

/// Joint probabilities written out directly in terms of the angles, without
/// going through any amplitude. Used as an independent cross-check.
pub fn transcribed_joint_probabilities(
    state: CompoundState,
    c1: Direction,
    c2: Direction,
) -> [f64; 4] {
    let (t1, p1, t2, p2) = (c1.theta(), c1.phi(), c2.theta(), c2.phi());
    let (s1t, s2t) = (t1.sin(), t2.sin());

    if state.spin() == TotalSpin::Singlet {
        let same =
            0.5 * (((t2 - t1) / 2.0).sin().powi(2) + s1t * s2t * ((p2 - p1) / 2.0).sin().powi(2));
        let opposite =
            0.5 * (((t2 - t1) / 2.0).cos().powi(2) - s1t * s2t * ((p2 - p1) / 2.0).sin().powi(2));
        return [same, opposite, opposite, same];
    }

    let (theta, phi) = (state.axis().theta(), state.axis().phi());
    let c1q = (t1 / 2.0).cos().powi(2);
    let s1q = (t1 / 2.0).sin().powi(2);
    let c2q = (t2 / 2.0).cos().powi(2);
    let s2q = (t2 / 2.0).sin().powi(2);
    let ch = (theta / 2.0).cos().powi(2);
    let sh = (theta / 2.0).sin().powi(2);
    let st = theta.sin();
    let ct = theta.cos();
    let st2 = st * st;
    let x = s1t * s2t * (phi - p1).cos() * (phi - p2).cos();

    match state.projection() {
        TripletProjection::Zero => {
            let q = 0.25 * s1t * s2t * (p2 - p1).cos();
            let cross = 0.5
                * st
                * ct
                * (s1t * t2.cos() * (p1 - phi).cos() + s2t * t1.cos() * (p2 - phi).cos());
            let same = 0.5 * st2 * (s1q * s2q + c1q * c2q)
                + 0.5 * ct * ct * (c1q * s2q + s1q * c2q)
                - 0.5 * st2 * x
                + q
                - cross;
            let opposite = 0.5 * st2 * (c1q * s2q + s1q * c2q)
                + 0.5 * ct * ct * (c1q * c2q + s1q * s2q)
                + 0.5 * st2 * x
                - q
                + cross;
            [same, opposite, opposite, same]
        }
        TripletProjection::Plus | TripletProjection::Minus => {
            let (up, dn, sign) = match state.projection() {
                TripletProjection::Plus => (ch, sh, 1.0),
                _ => (sh, ch, -1.0),
            };
            let k1 = sign * st * s1t * (p1 - phi).cos();
            let k2 = sign * st * s2t * (p2 - phi).cos();
            let q = 0.25 * st2;
            [
                up * up * c1q * c2q
                    + dn * dn * s1q * s2q
                    + q * (c1q * s2q + s1q * c2q)
                    + q * x
                    + 0.5 * k1 * (up * c2q + dn * s2q)
                    + 0.5 * k2 * (up * c1q + dn * s1q),
                up * up * c1q * s2q + dn * dn * s1q * c2q + q * (c1q * c2q + s1q * s2q) - q * x
                    + 0.5 * k1 * (up * s2q + dn * c2q)
                    - 0.5 * k2 * (up * c1q + dn * s1q),
                up * up * s1q * c2q + dn * dn * c1q * s2q + q * (c1q * c2q + s1q * s2q)
                    - q * x
                    - 0.5 * k1 * (up * c2q + dn * s2q)
                    + 0.5 * k2 * (up * s1q + dn * c1q),
                up * up * s1q * s2q + dn * dn * c1q * c2q + q * (s1q * c2q + c1q * s2q) + q * x
                    - 0.5 * k1 * (up * s2q + dn * c2q)
                    - 0.5 * k2 * (up * s1q + dn * c1q),
            ]
        }
    }
}

/// Subsystem-1 marginal for M = ±1, written out directly.
pub fn transcribed_triplet_marginal_first(
    m: TripletProjection,
    a: Direction,
    spin: SpinHalf,
    c1: Direction,
) -> Option<f64> {
    let (theta, phi) = (a.theta(), a.phi());
    let ch = (theta / 2.0).cos().powi(2);
    let sh = (theta / 2.0).sin().powi(2);
    let cq = (c1.theta() / 2.0).cos().powi(2);
    let sq = (c1.theta() / 2.0).sin().powi(2);
    let cross = 0.5 * theta.sin() * c1.theta().sin() * (c1.phi() - phi).cos();
    let (up, dn, sign) = match m {
        TripletProjection::Plus => (ch, sh, 1.0),
        TripletProjection::Minus => (sh, ch, -1.0),
        TripletProjection::Zero => return None,
    };
    Some(match spin {
        SpinHalf::Up => up * cq + dn * sq + sign * cross,
        SpinHalf::Down => up * sq + dn * cq - sign * cross,
    })
}
