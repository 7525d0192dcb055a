//! Value types shared by every part of the crate: quantization directions,
//! spin projections, joint outcome labels and compound states.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A probability amplitude.
///
/// Plain `Complex64`; the squared modulus of any physical amplitude lies in `[0, 1]`.
pub type Amplitude = Complex64;

/// Tolerance used for direction equality, on θ and on the angular difference of φ.
pub const DIRECTION_EQ_TOL: f64 = 1e-12;

/// A unit vector given by its polar angles, in radians.
///
/// θ is restricted to `[0, π]`; φ is wrapped into `[0, 2π)` on construction.
/// At the poles φ is kept as given: two pole directions that differ only in φ
/// are physically identical but compare unequal, and the amplitude formulas
/// do depend on φ there.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "RawDirection")]
pub struct Direction {
    theta: f64,
    phi: f64,
}

#[derive(Deserialize)]
struct RawDirection {
    theta: f64,
    phi: f64,
}

impl TryFrom<RawDirection> for Direction {
    type Error = Error;

    fn try_from(raw: RawDirection) -> Result<Self> {
        Direction::new(raw.theta, raw.phi)
    }
}

impl Direction {
    /// The z axis, k̂ = (θ = 0, φ = 0).
    pub const Z: Direction = Direction {
        theta: 0.0,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFiniteAngle { theta, phi });
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::PolarAngleOutOfRange(theta));
        }
        let mut phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Direction { theta, phi })
    }

    /// Builds a direction from angles given in degrees.
    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Direction::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// A direction in the y–z plane at `angle` radians from +z, rotating towards +y.
    ///
    /// Any real angle is accepted; angles past π land on the φ = 3π/2 half of the plane.
    pub fn coplanar(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFiniteAngle {
                theta: angle,
                phi: PI / 2.0,
            });
        }
        let a = angle.rem_euclid(TAU);
        if a <= PI {
            Direction::new(a, PI / 2.0)
        } else {
            Direction::new(TAU - a, 3.0 * PI / 2.0)
        }
    }

    /// Draws a direction uniformly distributed over the unit sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..TAU);
        Direction {
            theta: cos_theta.acos(),
            phi,
        }
    }

    /// Recovers polar angles from a Cartesian vector (need not be normalized).
    pub fn from_cartesian(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NonFiniteAngle {
                theta: f64::NAN,
                phi: f64::NAN,
            });
        }
        let theta = v[0].hypot(v[1]).atan2(v[2]);
        let phi = v[1].atan2(v[0]);
        Direction::new(theta, phi)
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// (sinθ cosφ, sinθ sinφ, cosθ)
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Dot product of the two unit vectors, computed from the angles.
    pub fn dot(&self, other: &Direction) -> f64 {
        direction_dot(*self, *other)
    }

    pub fn approx_eq(&self, other: &Direction, tol: f64) -> bool {
        let dphi = (self.phi - other.phi).rem_euclid(TAU);
        let dphi = dphi.min(TAU - dphi);
        (self.theta - other.theta).abs() <= tol && dphi <= tol
    }
}

/// Tolerance-based: θ within 1e-12 and φ within 1e-12 modulo 2π.
impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, DIRECTION_EQ_TOL)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={}, φ={})", self.theta, self.phi)
    }
}

/// â·b̂ = cosθa cosθb + sinθa sinθb cos(φa − φb), clamped to [−1, 1].
pub fn direction_dot(a: Direction, b: Direction) -> f64 {
    let v = a.theta.cos() * b.theta.cos() + a.theta.sin() * b.theta.sin() * (a.phi - b.phi).cos();
    v.clamp(-1.0, 1.0)
}

/// Projection ±½ of a single spin-1/2 subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinHalf {
    Up,
    Down,
}

impl SpinHalf {
    pub const ALL: [SpinHalf; 2] = [SpinHalf::Up, SpinHalf::Down];

    /// The projection in units of ħ: +½ or −½.
    pub fn value(self) -> f64 {
        match self {
            SpinHalf::Up => 0.5,
            SpinHalf::Down => -0.5,
        }
    }

    /// +1 for up, −1 for down.
    pub fn sign(self) -> i8 {
        match self {
            SpinHalf::Up => 1,
            SpinHalf::Down => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            SpinHalf::Up => '+',
            SpinHalf::Down => '-',
        }
    }

    pub fn flipped(self) -> SpinHalf {
        match self {
            SpinHalf::Up => SpinHalf::Down,
            SpinHalf::Down => SpinHalf::Up,
        }
    }
}

/// Projection M ∈ {+1, 0, −1} of a spin-1 system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripletProjection {
    Plus,
    Zero,
    Minus,
}

impl TripletProjection {
    /// Fixed iteration order (+1, 0, −1), also the 3-dim basis order.
    pub const ALL: [TripletProjection; 3] = [
        TripletProjection::Plus,
        TripletProjection::Zero,
        TripletProjection::Minus,
    ];

    pub fn value(self) -> i8 {
        match self {
            TripletProjection::Plus => 1,
            TripletProjection::Zero => 0,
            TripletProjection::Minus => -1,
        }
    }

    pub fn from_value(m: i8) -> Result<Self> {
        match m {
            1 => Ok(TripletProjection::Plus),
            0 => Ok(TripletProjection::Zero),
            -1 => Ok(TripletProjection::Minus),
            other => Err(Error::InvalidProjection(other)),
        }
    }

    /// Position in the (+1, 0, −1) ordering.
    pub fn index(self) -> usize {
        match self {
            TripletProjection::Plus => 0,
            TripletProjection::Zero => 1,
            TripletProjection::Minus => 2,
        }
    }
}

/// An ordered pair of subsystem projections (m₁, m₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointOutcome {
    pub m1: SpinHalf,
    pub m2: SpinHalf,
}

impl JointOutcome {
    pub const UP_UP: JointOutcome = JointOutcome {
        m1: SpinHalf::Up,
        m2: SpinHalf::Up,
    };
    pub const UP_DOWN: JointOutcome = JointOutcome {
        m1: SpinHalf::Up,
        m2: SpinHalf::Down,
    };
    pub const DOWN_UP: JointOutcome = JointOutcome {
        m1: SpinHalf::Down,
        m2: SpinHalf::Up,
    };
    pub const DOWN_DOWN: JointOutcome = JointOutcome {
        m1: SpinHalf::Down,
        m2: SpinHalf::Down,
    };

    /// Canonical order B₁…B₄: (↑↑), (↑↓), (↓↑), (↓↓).
    pub const ALL: [JointOutcome; 4] = [Self::UP_UP, Self::UP_DOWN, Self::DOWN_UP, Self::DOWN_DOWN];

    pub const fn new(m1: SpinHalf, m2: SpinHalf) -> Self {
        JointOutcome { m1, m2 }
    }

    /// Position in the B₁…B₄ ordering (0-based).
    pub fn index(self) -> usize {
        let hi = matches!(self.m1, SpinHalf::Down) as usize;
        let lo = matches!(self.m2, SpinHalf::Down) as usize;
        2 * hi + lo
    }

    /// Sum of the two projections, m₁ + m₂, as an integer.
    pub fn total_projection(self) -> i8 {
        (self.m1.sign() + self.m2.sign()) / 2
    }

    /// The product of the ±1 values of the two outcomes.
    pub fn sign_product(self) -> i8 {
        self.m1.sign() * self.m2.sign()
    }

    /// Two-character label: "++", "+-", "-+" or "--".
    pub fn label(self) -> &'static str {
        ["++", "+-", "-+", "--"][self.index()]
    }
}

impl fmt::Display for JointOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for JointOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JointOutcome::ALL
            .into_iter()
            .find(|o| o.label() == s)
            .ok_or_else(|| Error::InvalidOutcomeLabel(s.to_owned()))
    }
}

impl Serialize for JointOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for JointOutcome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Total spin of the compound system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TotalSpin {
    /// s = 0
    Singlet,
    /// s = 1
    Triplet,
}

impl TotalSpin {
    pub fn value(self) -> u8 {
        match self {
            TotalSpin::Singlet => 0,
            TotalSpin::Triplet => 1,
        }
    }

    pub fn from_value(s: u8) -> Result<Self> {
        match s {
            0 => Ok(TotalSpin::Singlet),
            1 => Ok(TotalSpin::Triplet),
            other => Err(Error::InvalidTotalSpin(other)),
        }
    }

    /// Checks that `m` is an allowed projection for this total spin.
    pub fn check_projection(self, m: TripletProjection) -> Result<()> {
        if self == TotalSpin::Singlet && m != TripletProjection::Zero {
            return Err(Error::SingletRequiresZeroProjection(m.value()));
        }
        Ok(())
    }
}

/// A compound state: total spin s, projection M along the axis â.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundState {
    spin: TotalSpin,
    projection: TripletProjection,
    axis: Direction,
}

impl CompoundState {
    pub fn new(spin: TotalSpin, projection: TripletProjection, axis: Direction) -> Result<Self> {
        spin.check_projection(projection)?;
        Ok(CompoundState {
            spin,
            projection,
            axis,
        })
    }

    pub fn singlet(axis: Direction) -> Self {
        CompoundState {
            spin: TotalSpin::Singlet,
            projection: TripletProjection::Zero,
            axis,
        }
    }

    pub fn triplet(projection: TripletProjection, axis: Direction) -> Self {
        CompoundState {
            spin: TotalSpin::Triplet,
            projection,
            axis,
        }
    }

    /// All four states (singlet, then triplet M = +1, 0, −1) along one axis.
    pub fn all(axis: Direction) -> [CompoundState; 4] {
        [
            CompoundState::singlet(axis),
            CompoundState::triplet(TripletProjection::Plus, axis),
            CompoundState::triplet(TripletProjection::Zero, axis),
            CompoundState::triplet(TripletProjection::Minus, axis),
        ]
    }

    #[inline]
    pub fn spin(&self) -> TotalSpin {
        self.spin
    }

    #[inline]
    pub fn projection(&self) -> TripletProjection {
        self.projection
    }

    #[inline]
    pub fn axis(&self) -> Direction {
        self.axis
    }

    pub fn with_axis(self, axis: Direction) -> Self {
        CompoundState { axis, ..self }
    }
}

impl fmt::Display for CompoundState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} M={} along {}",
            self.spin.value(),
            self.projection.value(),
            self.axis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn self_dot_is_one() {
        let a = Direction::new(0.7, 1.1).unwrap();
        assert_abs_diff_eq!(direction_dot(a, a), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn antipodal_dot() {
        let a = Direction::new(0.0, 0.0).unwrap();
        let b = Direction::new(PI, 0.0).unwrap();
        assert_abs_diff_eq!(direction_dot(a, b), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn equatorial_dot_matches_cartesian() {
        let a = Direction::new(PI / 2.0, 0.0).unwrap();
        let b = Direction::new(PI / 2.0, PI / 3.0).unwrap();
        // cos(π/3)
        assert_abs_diff_eq!(direction_dot(a, b), 0.5, epsilon = 1e-12);
        let (u, v) = (a.unit_vector(), b.unit_vector());
        let cart: f64 = u.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
        assert_abs_diff_eq!(cart, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn phi_is_wrapped() {
        let d = Direction::new(1.0, -PI / 2.0).unwrap();
        assert_abs_diff_eq!(d.phi(), 3.0 * PI / 2.0, epsilon = 1e-15);
        let d = Direction::new(1.0, 5.0 * PI).unwrap();
        assert_abs_diff_eq!(d.phi(), PI, epsilon = 1e-12);
        let d = Direction::new(1.0, -1e-300).unwrap();
        assert!(d.phi() >= 0.0 && d.phi() < TAU);
    }

    #[test]
    fn pole_phi_is_kept() {
        let d = Direction::new(0.0, 1.3).unwrap();
        assert_eq!(d.phi(), 1.3);
        assert_ne!(d, Direction::Z);
    }

    #[test]
    fn rejects_bad_angles() {
        assert!(matches!(
            Direction::new(-0.1, 0.0),
            Err(Error::PolarAngleOutOfRange(_))
        ));
        assert!(matches!(
            Direction::new(3.2, 0.0),
            Err(Error::PolarAngleOutOfRange(_))
        ));
        assert!(matches!(
            Direction::new(f64::NAN, 0.0),
            Err(Error::NonFiniteAngle { .. })
        ));
        assert!(matches!(
            Direction::new(1.0, f64::INFINITY),
            Err(Error::NonFiniteAngle { .. })
        ));
    }

    #[test]
    fn equality_tolerates_phi_wraparound() {
        let a = Direction::new(1.0, 1e-13).unwrap();
        let b = Direction::new(1.0, TAU - 1e-13).unwrap();
        assert_eq!(a, b);
        let c = Direction::new(1.0 + 1e-9, 1e-13).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn coplanar_covers_full_circle() {
        for k in 0..16 {
            let angle = k as f64 * TAU / 16.0;
            let d = Direction::coplanar(angle).unwrap();
            let v = d.unit_vector();
            assert_abs_diff_eq!(v[0], 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(v[1], angle.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(v[2], angle.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn outcome_order_and_labels() {
        let labels: Vec<_> = JointOutcome::ALL.iter().map(|o| o.label()).collect();
        assert_eq!(labels, ["++", "+-", "-+", "--"]);
        for (i, o) in JointOutcome::ALL.iter().enumerate() {
            assert_eq!(o.index(), i);
            assert_eq!(o.label().parse::<JointOutcome>().unwrap(), *o);
        }
        assert!("+0".parse::<JointOutcome>().is_err());
        assert_eq!(JointOutcome::UP_UP.total_projection(), 1);
        assert_eq!(JointOutcome::UP_DOWN.total_projection(), 0);
        assert_eq!(JointOutcome::DOWN_DOWN.total_projection(), -1);
    }

    #[test]
    fn singlet_needs_zero_projection() {
        let err = CompoundState::new(TotalSpin::Singlet, TripletProjection::Plus, Direction::Z);
        assert!(matches!(err, Err(Error::SingletRequiresZeroProjection(1))));
        assert!(
            CompoundState::new(TotalSpin::Singlet, TripletProjection::Zero, Direction::Z).is_ok()
        );
        assert!(TotalSpin::from_value(2).is_err());
        assert!(TripletProjection::from_value(2).is_err());
    }

    #[test]
    fn json_shapes() {
        let d = Direction::new(0.5, 1.25).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"theta":0.5,"phi":1.25}"#);
        let back: Direction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Direction>(r#"{"theta":4.0,"phi":0.0}"#).is_err());
        let outs = serde_json::to_string(&JointOutcome::ALL).unwrap();
        assert_eq!(outs, r#"["++","+-","-+","--"]"#);
    }

    fn direction() -> impl Strategy<Value = Direction> {
        (0.0..=PI, 0.0..TAU).prop_map(|(t, p)| Direction::new(t, p).unwrap())
    }

    proptest! {
        #[test]
        fn dot_is_bounded_and_symmetric(a in direction(), b in direction()) {
            let ab = direction_dot(a, b);
            prop_assert!(ab.abs() <= 1.0);
            prop_assert_eq!(ab, direction_dot(b, a));
        }

        #[test]
        fn unit_vector_round_trip(theta in 1e-6..(PI - 1e-6), phi in 0.0..TAU) {
            let d = Direction::new(theta, phi).unwrap();
            let v = d.unit_vector();
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
            let back = Direction::from_cartesian(v).unwrap();
            prop_assert!(back.approx_eq(&d, 1e-12));
        }
    }
}
