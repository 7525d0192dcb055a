//! Matrix representations: state vectors and observable matrices in 1, 3 and 4
//! dimensions, and the expectation value v†Rv.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::amplitudes::spin_one_amplitude;
use crate::compounding::{compound_amplitude, CgTable, ExpansionChain};
use crate::error::{Error, Result};
use crate::types::{
    Amplitude, CompoundState, Direction, JointOutcome, TotalSpin, TripletProjection,
};

/// Tolerance on the unit norm of a state vector and on Hermiticity of an operator.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Largest imaginary part accepted in an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Joint outcomes along k̂ in (++, +−, −+, −−) order.
    JointZ,
    /// Spin-1 projections along k̂ in (+1, 0, −1) order.
    CompoundZ,
    /// The one-dimensional representation.
    Scalar,
}

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::JointZ => 4,
            Basis::CompoundZ => 3,
            Basis::Scalar => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::JointZ => "joint_z",
            Basis::CompoundZ => "compound_z",
            Basis::Scalar => "scalar",
        }
    }
}

/// Real value r(out) attached to each joint outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeValues {
    r: [f64; 4],
}

impl OutcomeValues {
    pub fn new(r: [f64; 4]) -> Result<Self> {
        if r.iter().all(|v| v.is_finite()) {
            Ok(Self { r })
        } else {
            Err(Error::NonFiniteOutcomeValue)
        }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new([c; 4])
    }

    pub fn from_fn(f: impl Fn(JointOutcome) -> f64) -> Result<Self> {
        Self::new(JointOutcome::ALL.map(f))
    }

    pub fn get(&self, out: JointOutcome) -> f64 {
        self.r[out.index()]
    }

    pub fn as_array(&self) -> &[f64; 4] {
        &self.r
    }
}

/// Unit-norm column vector tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Basis,
    components: Vec<Amplitude>,
}

impl StateVector {
    pub fn new(basis: Basis, components: Vec<Amplitude>) -> Result<Self> {
        if components.len() != basis.dim() {
            return Err(Error::BadDimension {
                basis: basis.name(),
                expected: basis.dim(),
                actual: components.len(),
            });
        }
        let norm = components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::NotUnitNorm(norm));
        }
        Ok(Self { basis, components })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Amplitude] {
        &self.components
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        check_compatible(self, other.basis, other.dim())?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StateVector", 2)?;
        s.serialize_field("basis", self.basis.name())?;
        let pairs: Vec<[f64; 2]> = self.components.iter().map(|c| [c.re, c.im]).collect();
        s.serialize_field("components", &pairs)?;
        s.end()
    }
}

/// Hermitian operator matrix tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableMatrix {
    basis: Basis,
    entries: Vec<Vec<Amplitude>>,
}

impl ObservableMatrix {
    pub fn new(basis: Basis, entries: Vec<Vec<Amplitude>>) -> Result<Self> {
        let n = basis.dim();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::BadDimension {
                basis: basis.name(),
                expected: n,
                actual: entries.len(),
            });
        }
        let worst = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (entries[i][j] - entries[j][i].conj()).norm())
            .fold(0.0, f64::max);
        if worst > STRUCTURE_TOL {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self { basis, entries })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Amplitude {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Amplitude>] {
        &self.entries
    }
}

impl Serialize for ObservableMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        let mut s = serializer.serialize_struct("ObservableMatrix", 2)?;
        s.serialize_field("basis", self.basis.name())?;
        s.serialize_field("entries", &rows)?;
        s.end()
    }
}

/// A state vector paired with an operator of matching basis.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Representation {
    pub state: StateVector,
    pub operator: ObservableMatrix,
}

impl Representation {
    pub fn new(state: StateVector, operator: ObservableMatrix) -> Result<Self> {
        check_compatible(&state, operator.basis, operator.dim())?;
        Ok(Self { state, operator })
    }

    pub fn expectation(&self) -> Result<f64> {
        expectation(&self.state, &self.operator)
    }
}

fn check_compatible(v: &StateVector, basis: Basis, dim: usize) -> Result<()> {
    if v.dim() != dim {
        return Err(Error::DimensionMismatch {
            vector: v.dim(),
            operator: dim,
        });
    }
    if v.basis != basis {
        return Err(Error::BasisMismatch {
            vector: v.basis.name(),
            operator: basis.name(),
        });
    }
    Ok(())
}

/// (0, 1/√2, −1/√2, 0).
pub fn singlet_state_vector() -> StateVector {
    let c = |x: f64| Complex64::new(x, 0.0);
    StateVector {
        basis: Basis::JointZ,
        components: vec![c(0.0), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), c(0.0)],
    }
}

/// β_γ = Σ_j χ(1, M along â ; 1, M_j along k̂) η(1, M_j ; B_γ).
pub fn triplet_state_vector_4d(m: TripletProjection, a: Direction) -> StateVector {
    let components = JointOutcome::ALL
        .iter()
        .map(|&out| {
            TripletProjection::ALL
                .iter()
                .map(|&mj| spin_one_amplitude(m, a, mj) * CgTable.get(TotalSpin::Triplet, mj, out))
                .sum()
        })
        .collect();
    StateVector {
        basis: Basis::JointZ,
        components,
    }
}

/// χ(1, M along â ; 1, M_j along k̂) for M_j = +1, 0, −1.
pub fn triplet_state_vector_3d(m: TripletProjection, a: Direction) -> StateVector {
    let components = TripletProjection::ALL
        .iter()
        .map(|&mj| spin_one_amplitude(m, a, mj))
        .collect();
    StateVector {
        basis: Basis::CompoundZ,
        components,
    }
}

/// Four-dimensional state vector for any compound state.
pub fn state_vector_4d(state: CompoundState) -> StateVector {
    match state.spin() {
        TotalSpin::Singlet => singlet_state_vector(),
        TotalSpin::Triplet => triplet_state_vector_4d(state.projection(), state.axis()),
    }
}

fn hermitian_from(basis: Basis, f: impl Fn(usize, usize) -> Amplitude) -> ObservableMatrix {
    let n = basis.dim();
    let entries = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
    ObservableMatrix::new(basis, entries).expect("defining sums are Hermitian by construction")
}

/// R_{γγ'} = Σ_out ψ*(B_γ ; out) r(out) ψ(B_γ' ; out).
pub fn observable_matrix_4d(r: &OutcomeValues, c1: Direction, c2: Direction) -> ObservableMatrix {
    let chain = ExpansionChain::default();
    let psi: Vec<[Amplitude; 4]> = JointOutcome::ALL
        .iter()
        .map(|&b| JointOutcome::ALL.map(|out| chain.joint_uncoupled(b, out, c1, c2)))
        .collect();
    hermitian_from(Basis::JointZ, |i, j| {
        JointOutcome::ALL
            .iter()
            .map(|&out| psi[i][out.index()].conj() * r.get(out) * psi[j][out.index()])
            .sum()
    })
}

/// R_{pp'} = Σ_out ξ*(1, M_p ; out) r(out) ξ(1, M_p' ; out).
pub fn observable_matrix_3d(r: &OutcomeValues, c1: Direction, c2: Direction) -> ObservableMatrix {
    let chain = ExpansionChain::default();
    let xi: Vec<[Amplitude; 4]> = TripletProjection::ALL
        .iter()
        .map(|&mp| JointOutcome::ALL.map(|out| chain.xi(TotalSpin::Triplet, mp, out, c1, c2)))
        .collect();
    hermitian_from(Basis::CompoundZ, |i, j| {
        JointOutcome::ALL
            .iter()
            .map(|&out| xi[i][out.index()].conj() * r.get(out) * xi[j][out.index()])
            .sum()
    })
}

/// Re(v† R v); the imaginary part must vanish.
pub fn expectation(v: &StateVector, m: &ObservableMatrix) -> Result<f64> {
    check_compatible(v, m.basis, m.dim())?;
    let mut total = Complex64::new(0.0, 0.0);
    for (i, vi) in v.components.iter().enumerate() {
        for (j, vj) in v.components.iter().enumerate() {
            total += vi.conj() * m.entries[i][j] * vj;
        }
    }
    if total.im.abs() >= EXPECTATION_IMAG_TOL {
        return Err(Error::ComplexExpectation(total.im));
    }
    Ok(total.re)
}

/// ([1], [Σ_out |Ψ|² r(out)]).
pub fn scalar_representation(
    state: CompoundState,
    r: &OutcomeValues,
    c1: Direction,
    c2: Direction,
) -> Representation {
    let value: f64 = JointOutcome::ALL
        .iter()
        .map(|&out| compound_amplitude(state, out, c1, c2).norm_sqr() * r.get(out))
        .sum();
    Representation {
        state: StateVector {
            basis: Basis::Scalar,
            components: vec![Complex64::new(1.0, 0.0)],
        },
        operator: ObservableMatrix {
            basis: Basis::Scalar,
            entries: vec![vec![Complex64::new(value, 0.0)]],
        },
    }
}

/// Four-dimensional representation of any compound state.
pub fn representation_4d(
    state: CompoundState,
    r: &OutcomeValues,
    c1: Direction,
    c2: Direction,
) -> Representation {
    Representation {
        state: state_vector_4d(state),
        operator: observable_matrix_4d(r, c1, c2),
    }
}

/// Three-dimensional representation; only the triplet has one.
pub fn representation_3d(
    state: CompoundState,
    r: &OutcomeValues,
    c1: Direction,
    c2: Direction,
) -> Option<Representation> {
    (state.spin() == TotalSpin::Triplet).then(|| Representation {
        state: triplet_state_vector_3d(state.projection(), state.axis()),
        operator: observable_matrix_3d(r, c1, c2),
    })
}
