//! Probability amplitudes, Clebsch-Gordan coefficients, matrix representations
//! and correlations for a pair of spin-1/2 systems compounded into singlet and
//! triplet states.
//!
//! Every compound amplitude is available twice: as a closed form
//! ([`compound_amplitude`]) and through a numerical two-stage expansion over
//! the z-axis ([`compound_amplitude_oracle`]). The two share no arithmetic.
//!
//! ```
//! use spin_compound::{correlation, CompoundState, Direction};
//!
//! let c1 = Direction::new(0.4, 1.0).unwrap();
//! let c2 = Direction::new(1.9, 2.5).unwrap();
//! let singlet = CompoundState::singlet(Direction::Z);
//! assert!((correlation(singlet, c1, c2).value + c1.dot(&c2)).abs() < 1e-12);
//! ```

pub mod amplitudes;
pub mod cli;
pub mod compounding;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod probabilities;
pub mod types;
pub mod verify;

pub use amplitudes::{spin_half_amplitude, spin_one_amplitude, PhaseConvention};
pub use compounding::{
    clebsch_gordan, compound_amplitude, compound_amplitude_oracle, generalized_cg,
    joint_uncoupled_amplitude, singlet_amplitude, triplet_amplitude, xi_amplitude, CgTable,
    ExpansionChain,
};
pub use entanglement::{
    chsh, chsh_scan, correlation, correlation_values, sample_batches, sample_outcomes,
    singlet_correlation, triplet_correlation, ChshScan, CorrelationResult, SampleCounts,
};
pub use error::{Error, Result};
pub use matrix::{
    expectation, observable_matrix_3d, observable_matrix_4d, scalar_representation,
    singlet_state_vector, triplet_state_vector_3d, triplet_state_vector_4d, Basis,
    ObservableMatrix, OutcomeValues, Representation, StateVector,
};
pub use probabilities::{
    joint_probabilities, marginal_probability, ProbabilityQuadruple, Subsystem,
};
pub use types::{
    direction_dot, Amplitude, CompoundState, Direction, JointOutcome, SpinHalf, TotalSpin,
    TripletProjection,
};
