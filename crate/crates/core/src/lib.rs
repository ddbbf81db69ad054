//! Statevector simulation of a tripartite Wigner's-friend experiment.
//!
//! Three laboratories share a W state rotated by an angle theta; each
//! laboratory's friend records their signal particle onto half of a singlet
//! pair through a fusion gate (CNOT, postselection of the ancilla on zero,
//! and the projector's sign correction). The outside observers then choose,
//! per laboratory, between reading the friend's record and a joint
//! Bell-basis measurement. The eight resulting correlators feed a tripartite
//! correlation inequality whose deterministic-strategy bound is 1 while the
//! quantum statistics reach 3/2.
//!
//! The crate provides the gate set and circuits ([`gates`], [`circuit`]),
//! exact and sampled execution ([`sampling`]), the correlator and inequality
//! analysis with error propagation ([`analysis`]), and a deterministic
//! OpenQASM 2.0 exporter ([`qasm`]).

pub mod analysis;
pub mod circuit;
pub mod gates;
pub mod qasm;
pub mod rng;
pub mod sampling;
pub mod statevector;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("register of {n_qubits} qubits exceeds the supported maximum of {max}")]
    CapacityExceeded { n_qubits: usize, max: usize },
    #[error("bitstring length {got} does not match {expected} wires")]
    BitstringLength { expected: usize, got: usize },
    #[error("bitstrings may contain only '0' and '1', found {0:?}")]
    BadBitChar(char),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control and target are the same qubit {0}")]
    ControlEqualsTarget(usize),
    #[error("duplicate qubit {0} in query")]
    DuplicateQubit(usize),
    #[error("gate is not unitary (defect {defect:.3e})")]
    NonUnitaryGate { defect: f64 },
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("postselecting qubit {qubit} on {bit} has probability zero")]
    ImpossiblePostselection { qubit: usize, bit: u8 },
    #[error("unsupported instruction for export: {0}")]
    UnsupportedInstruction(String),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("counts table has no valid shots")]
    EmptyCounts,
    #[error("correlator set is missing setting {0}")]
    MissingSetting(String),
    #[error("theta grid is empty")]
    EmptyGrid,
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use analysis::{
    analytic_correlators, classical_bound_oracle, correlator_from_counts, evaluate,
    inequality_closed_form, inequality_value, propagate_uncertainty, theta_sweep,
    CorrelatorEstimate, CorrelatorSet, EvalMode, InequalityReport,
};
pub use circuit::{
    bell_singlet_circuit, fusion_demo_circuit, fusion_stage, scenario_circuit, setting_stage,
    w_state_rotation_circuit, w_state_unitary_circuit, Circuit, GateKind, Instruction,
    MeasurementSetting, WPrepMethod, WireMap,
};
pub use gates::{Gate2x2, WPrepAngles};
pub use qasm::export_qasm;
pub use sampling::{
    exact_wire_distribution, run_exact, run_fusion_demo, run_sampled, run_to_state,
    sample_wire_histogram, CountsTable, FusionDemo, OutcomeTriple, RunConfig, SamplingMode,
    WireHistogram,
};
pub use statevector::StateVector;
