//! Exact diagonalization of the finite periodic chain.

mod extrapolate;
mod hamiltonian;
mod lanczos;
mod oracle;

pub use extrapolate::{extrapolate, extrapolate_with_degree, Extrapolation, MAX_DEGREE};
pub use hamiltonian::{apply_hamiltonian, ChainSpec};
pub use lanczos::{
    dense_spectrum, ground_state, rayleigh_quotient, GroundStateResult, DEFAULT_TOL, DENSE_CHECK_MAX_QUBITS,
    KRYLOV_DIM, KRYLOV_DIM_LARGE, MAX_RESTARTS, START_SEED,
};
pub use oracle::{oracle_measures, report_from_ground_state, Frame, OracleReport, DEGENERATE_GAP};
