//! Dense state-vector and density-matrix machinery.

mod density;
mod measures;
mod pauli;
mod state;

pub use density::{
    concurrence, linear_entropy, partial_trace, purity, von_neumann_entropy,
    von_neumann_entropy_with_floor, DensityMatrix, EIGEN_FLOOR, HERMITIAN_TOL, MAX_REDUCED_DIM,
    PSD_TOL, TRACE_TOL,
};
pub use measures::{
    eg2_of_state, g2_from_mean_purity, g2_of_state, g2_of_state_cyclic,
    mean_single_site_linear_entropy, meyer_wallach,
};
pub use pauli::{
    bloch_rho, pauli_decompose, purity_from_pauli, rho_from_pauli, CorrelatorTable, Pauli,
    IMAG_RESIDUE_TOL,
};
pub use state::{qubit_bit, StateVector, MAX_QUBITS, NORM_TOL};
