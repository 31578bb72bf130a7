//! Multipartite entanglement measures for explicit qubit states and for the
//! infinite transverse-field Ising chain.
//!
//! * [`qstate`]: dense states, partial traces, entropies and the global
//!   entanglement family `E_G^(1)`, `G(2, l)`, `E_G^(2)`.
//! * [`paradigm`]: GHZ, W and EPR-pair states with their closed-form values.
//! * [`ising`]: thermodynamic-limit correlators from quadrature and Toeplitz
//!   determinants, and the measures built from them.
//! * [`ed`]: exact diagonalization of finite periodic chains, used as an
//!   independent reference for [`ising`].
//! * [`runner`]: parameter sweeps and CSV output behind the `globent` CLI.

// `!(a < b)` is used deliberately so NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ed;
pub mod error;
pub mod ising;
pub mod paradigm;
pub mod qstate;
pub mod report;
pub mod runner;

pub use error::{Error, Result};
