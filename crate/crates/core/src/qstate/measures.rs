//! Global entanglement and its two-qubit-block generalizations, evaluated
//! by brute force on an explicit state vector.

use super::density::{linear_entropy, partial_trace, purity};
use super::state::StateVector;
use crate::error::{Error, Result};

/// Global entanglement `2 - (2/N) sum_j Tr(rho_j^2)`.
pub fn meyer_wallach(state: &StateVector) -> Result<f64> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "global entanglement needs at least 2 qubits, got {n}"
        )));
    }
    let mut sum = 0.0;
    for j in 0..n {
        sum += purity(&partial_trace(state, &[j])?);
    }
    Ok((2.0 - 2.0 * sum / n as f64).max(0.0))
}

/// Mean single-site linear entropy. Equal to [`meyer_wallach`]; kept as a
/// separate code path so the two can be checked against each other.
pub fn mean_single_site_linear_entropy(state: &StateVector) -> Result<f64> {
    let n = state.n_qubits();
    let mut sum = 0.0;
    for j in 0..n {
        sum += linear_entropy(&partial_trace(state, &[j])?);
    }
    Ok(sum / n as f64)
}

/// `G(2, l)` averaged over the open-chain pairs `(j, j + l)`,
/// `j = 0 .. N - l - 1`; no wrap-around.
pub fn g2_of_state(state: &StateVector, l: usize) -> Result<f64> {
    let n = state.n_qubits();
    check_separation(n, l)?;
    let pairs = n - l;
    let mut sum = 0.0;
    for j in 0..pairs {
        sum += purity(&partial_trace(state, &[j, j + l])?);
    }
    Ok(g2_from_mean_purity(sum / pairs as f64))
}

/// Cyclic variant of [`g2_of_state`]: averages over all `N` pairs
/// `(j, (j + l) mod N)`, suitable for rings.
pub fn g2_of_state_cyclic(state: &StateVector, l: usize) -> Result<f64> {
    let n = state.n_qubits();
    check_separation(n, l)?;
    let mut sum = 0.0;
    for j in 0..n {
        sum += purity(&partial_trace(state, &[j, (j + l) % n])?);
    }
    Ok(g2_from_mean_purity(sum / n as f64))
}

/// Mean of `G(2, l)` over `l = 1 .. N - 1`.
pub fn eg2_of_state(state: &StateVector) -> Result<f64> {
    let n = state.n_qubits();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "E_G^(2) needs at least 3 qubits, got {n}"
        )));
    }
    let mut sum = 0.0;
    for l in 1..n {
        sum += g2_of_state(state, l)?;
    }
    Ok(sum / (n - 1) as f64)
}

/// `(4/3)(1 - purity)`, the normalized linear entropy of a two-qubit block.
pub fn g2_from_mean_purity(mean_purity: f64) -> f64 {
    (4.0 / 3.0 * (1.0 - mean_purity)).max(0.0)
}

fn check_separation(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        return Err(Error::InvalidArgument(format!(
            "separation must be in 1..{n}, got {l}"
        )));
    }
    Ok(())
}
