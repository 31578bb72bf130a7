use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};

/// Largest entry of `rho - rho^dagger` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Accepted deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as round-off rather than unphysical.
pub const PSD_TOL: f64 = 1e-8;
/// Eigenvalues below this contribute nothing to entropy sums (0 log 0 = 0).
pub const EIGEN_FLOOR: f64 = 1e-14;
/// Largest subsystem a partial trace may return (12 qubits).
pub const MAX_REDUCED_DIM: usize = 4096;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates with the default positivity tolerance [`PSD_TOL`].
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        Self::with_psd_tolerance(entries, PSD_TOL)
    }

    pub fn with_psd_tolerance(entries: DMatrix<Complex64>, psd_tol: f64) -> Result<Self> {
        let rho = Self::checked_hermitian(entries)?;
        let min = rho.min_eigenvalue();
        if min < -psd_tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "eigenvalue {min:e} below -{psd_tol:e}"
            )));
        }
        Ok(rho)
    }

    /// Shape, Hermiticity and trace checks only. Positivity is left to the
    /// caller, who usually wants to report the offending eigenvalue itself.
    pub(crate) fn checked_hermitian(entries: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r == 0 {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected a non-empty square matrix, got {r}x{c}"
            )));
        }
        let mut asym = 0.0f64;
        for i in 0..r {
            for j in i..r {
                asym = asym.max((entries[(i, j)] - entries[(j, i)].conj()).norm());
            }
        }
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max asymmetry {asym:e})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr}, expected 1"
            )));
        }
        Ok(Self { entries })
    }

    /// Used where positivity holds by construction (reduced pure states).
    pub(crate) fn from_trusted(entries: DMatrix<Complex64>) -> Self {
        Self { entries }
    }

    /// Projector `|psi><psi|`.
    pub fn pure(state: &StateVector) -> Self {
        let a = state.amplitudes();
        let d = a.len();
        Self {
            entries: DMatrix::from_fn(d, d, |i, j| a[i] * a[j].conj()),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: DMatrix::from_diagonal_element(dim, dim, Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    /// Real diagonal matrix; the weights must already sum to one.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let d = weights.len();
        let mut m = DMatrix::zeros(d, d);
        for (i, w) in weights.iter().enumerate() {
            m[(i, i)] = Complex64::new(*w, 0.0);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Largest entrywise distance to another matrix of the same size.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `Tr(rho^2)`, evaluated as the squared Frobenius norm.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// Normalized linear entropy `d/(d-1) (1 - Tr rho^2)`, in `[0, 1]`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    if rho.dim() == 1 {
        return 0.0;
    }
    (d / (d - 1.0) * (1.0 - purity(rho))).max(0.0)
}

/// `-Tr(rho log_base rho)`.
///
/// # Panics
/// If `log_base < 2`.
pub fn von_neumann_entropy(rho: &DensityMatrix, log_base: u32) -> f64 {
    von_neumann_entropy_with_floor(rho, log_base, EIGEN_FLOOR)
}

pub fn von_neumann_entropy_with_floor(rho: &DensityMatrix, log_base: u32, floor: f64) -> f64 {
    assert!(log_base >= 2, "logarithm base must be at least 2");
    let ln_base = f64::from(log_base).ln();
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&p| p > floor)
        .map(|p| -p * p.ln() / ln_base)
        .sum();
    s.max(0.0)
}

/// Wootters concurrence of a two-qubit state.
///
/// Writes `rho = W W^dagger` with `W = V diag(sqrt(p))` over the eigenvalues
/// above [`EIGEN_FLOOR`]; the square roots of the eigenvalues of
/// `rho rho_tilde` are then the singular values of `W^T (sy x sy) W`. This
/// avoids taking square roots of round-off eigenvalues, which would cost
/// half the working precision on pure states.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let eig = rho.entries().clone().symmetric_eigen();
    let mut w = eig.eigenvectors.clone();
    for (j, &p) in eig.eigenvalues.iter().enumerate() {
        let s = if p > EIGEN_FLOOR { p.sqrt() } else { 0.0 };
        w.column_mut(j).scale_mut(s);
    }
    let tau = w.transpose() * sigma_y_y() * &w;
    let mut s: Vec<f64> = tau.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

fn sigma_y_y() -> DMatrix<Complex64> {
    // sigma_y (x) sigma_y is real and anti-diagonal: diag^-1 (-1, 1, 1, -1)
    let mut m = DMatrix::zeros(4, 4);
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        m[(i, 3 - i)] = Complex64::new(s, 0.0);
    }
    m
}

/// Reduced state of the qubits in `keep`, tracing out all others.
///
/// Qubit `keep[0]` becomes the most significant bit of the reduced basis.
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    if keep.is_empty() {
        return Err(Error::InvalidArgument(
            "partial trace needs at least one kept qubit".into(),
        ));
    }
    for (i, &q) in keep.iter().enumerate() {
        if q >= n {
            return Err(Error::IndexOutOfRange {
                index: q,
                n_qubits: n,
            });
        }
        if keep[..i].contains(&q) {
            return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
        }
    }
    if keep.len() > 12 || (1usize << keep.len()) > MAX_REDUCED_DIM {
        return Err(Error::InvalidArgument(format!(
            "reduced dimension 2^{} exceeds the cap of {MAX_REDUCED_DIM}",
            keep.len()
        )));
    }
    let env: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let keep_offsets = scatter_table(keep, n);
    let env_offsets = scatter_table(&env, n);
    let dk = keep_offsets.len();

    let amps = state.amplitudes();
    let mut rho = DMatrix::<Complex64>::zeros(dk, dk);
    let mut column = vec![Complex64::new(0.0, 0.0); dk];
    for &e in &env_offsets {
        for (slot, &k) in column.iter_mut().zip(&keep_offsets) {
            *slot = amps[e | k];
        }
        for a in 0..dk {
            let ca = column[a];
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for b in a..dk {
                rho[(a, b)] += ca * column[b].conj();
            }
        }
    }
    for a in 0..dk {
        rho[(a, a)].im = 0.0;
        for b in a + 1..dk {
            rho[(b, a)] = rho[(a, b)].conj();
        }
    }
    Ok(DensityMatrix::from_trusted(rho))
}

/// Full-register offsets of every assignment of `qubits`, with `qubits[0]`
/// as the most significant bit of the local index.
fn scatter_table(qubits: &[usize], n: usize) -> Vec<usize> {
    let m = qubits.len();
    (0..1usize << m)
        .map(|local| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                acc | (((local >> (m - 1 - pos)) & 1) << (n - 1 - q))
            })
        })
        .collect()
}
