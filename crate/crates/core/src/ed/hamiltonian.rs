use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::MAX_QUBITS;

/// Periodic chain `H = lambda sum_i sx_i sx_{i+1} + sum_i sz_i`,
/// `sigma_{N+1} = sigma_1`.
///
/// Site `i` is qubit `i` (most significant bit first). `|0>` has `sz = +1`,
/// so the field term favours `|1...1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    n_qubits: usize,
    lambda: f64,
}

impl ChainSpec {
    pub fn new(n_qubits: usize, lambda: f64) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::InvalidArgument(format!(
                "chain length must be in 2..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "coupling must be finite and non-negative, got {lambda}"
            )));
        }
        Ok(Self { n_qubits, lambda })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Bit masks flipped by each bond term, one per site (N of them).
    fn bond_masks(&self) -> Vec<usize> {
        let n = self.n_qubits;
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (1 << (n - 1 - i)) | (1 << (n - 1 - j))
            })
            .collect()
    }

    /// `out = H psi` for real amplitudes.
    pub(crate) fn apply_real(&self, psi: &[f64], out: &mut [f64]) {
        let n = self.n_qubits as f64;
        let masks = self.bond_masks();
        for (i, o) in out.iter_mut().enumerate() {
            let field = n - 2.0 * i.count_ones() as f64;
            let hop: f64 = masks.iter().map(|m| psi[i ^ m]).sum();
            *o = field * psi[i] + self.lambda * hop;
        }
    }

    /// Dense matrix, for small chains only.
    pub fn dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut h = DMatrix::zeros(d, d);
        let mut e = vec![0.0; d];
        let mut col = vec![0.0; d];
        for j in 0..d {
            e[j] = 1.0;
            self.apply_real(&e, &mut col);
            e[j] = 0.0;
            for (i, v) in col.iter().enumerate() {
                h[(i, j)] = *v;
            }
        }
        h
    }
}

/// Matrix-free `H psi`.
pub fn apply_hamiltonian(spec: &ChainSpec, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    if psi.len() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            actual: psi.len(),
        });
    }
    let re: Vec<f64> = psi.iter().map(|z| z.re).collect();
    let im: Vec<f64> = psi.iter().map(|z| z.im).collect();
    let mut hre = vec![0.0; re.len()];
    let mut him = vec![0.0; im.len()];
    spec.apply_real(&re, &mut hre);
    spec.apply_real(&im, &mut him);
    Ok(hre
        .into_iter()
        .zip(him)
        .map(|(r, i)| Complex64::new(r, i))
        .collect())
}
