use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::{DensityMatrix, PSD_TOL};
use crate::error::{Error, Result};

/// Residual imaginary part tolerated when reading a real Pauli coefficient.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Index into a [`CorrelatorTable`]: identity, x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[one, o], [o, one]],
            Pauli::X => [[o, one], [one, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[one, o], [o, -one]],
        }
    }
}

/// Real coefficients `p[a][b] = <sigma_a (x) sigma_b>` of a two-qubit state,
/// so that `rho = 1/4 sum_ab p[a][b] sigma_a (x) sigma_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorTable {
    p: [[f64; 4]; 4],
}

impl CorrelatorTable {
    /// Table of the maximally mixed state: only `p[I][I] = 1`.
    pub fn identity() -> Self {
        let mut p = [[0.0; 4]; 4];
        p[0][0] = 1.0;
        Self { p }
    }

    /// Checks normalization and that every entry lies in `[-1, 1]`.
    pub fn new(p: [[f64; 4]; 4]) -> Result<Self> {
        if (p[0][0] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "p[0][0] must be 1, got {}",
                p[0][0]
            )));
        }
        if let Some(v) = p.iter().flatten().find(|v| !(v.abs() <= 1.0 + 1e-9)) {
            return Err(Error::InvalidArgument(format!(
                "correlator {v} outside [-1, 1]"
            )));
        }
        Ok(Self { p })
    }

    pub fn get(&self, a: Pauli, b: Pauli) -> f64 {
        self.p[a as usize][b as usize]
    }

    pub fn set(&mut self, a: Pauli, b: Pauli, value: f64) {
        self.p[a as usize][b as usize] = value;
    }

    pub fn as_array(&self) -> &[[f64; 4]; 4] {
        &self.p
    }
}

/// `sigma_a (x) sigma_b` as a 4x4 matrix, first factor on the high bit.
fn pauli_product(a: Pauli, b: Pauli) -> DMatrix<Complex64> {
    let (ma, mb) = (a.matrix(), b.matrix());
    DMatrix::from_fn(4, 4, |r, c| ma[r >> 1][c >> 1] * mb[r & 1][c & 1])
}

/// Expands a two-qubit density matrix in the Pauli product basis.
pub fn pauli_decompose(rho: &DensityMatrix) -> Result<CorrelatorTable> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let mut p = [[0.0; 4]; 4];
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let sigma = pauli_product(a, b);
            // Tr(sigma rho) without forming the product
            let tr: Complex64 = (0..4)
                .flat_map(|r| (0..4).map(move |c| (r, c)))
                .map(|(r, c)| sigma[(r, c)] * rho.entries()[(c, r)])
                .sum();
            if tr.im.abs() > IMAG_RESIDUE_TOL {
                return Err(Error::InvalidDensityMatrix(format!(
                    "imaginary Pauli coefficient {:e} for ({a:?}, {b:?})",
                    tr.im
                )));
            }
            p[a as usize][b as usize] = tr.re;
        }
    }
    Ok(CorrelatorTable { p })
}

/// Reassembles the density matrix of a correlator table, rejecting tables
/// whose matrix has an eigenvalue below `-PSD_TOL`.
pub fn rho_from_pauli(table: &CorrelatorTable) -> Result<DensityMatrix> {
    let m = assemble(table);
    let rho = DensityMatrix::checked_hermitian(m)?;
    let min = rho.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::UnphysicalTable {
            min_eigenvalue: min,
        });
    }
    Ok(rho)
}

fn assemble(table: &CorrelatorTable) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(4, 4);
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let v = table.get(a, b);
            if v != 0.0 {
                m += pauli_product(a, b) * Complex64::new(0.25 * v, 0.0);
            }
        }
    }
    m
}

/// `Tr(rho^2) = 1/4 sum_ab p_ab^2`, from orthogonality of Pauli products.
pub fn purity_from_pauli(table: &CorrelatorTable) -> f64 {
    0.25 * table.p.iter().flatten().map(|v| v * v).sum::<f64>()
}

/// Single-qubit state `(I + x sigma_x + y sigma_y + z sigma_z) / 2`.
pub fn bloch_rho(x: f64, y: f64, z: f64) -> Result<DensityMatrix> {
    let h = |re: f64, im: f64| Complex64::new(re, im);
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[h(0.5 * (1.0 + z), 0.0), h(0.5 * x, -0.5 * y), h(0.5 * x, 0.5 * y), h(0.5 * (1.0 - z), 0.0)],
    );
    let rho = DensityMatrix::checked_hermitian(m)?;
    let r = (x * x + y * y + z * z).sqrt();
    let min = 0.5 * (1.0 - r);
    if min < -PSD_TOL {
        return Err(Error::UnphysicalTable {
            min_eigenvalue: min,
        });
    }
    Ok(rho)
}
