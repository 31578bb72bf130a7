use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Largest register a dense state vector is allowed to hold.
pub const MAX_QUBITS: usize = 20;

/// Tolerance on `|sum |a_i|^2 - 1|` accepted by [`StateVector::new`].
pub const NORM_TOL: f64 = 1e-10;

/// Dense pure state of `n` qubits.
///
/// Bit convention: qubit 0 is the most significant bit of the basis index.
/// For three qubits the amplitude of `|q0 q1 q2>` lives at index
/// `4*q0 + 2*q1 + q2`. Every module in this crate uses this ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps `amplitudes`, which must already be normalized.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_register(n_qubits, amplitudes.len())?;
        let norm_sq = norm_sq(&amplitudes);
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_register(n_qubits, amplitudes.len())?;
        let norm = norm_sq(&amplitudes).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized {
                norm_sq: norm * norm,
            });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_register(n_qubits, 1 << n_qubits.min(MAX_QUBITS))?;
        if index >= 1 << n_qubits {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Tensor product of single-qubit states, listed from qubit 0 upward.
    /// Each factor is normalized independently.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        let n = factors.len();
        check_register(n, 1 << n.min(MAX_QUBITS))?;
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if norm == 0.0 {
                return Err(Error::NotNormalized { norm_sq: 0.0 });
            }
            amplitudes = amplitudes
                .iter()
                .flat_map(|a| [a * f[0] / norm, a * f[1] / norm])
                .collect();
        }
        Self::normalized(n, amplitudes)
    }

    /// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_register(n_qubits, 1 << n_qubits.min(MAX_QUBITS))?;
        let amplitudes = (0..1usize << n_qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(n_qubits, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Same state multiplied by `exp(i * phase)`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let w = Complex64::from_polar(1.0, phase);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * w).collect(),
        }
    }

    /// Number of amplitudes with modulus above `tol`.
    pub fn support_size(&self, tol: f64) -> usize {
        self.amplitudes.iter().filter(|a| a.norm() > tol).count()
    }

    /// Value (0 or 1) of `qubit` in basis index `index`.
    #[inline]
    pub fn bit(&self, index: usize, qubit: usize) -> usize {
        qubit_bit(self.n_qubits, index, qubit)
    }
}

/// Value (0 or 1) of `qubit` in basis index `index` of an `n`-qubit register.
#[inline]
pub fn qubit_bit(n_qubits: usize, index: usize, qubit: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

fn norm_sq(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

fn check_register(n_qubits: usize, len: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "number of qubits must be in 1..={MAX_QUBITS}, got {n_qubits}"
        )));
    }
    if len != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            actual: len,
        });
    }
    Ok(())
}
