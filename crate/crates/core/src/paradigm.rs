//! The GHZ, W and EPR-pair families with closed-form measure values.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::qstate::{StateVector, MAX_QUBITS};

type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Paradigm {
    /// `(|0...0> + |1...1>) / sqrt(2)`
    Ghz,
    /// Equal superposition of all single-excitation basis states.
    W,
    /// Bell pairs `|Phi+>` on qubits `(0,1), (2,3), ...`.
    Epr,
}

impl Paradigm {
    pub const ALL: [Paradigm; 3] = [Paradigm::Ghz, Paradigm::W, Paradigm::Epr];
}

impl fmt::Display for Paradigm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Paradigm::Ghz => "GHZ",
            Paradigm::W => "W",
            Paradigm::Epr => "EPR",
        })
    }
}

impl FromStr for Paradigm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GHZ" => Ok(Paradigm::Ghz),
            "W" => Ok(Paradigm::W),
            "EPR" => Ok(Paradigm::Epr),
            _ => Err(Error::InvalidArgument(format!("unknown state family {s:?}"))),
        }
    }
}

/// A family together with its qubit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParadigmFamily {
    tag: Paradigm,
    n: usize,
}

impl ParadigmFamily {
    /// `n >= 2`; EPR additionally needs `n` even.
    pub fn new(tag: Paradigm, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "{tag} needs at least 2 qubits, got {n}"
            )));
        }
        if tag == Paradigm::Epr && !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "EPR needs an even number of qubits, got {n}"
            )));
        }
        Ok(Self { tag, n })
    }

    pub fn tag(&self) -> Paradigm {
        self.tag
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `(E_G^(1), G(2,1), E_G^(2))` for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureTriple {
    pub eg1: f64,
    pub g21: f64,
    pub eg2: f64,
}

impl MeasureTriple {
    pub fn max_abs_diff(&self, other: &MeasureTriple) -> f64 {
        (self.eg1 - other.eg1)
            .abs()
            .max((self.g21 - other.g21).abs())
            .max((self.eg2 - other.eg2).abs())
    }
}

/// Closed-form triple in exact rational arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactTriple {
    pub eg1: Ratio<i64>,
    pub g21: Ratio<i64>,
    pub eg2: Ratio<i64>,
}

impl ExactTriple {
    pub fn to_f64(&self) -> MeasureTriple {
        let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
        MeasureTriple {
            eg1: f(self.eg1),
            g21: f(self.g21),
            eg2: f(self.eg2),
        }
    }
}

pub fn build_state(family: ParadigmFamily) -> Result<StateVector> {
    let n = family.n;
    if n > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "{} qubits exceeds the dense cap of {MAX_QUBITS}",
            n
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![zero; 1 << n];
    match family.tag {
        Paradigm::Ghz => {
            a[0] = Complex64::new(1.0, 0.0);
            a[(1 << n) - 1] = Complex64::new(1.0, 0.0);
        }
        Paradigm::W => {
            for j in 0..n {
                a[1 << j] = Complex64::new(1.0, 0.0);
            }
        }
        Paradigm::Epr => {
            // each pair contributes bits 00 or 11 at positions (2p, 2p+1)
            let pairs = n / 2;
            for choice in 0..1usize << pairs {
                let idx = (0..pairs)
                    .filter(|p| choice >> p & 1 == 1)
                    .fold(0usize, |acc, p| acc | (0b11 << (2 * p)));
                a[idx] = Complex64::new(1.0, 0.0);
            }
        }
    }
    StateVector::normalized(n, a)
}

/// Exact closed forms; needs `n >= 3` since `E_G^(2)` is undefined below.
pub fn closed_form_exact(family: ParadigmFamily) -> Result<ExactTriple> {
    let n = family.n as i64;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "closed forms need at least 3 qubits, got {n}"
        )));
    }
    let q = |a: i64, b: i64| Q::new(a, b);
    Ok(match family.tag {
        Paradigm::Ghz => ExactTriple {
            eg1: q(1, 1),
            g21: q(2, 3),
            eg2: q(2, 3),
        },
        Paradigm::Epr => ExactTriple {
            eg1: q(1, 1),
            g21: q(n - 2, 2 * (n - 1)),
            eg2: q((2 * n - 1) * (n - 2), 2 * (n - 1) * (n - 1)),
        },
        Paradigm::W => {
            let g = q(16 * (n - 2), 3 * n * n);
            ExactTriple {
                eg1: q(4 * (n - 1), n * n),
                g21: g,
                eg2: g,
            }
        }
    })
}

pub fn closed_form(family: ParadigmFamily) -> Result<MeasureTriple> {
    closed_form_exact(family).map(|t| t.to_f64())
}

/// `N -> infinity` limits of the closed forms.
pub fn thermodynamic_limits(tag: Paradigm) -> MeasureTriple {
    match tag {
        Paradigm::Ghz => MeasureTriple {
            eg1: 1.0,
            g21: 2.0 / 3.0,
            eg2: 2.0 / 3.0,
        },
        Paradigm::Epr => MeasureTriple {
            eg1: 1.0,
            g21: 0.5,
            eg2: 1.0,
        },
        Paradigm::W => MeasureTriple {
            eg1: 0.0,
            g21: 0.0,
            eg2: 0.0,
        },
    }
}
