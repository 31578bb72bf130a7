//! Finite-size extrapolation by a least-squares polynomial in `1/N`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    /// Fit value at `1/N = 0`.
    pub value: f64,
    /// Root-mean-square fit residual.
    pub residual: f64,
    pub degree: usize,
}

/// Fits a polynomial in `1/N` of degree `min(points - 1, 2)`.
pub fn extrapolate(values: &BTreeMap<usize, f64>) -> Result<Extrapolation> {
    let degree = values.len().saturating_sub(1).min(MAX_DEGREE);
    extrapolate_with_degree(values, degree)
}

pub fn extrapolate_with_degree(values: &BTreeMap<usize, f64>, degree: usize) -> Result<Extrapolation> {
    if values.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 chain lengths, got {}",
            values.len()
        )));
    }
    if degree >= values.len() {
        return Err(Error::DegenerateFit(format!(
            "degree {degree} needs more than {} points",
            values.len()
        )));
    }
    if values.contains_key(&0) {
        return Err(Error::DegenerateFit("chain length 0".into()));
    }
    if let Some((n, v)) = values.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::DegenerateFit(format!("non-finite value {v} at N={n}")));
    }

    let rows = values.len();
    let a = DMatrix::from_fn(rows, degree + 1, |i, k| {
        let n = *values.keys().nth(i).unwrap() as f64;
        n.recip().powi(k as i32)
    });
    let b = DVector::from_iterator(rows, values.values().copied());
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-14 * smax) {
        return Err(Error::DegenerateFit(format!("ill-conditioned design matrix ({smin:e}/{smax:e})")));
    }
    let coef = svd
        .solve(&b, 1e-14 * smax)
        .map_err(|e| Error::DegenerateFit(e.to_string()))?;
    let r = &a * &coef - &b;
    Ok(Extrapolation {
        value: coef[0],
        residual: (r.norm_squared() / rows as f64).sqrt(),
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(points: &[(usize, f64)]) -> BTreeMap<usize, f64> {
        points.iter().copied().collect()
    }

    #[test]
    fn constant_sequence() {
        let e = extrapolate(&map(&[(12, 0.3), (14, 0.3), (16, 0.3)])).unwrap();
        assert!((e.value - 0.3).abs() < 1e-12);
    }

    #[test]
    fn linear_in_inverse_length() {
        let (a, b) = (0.61, -1.7);
        let pts: Vec<_> = [8, 10, 12, 14, 16].iter().map(|&n| (n, a + b / n as f64)).collect();
        let e = extrapolate_with_degree(&map(&pts), 1).unwrap();
        assert!((e.value - a).abs() < 1e-12);
        assert!(e.residual < 1e-13);
        let e = extrapolate(&map(&pts)).unwrap();
        assert!((e.value - a).abs() < 1e-12);
    }

    #[test]
    fn quadratic_is_exact_with_three_points() {
        let f = |n: f64| 2.0 - 3.0 / n + 5.0 / (n * n);
        let e = extrapolate(&map(&[(4, f(4.0)), (6, f(6.0)), (9, f(9.0))])).unwrap();
        assert_eq!(e.degree, 2);
        assert!((e.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(extrapolate(&map(&[(4, 1.0), (6, 1.0)])), Err(Error::DegenerateFit(_))));
        assert!(extrapolate(&map(&[(0, 1.0), (6, 1.0), (8, 1.0)])).is_err());
        assert!(extrapolate(&map(&[(4, f64::NAN), (6, 1.0), (8, 1.0)])).is_err());
        assert!(extrapolate_with_degree(&map(&[(4, 1.0), (6, 1.0), (8, 1.0)]), 3).is_err());
    }
}
