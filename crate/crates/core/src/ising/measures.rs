use super::correlators::{single_site_rho, two_site_purity, IsingPoint};
use super::quadrature::QuadratureSpec;
use crate::error::{Error, Result};
use crate::qstate::{g2_from_mean_purity, linear_entropy, von_neumann_entropy};

/// Measures of the infinite chain at one coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingMeasures {
    pub lambda: f64,
    pub eg1: f64,
    /// `G(2, l)` for `l = 1..=l_max`.
    pub g2l: Vec<f64>,
    /// Mean of `g2l`.
    pub eg2: f64,
    /// Single-site von Neumann entropy, base 2.
    pub sv: f64,
}

impl IsingPoint {
    /// Evaluates every measure from this point's cached correlators.
    pub fn measures(&self) -> Result<IsingMeasures> {
        let rho1 = single_site_rho(self)?;
        let g2l = (1..=self.l_max())
            .map(|r| Ok(g2_from_mean_purity(two_site_purity(self, r)?)))
            .collect::<Result<Vec<_>>>()?;
        let eg2 = if g2l.is_empty() {
            f64::NAN
        } else {
            g2l.iter().sum::<f64>() / g2l.len() as f64
        };
        Ok(IsingMeasures {
            lambda: self.lambda(),
            eg1: linear_entropy(&rho1),
            g2l,
            eg2,
            sv: von_neumann_entropy(&rho1, 2),
        })
    }
}

/// `E_G^(1)`, the single-site linear entropy `1 - <sx>^2 - <sz>^2`.
pub fn eg1_ising(lambda: f64, quad: &QuadratureSpec) -> Result<f64> {
    let p = IsingPoint::new(lambda, 0, quad)?;
    Ok(linear_entropy(&single_site_rho(&p)?))
}

/// `G(2, l)`; translation invariance leaves a single pair to evaluate.
/// Above `lambda = 1` the value is an upper bound, see [`two_site_purity`].
pub fn g2l_ising(lambda: f64, l: usize, quad: &QuadratureSpec) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidArgument("separation must be at least 1".into()));
    }
    let p = IsingPoint::new(lambda, l, quad)?;
    Ok(g2_from_mean_purity(two_site_purity(&p, l)?))
}

/// Mean of `G(2, l)` over `l = 1..=l_max`.
pub fn eg2_ising(lambda: f64, l_max: usize, quad: &QuadratureSpec) -> Result<f64> {
    if l_max == 0 {
        return Err(Error::InvalidArgument("l_max must be at least 1".into()));
    }
    Ok(IsingPoint::new(lambda, l_max, quad)?.measures()?.eg2)
}

/// `lim_{l -> inf} G(2, l)`, from clustering: `xx -> <sx>^2`, `yy -> 0`,
/// `zz -> <sz>^2`, with the `xz` correlator kept at zero as in
/// [`two_site_purity`].
pub fn g2_saturation_ising(lambda: f64, quad: &QuadratureSpec) -> Result<f64> {
    let p = IsingPoint::new(lambda, 0, quad)?;
    let (x2, z2) = (p.sx_mean().powi(2), p.sz_mean().powi(2));
    let purity = 0.25 * (1.0 + 2.0 * x2 + 2.0 * z2 + x2 * x2 + z2 * z2);
    Ok(g2_from_mean_purity(purity))
}
