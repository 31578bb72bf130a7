//! Ground-state correlators of the infinite transverse-field Ising chain.
//!
//! All single- and two-site quantities follow from one family of integrals
//!
//! ```text
//! g(l) = (1/pi) int_0^pi [cos(l k) + lambda cos((l+1) k)] / D(k) dk
//! D(k) = sqrt(1 + lambda^2 + 2 lambda cos k)
//! ```
//!
//! with `<sz> = g(0)`, `<sz_1 sz_{1+r}> = g(0)^2 - g(r) g(-r)`, and the `xx`
//! and `yy` correlators at separation `r` given by `r x r` Toeplitz
//! determinants of `g`. Signs follow the ferromagnetic frame
//! `H = -lambda sum sx sx - sum sz`; see [`crate::ed`] for the mapping to the
//! antiferromagnetic form used by the finite-chain solver.
//!
//! The square root in `D(k)` matters: without it the critical
//! magnetization comes out as `1/2` instead of `2/pi`. [`Denominator`]
//! keeps both readings so the finite-size oracle can tell them apart.

use nalgebra::DMatrix;

use super::quadrature::{integrate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::qstate::{
    bloch_rho, purity, purity_from_pauli, rho_from_pauli, CorrelatorTable, DensityMatrix, Pauli,
};

/// Largest `|l|` accepted by [`g_correlator`].
pub const MAX_G_INDEX: i64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    /// `sqrt(1 + lambda^2 + 2 lambda cos k)`, the dispersion of the chain.
    SquareRoot,
    /// `1 + lambda^2 + 2 lambda cos k` without the root.
    Unrooted,
}

/// Size of the Toeplitz matrix for a spin separation `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToeplitzSize {
    /// `r x r`
    Separation,
    /// `(r - 1) x (r - 1)`
    SeparationMinusOne,
}

impl ToeplitzSize {
    fn rows(self, separation: usize) -> usize {
        match self {
            ToeplitzSize::Separation => separation,
            ToeplitzSize::SeparationMinusOne => separation.saturating_sub(1),
        }
    }
}

pub fn g_correlator(lambda: f64, l: i64, quad: &QuadratureSpec) -> Result<f64> {
    g_correlator_with(lambda, l, quad, Denominator::SquareRoot)
}

/// `g(l)` as a single combined integral.
///
/// The numerator is evaluated as
/// `(1 - lambda) cos(l k) + 2 lambda cos((l + 1/2) k) cos(k/2)` and the
/// squared dispersion as `(1 - lambda)^2 + 4 lambda cos^2(k/2)`; both vanish
/// together at `k = pi` when `lambda = 1` and these forms keep the ratio
/// accurate there.
pub fn g_correlator_with(
    lambda: f64,
    l: i64,
    quad: &QuadratureSpec,
    denominator: Denominator,
) -> Result<f64> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "coupling must be finite and non-negative, got {lambda}"
        )));
    }
    if l.abs() > MAX_G_INDEX {
        return Err(Error::InvalidArgument(format!(
            "|l| must not exceed {MAX_G_INDEX}, got {l}"
        )));
    }
    quad.validate()?;
    if lambda == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    let lf = l as f64;
    let one_minus = 1.0 - lambda;
    let integrand = |k: f64| {
        let half = (0.5 * k).cos();
        let num = one_minus * (lf * k).cos() + 2.0 * lambda * ((lf + 0.5) * k).cos() * half;
        let d2 = one_minus * one_minus + 4.0 * lambda * half * half;
        let den = match denominator {
            Denominator::SquareRoot => d2.sqrt(),
            Denominator::Unrooted => d2,
        };
        num / den
    };
    integrate(integrand, 0.0, std::f64::consts::PI, quad)
        .map(|q| q.value / std::f64::consts::PI)
        .map_err(|nc| Error::QuadratureNonConvergence {
            lambda,
            l,
            nodes: nc.nodes,
            estimate: nc.estimate / std::f64::consts::PI,
            error: nc.error / std::f64::consts::PI,
        })
}

/// Spontaneous magnetization along x: zero for `lambda <= 1`, else
/// `(1 - lambda^-2)^(1/8)`.
pub fn sx_mean(lambda: f64) -> f64 {
    if lambda <= 1.0 {
        0.0
    } else {
        (1.0 - lambda.powi(-2)).powf(0.125)
    }
}

/// Determinant of the `size x size` matrix `A[j][k] = entry(j - k)`, by LU
/// with partial pivoting. The empty determinant is 1.
pub fn toeplitz_determinant(size: usize, entry: impl Fn(i64) -> f64) -> f64 {
    if size == 0 {
        return 1.0;
    }
    DMatrix::from_fn(size, size, |j, k| entry(j as i64 - k as i64))
        .lu()
        .determinant()
}

/// All analytic quantities at one coupling, with `g` cached for
/// `l in [-l_max - 1, l_max + 1]` and correlators for separations
/// `1..=l_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingPoint {
    lambda: f64,
    l_max: usize,
    g: Vec<f64>,
    sx_mean: f64,
    sz_mean: f64,
    xx: Vec<f64>,
    yy: Vec<f64>,
    zz: Vec<f64>,
}

impl IsingPoint {
    pub fn new(lambda: f64, l_max: usize, quad: &QuadratureSpec) -> Result<Self> {
        if l_max as i64 + 1 > MAX_G_INDEX {
            return Err(Error::InvalidArgument(format!(
                "separation {l_max} too large"
            )));
        }
        let reach = l_max as i64 + 1;
        let g = (-reach..=reach)
            .map(|l| g_correlator(lambda, l, quad))
            .collect::<Result<Vec<_>>>()?;
        let mut point = Self {
            lambda,
            l_max,
            sz_mean: g[reach as usize],
            g,
            sx_mean: sx_mean(lambda),
            xx: Vec::with_capacity(l_max),
            yy: Vec::with_capacity(l_max),
            zz: Vec::with_capacity(l_max),
        };
        for r in 1..=l_max {
            let xx = xx_correlator(&point, r)?;
            let yy = yy_correlator(&point, r)?;
            let zz = zz_correlator(&point, r)?;
            point.xx.push(xx);
            point.yy.push(yy);
            point.zz.push(zz);
        }
        Ok(point)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// Cached `g(l)`, if `l` is within reach.
    pub fn g(&self, l: i64) -> Option<f64> {
        let reach = self.l_max as i64 + 1;
        (l.abs() <= reach).then(|| self.g[(l + reach) as usize])
    }

    pub fn sx_mean(&self) -> f64 {
        self.sx_mean
    }

    pub fn sz_mean(&self) -> f64 {
        self.sz_mean
    }

    /// Cached `<sx_1 sx_{1+r}>` for `1 <= r <= l_max`.
    pub fn xx(&self, r: usize) -> Option<f64> {
        r.checked_sub(1).and_then(|i| self.xx.get(i).copied())
    }

    pub fn yy(&self, r: usize) -> Option<f64> {
        r.checked_sub(1).and_then(|i| self.yy.get(i).copied())
    }

    pub fn zz(&self, r: usize) -> Option<f64> {
        r.checked_sub(1).and_then(|i| self.zz.get(i).copied())
    }

    fn g_checked(&self, l: i64) -> Result<f64> {
        self.g(l).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "g({l}) not available at l_max = {}",
                self.l_max
            ))
        })
    }
}

fn check_separation(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("separation must be at least 1".into()));
    }
    Ok(())
}

/// Determinant with entries `g(j - k + shift)`; propagates a missing `g`.
fn g_toeplitz(point: &IsingPoint, rows: usize, shift: i64) -> Result<f64> {
    for d in -(rows as i64 - 1)..=(rows as i64 - 1) {
        point.g_checked(d + shift)?;
    }
    Ok(toeplitz_determinant(rows, |d| {
        point.g(d + shift).expect("checked above")
    }))
}

/// `<sx_1 sx_{1+r}>`: Toeplitz determinant with entries `g(j - k - 1)`.
pub fn xx_correlator(point: &IsingPoint, r: usize) -> Result<f64> {
    xx_correlator_sized(point, r, ToeplitzSize::Separation)
}

pub fn xx_correlator_sized(point: &IsingPoint, r: usize, size: ToeplitzSize) -> Result<f64> {
    check_separation(r)?;
    g_toeplitz(point, size.rows(r), -1)
}

/// `<sy_1 sy_{1+r}>`: Toeplitz determinant with entries `g(j - k + 1)`.
pub fn yy_correlator(point: &IsingPoint, r: usize) -> Result<f64> {
    yy_correlator_sized(point, r, ToeplitzSize::Separation)
}

pub fn yy_correlator_sized(point: &IsingPoint, r: usize, size: ToeplitzSize) -> Result<f64> {
    check_separation(r)?;
    g_toeplitz(point, size.rows(r), 1)
}

/// `<sz_1 sz_{1+r}> = <sz>^2 - g(r) g(-r)`.
pub fn zz_correlator(point: &IsingPoint, r: usize) -> Result<f64> {
    check_separation(r)?;
    let r = r as i64;
    Ok(point.sz_mean.powi(2) - point.g_checked(r)? * point.g_checked(-r)?)
}

/// `(I + <sx> sx + <sz> sz) / 2`; `<sy>` vanishes by symmetry.
pub fn single_site_rho(point: &IsingPoint) -> Result<DensityMatrix> {
    bloch_rho(point.sx_mean, 0.0, point.sz_mean).map_err(|e| unphysical(point, 0, e))
}

/// Pauli table of the pair at separation `r`. The `xz` correlator is set to
/// zero: exact for `lambda <= 1`, and the upper-bound choice above.
pub fn two_site_table(point: &IsingPoint, r: usize) -> Result<CorrelatorTable> {
    let (xx, yy, zz) = match (point.xx(r), point.yy(r), point.zz(r)) {
        (Some(xx), Some(yy), Some(zz)) => (xx, yy, zz),
        _ => (
            xx_correlator(point, r)?,
            yy_correlator(point, r)?,
            zz_correlator(point, r)?,
        ),
    };
    let mut t = CorrelatorTable::identity();
    t.set(Pauli::I, Pauli::X, point.sx_mean);
    t.set(Pauli::X, Pauli::I, point.sx_mean);
    t.set(Pauli::I, Pauli::Z, point.sz_mean);
    t.set(Pauli::Z, Pauli::I, point.sz_mean);
    t.set(Pauli::X, Pauli::X, xx);
    t.set(Pauli::Y, Pauli::Y, yy);
    t.set(Pauli::Z, Pauli::Z, zz);
    Ok(t)
}

/// The pair state as a validated density matrix.
///
/// Only exact for `lambda <= 1`. Above the critical point the table with
/// `xz = 0` is not positive semidefinite (its lowest eigenvalue sits between
/// about -0.03 and -0.12 on `(1, 5]`), so this returns
/// [`Error::UnphysicalIsingState`] there; use [`two_site_purity`] for the
/// bound on the measure.
pub fn two_site_rho(point: &IsingPoint, r: usize) -> Result<DensityMatrix> {
    rho_from_pauli(&two_site_table(point, r)?).map_err(|e| unphysical(point, r, e))
}

/// `Tr(rho_pair^2)` at separation `r`.
///
/// For `lambda <= 1` this is the purity of the validated state from
/// [`two_site_rho`]. For `lambda > 1` it is `1/4 sum p_ab^2` of the table
/// with `xz = 0`; dropping that coefficient can only lower the sum, so the
/// result is a lower bound on the purity and `G(2, r)` built from it is an
/// upper bound.
pub fn two_site_purity(point: &IsingPoint, r: usize) -> Result<f64> {
    if point.lambda <= 1.0 {
        Ok(purity(&two_site_rho(point, r)?))
    } else {
        Ok(purity_from_pauli(&two_site_table(point, r)?))
    }
}

fn unphysical(point: &IsingPoint, separation: usize, e: Error) -> Error {
    match e {
        Error::UnphysicalTable { min_eigenvalue } => Error::UnphysicalIsingState {
            lambda: point.lambda,
            separation,
            min_eigenvalue,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::quadrature::QuadratureRule;
    use std::f64::consts::PI;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    /// Independent route for `lambda < 1`: the integrand continued to an
    /// even 2 pi-periodic function is analytic, so the plain trapezoid rule
    /// on the textbook form converges geometrically.
    fn g_trapezoid(lambda: f64, l: i64) -> f64 {
        let m = 20_000;
        let h = PI / m as f64;
        let f = |k: f64| {
            ((l as f64 * k).cos() + lambda * ((l + 1) as f64 * k).cos())
                / (1.0 + lambda * lambda + 2.0 * lambda * k.cos()).sqrt()
        };
        let inner: f64 = (1..m).map(|i| f(i as f64 * h)).sum();
        (inner + 0.5 * (f(0.0) + f(PI))) * h / PI
    }

    #[test]
    fn g_at_zero_coupling() {
        assert_eq!(g_correlator(0.0, 0, &quad()).unwrap(), 1.0);
        for l in [-3, -1, 1, 2, 7] {
            assert_eq!(g_correlator(0.0, l, &quad()).unwrap(), 0.0);
        }
    }

    #[test]
    fn g_at_critical_coupling_matches_closed_form() {
        // at lambda = 1 the integrand collapses to cos((l + 1/2) k) / pi,
        // so g(l) = 2 (-1)^l / (pi (2l + 1))
        for l in -20i64..=20 {
            let exact = 2.0 * (-1f64).powi(l as i32) / (PI * (2 * l + 1) as f64);
            let g = g_correlator(1.0, l, &quad()).unwrap();
            assert!((g - exact).abs() < 1e-10, "l = {l}: {g} vs {exact}");
        }
        assert!((g_correlator(1.0, 0, &quad()).unwrap() - 2.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn g_matches_trapezoid_oracle_off_criticality() {
        for lambda in [0.2, 0.5, 0.8, 0.95] {
            for l in [-4i64, -1, 0, 1, 3, 10] {
                let g = g_correlator(lambda, l, &quad()).unwrap();
                let oracle = g_trapezoid(lambda, l);
                assert!((g - oracle).abs() < 1e-10, "lambda={lambda} l={l}: {g} vs {oracle}");
            }
        }
    }

    #[test]
    fn rules_agree_and_tightening_changes_little() {
        let gl = QuadratureSpec {
            rule: QuadratureRule::CompositeGaussLegendre,
            max_nodes: 1 << 16,
            ..quad()
        };
        let fine = QuadratureSpec {
            max_nodes: 1 << 16,
            rel_tol: 1e-13,
            ..quad()
        };
        for lambda in [0.3, 0.9, 1.0, 1.5, 3.0] {
            for l in -16i64..=16 {
                let g = g_correlator(lambda, l, &quad()).unwrap();
                let g_fine = g_correlator(lambda, l, &fine).unwrap();
                assert!((g - g_fine).abs() < 1e-10);
                if lambda != 1.0 {
                    let g_gl = g_correlator(lambda, l, &gl).unwrap();
                    assert!((g - g_gl).abs() < 1e-10, "lambda={lambda} l={l}");
                }
            }
        }
    }

    #[test]
    fn default_budget_suffices_near_criticality() {
        for lambda in [0.999, 0.9999, 1.0, 1.0001, 1.001] {
            for l in [-64i64, -51, -1, 0, 1, 50, 64] {
                g_correlator(lambda, l, &quad()).unwrap();
            }
        }
    }

    #[test]
    fn unrooted_reading_misses_critical_magnetization() {
        let g0 = g_correlator_with(1.0, 0, &quad(), Denominator::Unrooted).unwrap();
        assert!((g0 - 0.5).abs() < 1e-10);
        assert!((g0 - 2.0 / PI).abs() > 0.1);
    }

    #[test]
    fn non_convergence_is_an_error() {
        let starved = QuadratureSpec {
            max_nodes: 16,
            rel_tol: 1e-14,
            ..quad()
        };
        assert!(matches!(
            g_correlator(0.999, 40, &starved),
            Err(Error::QuadratureNonConvergence { .. })
        ));
        assert!(g_correlator(-0.1, 0, &quad()).is_err());
        assert!(g_correlator(0.5, 257, &quad()).is_err());
    }

    #[test]
    fn point_invariants() {
        for lambda in [0.0, 0.4, 1.0, 1.7] {
            let p = IsingPoint::new(lambda, 6, &quad()).unwrap();
            assert!((p.sz_mean() - p.g(0).unwrap()).abs() < 1e-12);
            assert_eq!(p.g(8), None);
            assert!(p.g(-7).is_some());
            for r in 1..=6 {
                for v in [p.xx(r), p.yy(r), p.zz(r)] {
                    assert!(v.unwrap().abs() <= 1.0 + 1e-9);
                }
            }
            assert_eq!(p.xx(0), None);
            assert_eq!(p.xx(7), None);
        }
        assert_eq!(sx_mean(1.0), 0.0);
        assert!((sx_mean(2.0) - 0.75f64.powf(0.125)).abs() < 1e-15);
    }

    #[test]
    fn correlators_at_zero_coupling() {
        let p = IsingPoint::new(0.0, 5, &quad()).unwrap();
        for r in 1..=5 {
            assert_eq!(p.xx(r).unwrap(), 0.0);
            assert_eq!(p.yy(r).unwrap(), 0.0);
            assert_eq!(p.zz(r).unwrap(), 1.0);
        }
    }

    #[test]
    fn toeplitz_determinant_small_cases() {
        assert_eq!(toeplitz_determinant(0, |_| 5.0), 1.0);
        assert_eq!(toeplitz_determinant(1, |d| if d == 0 { 3.0 } else { 0.0 }), 3.0);
        // [[a0, a-1], [a1, a0]]
        let det = toeplitz_determinant(2, |d| [2.0, 3.0, 5.0][(d + 1) as usize]);
        assert!((det - (3.0 * 3.0 - 2.0 * 5.0)).abs() < 1e-12);
    }

    #[test]
    fn nearest_neighbour_correlators_are_single_g_values() {
        let p = IsingPoint::new(0.7, 2, &quad()).unwrap();
        assert_eq!(p.xx(1).unwrap(), p.g(-1).unwrap());
        assert_eq!(p.yy(1).unwrap(), p.g(1).unwrap());
        let sep_minus_one = xx_correlator_sized(&p, 1, ToeplitzSize::SeparationMinusOne).unwrap();
        assert_eq!(sep_minus_one, 1.0);
    }

    #[test]
    fn strong_coupling_saturates_xx() {
        let p = IsingPoint::new(50.0, 2, &quad()).unwrap();
        let expected = (1.0 - 50f64.powi(-2)).powf(0.25);
        assert!((p.xx(1).unwrap() - expected).abs() < 1e-3);
        let p = IsingPoint::new(100.0, 3, &quad()).unwrap();
        for r in 1..=3 {
            assert!(p.zz(r).unwrap().abs() < 1e-3);
        }
    }

    #[test]
    fn reduced_states() {
        let p = IsingPoint::new(0.0, 1, &quad()).unwrap();
        let r1 = single_site_rho(&p).unwrap();
        assert!(r1.max_abs_diff(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap()) < 1e-15);
        let r2 = two_site_rho(&p, 1).unwrap();
        assert!(r2.max_abs_diff(&DensityMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]).unwrap()) < 1e-15);

        let p = IsingPoint::new(1.0, 1, &quad()).unwrap();
        let expected = bloch_rho(0.0, 0.0, 2.0 / PI).unwrap();
        assert!(single_site_rho(&p).unwrap().max_abs_diff(&expected) < 1e-10);
        let t = two_site_table(&p, 1).unwrap();
        let g1 = -2.0 / (3.0 * PI);
        let gm1 = 2.0 / PI;
        assert!((t.get(Pauli::Z, Pauli::Z) - ((2.0 / PI).powi(2) - g1 * gm1)).abs() < 1e-10);
        assert!((t.get(Pauli::X, Pauli::X) - gm1).abs() < 1e-10);
        assert!((t.get(Pauli::Y, Pauli::Y) - g1).abs() < 1e-10);
        assert!((t.get(Pauli::I, Pauli::Z) - 2.0 / PI).abs() < 1e-10);
        assert_eq!(t.get(Pauli::X, Pauli::Z), 0.0);

        let p = IsingPoint::new(2.0, 1, &quad()).unwrap();
        let expected = bloch_rho(0.75f64.powf(0.125), 0.0, p.g(0).unwrap()).unwrap();
        assert!(single_site_rho(&p).unwrap().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn purity_routes_agree() {
        for lambda in [0.3, 1.0, 1.3] {
            let p = IsingPoint::new(lambda, 4, &quad()).unwrap();
            for r in 1..=4 {
                let t = two_site_table(&p, r).unwrap();
                let shortcut = two_site_purity(&p, r).unwrap();
                assert!((purity_from_pauli(&t) - shortcut).abs() < 1e-12);
                if lambda <= 1.0 {
                    let rho = two_site_rho(&p, r).unwrap();
                    assert!((purity_from_pauli(&t) - purity(&rho)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn symmetric_phase_pair_states_are_physical() {
        for i in 0..=40 {
            let p = IsingPoint::new(i as f64 * 0.025, 15, &quad()).unwrap();
            for r in 1..=15 {
                two_site_rho(&p, r).unwrap();
            }
        }
    }

    #[test]
    fn ordered_phase_bound_table_is_not_a_state() {
        let p = IsingPoint::new(1.3, 2, &quad()).unwrap();
        match two_site_rho(&p, 1) {
            Err(Error::UnphysicalIsingState {
                lambda,
                separation,
                min_eigenvalue,
            }) => {
                assert_eq!((lambda, separation), (1.3, 1));
                assert!(min_eigenvalue < -0.05);
            }
            other => panic!("expected a positivity failure, got {other:?}"),
        }
        // the purity bound is still available
        assert!(two_site_purity(&p, 1).unwrap() > 0.25);
    }
}
