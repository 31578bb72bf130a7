//! One-dimensional quadrature on a finite interval.
//!
//! Two rules are provided. The default is globally adaptive 7/15-point
//! Gauss-Kronrod bisection, which concentrates nodes where the integrand of
//! `g(l)` develops its sharp feature at `k = pi` for couplings near one.
//! The composite Gauss-Legendre rule doubles uniform panels until two
//! successive estimates agree; it serves as an independent cross-check away
//! from the critical coupling.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    AdaptiveGaussKronrod,
    CompositeGaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Cap on integrand evaluations.
    pub max_nodes: usize,
    /// Convergence threshold, relative to `integral of |f|`.
    pub rel_tol: f64,
    pub rule: QuadratureRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            max_nodes: 4096,
            rel_tol: 1e-10,
            rule: QuadratureRule::AdaptiveGaussKronrod,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes < 16 {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs at least 16 nodes, got {}",
                self.max_nodes
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Error estimate of the returned value.
    pub error: f64,
    /// Integrand evaluations spent.
    pub nodes: usize,
}

/// Best estimate reached when the node budget ran out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonConvergence {
    pub estimate: f64,
    pub error: f64,
    pub nodes: usize,
}

pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> std::result::Result<Quadrature, NonConvergence> {
    match spec.rule {
        QuadratureRule::AdaptiveGaussKronrod => adaptive_gk15(&f, a, b, spec),
        QuadratureRule::CompositeGaussLegendre => composite_gauss_legendre(&f, a, b, spec),
    }
}

// Kronrod abscissae on [0, 1]; the odd entries are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kron += WGK[i] * (f1 + f2);
        abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Panel {
        a,
        b,
        value: kron * h,
        error: ((kron - gauss) * h).abs(),
        abs: abs * h.abs(),
    }
}

fn adaptive_gk15<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> std::result::Result<Quadrature, NonConvergence> {
    let mut panels = vec![gk15(f, a, b)];
    let mut nodes = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs: f64 = panels.iter().map(|p| p.abs).sum();
        let tol = spec.rel_tol * abs.max(f64::MIN_POSITIVE);
        if error <= tol {
            return Ok(Quadrature {
                value,
                error,
                nodes,
            });
        }
        if nodes + 30 > spec.max_nodes {
            return Err(NonConvergence {
                estimate: value,
                error,
                nodes,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gk15(f, p.a, mid));
        panels.push(gk15(f, mid, p.b));
        nodes += 30;
    }
}

const GL_POINTS: usize = 16;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn composite_gauss_legendre<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> std::result::Result<Quadrature, NonConvergence> {
    let (x, w) = gauss_legendre(GL_POINTS);
    let rule = |panels: usize| -> (f64, f64) {
        let h = (b - a) / panels as f64;
        let (mut sum, mut abs) = (0.0, 0.0);
        for p in 0..panels {
            let c = a + (p as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                let v = f(c + 0.5 * h * xi);
                sum += wi * v;
                abs += wi * v.abs();
            }
        }
        (0.5 * h * sum, 0.5 * h.abs() * abs)
    };
    let mut panels = 1;
    let (mut prev, _) = rule(panels);
    let mut nodes = GL_POINTS;
    loop {
        panels *= 2;
        if nodes + panels * GL_POINTS > spec.max_nodes {
            return Err(NonConvergence {
                estimate: prev,
                error: f64::NAN,
                nodes,
            });
        }
        let (value, abs) = rule(panels);
        nodes += panels * GL_POINTS;
        let error = (value - prev).abs();
        if error <= spec.rel_tol * abs.max(f64::MIN_POSITIVE) {
            return Ok(Quadrature {
                value,
                error,
                nodes,
            });
        }
        prev = value;
    }
}
