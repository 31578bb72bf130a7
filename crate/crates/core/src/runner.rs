//! Sweeps, tables and comparison runs behind the command-line front end.
//!
//! Every run returns its rows in memory and has a matching CSV writer. Rows
//! are computed on a worker pool and gathered in input order, so output does
//! not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::ed::{extrapolate, oracle_measures, ChainSpec, OracleReport};
use crate::error::{Error, Result};
use crate::ising::{two_site_purity, IsingPoint, QuadratureSpec};
use crate::paradigm::{build_state, closed_form, MeasureTriple, Paradigm, ParadigmFamily};
use crate::qstate::{eg2_of_state, g2_from_mean_purity, g2_of_state, meyer_wallach};
use crate::report::MeasureReport;

/// Significant digits in every CSV number.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineWindow {
    pub center: f64,
    pub half_width: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub steps: usize,
    pub refine: Option<RefineWindow>,
    pub l_max: usize,
    pub quad: QuadratureSpec,
    /// Worker count; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    /// `[0, 2]` in 401 points, refined to `1e-3` within `0.05` of the
    /// critical point, separations up to 15.
    fn default() -> Self {
        Self {
            lambda_min: 0.0,
            lambda_max: 2.0,
            steps: 401,
            refine: Some(RefineWindow {
                center: 1.0,
                half_width: 0.05,
                step: 1e-3,
            }),
            l_max: 15,
            quad: QuadratureSpec::default(),
            threads: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_min.is_finite() && self.lambda_max.is_finite()) {
            return Err(Error::InvalidArgument("coupling range must be finite".into()));
        }
        if self.lambda_min < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling must be non-negative, got {}",
                self.lambda_min
            )));
        }
        if !(self.lambda_min < self.lambda_max) {
            return Err(Error::InvalidArgument(format!(
                "degenerate range [{}, {}]",
                self.lambda_min, self.lambda_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 steps, got {}", self.steps)));
        }
        if self.l_max < 1 {
            return Err(Error::InvalidArgument("l_max must be at least 1".into()));
        }
        if let Some(w) = self.refine {
            if !(w.step > 0.0 && w.half_width >= 0.0 && w.center.is_finite() && w.half_width.is_finite()) {
                return Err(Error::InvalidArgument(format!("bad refine window {w:?}")));
            }
            if w.half_width / w.step > 1e6 {
                return Err(Error::InvalidArgument("refine window has too many points".into()));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument("thread count must be positive".into()));
        }
        self.quad.validate()
    }

    /// Sorted, de-duplicated couplings: the uniform grid plus the refine
    /// window clipped to the range.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = (self.lambda_min, self.lambda_max);
        let last = (self.steps - 1) as f64;
        let mut grid: Vec<f64> = (0..self.steps).map(|i| lo + (hi - lo) * i as f64 / last).collect();
        if let Some(w) = self.refine {
            let k = (w.half_width / w.step).round() as i64;
            grid.extend(
                (-k..=k)
                    .map(|i| w.center + i as f64 * w.step)
                    .filter(|&x| x >= lo && x <= hi),
            );
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        grid
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<MeasureReport>> {
    config.validate()?;
    let grid = config.grid();
    pool(config.threads)?.install(|| {
        grid.par_iter()
            .map(|&lambda| {
                let point = IsingPoint::new(lambda, config.l_max, &config.quad)?;
                Ok(point.measures()?.into())
            })
            .collect()
    })
}

pub fn write_sweep_csv<W: Write>(reports: &[MeasureReport], out: W) -> Result<()> {
    let l_max = reports.first().map_or(0, MeasureReport::l_max);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["lambda".to_string(), "eg1".into(), "sv".into()];
    header.extend((1..=l_max).map(|l| format!("g2_{l}")));
    header.extend(["eg2".to_string(), "upper_bound".into()]);
    w.write_record(&header)?;
    for r in reports {
        if r.l_max() != l_max {
            return Err(Error::DimensionMismatch {
                expected: l_max,
                actual: r.l_max(),
            });
        }
        let mut row = vec![format_sig(r.lambda), format_sig(r.eg1), format_sig(r.sv_single_site)];
        row.extend(r.g2l.iter().map(|&g| format_sig(g)));
        row.push(format_sig(r.eg2));
        row.push(u8::from(r.upper_bound).to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Inverse of [`write_sweep_csv`].
pub fn read_sweep_csv<R: std::io::Read>(input: R) -> Result<Vec<MeasureReport>> {
    let mut rdr = csv::Reader::from_reader(input);
    let width = rdr.headers()?.len();
    if width < 5 {
        return Err(Error::Io(format!("sweep header has {width} columns")));
    }
    let l_max = width - 5;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse()
                .map_err(|_| Error::Io(format!("bad number {:?} in column {i}", &rec[i])))
        };
        out.push(MeasureReport {
            lambda: num(0)?,
            eg1: num(1)?,
            sv_single_site: num(2)?,
            g2l: (0..l_max).map(|l| num(3 + l)).collect::<Result<_>>()?,
            eg2: num(3 + l_max)?,
            upper_bound: &rec[4 + l_max] == "1",
        });
    }
    Ok(out)
}

/// Rounds to [`CSV_DIGITS`] significant digits and prints the shortest
/// representation of the rounded value, switching to exponent form for very
/// small or large magnitudes.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = round_sig(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-5..1e15).contains(&a) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

/// The value [`format_sig`] prints.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", CSV_DIGITS - 1, x).parse().expect("formatted float")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub family: ParadigmFamily,
    pub closed: MeasureTriple,
    pub brute: MeasureTriple,
    pub max_abs_diff: f64,
}

/// Closed-form and brute-force triples for every family valid at each `N`
/// (EPR is skipped for odd `N`).
pub fn run_table1(n_list: &[usize]) -> Result<Vec<Table1Row>> {
    let mut families = Vec::new();
    for &n in n_list {
        for tag in Paradigm::ALL {
            if tag == Paradigm::Epr && n % 2 == 1 {
                continue;
            }
            families.push(ParadigmFamily::new(tag, n)?);
        }
    }
    families
        .par_iter()
        .map(|&family| {
            let closed = closed_form(family)?;
            let state = build_state(family)?;
            let brute = MeasureTriple {
                eg1: meyer_wallach(&state)?,
                g21: g2_of_state(&state, 1)?,
                eg2: eg2_of_state(&state)?,
            };
            Ok(Table1Row {
                family,
                max_abs_diff: closed.max_abs_diff(&brute),
                closed,
                brute,
            })
        })
        .collect()
}

pub fn write_table1_csv<W: Write>(rows: &[Table1Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "family",
        "n",
        "eg1_closed",
        "g21_closed",
        "eg2_closed",
        "eg1_brute",
        "g21_brute",
        "eg2_brute",
        "max_abs_diff",
    ])?;
    for r in rows {
        w.write_record([
            r.family.tag().to_string(),
            r.family.n().to_string(),
            format_sig(r.closed.eg1),
            format_sig(r.closed.g21),
            format_sig(r.closed.eg2),
            format_sig(r.brute.eg1),
            format_sig(r.brute.g21),
            format_sig(r.brute.eg2),
            format_sig(r.max_abs_diff),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `(l, G(2, l))` at one coupling.
pub fn run_gl_profile(lambda: f64, l_list: &[usize], quad: &QuadratureSpec) -> Result<Vec<(usize, f64)>> {
    if l_list.is_empty() {
        return Err(Error::InvalidArgument("empty separation list".into()));
    }
    if l_list[0] == 0 || l_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "separations must be positive and strictly ascending".into(),
        ));
    }
    let point = IsingPoint::new(lambda, *l_list.last().unwrap(), quad)?;
    l_list
        .iter()
        .map(|&l| Ok((l, g2_from_mean_purity(two_site_purity(&point, l)?))))
        .collect()
}

pub fn write_gl_csv<W: Write>(rows: &[(usize, f64)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["l", "g2"])?;
    for (l, g) in rows {
        w.write_record([l.to_string(), format_sig(*g)])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareStatus {
    Ok,
    /// Coupling above 1 run on request; the finite ring is the symmetric
    /// state, not the broken-symmetry one.
    AboveCritical,
    /// Two lowest levels closer than the degeneracy threshold.
    SkippedDegenerateGap,
    Extrapolated,
}

impl fmt::Display for CompareStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareStatus::Ok => "ok",
            CompareStatus::AboveCritical => "above_critical",
            CompareStatus::SkippedDegenerateGap => "skipped_degenerate_gap",
            CompareStatus::Extrapolated => "extrapolated",
        })
    }
}

/// One long-format comparison row. `n = None` marks an extrapolated value.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub n: Option<usize>,
    pub lambda: f64,
    pub quantity: String,
    pub ed: Option<f64>,
    pub analytic: Option<f64>,
    pub status: CompareStatus,
}

impl CompareRow {
    pub fn diff(&self) -> Option<f64> {
        Some(self.ed? - self.analytic?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub n_list: Vec<usize>,
    pub lambdas: Vec<f64>,
    pub l_max: usize,
    pub allow_above_critical: bool,
    pub quad: QuadratureSpec,
    pub threads: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_list: vec![12, 14, 16],
            lambdas: vec![0.2, 0.5, 0.8, 1.0],
            l_max: 3,
            allow_above_critical: false,
            quad: QuadratureSpec::default(),
            threads: None,
        }
    }
}

/// ED measures and ferromagnetic-frame correlators next to their analytic
/// counterparts, per `(N, lambda)` and extrapolated over `N`.
pub fn run_oracle_compare(config: &OracleConfig) -> Result<Vec<CompareRow>> {
    config.quad.validate()?;
    let mut n_list = config.n_list.clone();
    n_list.sort_unstable();
    n_list.dedup();
    let mut lambdas = config.lambdas.clone();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    if n_list.is_empty() || lambdas.is_empty() {
        return Err(Error::InvalidArgument("need at least one chain length and one coupling".into()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n % 2 == 1) {
        return Err(Error::InvalidArgument(format!(
            "chain lengths must be even for the frame change, got {n}"
        )));
    }
    if config.l_max == 0 || config.l_max >= n_list[0] {
        return Err(Error::InvalidArgument(format!(
            "l_max must be in 1..{} for the shortest chain",
            n_list[0]
        )));
    }
    if !config.allow_above_critical {
        if let Some(&l) = lambdas.iter().find(|&&l| l > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "coupling {l} > 1 compares against a symmetric finite ground state; pass the override to run it anyway"
            )));
        }
    }
    for &lambda in &lambdas {
        ChainSpec::new(n_list[0], lambda)?;
    }

    let jobs: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| lambdas.iter().map(move |&l| (n, l)))
        .collect();
    let analytic_l = config.l_max.max(n_list[n_list.len() - 1] - 1);
    let pool = pool(config.threads)?;
    let (reports, points) = pool.install(|| -> Result<_> {
        let reports = jobs
            .par_iter()
            .map(|&(n, lambda)| oracle_measures(&ChainSpec::new(n, lambda)?, config.l_max))
            .collect::<Result<Vec<_>>>()?;
        let points = lambdas
            .par_iter()
            .map(|&lambda| IsingPoint::new(lambda, analytic_l, &config.quad))
            .collect::<Result<Vec<_>>>()?;
        Ok((reports, points))
    })?;

    let mut rows = Vec::new();
    for (li, (&lambda, point)) in lambdas.iter().zip(&points).enumerate() {
        let analytic = analytic_quantities(point, config.l_max)?;
        let mut per_n: BTreeMap<String, BTreeMap<usize, f64>> = BTreeMap::new();
        let mut any_skipped = false;
        for (ni, &n) in n_list.iter().enumerate() {
            let report = &reports[ni * lambdas.len() + li];
            if report.is_degenerate() {
                any_skipped = true;
                rows.push(CompareRow {
                    n: Some(n),
                    lambda,
                    quantity: "gap".into(),
                    ed: Some(report.gap),
                    analytic: None,
                    status: CompareStatus::SkippedDegenerateGap,
                });
                continue;
            }
            let status = if lambda > 1.0 {
                CompareStatus::AboveCritical
            } else {
                CompareStatus::Ok
            };
            let eg2_analytic = point.measures()?.g2l[..n - 1].iter().sum::<f64>() / (n - 1) as f64;
            rows.push(CompareRow {
                n: Some(n),
                lambda,
                quantity: "gap".into(),
                ed: Some(report.gap),
                analytic: None,
                status,
            });
            rows.push(CompareRow {
                n: Some(n),
                lambda,
                quantity: "eg2".into(),
                ed: Some(report.measures.eg2),
                analytic: Some(eg2_analytic),
                status,
            });
            for (name, ed_value) in ed_quantities(report)? {
                per_n.entry(name.clone()).or_default().insert(n, ed_value);
                rows.push(CompareRow {
                    n: Some(n),
                    lambda,
                    analytic: analytic.get(&name).copied(),
                    quantity: name,
                    ed: Some(ed_value),
                    status,
                });
            }
        }
        if any_skipped || n_list.len() < 3 {
            continue;
        }
        for (name, values) in per_n {
            rows.push(CompareRow {
                n: None,
                lambda,
                analytic: analytic.get(&name).copied(),
                quantity: name,
                ed: Some(extrapolate(&values)?.value),
                status: CompareStatus::Extrapolated,
            });
        }
    }
    Ok(rows)
}

/// Quantity names in a fixed order shared by both sides.
fn ed_quantities(report: &OracleReport) -> Result<Vec<(String, f64)>> {
    let f = report.to_ferromagnetic()?;
    let mut out = vec![
        ("eg1".to_string(), f.measures.eg1),
        ("sv".to_string(), f.measures.sv_single_site),
        ("sx".to_string(), f.sx),
        ("sz".to_string(), f.sz),
    ];
    for l in 1..=f.xx.len() {
        out.push((format!("g2_{l}"), f.measures.g2l[l - 1]));
        out.push((format!("xx_{l}"), f.xx[l - 1]));
        out.push((format!("yy_{l}"), f.yy[l - 1]));
        out.push((format!("zz_{l}"), f.zz[l - 1]));
    }
    Ok(out)
}

fn analytic_quantities(point: &IsingPoint, l_max: usize) -> Result<BTreeMap<String, f64>> {
    let m = point.measures()?;
    let mut out = BTreeMap::from([
        ("eg1".to_string(), m.eg1),
        ("sv".to_string(), m.sv),
        ("sx".to_string(), point.sx_mean()),
        ("sz".to_string(), point.sz_mean()),
    ]);
    for l in 1..=l_max {
        let missing = || Error::InvalidArgument(format!("separation {l} beyond the cached range"));
        out.insert(format!("g2_{l}"), m.g2l[l - 1]);
        out.insert(format!("xx_{l}"), point.xx(l).ok_or_else(missing)?);
        out.insert(format!("yy_{l}"), point.yy(l).ok_or_else(missing)?);
        out.insert(format!("zz_{l}"), point.zz(l).ok_or_else(missing)?);
    }
    Ok(out)
}

pub fn write_compare_csv<W: Write>(rows: &[CompareRow], out: W) -> Result<()> {
    let opt = |x: Option<f64>| x.map(format_sig).unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "lambda", "quantity", "ed", "analytic", "diff", "status"])?;
    for r in rows {
        w.write_record([
            r.n.map_or_else(|| "inf".to_string(), |n| n.to_string()),
            format_sig(r.lambda),
            r.quantity.clone(),
            opt(r.ed),
            opt(r.analytic),
            opt(r.diff()),
            r.status.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
