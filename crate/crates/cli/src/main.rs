//! `globent`: measure sweeps, paradigm tables, separation profiles and the
//! analytic-vs-ED comparison, all emitted as CSV.
//!
//! Exit status is 0 on success, 1 for usage errors and 2 when a numerical
//! routine fails. Failures also print one JSON object on stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use globent_core::ising::{QuadratureRule, QuadratureSpec};
use globent_core::runner::{
    run_gl_profile, run_oracle_compare, run_sweep, run_table1, write_compare_csv, write_gl_csv,
    write_sweep_csv, write_table1_csv, OracleConfig, RefineWindow, SweepConfig,
};
use globent_core::Error;

#[derive(Parser)]
#[command(name = "globent", version, about = "Global entanglement of paradigm states and the transverse-field Ising chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// E_G^(1), S_V, G(2,l) and E_G^(2) of the infinite chain over a coupling grid
    Sweep(SweepArgs),
    /// Closed-form and brute-force measures of the GHZ, W and EPR-pair states
    Table1(Table1Args),
    /// G(2,l) against separation at one coupling
    Gl(GlArgs),
    /// Exact diagonalization of finite rings against the analytic values
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; `-` writes to stdout
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct Quad {
    /// Relative tolerance of the g(l) quadrature
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    /// Cap on integrand evaluations per g(l)
    #[arg(long, default_value_t = 4096)]
    quad_max_nodes: usize,
    #[arg(long, value_enum, default_value_t = Rule::Adaptive)]
    quad_rule: Rule,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Adaptive,
    Legendre,
}

impl Quad {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            max_nodes: self.quad_max_nodes,
            rel_tol: self.quad_tol,
            rule: match self.quad_rule {
                Rule::Adaptive => QuadratureRule::AdaptiveGaussKronrod,
                Rule::Legendre => QuadratureRule::CompositeGaussLegendre,
            },
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    lambda_min: f64,
    #[arg(long, default_value_t = 2.0)]
    lambda_max: f64,
    #[arg(long, default_value_t = 401)]
    steps: usize,
    /// Extra points as `center,half_width,step`, or `none`
    #[arg(long, default_value = "1,0.05,0.001")]
    refine: String,
    #[arg(long, default_value_t = 15)]
    lmax: usize,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    quad: Quad,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Table1Args {
    /// Qubit counts
    #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
    n: Vec<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GlArgs {
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Profile covers `l = 1..=lmax` unless `--l` is given
    #[arg(long, default_value_t = 50)]
    lmax: usize,
    /// Explicit ascending separations
    #[arg(long, value_delimiter = ',')]
    l: Option<Vec<usize>>,
    #[command(flatten)]
    quad: Quad,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    /// Even ring lengths
    #[arg(long, value_delimiter = ',', default_value = "12,14,16")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,0.8,1")]
    lambdas: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    lmax: usize,
    /// Also run couplings above 1, where the finite ring is not the
    /// broken-symmetry state
    #[arg(long)]
    allow_above_critical: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    quad: Quad,
    #[command(flatten)]
    output: Output,
}

fn parse_refine(s: &str) -> Result<Option<RefineWindow>, Error> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("--refine expects center,half_width,step, got {s:?}")))?;
    match parts[..] {
        [center, half_width, step] => Ok(Some(RefineWindow {
            center,
            half_width,
            step,
        })),
        _ => Err(Error::InvalidArgument(format!(
            "--refine expects three numbers, got {}",
            parts.len()
        ))),
    }
}

fn sink(output: &Output) -> Result<Box<dyn Write>, Error> {
    if output.out.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(&output.out)
            .map_err(|e| Error::Io(format!("{}: {e}", output.out.display())))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sweep(a) => {
            let config = SweepConfig {
                lambda_min: a.lambda_min,
                lambda_max: a.lambda_max,
                steps: a.steps,
                refine: parse_refine(&a.refine)?,
                l_max: a.lmax,
                quad: a.quad.spec(),
                threads: a.threads,
            };
            let reports = run_sweep(&config)?;
            write_sweep_csv(&reports, sink(&a.output)?)
        }
        Command::Table1(a) => {
            let rows = run_table1(&a.n)?;
            write_table1_csv(&rows, sink(&a.output)?)
        }
        Command::Gl(a) => {
            let ls = a.l.unwrap_or_else(|| (1..=a.lmax).collect());
            let rows = run_gl_profile(a.lambda, &ls, &a.quad.spec())?;
            write_gl_csv(&rows, sink(&a.output)?)
        }
        Command::Oracle(a) => {
            if a.allow_above_critical && a.lambdas.iter().any(|&l| l > 1.0) {
                eprintln!(
                    "warning: couplings above 1 compare a symmetric finite ground state with the broken-symmetry infinite chain"
                );
            }
            let config = OracleConfig {
                n_list: a.n,
                lambdas: a.lambdas,
                l_max: a.lmax,
                allow_above_critical: a.allow_above_critical,
                quad: a.quad.spec(),
                threads: a.threads,
            };
            let rows = run_oracle_compare(&config)?;
            write_compare_csv(&rows, sink(&a.output)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let detail = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{detail}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
