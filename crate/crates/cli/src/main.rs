use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hvcert::report::emit;
use hvcert::{execute, Branch, Command, Format, RunConfig, Span};

#[derive(Parser)]
#[command(name = "hvcert", version, about = "Certify the spectral interval conditions and check the supporting identities")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Sub {
    /// Certify cells (omega, n), or build symbolic certificates with --symbolic.
    Certify {
        #[arg(long)]
        omega: Span<u32>,
        #[arg(long)]
        n: Option<Span<u64>>,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = Branch::Equal)]
        mu_branch: Branch,
    },
    /// Scan a range of cells; n below 2 omega + 6 is skipped.
    Scan {
        #[arg(long)]
        omega: Span<u32>,
        #[arg(long)]
        n: Span<u64>,
        #[arg(long, value_enum, default_value_t = Branch::Equal)]
        mu_branch: Branch,
        /// Exit with status 1 when some cell is not nonempty.
        #[arg(long)]
        require_nonempty: bool,
    },
    /// Symbolic nu_k, d_k, u_k/nu_k and Delta_k for each k.
    Coeffs {
        #[arg(long)]
        omega: Span<u32>,
    },
    /// Integral identities and the concentration limit.
    Integrals,
    /// Identities on the 2-sphere and the annulus curvature check.
    SphereCheck {
        /// Relative tolerance of the annulus check.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Everything except the scans.
    Report {
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; defaults to $HVCERT_OUTPUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized harmonic mixture.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn config(cli: Cli) -> RunConfig {
    let mut c = RunConfig::new(Command::Report);
    match cli.command {
        Sub::Certify { omega, n, symbolic, mu_branch } => {
            c.command = Command::Certify;
            c.omega = Some(omega);
            c.n = n;
            c.symbolic = symbolic;
            c.mu_branch = mu_branch;
        }
        Sub::Scan { omega, n, mu_branch, require_nonempty } => {
            c.command = Command::Scan;
            c.omega = Some(omega);
            c.n = Some(n);
            c.mu_branch = mu_branch;
            c.require_nonempty = require_nonempty;
        }
        Sub::Coeffs { omega } => {
            c.command = Command::Coeffs;
            c.omega = Some(omega);
        }
        Sub::Integrals => c.command = Command::Integrals,
        Sub::SphereCheck { tolerance } => {
            c.command = Command::SphereCheck;
            c.tolerance = tolerance;
        }
        Sub::Report { tolerance } => c.tolerance = tolerance,
    }
    c.format = cli.common.format;
    c.output = cli.common.output;
    c.jobs = cli.common.jobs;
    c.seed = cli.common.seed;
    c
}

fn run(cfg: &RunConfig) -> anyhow::Result<bool> {
    if let Some(j) = cfg.jobs.filter(|j| *j > 0) {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    let out = execute(cfg)?;
    emit(&out.bytes, cfg)?;
    Ok(out.success)
}

fn main() -> ExitCode {
    let cfg = config(Cli::parse());
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("hvcert: a mathematical check failed; see the report");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("hvcert: {e:#}");
            ExitCode::from(2)
        }
    }
}
