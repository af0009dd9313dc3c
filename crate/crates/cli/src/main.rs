use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bielliptic::report::{emit_report, run, Command, Format, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bielliptic", version)]
#[command(about = "Exact checks for a bielliptic surface with no rational points and an unobstructed adelic point")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Overrides,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Run every check in order.
    Reproduce,
    /// Jacobian, torsion and irreducibility of the quartic.
    Resolvent,
    /// Build the 4-covering from eps and compare with the reference pair.
    Fourcover,
    /// Local solubility of the quartic and the 4-covering.
    Local,
    /// Surface data, the minus twist and the adelic verdict.
    Surface,
    /// Rational point search up to the height bound.
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Args)]
struct Overrides {
    /// JSON run configuration; flags below override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Quartic coefficients `a,c,d,e`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    quartic: Option<String>,
    /// Coordinates of eps in the basis 1, theta, theta^2, theta^3.
    #[arg(long, global = true, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Coefficients of p from the constant term up.
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<String>,
    /// Coefficients of q, same layout as `--p`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Height bound for the rational point searches.
    #[arg(long, global = true)]
    height: Option<u64>,
    /// Comma-separated primes replacing the bad-prime set.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Maximum p-adic precision explored by the residue tree.
    #[arg(long, global = true)]
    depth_cap: Option<u32>,
    /// Maximum number of residue-tree nodes per prime.
    #[arg(long, global = true)]
    node_cap: Option<usize>,
    /// Grant the rank 0 assumption (the default).
    #[arg(long, global = true, conflicts_with = "withhold_rank_zero")]
    assume_rank_zero: bool,
    #[arg(long, global = true)]
    withhold_rank_zero: bool,
    /// Skip comparisons against the published matrices, primes and witnesses.
    #[arg(long, global = true)]
    no_reference: bool,
    /// Human-readable text or JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Record wall time per check.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Config(#[from] bielliptic::Error),
    #[error("--{flag} expects {n} comma-separated values, got {got:?}")]
    Arity { flag: &'static str, n: usize, got: String },
}

fn fixed<const N: usize>(flag: &'static str, s: &str) -> Result<[String; N], CliError> {
    let parts: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    parts.try_into().map_err(|_| CliError::Arity { flag, n: N, got: s.to_string() })
}

fn load(o: &Overrides) -> Result<RunConfig, CliError> {
    let mut c = match &o.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = &o.quartic {
        c.quartic = fixed("quartic", s)?;
    }
    if let Some(s) = &o.eps {
        c.epsilon = fixed("eps", s)?;
    }
    if let Some(s) = &o.p {
        c.p = fixed("p", s)?;
    }
    if let Some(s) = &o.q {
        c.q = fixed("q", s)?;
    }
    if let Some(h) = o.height {
        c.height = h;
    }
    if let Some(ps) = &o.primes {
        c.primes = Some(ps.clone());
    }
    if o.depth_cap.is_some() {
        c.depth_cap = o.depth_cap;
    }
    if o.node_cap.is_some() {
        c.node_cap = o.node_cap;
    }
    if o.assume_rank_zero {
        c.assume_rank_zero = true;
    }
    if o.withhold_rank_zero {
        c.assume_rank_zero = false;
    }
    if o.no_reference {
        c.reference = None;
    }
    match o.format {
        Some(FormatArg::Human) => c.format = Format::Human,
        Some(FormatArg::Machine) => c.format = Format::Machine,
        None => {}
    }
    if o.timings {
        c.timings = true;
    }
    Ok(c)
}

fn command(s: Sub) -> Command {
    match s {
        Sub::Reproduce => Command::Reproduce,
        Sub::Resolvent => Command::Resolvent,
        Sub::Fourcover => Command::Fourcover,
        Sub::Local => Command::Local,
        Sub::Surface => Command::Surface,
        Sub::Search => Command::Search,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = load(&cli.opts).and_then(|c| Ok((run(command(cli.command), &c)?, c.format)));
    let (report, format) = match report {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = emit_report(&report, format, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
