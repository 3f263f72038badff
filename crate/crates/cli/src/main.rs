use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use nilgeom::metrics::SpecialMetric;
use nilgeom_cli::{run, CliError, Command, Format, SessionConfig};

/// Exact invariant geometry on nilmanifolds.
#[derive(Parser, Debug)]
#[command(name = "nilgeom", version)]
struct Cli {
    /// validate, classify, metric-check, integrability, bc, bc-class,
    /// harmonic, obstruct, theorem-check, jet-check or pullback
    command: Command,
    /// Structure equations (JSON).
    #[arg(long)]
    algebra: PathBuf,
    /// Hermitian metric (JSON); the diagonal metric when omitted.
    #[arg(long)]
    metric: Option<PathBuf>,
    /// Deformation curve φ(t) (JSON).
    #[arg(long)]
    curve: Option<PathBuf>,
    /// (0,1)-vector form (JSON).
    #[arg(long)]
    vector: Option<PathBuf>,
    /// Invariant form (JSON or a bare expression).
    #[arg(long)]
    form: Option<PathBuf>,
    /// Candidate (n-2,n-2) form for theorem-check and jet-check.
    #[arg(long)]
    omega_prime: Option<PathBuf>,
    /// kahler, skt, astheno or balanced.
    #[arg(long)]
    mode: Option<SpecialMetric>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Real curve parameter value.
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<String>,
    /// Specializations, e.g. `a1=1,a4=1/2+i`.
    #[arg(long)]
    subst: Option<String>,
    #[arg(long, default_value = "text")]
    format: Format,
}

fn execute(cli: Cli) -> anyhow::Result<String> {
    let config = SessionConfig {
        command: cli.command,
        algebra: cli.algebra,
        metric: cli.metric,
        curve: cli.curve,
        vector: cli.vector,
        form: cli.form,
        omega_prime: cli.omega_prime,
        mode: cli.mode,
        p: cli.p,
        q: cli.q,
        t0: cli.t0,
        subst: cli.subst,
        format: cli.format,
    };
    let report = run(&config).with_context(|| format!("{} on {}", config.command.name(), config.algebra.display()))?;
    Ok(report.render(config.format))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    e.downcast_ref::<CliError>().map_or(1, CliError::exit_code) as u8
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
