//! `klbasel`: tables and checks for the Karhunen–Loève route to ζ(2).
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or
//! configuration error.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klbasel_core::{KernelKind, OutputFormat, ProofId};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "klbasel", version, about = "Karhunen-Loève expansions, Mercer sums and ζ(2) = π²/6")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ζ(2) estimates from the Mercer identities, with error bounds.
    Verify(VerifyArgs),
    /// Tabulate analytic eigenvalues and eigenfunction values.
    Eigen(EigenArgs),
    /// Compare analytic eigenpairs with a Nyström solution.
    Oracle(OracleArgs),
    /// Simulate truncated KL paths and test their covariance.
    Simulate(SimulateArgs),
    /// Classical partial sums and residuals.
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
            Format::Pretty => OutputFormat::Pretty,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Wiener,
    Demeaned,
    Detrended,
    Bridge,
}

impl From<Kind> for KernelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Wiener => KernelKind::Wiener,
            Kind::Demeaned => KernelKind::Demeaned,
            Kind::Detrended => KernelKind::Detrended,
            Kind::Bridge => KernelKind::Bridge,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProofChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

impl ProofChoice {
    fn proofs(self) -> Vec<ProofId> {
        match self {
            ProofChoice::One => vec![ProofId::Proof1],
            ProofChoice::Two => vec![ProofId::Proof2],
            ProofChoice::Three => vec![ProofId::Proof3],
            ProofChoice::All => ProofId::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeriesName {
    Zeta,
    Triangular,
    Odd,
    Leibniz,
    Estermann,
    Bernoulli,
    Euler2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EnsembleFormat {
    Csv,
    Klx,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    proof: ProofChoice,
    /// Comma-separated truncation levels.
    #[arg(long = "J", value_delimiter = ',', required = true)]
    levels: Vec<u64>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct EigenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long = "j-max", default_value_t = 10)]
    j_max: u64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Gauss–Legendre nodes (at least 16).
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    #[arg(long, default_value_t = 5)]
    eigs: usize,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Truncation level.
    #[arg(long = "J", default_value_t = 2000)]
    terms: usize,
    /// Number of paths.
    #[arg(long = "M", default_value_t = 100_000)]
    paths: usize,
    /// Points of the uniform grid on [0, 1], endpoints included.
    #[arg(long = "grid-points", default_value_t = 11)]
    grid_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the ensemble here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ensemble file format; defaults to klx for `.klx`/`.bin` paths, csv otherwise.
    #[arg(long = "out-format", value_enum)]
    out_format: Option<EnsembleFormat>,
    /// Grid pairs checked by the covariance test.
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    #[arg(long = "z-threshold", default_value_t = 4.0)]
    z_threshold: f64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    which: SeriesName,
    /// Comma-separated N values.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[command(flatten)]
    format: FormatArg,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var("KLX_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("KLX_THREADS must be a positive integer, got {raw:?}"))?;
        anyhow::ensure!(threads > 0, "KLX_THREADS must be a positive integer, got 0");
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Verify(a) => commands::verify(&a.proof.proofs(), &a.levels, a.format.format.into()),
        Command::Eigen(a) => commands::eigen(a.kind.into(), a.j_max, a.format.format.into()),
        Command::Oracle(a) => commands::oracle(a.kind.into(), a.nodes, a.eigs, a.format.format.into()),
        Command::Simulate(a) => commands::simulate(commands::SimulateOptions {
            kind: a.kind.into(),
            terms: a.terms,
            paths: a.paths,
            grid_points: a.grid_points,
            seed: a.seed,
            out: a.out,
            out_format: a.out_format,
            pairs: a.pairs,
            z_threshold: a.z_threshold,
            format: a.format.format.into(),
        }),
        Command::Series(a) => commands::series(a.which, &a.n, a.format.format.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
