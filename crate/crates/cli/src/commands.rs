use crate::{EnsembleFormat, SeriesName};
use anyhow::{ensure, Context, Result};
use klbasel_core::fredholm::{compare_eigenpairs, ORACLE_RELATIVE_TOLERANCE};
use klbasel_core::mercer::convergence_table;
use klbasel_core::numeric::ZETA2;
use klbasel_core::series;
use klbasel_core::simulate::{covariance_test_ensemble, sample_paths, uniform_grid, SimulationConfig};
use klbasel_core::table::Cell;
use klbasel_core::{ConvergenceReport, EigenPair, KernelKind, OutputFormat, ProofId, Table};
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

fn emit(table: &Table, format: OutputFormat) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(table.render(format).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn verify(proofs: &[ProofId], levels: &[u64], format: OutputFormat) -> Result<ExitCode> {
    ensure!(!levels.is_empty(), "--J needs at least one value");
    let reports = proofs
        .iter()
        .map(|&p| ConvergenceReport::build(p, levels))
        .collect::<klbasel_core::Result<Vec<_>>>()?;
    emit(&convergence_table(&reports), format)?;
    Ok(status(reports.iter().all(ConvergenceReport::bounds_hold)))
}

pub fn eigen(kind: KernelKind, j_max: u64, format: OutputFormat) -> Result<ExitCode> {
    ensure!(j_max >= 1, "--j-max must be at least 1");
    let mut table = Table::new(&["j", "lambda", "branch", "f_0", "f_half", "f_1"]);
    for j in 1..=j_max {
        let pair = EigenPair::new(kind, j)?;
        table.push(vec![
            Cell::Int(j as i64),
            Cell::Float(pair.lambda),
            Cell::Text(pair.branch.label().to_string()),
            Cell::Float(pair.eval(0.0)),
            Cell::Float(pair.eval(0.5)),
            Cell::Float(pair.eval(1.0)),
        ]);
    }
    emit(&table, format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn oracle(kind: KernelKind, nodes: usize, eigs: usize, format: OutputFormat) -> Result<ExitCode> {
    let comparison = compare_eigenpairs(kind, eigs, nodes)?;
    let passed = comparison.passes(ORACLE_RELATIVE_TOLERANCE);
    let mut table = comparison.to_table();
    table.summarize("tolerance", Cell::Float(ORACLE_RELATIVE_TOLERANCE));
    table.summarize("passed", Cell::Bool(passed));
    emit(&table, format)?;
    Ok(status(passed))
}

pub struct SimulateOptions {
    pub kind: KernelKind,
    pub terms: usize,
    pub paths: usize,
    pub grid_points: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub out_format: Option<EnsembleFormat>,
    pub pairs: usize,
    pub z_threshold: f64,
    pub format: OutputFormat,
}

pub fn simulate(opts: SimulateOptions) -> Result<ExitCode> {
    let config = SimulationConfig {
        kind: opts.kind,
        terms: opts.terms,
        paths: opts.paths,
        grid: uniform_grid(opts.grid_points)?,
        seed: opts.seed,
    };
    let ensemble = sample_paths(&config)?;
    if let Some(path) = &opts.out {
        let format = opts.out_format.unwrap_or_else(|| {
            match path.extension().and_then(|e| e.to_str()) {
                Some("klx") | Some("bin") => EnsembleFormat::Klx,
                _ => EnsembleFormat::Csv,
            }
        });
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let writer = BufWriter::new(file);
        match format {
            EnsembleFormat::Csv => ensemble.write_csv(writer),
            EnsembleFormat::Klx => ensemble.write_klx(writer),
        }
        .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let report = covariance_test_ensemble(&ensemble, opts.kind, opts.pairs, opts.z_threshold)?;
    if report.skipped {
        eprintln!("warning: every grid point is pinned to zero; covariance test skipped");
    }
    let mut table = report.to_table();
    table.note(format!(
        "{} paths of the {} expansion truncated at J = {}, seed {}",
        opts.paths, opts.kind, opts.terms, opts.seed
    ));
    emit(&table, opts.format)?;
    Ok(status(report.passed()))
}

pub fn series(which: SeriesName, ns: &[u64], format: OutputFormat) -> Result<ExitCode> {
    ensure!(!ns.is_empty(), "--N needs at least one value");
    let (name, limit) = match which {
        SeriesName::Zeta => ("zeta", ZETA2),
        SeriesName::Triangular => ("triangular", 2.0),
        SeriesName::Odd => ("odd", PI * PI / 8.0),
        SeriesName::Leibniz => ("leibniz", PI / 4.0),
        SeriesName::Estermann => ("estermann", 0.0),
        SeriesName::Bernoulli => ("bernoulli", PI * PI / 16.0),
        SeriesName::Euler2 => ("euler2", 0.0),
    };
    let mut table = Table::new(&["series", "N", "value", "limit", "abs_error"]);
    for &n in ns {
        let value = match which {
            SeriesName::Zeta => series::zeta_partial(2.0, n)?.value,
            SeriesName::Triangular => series::triangular_partial(n)?.value,
            SeriesName::Odd => series::odd_squares_partial(n).value,
            SeriesName::Leibniz => series::leibniz_partial(n).value,
            SeriesName::Estermann => series::estermann_residual(n).residual,
            SeriesName::Bernoulli => series::bernoulli_residual(n).residual,
            SeriesName::Euler2 => series::euler2_gap(n)?,
        };
        table.push(vec![
            Cell::Text(name.to_string()),
            Cell::Int(n as i64),
            Cell::Float(value),
            Cell::Float(limit),
            Cell::Float((value - limit).abs()),
        ]);
    }
    emit(&table, format)?;
    Ok(ExitCode::SUCCESS)
}
