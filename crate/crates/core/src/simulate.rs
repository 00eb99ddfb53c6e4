//! Truncated Karhunen–Loève simulation
//! `X_J(t) = Σ_{j≤J} λ_j^{-1/2} f_j(t) Z_j` and Monte Carlo checks of its
//! covariance.
//!
//! `Z_{i,j}` for path `i` and term `j` is [`rng::normal`]`(seed, i, j)`, so
//! an ensemble is bit-identical regardless of thread count or scheduling.

use crate::eigen::EigenPair;
use crate::error::{require_at_least, Error, Result};
use crate::kernels::{validate_grid, KernelKind};
use crate::numeric::CompensatedSum;
use crate::rng::{self, CounterRng};
use crate::table::{format_f64, Cell, Table};
use rayon::prelude::*;
use std::io::{Read, Write};

/// Magic bytes of the binary ensemble format.
pub const KLX_MAGIC: &[u8; 4] = b"KLX1";

/// Family-wise false-alarm rate used to size the allowed number of
/// `|z| > threshold` exceedances in [`covariance_test`].
pub const COVARIANCE_FALSE_ALARM: f64 = 1e-3;

/// Stream id for pair sampling, disjoint from any realistic path index.
const PAIR_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub kind: KernelKind,
    /// Truncation level `J`.
    pub terms: usize,
    /// Number of paths `M`.
    pub paths: usize,
    pub grid: Vec<f64>,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        require_at_least("J", self.terms as u64, 1)?;
        require_at_least("M", self.paths as u64, 2)?;
        validate_grid(&self.grid)
    }
}

/// `points` equally spaced values from 0 to 1 inclusive.
pub fn uniform_grid(points: usize) -> Result<Vec<f64>> {
    require_at_least("grid points", points as u64, 2)?;
    let last = (points - 1) as f64;
    Ok((0..points).map(|i| i as f64 / last).collect())
}

/// `M × G` matrix of simulated values, row `i` is path `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    pub config: SimulationConfig,
    values: Vec<f64>,
}

impl PathEnsemble {
    pub fn n_paths(&self) -> usize {
        self.config.paths
    }

    pub fn n_points(&self) -> usize {
        self.config.grid.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn path(&self, i: usize) -> &[f64] {
        let g = self.n_points();
        &self.values[i * g..(i + 1) * g]
    }

    pub fn column(&self, g: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(g).step_by(self.n_points()).copied()
    }

    /// True if every path is exactly zero at grid index `g`.
    pub fn column_is_zero(&self, g: usize) -> bool {
        self.column(g).all(|x| x == 0.0)
    }

    /// CSV: header of grid points, then one row per path.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = self.config.grid.iter().map(|&t| format_f64(t)).collect();
        writeln!(out, "{}", header.join(","))?;
        let mut line = String::new();
        for i in 0..self.n_paths() {
            line.clear();
            for (k, &x) in self.path(i).iter().enumerate() {
                if k > 0 {
                    line.push(',');
                }
                line.push_str(&format_f64(x));
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        out.flush()?;
        Ok(())
    }

    /// `KLX1`, then rows and columns as little-endian `u64`, then the values
    /// as little-endian `f64`, row-major.
    pub fn write_klx<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(KLX_MAGIC)?;
        out.write_all(&(self.n_paths() as u64).to_le_bytes())?;
        out.write_all(&(self.n_points() as u64).to_le_bytes())?;
        for x in &self.values {
            out.write_all(&x.to_le_bytes())?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Contents of a `KLX1` file.
#[derive(Debug, Clone, PartialEq)]
pub struct KlxMatrix {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

pub fn read_klx<R: Read>(mut input: R) -> Result<KlxMatrix> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != KLX_MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let rows = u64::from_le_bytes(word) as usize;
    input.read_exact(&mut word)?;
    let cols = u64::from_le_bytes(word) as usize;
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::Format("dimensions overflow".into()))?;
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() != count * 8 {
        return Err(Error::Format(format!(
            "expected {count} values ({} bytes), found {} bytes",
            count * 8,
            bytes.len()
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    Ok(KlxMatrix { rows, cols, values })
}

/// `basis[j·G + g] = λ_j^{-1/2} f_j(grid[g])`.
fn scaled_basis(kind: KernelKind, terms: usize, grid: &[f64]) -> Result<Vec<f64>> {
    let mut basis = Vec::with_capacity(terms * grid.len());
    for j in 1..=terms as u64 {
        let pair = EigenPair::new(kind, j)?;
        let scale = pair.lambda.sqrt().recip();
        basis.extend(grid.iter().map(|&t| scale * pair.eval(t)));
    }
    Ok(basis)
}

/// Simulates `M` paths on the configured grid using the current rayon pool.
pub fn sample_paths(config: &SimulationConfig) -> Result<PathEnsemble> {
    config.validate()?;
    let g = config.grid.len();
    let terms = config.terms;
    let basis = scaled_basis(config.kind, terms, &config.grid)?;
    let mut values = vec![0.0; config.paths * g];
    values.par_chunks_mut(g).enumerate().for_each(|(i, row)| {
        let stream = i as u64;
        let mut j = 0;
        while j < terms {
            let (z0, z1) = rng::normal_pair(config.seed, stream, (j / 2) as u64);
            let b0 = &basis[j * g..(j + 1) * g];
            for (x, b) in row.iter_mut().zip(b0) {
                *x += z0 * b;
            }
            if j + 1 < terms {
                let b1 = &basis[(j + 1) * g..(j + 2) * g];
                for (x, b) in row.iter_mut().zip(b1) {
                    *x += z1 * b;
                }
            }
            j += 2;
        }
    });
    Ok(PathEnsemble {
        config: config.clone(),
        values,
    })
}

/// Empirical against truncated-model covariance at one pair of grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceCheck {
    pub s_index: usize,
    pub t_index: usize,
    pub s: f64,
    pub t: f64,
    pub empirical: f64,
    pub truncated_target: f64,
    pub stderr: f64,
    pub z_score: f64,
}

/// `Σ_{j≤J} f_j(s) f_j(t) / λ_j` for `kind`.
pub fn truncated_covariance(kind: KernelKind, terms: usize, s: f64, t: f64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for j in 1..=terms as u64 {
        let p = EigenPair::new(kind, j)?;
        acc.add(p.eval(s) * p.eval(t) / p.lambda);
    }
    Ok(acc.value())
}

/// Covariance check of the ensemble against its own kernel.
pub fn empirical_covariance(ensemble: &PathEnsemble, s_index: usize, t_index: usize) -> Result<CovarianceCheck> {
    empirical_covariance_against(ensemble, ensemble.config.kind, s_index, t_index)
}

/// Covariance check of the ensemble against the truncated expansion of
/// `target` (which need not be the kernel the paths were drawn from).
pub fn empirical_covariance_against(
    ensemble: &PathEnsemble,
    target: KernelKind,
    s_index: usize,
    t_index: usize,
) -> Result<CovarianceCheck> {
    let m = ensemble.n_paths();
    require_at_least("M", m as u64, 2)?;
    let g = ensemble.n_points();
    if s_index >= g || t_index >= g {
        return Err(Error::InvalidArgument(format!(
            "grid indices ({s_index}, {t_index}) out of range for {g} points"
        )));
    }
    let products: Vec<f64> = (0..m)
        .map(|i| {
            let row = ensemble.path(i);
            row[s_index] * row[t_index]
        })
        .collect();
    let mut acc = CompensatedSum::new();
    acc.extend(products.iter().copied());
    let mean = acc.value() / m as f64;
    let mut dev = CompensatedSum::new();
    dev.extend(products.iter().map(|p| (p - mean) * (p - mean)));
    let sd = (dev.value() / (m - 1) as f64).sqrt();
    let stderr = sd / (m as f64).sqrt();
    if !(stderr > 0.0) {
        return Err(Error::DegenerateStderr { s_index, t_index });
    }
    let s = ensemble.config.grid[s_index];
    let t = ensemble.config.grid[t_index];
    let truncated_target = truncated_covariance(target, ensemble.config.terms, s, t)?;
    Ok(CovarianceCheck {
        s_index,
        t_index,
        s,
        t,
        empirical: mean,
        truncated_target,
        stderr,
        z_score: (mean - truncated_target) / stderr,
    })
}

/// Outcome of a batch of covariance checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceReport {
    pub target: KernelKind,
    pub z_threshold: f64,
    pub checks: Vec<CovarianceCheck>,
    pub exceedances: usize,
    pub allowed_exceedances: usize,
    /// No grid point carried any variance (e.g. a bridge sampled only at its
    /// pinned endpoints), so nothing was tested.
    pub skipped: bool,
}

impl CovarianceReport {
    pub fn passed(&self) -> bool {
        self.skipped || self.exceedances <= self.allowed_exceedances
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(&[
            "s",
            "t",
            "empirical",
            "truncated_target",
            "stderr",
            "z_score",
        ]);
        for c in &self.checks {
            table.push(vec![
                Cell::Float(c.s),
                Cell::Float(c.t),
                Cell::Float(c.empirical),
                Cell::Float(c.truncated_target),
                Cell::Float(c.stderr),
                Cell::Float(c.z_score),
            ]);
        }
        table.summarize("target", Cell::Text(self.target.to_string()));
        table.summarize("z_threshold", Cell::Float(self.z_threshold));
        table.summarize("exceedances", Cell::Int(self.exceedances as i64));
        table.summarize("allowed_exceedances", Cell::Int(self.allowed_exceedances as i64));
        table.summarize("skipped", Cell::Bool(self.skipped));
        table.summarize("passed", Cell::Bool(self.passed()));
        table
    }
}

/// Smallest `k` such that `P(Binomial(n, p) > k) ≤ COVARIANCE_FALSE_ALARM`,
/// with `p = P(|N(0,1)| > z_threshold)`.
pub fn allowed_exceedances(pair_count: usize, z_threshold: f64) -> usize {
    let p = libm::erfc(z_threshold / std::f64::consts::SQRT_2).clamp(0.0, 1.0);
    if pair_count == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return pair_count;
    }
    // pmf by the ratio recurrence; the survival function sums the upper tail
    let n = pair_count;
    let mut pmf = Vec::with_capacity(n + 1);
    let mut current = (n as f64 * (1.0 - p).ln()).exp();
    for k in 0..=n {
        pmf.push(current);
        current *= (n - k) as f64 / (k + 1) as f64 * p / (1.0 - p);
    }
    let mut tail = 0.0;
    let mut survival = vec![0.0; n + 1];
    for k in (0..=n).rev() {
        survival[k] = tail;
        tail += pmf[k];
    }
    (0..n).find(|&k| survival[k] <= COVARIANCE_FALSE_ALARM).unwrap_or(n)
}

/// Checks up to `pair_count` distinct grid pairs `(s ≤ t)` drawn without
/// replacement from the points where the ensemble is not identically zero.
pub fn covariance_test_ensemble(
    ensemble: &PathEnsemble,
    target: KernelKind,
    pair_count: usize,
    z_threshold: f64,
) -> Result<CovarianceReport> {
    require_at_least("pair_count", pair_count as u64, 1)?;
    if !(z_threshold > 0.0) {
        return Err(Error::OutOfDomain {
            name: "z_threshold",
            value: z_threshold,
            range: "(0, ∞)",
        });
    }
    let live: Vec<usize> = (0..ensemble.n_points())
        .filter(|&g| !ensemble.column_is_zero(g))
        .collect();
    let mut pairs: Vec<(usize, usize)> = live
        .iter()
        .enumerate()
        .flat_map(|(a, &s)| live[a..].iter().map(move |&t| (s, t)))
        .collect();
    if pairs.is_empty() {
        return Ok(CovarianceReport {
            target,
            z_threshold,
            checks: Vec::new(),
            exceedances: 0,
            allowed_exceedances: 0,
            skipped: true,
        });
    }
    // partial Fisher–Yates
    let take = pair_count.min(pairs.len());
    let mut rng = CounterRng::new(ensemble.config.seed, PAIR_STREAM);
    for k in 0..take {
        let pick = k + rng.below((pairs.len() - k) as u64) as usize;
        pairs.swap(k, pick);
    }
    pairs.truncate(take);
    pairs.sort_unstable();

    let checks = pairs
        .iter()
        .map(|&(s, t)| empirical_covariance_against(ensemble, target, s, t))
        .collect::<Result<Vec<_>>>()?;
    let exceedances = checks.iter().filter(|c| c.z_score.abs() > z_threshold).count();
    Ok(CovarianceReport {
        target,
        z_threshold,
        checks,
        exceedances,
        allowed_exceedances: allowed_exceedances(take, z_threshold),
        skipped: false,
    })
}

/// Simulates `config` and tests the ensemble against its own kernel.
pub fn covariance_test(config: &SimulationConfig, pair_count: usize, z_threshold: f64) -> Result<CovarianceReport> {
    let ensemble = sample_paths(config)?;
    covariance_test_ensemble(&ensemble, config.kind, pair_count, z_threshold)
}

/// Trapezoid-rule integral of each path over the grid.
pub fn path_integrals(ensemble: &PathEnsemble) -> Vec<f64> {
    let grid = &ensemble.config.grid;
    (0..ensemble.n_paths())
        .map(|i| {
            let row = ensemble.path(i);
            grid.windows(2)
                .zip(row.windows(2))
                .map(|(t, x)| 0.5 * (t[1] - t[0]) * (x[0] + x[1]))
                .sum()
        })
        .collect()
}
