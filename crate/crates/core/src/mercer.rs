//! Mercer partial sums `Σ f_j(t)² / λ_j` and the three routes from them to
//! ζ(2) = π²/6.
//!
//! * Proof 1: Wiener kernel at `t = 1`; the Mercer series is
//!   `8/π² Σ (2j−1)⁻² = 1`, i.e. the odd-square sum π²/8, and removing the
//!   even squares gives `ζ(2) = (4/3)·π²/8`.
//! * Proof 2: demeaned kernel at `t = 1`, where `k^μ(1, 1) = 1/3 = 2ζ(2)/π²`.
//! * Proof 3: detrended kernel at `t = ½`, where the even-index
//!   eigenfunctions vanish and `k^τ(½, ½) = 1/12 = ζ(2)/(2π²)`.

use crate::eigen::EigenPair;
use crate::error::{require_at_least, require_unit_interval, Error, Result};
use crate::kernels::KernelKind;
use crate::numeric::{compensated_sum, CompensatedSum, PI_SQUARED, ZETA2};
use crate::table::{Cell, Table};
use std::fmt;
use std::str::FromStr;

/// `Σ_{j=1}^{J} f_j(t)² / λ_j`.
pub fn mercer_partial(kind: KernelKind, t: f64, terms: u64) -> Result<f64> {
    require_unit_interval("t", t)?;
    require_at_least("J", terms, 1)?;
    let mut acc = CompensatedSum::new();
    for j in 1..=terms {
        acc.add(EigenPair::new(kind, j)?.mercer_term(t));
    }
    Ok(acc.value())
}

/// The individual Mercer terms `f_j(t)² / λ_j`, `j = 1..=J`.
pub fn mercer_terms(kind: KernelKind, t: f64, terms: u64) -> Result<Vec<f64>> {
    require_unit_interval("t", t)?;
    require_at_least("J", terms, 1)?;
    (1..=terms)
        .map(|j| EigenPair::new(kind, j).map(|p| p.mercer_term(t)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofId {
    Proof1,
    Proof2,
    Proof3,
}

impl ProofId {
    pub const ALL: [ProofId; 3] = [ProofId::Proof1, ProofId::Proof2, ProofId::Proof3];

    pub fn number(self) -> u8 {
        match self {
            ProofId::Proof1 => 1,
            ProofId::Proof2 => 2,
            ProofId::Proof3 => 3,
        }
    }

    pub fn kernel(self) -> KernelKind {
        match self {
            ProofId::Proof1 => KernelKind::Wiener,
            ProofId::Proof2 => KernelKind::Demeaned,
            ProofId::Proof3 => KernelKind::Detrended,
        }
    }
}

impl fmt::Display for ProofId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Proof{}", self.number())
    }
}

impl FromStr for ProofId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().trim_start_matches("proof") {
            "1" => Ok(ProofId::Proof1),
            "2" => Ok(ProofId::Proof2),
            "3" => Ok(ProofId::Proof3),
            _ => Err(Error::InvalidArgument(format!("unknown proof {s:?} (expected 1, 2 or 3)"))),
        }
    }
}

/// Estimate of ζ(2) after `J` nonzero terms of the given proof's series.
///
/// For Proof 3, `J` counts odd Lemma indices `1, 3, …, 2J−1`; the Mercer
/// sum runs over `2J` indices, the even ones contributing exactly zero.
pub fn basel_estimate(proof: ProofId, terms: u64) -> Result<f64> {
    require_at_least("J", terms, 1)?;
    match proof {
        ProofId::Proof1 => {
            let odd = compensated_sum((1..=terms).map(|j| {
                let d = (2 * j - 1) as f64;
                1.0 / (d * d)
            }));
            Ok(4.0 / 3.0 * odd)
        }
        ProofId::Proof2 => Ok(PI_SQUARED / 2.0 * mercer_partial(KernelKind::Demeaned, 1.0, terms)?),
        ProofId::Proof3 => Ok(2.0 * PI_SQUARED * mercer_partial(KernelKind::Detrended, 0.5, 2 * terms)?),
    }
}

/// Proof 1 evaluated literally: `(4/3) Σ sin²((j−½)π) / (2j−1)²`, i.e. the
/// Wiener Mercer series at `t = 1` with the π² factors cancelled.
pub fn proof1_literal(terms: u64) -> Result<f64> {
    require_at_least("J", terms, 1)?;
    let sum = compensated_sum((1..=terms).map(|j| {
        let s = ((j as f64 - 0.5) * std::f64::consts::PI).sin();
        let d = (2 * j - 1) as f64;
        s * s / (d * d)
    }));
    Ok(4.0 / 3.0 * sum)
}

/// Upper bound on `π²/6 − basel_estimate(proof, J)`.
///
/// * Proof 1: `(4/3) Σ_{j>J} (2j−1)⁻² ≤ (4/3)·(1/4) Σ_{j>J} 1/((j−1)j) = 1/(3J)`.
///   That bound is tight to `O(J⁻³)`, which drops below double rounding
///   near `J = 10⁵`, so `1/(3J − 1)` is returned instead.
/// * Proofs 2 and 3 both reduce to `Σ_{k≤J} k⁻²`, with tail `< 1/J`.
pub fn proof_tail_bound(proof: ProofId, terms: u64) -> Result<f64> {
    require_at_least("J", terms, 1)?;
    let j = terms as f64;
    Ok(match proof {
        ProofId::Proof1 => 1.0 / (3.0 * j - 1.0),
        ProofId::Proof2 | ProofId::Proof3 => 1.0 / j,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub terms: u64,
    pub estimate: f64,
    pub abs_error: f64,
    pub tail_bound: f64,
}

/// ζ(2) estimates of one proof over a list of truncation levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub proof_id: ProofId,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn build(proof: ProofId, levels: &[u64]) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("at least one truncation level is required".into()));
        }
        let rows = levels
            .iter()
            .map(|&terms| {
                let estimate = basel_estimate(proof, terms)?;
                Ok(ConvergenceRow {
                    terms,
                    estimate,
                    abs_error: (ZETA2 - estimate).abs(),
                    tail_bound: proof_tail_bound(proof, terms)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { proof_id: proof, rows })
    }

    /// Every row's error is within its bound.
    pub fn bounds_hold(&self) -> bool {
        self.rows.iter().all(|r| r.abs_error <= r.tail_bound)
    }
}

pub const CONVERGENCE_COLUMNS: [&str; 5] = ["proof_id", "J", "estimate", "abs_error", "tail_bound"];

/// Rows of several reports stacked in one table.
pub fn convergence_table(reports: &[ConvergenceReport]) -> Table {
    let mut table = Table::new(&CONVERGENCE_COLUMNS);
    for report in reports {
        for row in &report.rows {
            table.push(vec![
                Cell::Text(report.proof_id.to_string()),
                Cell::Int(row.terms as i64),
                Cell::Float(row.estimate),
                Cell::Float(row.abs_error),
                Cell::Float(row.tail_bound),
            ]);
        }
    }
    if reports.iter().any(|r| r.proof_id == ProofId::Proof3) {
        table.note("Proof3: J counts odd detrended indices 1, 3, ..., 2J-1; even indices vanish at t = 1/2");
    }
    table
}
