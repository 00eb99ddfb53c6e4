//! Classical partial sums surrounding ζ(2): the Riemann zeta partial sums,
//! the telescoping triangular series, odd squares, the Leibniz series and
//! the two residual sequences obtained by squaring the Leibniz sum.
//!
//! Every sum is accumulated in ascending index order with compensated
//! summation, so results are deterministic and accurate to a few ulps.

use crate::error::{require_at_least, Error, Result};
use crate::numeric::{compensated_sum, CompensatedSum};

/// Bound constant `c` in `|u_N| ≤ c / N` for [`estermann_residual`].
///
/// Measured: `N·|u_N|` rises from 0.95 (N = 10) to about 1.035 (N ≥ 10⁴).
pub const ESTERMANN_BOUND: f64 = 2.0;

/// Bound constant `c` in `|gap| ≤ c / N` for [`euler2_gap`].
///
/// Measured: `N·|gap|` increases towards 1/8 from below.
pub const EULER2_GAP_BOUND: f64 = 0.5;

/// A finite partial sum together with its number of terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum {
    pub n_terms: u64,
    pub value: f64,
}

/// One entry of a residual sequence (`y_N` or `u_N`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSequenceEntry {
    pub index: u64,
    pub residual: f64,
}

/// `Σ_{k=1}^{N} k^{-s}` for real `s > 1`.
pub fn zeta_partial(s: f64, n: u64) -> Result<PartialSum> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::OutOfDomain {
            name: "s",
            value: s,
            range: "(1, ∞)",
        });
    }
    require_at_least("N", n, 1)?;
    let value = if s == 2.0 {
        compensated_sum((1..=n).map(|k| {
            let k = k as f64;
            1.0 / (k * k)
        }))
    } else {
        compensated_sum((1..=n).map(|k| (k as f64).powf(-s)))
    };
    Ok(PartialSum { n_terms: n, value })
}

/// Bracket `(1/(N+1), 1/N)` that strictly contains `ζ(2) − Σ_{k≤N} k⁻²`.
pub fn zeta2_tail_bounds(n: u64) -> Result<(f64, f64)> {
    require_at_least("N", n, 1)?;
    let n = n as f64;
    Ok((1.0 / (n + 1.0), 1.0 / n))
}

/// `T_N = Σ_{k=1}^{N} 2/(k(k+1))`, summed term by term.
pub fn triangular_partial(n: u64) -> Result<PartialSum> {
    require_at_least("N", n, 1)?;
    let value = compensated_sum((1..=n).map(|k| {
        let k = k as f64;
        2.0 / (k * (k + 1.0))
    }));
    Ok(PartialSum { n_terms: n, value })
}

/// Closed form `2(1 − 1/(N+1))` of [`triangular_partial`].
pub fn triangular_closed_form(n: u64) -> f64 {
    2.0 * (1.0 - 1.0 / (n as f64 + 1.0))
}

/// `Z_N = Σ_{k=0}^{N} (2k+1)^{-2}`.
pub fn odd_squares_partial(n: u64) -> PartialSum {
    let value = compensated_sum((0..=n).map(|k| {
        let odd = (2 * k + 1) as f64;
        1.0 / (odd * odd)
    }));
    PartialSum { n_terms: n + 1, value }
}

/// `q_N = Σ_{k=0}^{N} (−1)^k/(2k+1)`.
pub fn leibniz_partial(n: u64) -> PartialSum {
    let mut acc = CompensatedSum::new();
    for k in 0..=n {
        let term = 1.0 / (2 * k + 1) as f64;
        acc.add(if k % 2 == 0 { term } else { -term });
    }
    PartialSum {
        n_terms: n + 1,
        value: acc.value(),
    }
}

/// Bernoulli's residual `y_N = Z_N − q_N²`, converging to π²/16.
pub fn bernoulli_residual(n: u64) -> ResidualSequenceEntry {
    let q = leibniz_partial(n).value;
    ResidualSequenceEntry {
        index: n,
        residual: odd_squares_partial(n).value - q * q,
    }
}

/// Estermann's residual `u_N = Z_N − 2 q_N²`, converging to 0.
pub fn estermann_residual(n: u64) -> ResidualSequenceEntry {
    let q = leibniz_partial(n).value;
    ResidualSequenceEntry {
        index: n,
        residual: odd_squares_partial(n).value - 2.0 * q * q,
    }
}

/// `(3/4)·Σ_{k≤2N+1} k⁻² − Z_N`, the finite-N gap in ζ(2) − ζ(2)/4 = Σ odd⁻².
pub fn euler2_gap(n: u64) -> Result<f64> {
    require_at_least("N", n, 1)?;
    let full = zeta_partial(2.0, 2 * n + 1)?.value;
    Ok(0.75 * full - odd_squares_partial(n).value)
}
