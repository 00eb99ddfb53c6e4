//! Covariance kernels of the Wiener process and its demeaned, detrended and
//! pinned (bridge) variants on `[0, 1]`.

use crate::error::{require_unit_interval, Error, Result};
use crate::linalg::SymmetricMatrix;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `min(s, t)`
    Wiener,
    /// Wiener process minus its path average.
    Demeaned,
    /// Wiener process minus its least-squares linear trend.
    Detrended,
    /// `min(s, t) − st`, the process pinned to zero at `t = 1`.
    Bridge,
}

impl KernelKind {
    pub const ALL: [KernelKind; 4] = [
        KernelKind::Wiener,
        KernelKind::Demeaned,
        KernelKind::Detrended,
        KernelKind::Bridge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Wiener => "wiener",
            KernelKind::Demeaned => "demeaned",
            KernelKind::Detrended => "detrended",
            KernelKind::Bridge => "bridge",
        }
    }

    /// Kernel value without domain checks. Arguments are put in canonical
    /// order first, so `eval_unchecked(s, t) == eval_unchecked(t, s)`
    /// bit for bit.
    #[inline]
    pub fn eval_unchecked(self, s: f64, t: f64) -> f64 {
        let (a, b) = if s <= t { (s, t) } else { (t, s) };
        match self {
            KernelKind::Wiener => a,
            KernelKind::Demeaned => a - (a + b) + 0.5 * (a * a + b * b) + 1.0 / 3.0,
            KernelKind::Detrended => {
                let (a2, b2) = (a * a, b * b);
                a - 1.1 * (a + b) + 2.0 * (a2 + b2) - (a2 * a + b2 * b) - 3.0 * (a * b2 + b * a2)
                    + 2.0 * (a * b2 * b + b * a2 * a)
                    + 1.2 * a * b
                    + 2.0 / 15.0
            }
            KernelKind::Bridge => a - a * b,
        }
    }

    /// Kernel value for `s, t ∈ [0, 1]`.
    pub fn eval(self, s: f64, t: f64) -> Result<f64> {
        require_unit_interval("s", s)?;
        require_unit_interval("t", t)?;
        Ok(self.eval_unchecked(s, t))
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wiener" => Ok(KernelKind::Wiener),
            "demeaned" => Ok(KernelKind::Demeaned),
            "detrended" => Ok(KernelKind::Detrended),
            "bridge" => Ok(KernelKind::Bridge),
            other => Err(Error::InvalidArgument(format!(
                "unknown kernel kind {other:?} (expected wiener, demeaned, detrended or bridge)"
            ))),
        }
    }
}

/// Gram matrix of a kernel over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub kind: KernelKind,
    pub grid: Vec<f64>,
    pub entries: SymmetricMatrix,
}

/// Checks that a grid is non-empty, strictly increasing and inside `[0, 1]`.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::InvalidGrid(format!("point {bad} lies outside [0, 1]")));
    }
    if let Some(i) = grid.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid(format!(
            "grid is not strictly increasing at index {} ({} then {})",
            i + 1,
            grid[i],
            grid[i + 1]
        )));
    }
    Ok(())
}

pub fn gram(kind: KernelKind, grid: &[f64]) -> Result<GramMatrix> {
    validate_grid(grid)?;
    Ok(GramMatrix {
        kind,
        grid: grid.to_vec(),
        entries: SymmetricMatrix::from_fn(grid.len(), |i, j| kind.eval_unchecked(grid[i], grid[j])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(KernelKind::Wiener.eval(0.3, 0.7).unwrap(), 0.3);
        assert!((KernelKind::Demeaned.eval(1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((KernelKind::Detrended.eval(0.5, 0.5).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(KernelKind::Bridge.eval(0.5, 0.5).unwrap(), 0.25);
        assert!((KernelKind::Demeaned.eval(0.0, 1.0).unwrap() + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn detrended_matches_expanded_display() {
        // term-by-term transcription of the polynomial, no canonical ordering
        let display = |s: f64, t: f64| {
            s.min(t) - 1.1 * (s + t) + 2.0 * (s * s + t * t) - (s.powi(3) + t.powi(3)) - 3.0 * (s * t * t + t * s * s)
                + 2.0 * (s * t.powi(3) + t * s.powi(3))
                + 1.2 * s * t
                + 2.0 / 15.0
        };
        for &(s, t) in &[(0.1, 0.9), (0.7, 0.2), (0.0, 1.0), (0.33, 0.33)] {
            let got = KernelKind::Detrended.eval(s, t).unwrap();
            assert!((got - display(s, t)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_out_of_range_arguments() {
        for kind in KernelKind::ALL {
            assert!(kind.eval(-0.1, 0.5).is_err());
            assert!(kind.eval(0.5, 1.5).is_err());
            assert!(kind.eval(f64::NAN, 0.5).is_err());
        }
    }

    #[test]
    fn gram_examples() {
        let g = gram(KernelKind::Wiener, &[1.0]).unwrap();
        assert_eq!(g.entries.get(0, 0), 1.0);
        let g = gram(KernelKind::Demeaned, &[0.0, 1.0]).unwrap();
        assert!((g.entries.get(0, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((g.entries.get(1, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((g.entries.get(0, 1) + 1.0 / 6.0).abs() < 1e-15);
        assert!(g.entries.is_symmetric());
    }

    #[test]
    fn gram_rejects_bad_grids() {
        assert!(matches!(gram(KernelKind::Wiener, &[]), Err(Error::InvalidGrid(_))));
        assert!(gram(KernelKind::Wiener, &[0.5, 0.2]).is_err());
        assert!(gram(KernelKind::Wiener, &[0.2, 0.2]).is_err());
        assert!(gram(KernelKind::Wiener, &[0.2, 1.2]).is_err());
    }

    #[test]
    fn bridge_is_pinned() {
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            assert_eq!(KernelKind::Bridge.eval(t, 1.0).unwrap(), 0.0);
            assert_eq!(KernelKind::Bridge.eval(t, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in KernelKind::ALL {
            assert_eq!(kind.name().parse::<KernelKind>().unwrap(), kind);
        }
        assert!("ou".parse::<KernelKind>().is_err());
    }
}
