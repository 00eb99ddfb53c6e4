//! Closed-form eigenvalues and eigenfunctions of the four kernels.
//!
//! Eigenvalues follow the convention `f(t) = λ ∫₀¹ k(s, t) f(s) ds`, so they
//! are the *reciprocals* of the integral operator's eigenvalues and grow
//! like `j²`.
//!
//! | kind      | λ_j                                  | f_j(t)                                   |
//! |-----------|--------------------------------------|------------------------------------------|
//! | Wiener    | (j − ½)² π²                          | √2 sin((j − ½)πt)                        |
//! | Demeaned  | j² π²                                | √2 cos(jπt)                              |
//! | Detrended | (j + 1)² π² (j odd), 4 z²_{j/2} (even) | √2 cos((j + 1)πt) / ±√Λ_j sin(√λ_j (t − ½)) |
//! | Bridge    | j² π²                                | √2 sin(jπt)                              |
//!
//! where `z_n` is the n-th positive root of `J_{3/2}` and
//! `Λ_j = 2 / sin²(√λ_j / 2)`.

use crate::error::{require_at_least, require_unit_interval, Error, Result};
use crate::kernels::KernelKind;
use crate::numeric::{cos_pi, sin_pi};
use std::f64::consts::{PI, SQRT_2};

const BISECTION_STEPS: usize = 80;
const NEWTON_STEPS: usize = 3;

/// n-th positive root of `J_{3/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRoot {
    pub n: u64,
    pub z: f64,
}

/// `sin x − x cos x`, which vanishes exactly at the positive roots of
/// `J_{3/2}(x) ∝ (sin x / x − cos x) / √x`.
#[inline]
pub fn bessel_root_function(x: f64) -> f64 {
    x.sin() - x * x.cos()
}

/// Bisection on `sin x − x cos x` over `(nπ, (n+1)π)` followed by a short
/// Newton polish that is only accepted while it stays inside the bracket.
pub fn bessel_root(n: u64) -> Result<BesselRoot> {
    require_at_least("n", n, 1)?;
    let mut lo = n as f64 * PI;
    let mut hi = (n + 1) as f64 * PI;
    let lo_sign = bessel_root_function(lo).signum();
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_root_function(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut z = 0.5 * (lo + hi);
    let n_pi = n as f64 * PI;
    for _ in 0..NEWTON_STEPS {
        let g = bessel_root_function(z);
        let dg = z * z.sin();
        if g == 0.0 || dg == 0.0 {
            break;
        }
        let next = z - g / dg;
        if !(next > n_pi && next < n_pi + PI) || bessel_root_function(next).abs() > g.abs() {
            break;
        }
        z = next;
    }
    Ok(BesselRoot { n, z })
}

/// Which closed form an eigenpair uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Sine,
    Cosine,
    DetrendedOdd,
    DetrendedEven,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Sine => "sin",
            Branch::Cosine => "cos",
            Branch::DetrendedOdd => "odd",
            Branch::DetrendedEven => "even",
        }
    }
}

/// One analytic eigenpair with its evaluation constants precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub kind: KernelKind,
    pub j: u64,
    pub lambda: f64,
    pub branch: Branch,
    /// Angular frequency of the trigonometric eigenfunction.
    frequency: f64,
    /// `frequency / π` for the sine/cosine branches, evaluated with exact
    /// reduction so that zeros at `t ∈ {0, ½, 1}` are exact.
    cycles: f64,
    /// Amplitude including sign.
    amplitude: f64,
}

impl EigenPair {
    pub fn new(kind: KernelKind, j: u64) -> Result<Self> {
        require_at_least("j", j, 1)?;
        let jf = j as f64;
        let pair = match kind {
            KernelKind::Wiener => Self::trig(kind, j, jf - 0.5, Branch::Sine),
            KernelKind::Demeaned => Self::trig(kind, j, jf, Branch::Cosine),
            KernelKind::Bridge => Self::trig(kind, j, jf, Branch::Sine),
            KernelKind::Detrended if j % 2 == 1 => Self::trig(kind, j, jf + 1.0, Branch::DetrendedOdd),
            KernelKind::Detrended => {
                let z = bessel_root(j / 2)?.z;
                let sign = if (j / 2) % 2 == 1 { 1.0 } else { -1.0 };
                let capital = 2.0 / (z.sin() * z.sin());
                EigenPair {
                    kind,
                    j,
                    lambda: 4.0 * z * z,
                    branch: Branch::DetrendedEven,
                    frequency: 2.0 * z,
                    cycles: 2.0 * z / PI,
                    amplitude: sign * capital.sqrt(),
                }
            }
        };
        Ok(pair)
    }

    fn trig(kind: KernelKind, j: u64, cycles: f64, branch: Branch) -> Self {
        let frequency = cycles * PI;
        EigenPair {
            kind,
            j,
            lambda: frequency * frequency,
            branch,
            frequency,
            cycles,
            amplitude: SQRT_2,
        }
    }

    /// `√λ_j`
    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Eigenfunction value; `t` is expected in `[0, 1]` but not checked.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match self.branch {
            Branch::Sine => self.amplitude * sin_pi(self.cycles * t),
            Branch::Cosine | Branch::DetrendedOdd => self.amplitude * cos_pi(self.cycles * t),
            Branch::DetrendedEven => self.amplitude * (self.frequency * (t - 0.5)).sin(),
        }
    }

    /// `f_j(t)² / λ_j`, the j-th Mercer term at `t`.
    #[inline]
    pub fn mercer_term(&self, t: f64) -> f64 {
        let f = self.eval(t);
        f * f / self.lambda
    }
}

pub fn eigenvalue(kind: KernelKind, j: u64) -> Result<f64> {
    Ok(EigenPair::new(kind, j)?.lambda)
}

pub fn eigenfunction(kind: KernelKind, j: u64, t: f64) -> Result<f64> {
    require_unit_interval("t", t)?;
    Ok(EigenPair::new(kind, j)?.eval(t))
}

/// `Λ_j = 2 / sin²(√λ_j / 2)` for the even detrended eigenfunctions.
pub fn capital_lambda(j: u64) -> Result<f64> {
    if j == 0 || j % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Λ_j is defined for even j ≥ 2, got {j}")));
    }
    let half = eigenvalue(KernelKind::Detrended, j)?.sqrt() / 2.0;
    let s = half.sin();
    if s == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "sin(√λ_{j}/2) vanished; eigenvalue {} is corrupted",
            4.0 * half * half
        )));
    }
    Ok(2.0 / (s * s))
}
