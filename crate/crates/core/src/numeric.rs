//! Small floating-point helpers shared by the series and Mercer code.

/// Neumaier's variant of Kahan summation.
///
/// Terms must be added in the order the caller wants them summed; all partial
/// sums in this crate add in ascending index order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for term in iter {
            self.add(term);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator of terms, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().collect::<CompensatedSum>().value()
}

/// Number of representable doubles between `a` and `b`.
///
/// Returns `u64::MAX` if either argument is NaN. Signed zeros compare equal.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    if a.is_nan() || b.is_nan() {
        return u64::MAX;
    }
    fn ordered(x: f64) -> i128 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            // map negative floats below the positive ones, monotonically
            i64::MIN as i128 - bits as i128
        } else {
            bits as i128
        }
    }
    (ordered(a) - ordered(b)).unsigned_abs() as u64
}

/// `sin(πx)` with exact reduction modulo 2, so it vanishes exactly at
/// integers (for `|x| < 2⁵²`).
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (std::f64::consts::PI * r).sin()
}

/// `cos(πx)` with exact reduction modulo 2: `±1` at integers and `0` at
/// half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let a = (x - 2.0 * (0.5 * x).round()).abs();
    let pi = std::f64::consts::PI;
    if a <= 0.25 {
        (pi * a).cos()
    } else if a <= 0.75 {
        (pi * (0.5 - a)).sin()
    } else {
        -(pi * (1.0 - a)).cos()
    }
}

pub const PI_SQUARED: f64 = std::f64::consts::PI * std::f64::consts::PI;

/// π²/6, the value of ζ(2).
pub const ZETA2: f64 = PI_SQUARED / 6.0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ulp_distance_basics() {
        assert_eq!(ulp_distance(1.0, 1.0), 0);
        assert_eq!(ulp_distance(0.0, -0.0), 0);
        assert_eq!(ulp_distance(1.0, f64::from_bits(1.0f64.to_bits() + 3)), 3);
        assert_eq!(ulp_distance(-1.0, f64::from_bits((-1.0f64).to_bits() + 2)), 2);
        assert_eq!(ulp_distance(f64::MIN_POSITIVE * 0.0, f64::from_bits(1)), 1);
        assert_eq!(ulp_distance(-f64::from_bits(1), f64::from_bits(1)), 2);
        assert_eq!(ulp_distance(f64::NAN, 1.0), u64::MAX);
    }

    #[test]
    fn trig_pi_exact_points_and_accuracy() {
        for k in -50i32..=50 {
            let k = f64::from(k);
            assert_eq!(sin_pi(k), 0.0);
            assert_eq!(cos_pi(k).abs(), 1.0);
            assert_eq!(cos_pi(k + 0.5), 0.0);
            assert_eq!(sin_pi(k + 0.5).abs(), 1.0);
        }
        for i in 0..2000 {
            let x = -7.3 + i as f64 * 0.0071;
            let pi = std::f64::consts::PI;
            assert!((sin_pi(x) - (pi * x).sin()).abs() < 1e-14);
            assert!((cos_pi(x) - (pi * x).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn compensation_recovers_lost_bits() {
        let naive: f64 = std::iter::once(1.0).chain(std::iter::repeat(1e-16).take(10_000)).sum();
        let comp = compensated_sum(std::iter::once(1.0).chain(std::iter::repeat(1e-16).take(10_000)));
        assert_eq!(naive, 1.0);
        assert!((comp - (1.0 + 1e-12)).abs() < 1e-15);
    }
}
