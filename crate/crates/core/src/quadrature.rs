//! Gauss–Legendre quadrature mapped to `[0, 1]`.

use crate::error::{require_at_least, Result};
use crate::numeric::compensated_sum;
use std::f64::consts::PI;

/// Gauss–Legendre rule on `[0, 1]`; nodes ascending, weights positive.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on the Legendre
    /// three-term recurrence, starting from Tricomi's asymptotic guesses.
    pub fn new(n: usize) -> Result<Self> {
        require_at_least("quadrature order", n as u64, 1)?;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        // Roots are symmetric about 0, compute the positive half on [-1, 1].
        for i in 0..n.div_ceil(2) {
            let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x is the i-th largest root; map to [0, 1] with the Jacobian 1/2.
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            nodes[i] = 0.5 * (1.0 - x);
            weights[n - 1 - i] = 0.5 * w;
            weights[i] = 0.5 * w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.5;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f(x) dx` with the rule mapped affinely onto `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let h = b - a;
        h * compensated_sum(
            self.nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(a + h * x)),
        )
    }

    /// `∫_0^1 f`, splitting at the interior points of `breaks`.
    ///
    /// Use this for integrands with kinks (e.g. `min(s, t)` at `s = t`).
    pub fn integrate_split<F: Fn(f64) -> f64>(&self, breaks: &[f64], f: F) -> f64 {
        let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > 0.0 && b < 1.0).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut lo = 0.0;
        let mut total = 0.0;
        for hi in cuts.into_iter().chain(std::iter::once(1.0)) {
            total += self.integrate(lo, hi, &f);
            lo = hi;
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the Bonnet recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules_match_tabulated_values() {
        let g = GaussLegendre::new(2).unwrap();
        let off = 0.5 / 3f64.sqrt();
        assert!((g.nodes()[0] - (0.5 - off)).abs() < 1e-15);
        assert!((g.nodes()[1] - (0.5 + off)).abs() < 1e-15);
        assert!((g.weights()[0] - 0.5).abs() < 1e-15);

        let g = GaussLegendre::new(3).unwrap();
        assert_eq!(g.nodes()[1], 0.5);
        assert!((g.weights()[1] - 4.0 / 9.0).abs() < 1e-15);
        assert!((g.weights()[0] - 5.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        for n in [1usize, 4, 7, 16] {
            let g = GaussLegendre::new(n).unwrap();
            for deg in 0..(2 * n) as i32 {
                let got = g.integrate(0.0, 1.0, |x| x.powi(deg));
                assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn large_rules_are_well_formed() {
        for n in [64usize, 256, 1000, 2000] {
            let g = GaussLegendre::new(n).unwrap();
            let sum: f64 = compensated_sum(g.weights().iter().copied());
            assert!((sum - 1.0).abs() < 1e-14, "n={n}: weight sum {sum}");
            assert!(g.weights().iter().all(|&w| w > 0.0));
            assert!(g.nodes().windows(2).all(|p| p[0] < p[1]));
            assert!(g.nodes()[0] > 0.0 && g.nodes()[n - 1] < 1.0);
            let cos = g.integrate(0.0, 1.0, |x| (10.0 * x).cos());
            assert!((cos - 10f64.sin() / 10.0).abs() < 1e-14);
        }
    }

    #[test]
    fn split_integration_handles_kinks() {
        let g = GaussLegendre::new(8).unwrap();
        let t = 0.3;
        let got = g.integrate_split(&[t, 0.0, 1.0, t], |s| s.min(t));
        assert!((got - (t - t * t / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_zero_order() {
        assert!(GaussLegendre::new(0).is_err());
    }
}
