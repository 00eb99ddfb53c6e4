//! Nyström discretization of `f(t) = λ ∫₀¹ k(s, t) f(s) ds` on
//! Gauss–Legendre nodes.
//!
//! With nodes `t_i` and weights `w_i` the operator becomes `K D` (`K` the
//! Gram matrix, `D = diag(w)`); the similar matrix `D^{1/2} K D^{1/2}` is
//! symmetric, its eigenvalues `μ̂_j` approximate `1/λ_j`, and its unit
//! eigenvectors `v` give eigenfunction samples `f̂(t_i) = v_i / √w_i`.
//! This module never looks at the closed forms in [`crate::eigen`] except in
//! [`compare_eigenpairs`], which is the point of having it.

use crate::eigen::EigenPair;
use crate::error::{require_at_least, Error, Result};
use crate::kernels::KernelKind;
use crate::linalg::{symmetric_eigen, EigenMethod, SymmetricMatrix};
use crate::quadrature::GaussLegendre;
use crate::table::{Cell, Table};

pub const MIN_NODES: usize = 16;

/// Relative eigenvalue tolerance for [`EigenComparison::passes`].
///
/// The `min(s, t)` kink limits Gauss–Legendre to algebraic convergence;
/// observed errors at 1000 nodes are far below this.
pub const ORACLE_RELATIVE_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct NystromSolution {
    pub kind: KernelKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Leading operator eigenvalues `μ̂_j ≈ 1/λ_j`, descending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[j][i] = f̂_j(t_i)`, orthonormal under `Σ_i w_i f g`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// All `n_nodes` operator eigenvalues, descending.
    pub spectrum: Vec<f64>,
}

impl NystromSolution {
    /// `1/μ̂_j` for the zero-based index `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        1.0 / self.eigenvalues[k]
    }

    /// Weighted inner product `Σ_i w_i f_a(t_i) f_b(t_i)`.
    pub fn weighted_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
    }

    /// Nyström extension `f̂_k(t) = λ̂_k Σ_i w_i k(t_i, t) f̂_k(t_i)` at an
    /// arbitrary `t ∈ [0, 1]`.
    pub fn interpolate(&self, k: usize, t: f64) -> f64 {
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.eigenvectors[k])
            .map(|((&s, &w), &f)| w * self.kind.eval_unchecked(s, t) * f)
            .sum();
        self.lambda(k) * sum
    }
}

pub fn nystrom_solve(kind: KernelKind, n_nodes: usize, n_eigs: usize) -> Result<NystromSolution> {
    nystrom_solve_with(kind, n_nodes, n_eigs, EigenMethod::Auto)
}

pub fn nystrom_solve_with(
    kind: KernelKind,
    n_nodes: usize,
    n_eigs: usize,
    method: EigenMethod,
) -> Result<NystromSolution> {
    require_at_least("n_nodes", n_nodes as u64, MIN_NODES as u64)?;
    require_at_least("n_eigs", n_eigs as u64, 1)?;
    if n_eigs > n_nodes {
        return Err(Error::InvalidArgument(format!(
            "n_eigs ({n_eigs}) exceeds n_nodes ({n_nodes})"
        )));
    }
    let rule = GaussLegendre::new(n_nodes)?;
    let nodes = rule.nodes().to_vec();
    let weights = rule.weights().to_vec();
    let root_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let a = SymmetricMatrix::from_fn(n_nodes, |i, j| root_w[i] * kind.eval_unchecked(nodes[i], nodes[j]) * root_w[j]);
    let eig = symmetric_eigen(&a, n_eigs, method)?;
    let eigenvectors = eig
        .vectors
        .into_iter()
        .map(|v| v.iter().zip(&root_w).map(|(x, r)| x / r).collect())
        .collect();
    Ok(NystromSolution {
        kind,
        eigenvalues: eig.values[..n_eigs].to_vec(),
        spectrum: eig.values,
        nodes,
        weights,
        eigenvectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenComparisonRow {
    pub j: u64,
    pub analytic: f64,
    pub nystrom: f64,
    pub relative_error: f64,
    /// `max_i |f_j(t_i) − σ f̂_j(t_i)|` with the sign `σ` chosen to maximize
    /// the weighted inner product.
    pub eigenfunction_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenComparison {
    pub kind: KernelKind,
    pub n_nodes: usize,
    pub rows: Vec<EigenComparisonRow>,
}

impl EigenComparison {
    pub fn max_relative_error(&self) -> f64 {
        self.rows.iter().map(|r| r.relative_error).fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.rows.iter().all(|r| r.relative_error <= tolerance)
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(&[
            "kind",
            "n_nodes",
            "j",
            "lambda_analytic",
            "lambda_nystrom",
            "relative_error",
            "eigenfunction_deviation",
        ]);
        for r in &self.rows {
            table.push(vec![
                Cell::Text(self.kind.to_string()),
                Cell::Int(self.n_nodes as i64),
                Cell::Int(r.j as i64),
                Cell::Float(r.analytic),
                Cell::Float(r.nystrom),
                Cell::Float(r.relative_error),
                Cell::Float(r.eigenfunction_deviation),
            ]);
        }
        table
    }
}

/// Analytic eigenpairs of `kind` against a Nyström solution, matched by
/// sorted order.
pub fn compare_eigenpairs(kind: KernelKind, n_eigs: usize, n_nodes: usize) -> Result<EigenComparison> {
    let solution = nystrom_solve(kind, n_nodes, n_eigs)?;
    compare_with_solution(&solution)
}

pub fn compare_with_solution(solution: &NystromSolution) -> Result<EigenComparison> {
    let rows = (0..solution.eigenvalues.len())
        .map(|k| {
            let pair = EigenPair::new(solution.kind, k as u64 + 1)?;
            let analytic: Vec<f64> = solution.nodes.iter().map(|&t| pair.eval(t)).collect();
            let numeric = &solution.eigenvectors[k];
            let sign = solution.weighted_dot(&analytic, numeric).signum();
            let deviation = analytic
                .iter()
                .zip(numeric)
                .map(|(a, b)| (a - sign * b).abs())
                .fold(0.0, f64::max);
            let nystrom = solution.lambda(k);
            Ok(EigenComparisonRow {
                j: pair.j,
                analytic: pair.lambda,
                nystrom,
                relative_error: (nystrom - pair.lambda).abs() / pair.lambda,
                eigenfunction_deviation: deviation,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EigenComparison {
        kind: solution.kind,
        n_nodes: solution.nodes.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::PI_SQUARED;

    #[test]
    fn rejects_bad_sizes() {
        assert!(nystrom_solve(KernelKind::Wiener, 15, 1).is_err());
        assert!(nystrom_solve(KernelKind::Wiener, 16, 0).is_err());
        assert!(matches!(
            nystrom_solve(KernelKind::Detrended, 16, 20),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn leading_wiener_eigenvalue() {
        let sol = nystrom_solve(KernelKind::Wiener, 200, 3).unwrap();
        assert!((sol.eigenvalues[0] - 4.0 / PI_SQUARED).abs() < 1e-5);
        let sum: f64 = sol.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_identity_small_grid() {
        let sol = nystrom_solve(KernelKind::Wiener, 64, 64).unwrap();
        let total: f64 = sol.spectrum.iter().sum();
        let quad: f64 = sol.nodes.iter().zip(&sol.weights).map(|(t, w)| w * t).sum();
        assert!((total - quad).abs() < 1e-8);
        assert!((total - 0.5).abs() < 1e-8);
    }

    #[test]
    fn interpolation_reproduces_node_values_and_analytic_shape() {
        let sol = nystrom_solve(KernelKind::Bridge, 128, 2).unwrap();
        for i in [0usize, 40, 127] {
            let t = sol.nodes[i];
            assert!((sol.interpolate(0, t) - sol.eigenvectors[0][i]).abs() < 1e-9);
        }
        let sign = sol.eigenvectors[0][64].signum();
        let f = |t: f64| sign * sol.interpolate(0, t);
        assert!((f(0.5) - std::f64::consts::SQRT_2).abs() < 1e-3);
        assert!(f(0.0).abs() < 1e-12 && f(1.0).abs() < 1e-12);
    }
}
