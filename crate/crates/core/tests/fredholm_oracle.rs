use klbasel_core::fredholm::{compare_with_solution, nystrom_solve, ORACLE_RELATIVE_TOLERANCE};
use klbasel_core::numeric::PI_SQUARED;
use klbasel_core::quadrature::GaussLegendre;
use klbasel_core::{bessel_root, compare_eigenpairs, KernelKind};

#[test]
fn wiener_leading_eigenvalue_at_400_nodes() {
    let sol = nystrom_solve(KernelKind::Wiener, 400, 1).unwrap();
    assert!((sol.eigenvalues[0] - 4.0 / PI_SQUARED).abs() / (4.0 / PI_SQUARED) < 1e-5);
}

#[test]
fn demeaned_third_eigenvalue_at_400_nodes() {
    let sol = nystrom_solve(KernelKind::Demeaned, 400, 3).unwrap();
    assert!((sol.lambda(2) - 9.0 * PI_SQUARED).abs() / (9.0 * PI_SQUARED) < 1e-3);
}

#[test]
fn all_kinds_match_at_1000_nodes() {
    for kind in KernelKind::ALL {
        let cmp = compare_eigenpairs(kind, 5, 1000).unwrap();
        assert!(cmp.passes(ORACLE_RELATIVE_TOLERANCE), "{kind}: {}", cmp.max_relative_error());
        for row in &cmp.rows {
            assert!(row.eigenfunction_deviation < 1e-3, "{kind} j={}", row.j);
        }
    }
}

#[test]
fn detrended_even_rows_are_bessel_roots() {
    let cmp = compare_eigenpairs(KernelKind::Detrended, 6, 1000).unwrap();
    for row in cmp.rows.iter().filter(|r| r.j % 2 == 0) {
        let z = bessel_root(row.j / 2).unwrap().z;
        assert_eq!(row.analytic, 4.0 * z * z);
        assert!((row.nystrom - 4.0 * z * z).abs() / (4.0 * z * z) < 1e-3);
    }
}

#[test]
fn refinement_reduces_error() {
    for kind in KernelKind::ALL {
        let errors: Vec<f64> = [64usize, 128, 256, 512]
            .iter()
            .map(|&n| compare_eigenpairs(kind, 1, n).unwrap().rows[0].relative_error)
            .collect();
        assert!(errors.windows(2).all(|w| w[1] < w[0]), "{kind}: {errors:?}");
    }
}

#[test]
fn eigenvectors_are_weighted_orthonormal_and_spectrum_psd() {
    for kind in KernelKind::ALL {
        for n in [200usize, 600] {
            let sol = nystrom_solve(kind, n, 8).unwrap();
            let sum: f64 = sol.weights.iter().sum();
            assert!((sum - 1.0).abs() < 1e-14);
            assert!(sol.spectrum.iter().all(|&mu| mu >= -1e-10), "{kind} n={n}");
            for a in 0..8 {
                for b in 0..8 {
                    let dot = sol.weighted_dot(&sol.eigenvectors[a], &sol.eigenvectors[b]);
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() < 1e-10, "{kind} n={n} ({a},{b}): {dot}");
                }
            }
        }
    }
}

/// `Σ μ̂_j` equals the quadrature of `k(t, t)`, and for the Wiener kernel
/// `∫₀¹ t dt = ½`.
#[test]
fn trace_identity() {
    let exact = [0.5, 1.0 / 6.0, 1.0 / 15.0, 1.0 / 6.0];
    for (kind, expect) in KernelKind::ALL.into_iter().zip(exact) {
        let n = 120;
        let sol = nystrom_solve(kind, n, n).unwrap();
        let total: f64 = sol.spectrum.iter().sum();
        let diagonal: f64 = sol
            .nodes
            .iter()
            .zip(&sol.weights)
            .map(|(&t, &w)| w * kind.eval_unchecked(t, t))
            .sum();
        assert!((total - diagonal).abs() < 1e-8, "{kind}");
        let rule = GaussLegendre::new(8).unwrap();
        let integral = rule.integrate(0.0, 1.0, |t| kind.eval_unchecked(t, t));
        assert!((integral - expect).abs() < 1e-14, "{kind}: {integral}");
        assert!((total - expect).abs() < 1e-8, "{kind}");
    }
}

#[test]
fn bridge_eigenfunctions_match_sine_modes() {
    let sol = nystrom_solve(KernelKind::Bridge, 500, 5).unwrap();
    let cmp = compare_with_solution(&sol).unwrap();
    for (k, row) in cmp.rows.iter().enumerate() {
        let j = (k + 1) as f64;
        assert!((row.analytic - j * j * PI_SQUARED).abs() < 1e-9);
        assert!(row.relative_error < 1e-3);
        // off-node check through the Nyström extension
        let sign = sol.weighted_dot(&sol.eigenvectors[k], &sol.nodes.iter().map(|&t| (j * std::f64::consts::PI * t).sin()).collect::<Vec<_>>()).signum();
        for t in [0.1, 0.37, 0.5, 0.9] {
            let approx = sign * sol.interpolate(k, t);
            let exact = std::f64::consts::SQRT_2 * (j * std::f64::consts::PI * t).sin();
            assert!((approx - exact).abs() < 1e-3, "j={j} t={t}");
        }
    }
}
