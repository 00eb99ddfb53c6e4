use klbasel_core::linalg::jacobi_eigen;
use klbasel_core::quadrature::GaussLegendre;
use klbasel_core::{gram, KernelKind};
use proptest::prelude::*;

fn kind_strategy() -> impl Strategy<Value = KernelKind> {
    prop::sample::select(KernelKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernels_are_exactly_symmetric(s in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        for kind in KernelKind::ALL {
            let a = kind.eval(s, t).unwrap();
            let b = kind.eval(t, s).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn bridge_pinned_at_both_ends(t in 0.0f64..=1.0) {
        prop_assert_eq!(KernelKind::Bridge.eval(t, 1.0).unwrap(), 0.0);
        prop_assert_eq!(KernelKind::Bridge.eval(t, 0.0).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn gram_matrices_are_psd(
        kind in kind_strategy(),
        raw in prop::collection::btree_set(0u32..=1_000_000, 1..=64),
    ) {
        let grid: Vec<f64> = raw.iter().map(|&x| x as f64 / 1_000_000.0).collect();
        let g = gram(kind, &grid).unwrap();
        prop_assert!(g.entries.is_symmetric());
        let eig = jacobi_eigen(&g.entries).unwrap();
        let largest = eig.values[0];
        let smallest = *eig.values.last().unwrap();
        prop_assert!(smallest >= -1e-10 * largest.max(0.0), "{} {}", smallest, largest);
    }
}

#[test]
fn detrended_gram_on_uniform_grid_is_psd() {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let g = gram(KernelKind::Detrended, &grid).unwrap();
    let eig = jacobi_eigen(&g.entries).unwrap();
    assert!(*eig.values.last().unwrap() >= -1e-10 * eig.values[0]);
}

/// Demeaning removes the constant direction, detrending the constant and
/// the linear one.
#[test]
fn projection_identities() {
    let rule = GaussLegendre::new(64).unwrap();
    for i in 0..20 {
        let t = (i as f64 + 0.5) / 20.0;
        let mu = rule.integrate_split(&[t], |s| KernelKind::Demeaned.eval_unchecked(s, t));
        assert!(mu.abs() < 1e-10, "t={t}: {mu}");
        let tau0 = rule.integrate_split(&[t], |s| KernelKind::Detrended.eval_unchecked(s, t));
        let tau1 = rule.integrate_split(&[t], |s| s * KernelKind::Detrended.eval_unchecked(s, t));
        assert!(tau0.abs() < 1e-10, "t={t}: {tau0}");
        assert!(tau1.abs() < 1e-10, "t={t}: {tau1}");
    }
}
