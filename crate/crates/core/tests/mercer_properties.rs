use klbasel_core::mercer::{basel_estimate, mercer_partial, mercer_terms, ProofId};
use klbasel_core::numeric::{ulp_distance, ZETA2};
use klbasel_core::series::zeta_partial;
use klbasel_core::KernelKind;

#[test]
fn pointwise_convergence_to_the_diagonal() {
    for kind in KernelKind::ALL {
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let target = kind.eval(t, t).unwrap();
            let coarse = (mercer_partial(kind, t, 1000).unwrap() - target).abs();
            let fine = (mercer_partial(kind, t, 10_000).unwrap() - target).abs();
            assert!(fine <= 1e-3, "{kind} t={t}: {fine}");
            if coarse > 1e-15 {
                assert!(fine < coarse, "{kind} t={t}: {fine} vs {coarse}");
            } else {
                assert!(fine <= 1e-15);
            }
        }
    }
}

#[test]
fn proofs_agree_with_each_other() {
    let estimates: Vec<f64> = ProofId::ALL.iter().map(|&p| basel_estimate(p, 100_000).unwrap()).collect();
    for a in &estimates {
        for b in &estimates {
            assert!((a - b).abs() <= 2e-5);
        }
    }
}

#[test]
fn proof2_is_the_zeta_partial_sum() {
    for j in [1u64, 2, 3, 10, 57, 1000, 4321, 100_000] {
        let a = basel_estimate(ProofId::Proof2, j).unwrap();
        let b = zeta_partial(2.0, j).unwrap().value;
        assert!(ulp_distance(a, b) <= 4, "J={j}: {a} vs {b}");
    }
}

#[test]
fn proof3_even_terms_vanish() {
    let terms = mercer_terms(KernelKind::Detrended, 0.5, 2000).unwrap();
    for (k, term) in terms.iter().enumerate() {
        let j = k + 1;
        if j % 2 == 0 {
            assert!(term.abs() < 1e-28, "j={j}: {term}");
        } else {
            assert!(*term > 0.0);
        }
    }
}

#[test]
fn estimates_increase_towards_zeta2() {
    for proof in ProofId::ALL {
        let mut prev = 0.0;
        for j in [1u64, 2, 5, 10, 100, 1000, 10_000] {
            let e = basel_estimate(proof, j).unwrap();
            assert!(e > prev && e <= ZETA2, "{proof} J={j}");
            prev = e;
        }
    }
}
