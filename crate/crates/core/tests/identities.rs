//! Invariants of the Sally tables and the classifier on random monomial
//! ideals, with lengths checked against lattice counting.

mod common;

use common::run_instance;
use hilbert_sally::classify::case_of;
use hilbert_sally::closure::MonomialIdeal;
use proptest::prelude::*;

fn ideal(d: usize, cap: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(2..=cap, d).prop_flat_map(move |caps| {
        let inner: Vec<_> = caps.iter().map(|&c| 0..c).collect();
        prop::collection::vec(inner, 0..=3).prop_map(move |mixed| {
            let mut gens: Vec<Vec<u32>> = (0..d)
                .map(|i| {
                    let mut e = vec![0; d];
                    e[i] = caps[i];
                    e
                })
                .collect();
            gens.extend(mixed.into_iter().filter(|e| e.iter().filter(|&&x| x > 0).count() > 1));
            MonomialIdeal::new(d, gens).unwrap()
        })
    })
}

fn assert_sound(i: &MonomialIdeal, normal: bool, seed: u64) -> Result<(), TestCaseError> {
    let a = run_instance(i, normal, seed);
    let b = run_instance(i, normal, seed + 1);
    prop_assert_eq!(&a.analysis.hilbert.lengths, &a.oracle, "{}", a.label);
    for run in [&a, &b] {
        let bad: Vec<String> = run.checks().filter(|c| c.failed()).map(|c| c.to_string()).collect();
        prop_assert!(bad.is_empty(), "{}: {:?}", run.label, bad);
    }
    let (sa, sb) = (&a.analysis.sally, &b.analysis.sally);
    prop_assert_eq!(sa.l2, sb.l2, "l2 depends on the reduction: {}", a.label);
    prop_assert_eq!(sa.colength, a.oracle[0]);
    let rep = &a.analysis.report;
    prop_assert_eq!(rep.case, case_of(rep.delta, rep.l2));
    // the Sally module vanishes exactly when r ≤ 1
    prop_assert_eq!(sa.s.iter().all(|&x| x == 0), a.analysis.reduction.r <= 1);
    if normal {
        prop_assert!(rep.itoh, "normal filtrations satisfy J ∩ I_2 = J I_1: {}", a.label);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plane_ideals(i in ideal(2, 6), normal in any::<bool>(), seed in 1u64..1000) {
        assert_sound(&i, normal, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn space_ideals(i in ideal(3, 3), normal in any::<bool>(), seed in 1u64..1000) {
        assert_sound(&i, normal, seed)?;
    }
}
