use std::sync::Arc;

use fincosmos::fincat::{chaotic, find_isomorphism, monoid, poset, product, Builtin, FinCat};
use fincosmos::nerve::{
    check_powers_iso, check_two_coskeletal, classifying_category, classifying_functor, counit, graph_sset,
    nerve_truncated, product_sset, standard_simplex, RawSSet, SSetMap, TruncSSet, DEFAULT_WORD_BOUND,
};
use fincosmos::twolimits::DEFAULT_BUDGET;
use fincosmos::Error;

fn cats() -> Vec<Arc<FinCat>> {
    vec![
        Builtin::Terminal.arc(),
        Builtin::Arrow.arc(),
        Builtin::FreeIso.arc(),
        Builtin::ParallelPair.arc(),
        Builtin::TwoDiscrete.arc(),
        Arc::new(chaotic(3)),
        Arc::new(poset(3, &[(0, 1), (1, 2)])),
        Arc::new(monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]])),
        Arc::new(monoid(&["1", "s"], &[vec![0, 1], vec![1, 0]])),
    ]
}

/// Counts `k`-chains of composable morphisms directly from hom-sets.
fn chains(c: &FinCat, k: usize) -> usize {
    let mut counts: Vec<usize> = vec![1; c.num_objects()];
    for _ in 0..k {
        let mut next = vec![0; c.num_objects()];
        for m in c.morphisms() {
            next[c.cod(m)] += counts[c.dom(m)];
        }
        counts = next;
    }
    counts.iter().sum()
}

#[test]
fn nerve_counts_match_chain_counts() {
    for c in cats() {
        let n = nerve_truncated(&c);
        for k in 0..=3 {
            assert_eq!(n.count(k), chains(&c, k));
        }
        n.check_simplicial_identities().unwrap();
    }
}

#[test]
fn nerve_of_free_iso_has_two_nondegenerate_simplices_per_dimension() {
    let n = nerve_truncated(&Builtin::FreeIso.build());
    let nondeg: Vec<Vec<&str>> =
        (1..=3).map(|k| (0..n.count(k)).filter(|&s| !n.is_degenerate(k, s)).map(|s| n.name(k, s)).collect()).collect();
    assert_eq!(nondeg[0], ["i", "i^-1"]);
    assert_eq!(nondeg[1], ["(i,i^-1)", "(i^-1,i)"]);
    assert_eq!(nondeg[2].len(), 2);
}

#[test]
fn classifying_category_of_a_nerve_is_the_category() {
    for c in cats() {
        let pi = classifying_category(&nerve_truncated(&c), DEFAULT_WORD_BOUND).unwrap();
        let eps = counit(&c, &pi);
        eps.check().unwrap();
        assert!(eps.is_isomorphism(), "{}", c.num_morphisms());
        assert!(find_isomorphism(&pi.cat, &c).is_some());
    }
}

#[test]
fn classifying_preserves_products() {
    let xs = [standard_simplex(0), standard_simplex(1), nerve_truncated(&Builtin::FreeIso.build())];
    for x in &xs {
        for y in &xs {
            let p = product_sset(x, y);
            let (px, py, pxy) = (
                classifying_category(x, DEFAULT_WORD_BOUND).unwrap(),
                classifying_category(y, DEFAULT_WORD_BOUND).unwrap(),
                classifying_category(&p.sset, DEFAULT_WORD_BOUND).unwrap(),
            );
            let target = product(&px.cat, &py.cat);
            let comparison =
                target.pair(&classifying_functor(&p.left, &pxy, &px), &classifying_functor(&p.right, &pxy, &py));
            comparison.check().unwrap();
            assert!(comparison.is_isomorphism());
        }
    }
}

#[test]
fn classifying_sends_monos_to_injective_on_objects_functors() {
    // the vertex inclusions Δ[0] → Δ[1] and the edge inclusions Δ[1] → Δ[2]
    let d0 = standard_simplex(0);
    let d1 = standard_simplex(1);
    let d2 = standard_simplex(2);
    let include = |from: &TruncSSet, to: &TruncSSet, vertices: &[usize]| -> SSetMap {
        let mut maps: [Vec<usize>; 4] = Default::default();
        for n in 0..=3 {
            maps[n] = (0..from.count(n))
                .map(|s| {
                    let name: String = from
                        .name(n, s)
                        .chars()
                        .map(|c| vertices[c.to_digit(10).unwrap() as usize].to_string())
                        .collect();
                    to.index_of(n, &name).unwrap()
                })
                .collect();
        }
        SSetMap { maps }
    };
    for (from, to, v) in [(&d0, &d1, vec![1]), (&d1, &d2, vec![0, 2]), (&d1, &d2, vec![1, 2])] {
        let map = include(from, to, &v);
        map.check(from, to).unwrap();
        let (pf, pt) = (
            classifying_category(from, DEFAULT_WORD_BOUND).unwrap(),
            classifying_category(to, DEFAULT_WORD_BOUND).unwrap(),
        );
        let f = classifying_functor(&map, &pf, &pt);
        f.check().unwrap();
        assert!(f.is_injective_on_objects());
    }
}

#[test]
fn free_categories_on_graphs() {
    let x = graph_sset(&["a", "b"], &[("f", 0, 1)]);
    x.check_simplicial_identities().unwrap();
    let pi = classifying_category(&x, DEFAULT_WORD_BOUND).unwrap();
    assert!(find_isomorphism(&pi.cat, &Builtin::Arrow.arc()).is_some());
    // two parallel arrows
    let x = graph_sset(&["a", "b"], &[("s", 0, 1), ("t", 0, 1)]);
    let pi = classifying_category(&x, DEFAULT_WORD_BOUND).unwrap();
    assert!(find_isomorphism(&pi.cat, &Builtin::ParallelPair.arc()).is_some());
    // a loop
    let x = graph_sset(&["*"], &[("e", 0, 0)]);
    x.check_simplicial_identities().unwrap();
    for bound in [2, 4, 6] {
        assert_eq!(classifying_category(&x, bound).unwrap_err(), Error::BoundExceeded { bound });
    }
}

#[test]
fn nerves_are_two_coskeletal() {
    for c in cats() {
        let r = check_two_coskeletal(&nerve_truncated(&c));
        assert!(r.passed, "{:?}", r.failure);
    }
}

#[test]
fn powers_comparison() {
    let arrow = Builtin::Arrow.arc();
    let iso = Builtin::FreeIso.arc();
    let cases: Vec<(TruncSSet, Arc<FinCat>)> = vec![
        (standard_simplex(1), arrow.clone()),
        (nerve_truncated(&iso), arrow.clone()),
        (standard_simplex(0), arrow.clone()),
        (standard_simplex(0), iso.clone()),
        (standard_simplex(0), Arc::new(chaotic(2))),
        (standard_simplex(1), iso),
    ];
    for (x, y) in cases {
        let r = check_powers_iso(&x, &y, 2, DEFAULT_BUDGET, DEFAULT_WORD_BOUND).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.dims.len(), 3);
    }
}

#[test]
fn powers_of_delta_one_into_arrow_have_the_expected_counts() {
    // [Δ[1], N𝟚]_k counts functors [k] × 𝟚 → 𝟚
    let r =
        check_powers_iso(&standard_simplex(1), &Builtin::Arrow.arc(), 2, DEFAULT_BUDGET, DEFAULT_WORD_BOUND).unwrap();
    let counts: Vec<usize> = r.dims.iter().map(|d| d.lhs_count).collect();
    assert_eq!(counts, [3, 6, 10]);
}

#[test]
fn powers_reject_high_dimensions() {
    assert!(check_powers_iso(&standard_simplex(0), &Builtin::Arrow.arc(), 3, DEFAULT_BUDGET, 4).is_err());
}

#[test]
fn json_round_trip() {
    for c in cats() {
        let x = nerve_truncated(&c);
        let json = serde_json::to_string(&x.to_raw()).unwrap();
        let raw: RawSSet = serde_json::from_str(&json).unwrap();
        assert_eq!(TruncSSet::from_raw(&raw).unwrap(), x);
    }
    let bad = r#"{"simplices": [["a"], [], [], []], "faces": {}, "degeneracies": {}}"#;
    let raw: RawSSet = serde_json::from_str(bad).unwrap();
    assert!(TruncSSet::from_raw(&raw).is_err());
}
