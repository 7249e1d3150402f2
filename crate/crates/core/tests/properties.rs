use std::sync::{Arc, OnceLock};

use fincosmos::corpus::{Corpus, CorpusMorphism};
use fincosmos::fibrations::{
    classify_fibration, compute_wf, factorize_wfs, solve_lifting, Cleavage, LiftChoice, LiftingProblem,
};
use fincosmos::fincat::{classify_equivalence, poset, FinCat, RawCategory};
use fincosmos::nerve::{classifying_category, counit, nerve_truncated, DEFAULT_WORD_BOUND};
use fincosmos::twolimits::{iso_over, pullback_along_normal_isofibration, pullback_strict, DEFAULT_BUDGET};
use proptest::prelude::*;
use proptest::sample::Index;

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(Corpus::standard)
}

fn pick<'a>(items: &[&'a CorpusMorphism], ix: &Index) -> &'a CorpusMorphism {
    items[ix.index(items.len())]
}

fn all() -> Vec<&'static CorpusMorphism> {
    corpus().morphisms.iter().collect()
}

/// A random poset on `n ≤ 5` elements: relations only go upwards, so the
/// closure is antisymmetric.
fn random_poset() -> impl Strategy<Value = FinCat> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let rel: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| bits[i * n + j]).collect();
            poset(n, &rel)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_posets_satisfy_the_laws_and_round_trip(c in random_poset()) {
        c.check_laws().unwrap();
        let raw = RawCategory::from_cat(&c);
        let json = serde_json::to_string(&raw).unwrap();
        let back: RawCategory = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.validate().unwrap(), c);
    }

    #[test]
    fn nerve_then_classifying_category_is_the_identity(c in random_poset()) {
        let c = Arc::new(c);
        let pi = classifying_category(&nerve_truncated(&c), DEFAULT_WORD_BOUND).unwrap();
        prop_assert!(counit(&c, &pi).is_isomorphism());
    }

    #[test]
    fn composition_is_associative(a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let f = pick(&all(), &a);
        let gs: Vec<_> = all().into_iter().filter(|g| g.source == f.target).collect();
        let g = pick(&gs, &b);
        let hs: Vec<_> = all().into_iter().filter(|h| h.source == g.target).collect();
        let h = pick(&hs, &c);
        prop_assert_eq!(h.f.after(&g.f).after(&f.f), h.f.after(&g.f.after(&f.f)));
        prop_assert!(h.f.after(&g.f).check().is_ok());
    }

    #[test]
    fn flags_are_ordered(a in any::<Index>()) {
        let f = pick(&all(), &a);
        let flags = classify_fibration(&f.f).flags;
        prop_assert!(!flags.discrete || flags.representable);
        prop_assert!(!flags.normal || flags.representable);
        prop_assert!(!flags.discrete || flags.normal);
        // isomorphisms are discrete isofibrations
        prop_assert!(!f.f.is_isomorphism() || flags.discrete);
    }

    #[test]
    fn factorization_round_trips(a in any::<Index>()) {
        let f = &pick(&all(), &a).f;
        let fact = factorize_wfs(f, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&fact.v.after(&fact.d), f);
        prop_assert!(classify_equivalence(&fact.d).is_injective());
        prop_assert!(classify_fibration(&fact.v).flags.normal);
    }

    #[test]
    fn wf_agrees_with_f(a in any::<Index>()) {
        let f = &pick(&all(), &a).f;
        prop_assert!(compute_wf(f, DEFAULT_BUDGET).unwrap().summary.holds());
    }

    #[test]
    fn nif_pullback_is_independent_of_the_cleavage(a in any::<Index>(), b in any::<Index>()) {
        let normals: Vec<_> = all().into_iter().filter(|m| m.flags.normal).collect();
        let f = pick(&normals, &a);
        let gs: Vec<_> = all().into_iter().filter(|g| g.target == f.target).collect();
        let g = pick(&gs, &b);
        let strict = pullback_strict(&f.f, &g.f);
        for choice in [LiftChoice::Smallest, LiftChoice::Largest] {
            let cleavage = Cleavage::build(&f.f, choice).unwrap();
            let nif = pullback_along_normal_isofibration(&f.f, &cleavage, &g.f).unwrap();
            prop_assert!(iso_over(&nif.witness, &strict).is_some());
        }
    }

    #[test]
    fn fillers_exist_for_every_cleavage(a in any::<Index>()) {
        // the square (d, v) from d to v
        let f = &pick(&all(), &a).f;
        let fact = factorize_wfs(f, DEFAULT_BUDGET).unwrap();
        let problem = LiftingProblem::new(
            fact.d.clone(),
            fact.v.clone(),
            fact.d.clone(),
            fact.v.clone(),
        ).unwrap();
        for choice in [LiftChoice::Smallest, LiftChoice::Largest] {
            let cleavage = Cleavage::build(&fact.v, choice).unwrap();
            let h = solve_lifting(&problem, &fact.d_witness(), &cleavage).unwrap();
            prop_assert!(problem.is_filler(&h));
        }
    }
}
