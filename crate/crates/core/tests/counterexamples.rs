use std::sync::Arc;

use fincosmos::counterexamples::{
    classify_arrow_fibration, fy_square, run_counterexample, ArrowMorphism, CounterexampleName,
};
use fincosmos::fincat::{chaotic, Builtin, FinFunctor};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn groth_leibniz_witness() {
    let w = run_counterexample(CounterexampleName::GrothLeibniz).unwrap();
    assert!(w.passed());
    assert!(w.claim("discrete_isofibration").unwrap().observed);
    let g = w.claim("grothendieck_fibration").unwrap();
    assert!(!g.observed);
    assert_eq!(g.locus.as_deref(), Some("(1,0)→(1,1)"));
    assert_eq!(w.claim("full_subcategory_on_three_objects").unwrap().locus.as_deref(), Some("(0,0), (0,1), (1,1)"));
}

#[test]
fn nip_cat2_gives_a_representable_but_not_normal_isofibration() {
    let w = run_counterexample(CounterexampleName::NipCat2).unwrap();
    assert!(w.passed(), "{:#?}", w.claims);
    assert!(w.claim("p_is_representable_isofibration").unwrap().observed);
    assert!(!w.claim("p_is_normal_isofibration").unwrap().observed);
    assert!(!w.claim("square_has_filler").unwrap().observed);
}

#[test]
fn fy_family_section_dichotomy() {
    for size in 0..=4 {
        for alpha in 2..=4 {
            let w = run_counterexample(CounterexampleName::FyFamily { size, alpha }).unwrap();
            assert!(w.passed(), "fy_family({size},{alpha}): {:#?}", w.claims);
            assert_eq!(w.claim("f_y_has_section").unwrap().observed, size < alpha);
            assert!(w.claim("f_y_is_normal_isofibration").unwrap().observed);
        }
    }
}

#[test]
fn fy_family_sizes_match_a_count() {
    for size in 0..=4 {
        for alpha in 1..=4 {
            let fy = fy_square(size, alpha).unwrap();
            let subsets: usize = (0..alpha).map(|i| binomial(size, i)).sum();
            let pairs: usize = (0..alpha).map(|i| i * binomial(size, i)).sum();
            assert_eq!(fy.f.bottom.source().num_objects(), subsets);
            assert_eq!(fy.f.top.source().num_objects(), pairs);
        }
    }
}

#[test]
fn fy_family_is_bounded() {
    assert!(run_counterexample(CounterexampleName::FyFamily { size: 40, alpha: 3 }).is_err());
}

#[test]
fn witnesses_are_deterministic() {
    for name in ["groth_leibniz", "nip_cat2", "fy_family(3,3)"] {
        let n: CounterexampleName = name.parse().unwrap();
        let a = serde_json::to_string(&run_counterexample(n).unwrap()).unwrap();
        let b = serde_json::to_string(&run_counterexample(n).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn unknown_names_are_rejected() {
    assert!("smoncat".parse::<CounterexampleName>().is_err());
    assert!("fy_family(a,b)".parse::<CounterexampleName>().is_err());
}

#[test]
fn arrow_classifier_agrees_with_cat_on_identity_structure() {
    // on arrows whose structure maps are identities, Cat^𝟚 lifting reduces to Cat
    let cats = [Builtin::Arrow.arc(), Builtin::FreeIso.arc(), Arc::new(chaotic(2))];
    let one = Builtin::Terminal.arc();
    for c in &cats {
        let bang = FinFunctor::to_terminal(c.clone(), one.clone());
        let f = ArrowMorphism::new(
            FinFunctor::identity(c.clone()),
            FinFunctor::identity(one.clone()),
            bang.clone(),
            bang.clone(),
        )
        .unwrap();
        let flags = classify_arrow_fibration(&f);
        let cat = fincosmos::fibrations::classify_fibration(&bang).flags;
        assert_eq!((flags.representable, flags.normal), (cat.representable, cat.normal));
    }
}
