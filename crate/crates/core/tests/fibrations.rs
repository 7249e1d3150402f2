use std::sync::Arc;

use fincosmos::fibrations::{
    build_normal_cleavage, classify_fibration, compute_wf, factorize_wfs, is_discrete_isofibration, leibniz_power,
    minimal_retract_witness, solve_lifting, LiftingProblem,
};
use fincosmos::fincat::{
    chaotic, classify_equivalence, enumerate_functors, find_isomorphism, Builtin, EquivalenceWitness, FinCat,
    FinFunctor,
};
use fincosmos::twolimits::{functor_category, DEFAULT_BUDGET};

fn b(x: Builtin) -> Arc<FinCat> {
    x.arc()
}

fn point(target: &Arc<FinCat>, at: usize) -> FinFunctor {
    FinFunctor::constant(b(Builtin::Terminal), target.clone(), at)
}

fn bang(source: &Arc<FinCat>) -> FinFunctor {
    FinFunctor::to_terminal(source.clone(), b(Builtin::Terminal))
}

/// `cod: 𝕀^𝕀 → 𝕀`.
fn cod_iso() -> FinFunctor {
    let i = b(Builtin::FreeIso);
    functor_category(&i, &i, DEFAULT_BUDGET).unwrap().evaluate(1)
}

/// `𝟚^j: 𝟚^𝟚 → 𝟚^2` for the endpoint inclusion `j: 2 → 𝟚`.
fn arrow_restriction() -> FinFunctor {
    let arrow = b(Builtin::Arrow);
    let two = b(Builtin::TwoDiscrete);
    let j = FinFunctor::new(two.clone(), arrow.clone(), vec![0, 1], vec![0, 2]).unwrap();
    let full = functor_category(&arrow, &arrow, DEFAULT_BUDGET).unwrap();
    let ends = functor_category(&two, &arrow, DEFAULT_BUDGET).unwrap();
    full.precompose(&j, &ends)
}

fn injective_witness(i: &FinFunctor) -> EquivalenceWitness {
    classify_equivalence(i).report().and_then(|r| r.injective.clone()).expect("an injective equivalence")
}

#[test]
fn cod_on_free_iso_power_is_normal_but_not_discrete() {
    let r = classify_fibration(&cod_iso());
    assert!(r.flags.representable && r.flags.normal);
    assert!(!r.flags.discrete);
    assert!(r.discrete_failure.is_some());
}

#[test]
fn endpoint_restriction_is_discrete_but_not_grothendieck() {
    let p = arrow_restriction();
    let r = classify_fibration(&p);
    assert!(r.flags.discrete && r.flags.representable && r.flags.normal);
    assert!(!r.flags.grothendieck);
    let fail = r.grothendieck_failure.unwrap();
    assert_eq!((fail.dom.as_str(), fail.cod.as_str()), ("[1,0]", "[1,1]"));
}

#[test]
fn maps_to_the_terminal_category_are_normal() {
    for c in [b(Builtin::Arrow), b(Builtin::FreeIso), Arc::new(chaotic(3)), b(Builtin::ParallelPair)] {
        let r = classify_fibration(&bang(&c));
        assert!(r.flags.representable && r.flags.normal);
    }
}

#[test]
fn normal_cleavages() {
    let i = b(Builtin::FreeIso);
    let id = FinFunctor::identity(i.clone());
    let cl = build_normal_cleavage(&id).unwrap();
    for (&(_, beta), &lift) in cl.lifts() {
        assert_eq!(beta, lift);
    }
    let ch = Arc::new(chaotic(2));
    let cl = build_normal_cleavage(&bang(&ch)).unwrap();
    assert!(cl.lifts().iter().all(|(&(e, _), &m)| m == ch.id(e)));

    let cod = cod_iso();
    let cl = build_normal_cleavage(&cod).unwrap();
    assert!(cl.is_normal());
    for (&(e, beta), &lift) in cl.lifts() {
        assert_eq!(cod.mor(lift), beta);
        assert_eq!(cod.source().dom(lift), e);
    }
    // a non-isofibration is refused
    assert!(build_normal_cleavage(&point(&i, 0)).is_err());
}

#[test]
fn factorization_through_the_pseudolimit() {
    for f in [FinFunctor::identity(b(Builtin::Arrow)), point(&b(Builtin::Arrow), 0), bang(&b(Builtin::FreeIso))] {
        let fz = factorize_wfs(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(fz.v.after(&fz.d), f);
        assert!(classify_equivalence(&fz.d).is_injective());
        assert!(classify_fibration(&fz.v).flags.normal);
        fz.d_witness().check().unwrap();
    }
    let fz = factorize_wfs(&point(&b(Builtin::Arrow), 0), DEFAULT_BUDGET).unwrap();
    assert_eq!(fz.pseudolimit.l.num_objects(), 1);
}

/// Every commuting square `top, bottom` of `i` against `p`.
fn squares(i: &FinFunctor, p: &FinFunctor) -> Vec<LiftingProblem> {
    let mut out = Vec::new();
    for top in enumerate_functors(i.source(), p.source(), 100_000).unwrap() {
        for bottom in enumerate_functors(i.target(), p.target(), 100_000).unwrap() {
            if let Ok(sq) = LiftingProblem::new(i.clone(), p.clone(), top.clone(), bottom) {
                out.push(sq);
            }
        }
    }
    out
}

#[test]
fn lifting_against_normal_isofibrations() {
    let i = point(&b(Builtin::FreeIso), 0);
    let iw = injective_witness(&i);
    for p in [cod_iso(), bang(&Arc::new(chaotic(2))), arrow_restriction(), FinFunctor::identity(b(Builtin::FreeIso))] {
        let cl = build_normal_cleavage(&p).unwrap();
        let all = squares(&i, &p);
        assert!(!all.is_empty());
        for sq in all {
            let h = solve_lifting(&sq, &iw, &cl).unwrap();
            assert!(sq.is_filler(&h));
            assert!(sq.fillers(usize::MAX).contains(&h));
        }
    }
}

#[test]
fn lifting_with_identity_legs() {
    let a = b(Builtin::FreeIso);
    let id = FinFunctor::identity(a.clone());
    let iw = injective_witness(&id);
    let p = cod_iso();
    let cl = build_normal_cleavage(&p).unwrap();
    for sq in squares(&id, &p) {
        assert_eq!(solve_lifting(&sq, &iw, &cl).unwrap(), sq.top);
    }
}

#[test]
fn non_isofibrations_fail_some_lifting_problem() {
    // 1 → 𝕀 is not an isofibration, and the square against itself has no filler
    let i = point(&b(Builtin::FreeIso), 0);
    let f = point(&b(Builtin::FreeIso), 1);
    assert!(!classify_fibration(&f).flags.normal);
    let squares = squares(&i, &f);
    assert!(squares.iter().any(|sq| !sq.has_filler()));
}

#[test]
fn leibniz_power_by_empty_domain_is_an_ordinary_power() {
    let empty = Arc::new(fincosmos::fincat::discrete(0));
    let j = FinFunctor::new(empty, b(Builtin::Terminal), vec![], vec![]).unwrap();
    let p = cod_iso();
    let lp = leibniz_power(&j, &p, DEFAULT_BUDGET).unwrap();
    assert!(find_isomorphism(lp.induced.source(), p.source()).is_some());
    assert!(find_isomorphism(lp.induced.target(), p.target()).is_some());
    assert_eq!(lp.report.flags, classify_fibration(&p).flags);
}

#[test]
fn leibniz_power_of_arrow_to_terminal_by_endpoints() {
    let arrow = b(Builtin::Arrow);
    let two = b(Builtin::TwoDiscrete);
    let j = FinFunctor::new(two, arrow.clone(), vec![0, 1], vec![0, 2]).unwrap();
    let lp = leibniz_power(&j, &bang(&arrow), DEFAULT_BUDGET).unwrap();
    assert_eq!(lp.induced.source().num_objects(), 3);
    assert_eq!(lp.induced.target().num_objects(), 4);
    assert!(lp.induced.is_full() && lp.induced.is_faithful() && lp.induced.is_injective_on_objects());
    assert!(lp.report.flags.discrete);
    assert!(!lp.report.flags.grothendieck);
}

#[test]
fn leibniz_power_by_free_iso_point_matches_wf() {
    let j = point(&b(Builtin::FreeIso), 1);
    for p in [bang(&Arc::new(chaotic(2))), FinFunctor::identity(b(Builtin::Arrow))] {
        let lp = leibniz_power(&j, &p, DEFAULT_BUDGET).unwrap();
        assert!(lp.report.flags.normal);
        let wf = compute_wf(&p, DEFAULT_BUDGET).unwrap();
        assert!(find_isomorphism(lp.induced.target(), wf.w.target()).is_some());
    }
}

#[test]
fn wf_characterizations() {
    let one = b(Builtin::Terminal);
    let wf = compute_wf(&FinFunctor::identity(one), DEFAULT_BUDGET).unwrap();
    assert!(wf.w.is_isomorphism());
    assert!(wf.summary.holds());

    let wf = compute_wf(&bang(&b(Builtin::Arrow)), DEFAULT_BUDGET).unwrap();
    assert!(wf.summary.w.flags.normal && wf.summary.w_is_retract_equivalence);
    assert!(wf.summary.holds());

    let wf = compute_wf(&point(&b(Builtin::FreeIso), 0), DEFAULT_BUDGET).unwrap();
    assert!(!wf.summary.f.flags.representable);
    assert!(!wf.summary.w.flags.representable);
    assert!(wf.summary.w.representable_failure.is_some());
    assert!(wf.summary.holds());
}

#[test]
fn minimal_retract_witnesses() {
    for f in [FinFunctor::identity(b(Builtin::Arrow)), cod_iso(), bang(&Arc::new(chaotic(2)))] {
        let cl = build_normal_cleavage(&f).unwrap();
        let r = minimal_retract_witness(&f, &cl, DEFAULT_BUDGET).unwrap();
        r.check().unwrap();
    }
}

#[test]
fn discrete_isofibrations_cancel() {
    let cats = [b(Builtin::Terminal), b(Builtin::Arrow), b(Builtin::FreeIso), Arc::new(chaotic(2))];
    for x in &cats {
        for y in &cats {
            for z in &cats {
                let fs = enumerate_functors(x, y, 1000).unwrap();
                let gs = enumerate_functors(y, z, 1000).unwrap();
                for g in gs.iter().filter(|g| is_discrete_isofibration(g)) {
                    for f in &fs {
                        if is_discrete_isofibration(&g.after(f)) {
                            assert!(is_discrete_isofibration(f));
                        }
                    }
                }
            }
        }
    }
}
