use std::sync::Arc;

use fincosmos::fibrations::{build_normal_cleavage, Cleavage, LiftChoice};
use fincosmos::fincat::{
    chaotic, classify_equivalence, find_isomorphism, product, Builtin, FinCat, FinFunctor, NatTrans,
};
use fincosmos::twolimits::{
    equifier, functor_category, inserter, isocomma, pseudolimit_of_arrow, pullback_along_normal_isofibration,
    pullback_strict, split_idempotent, strict_tower_limit, tower_limit, Tower, DEFAULT_BUDGET,
};
use fincosmos::Error;

fn b(x: Builtin) -> Arc<FinCat> {
    x.arc()
}

fn point(target: &Arc<FinCat>, at: usize) -> FinFunctor {
    FinFunctor::constant(b(Builtin::Terminal), target.clone(), at)
}

fn bang(source: &Arc<FinCat>) -> FinFunctor {
    FinFunctor::to_terminal(source.clone(), b(Builtin::Terminal))
}

fn isomorphic(a: &Arc<FinCat>, c: &Arc<FinCat>) -> bool {
    find_isomorphism(a, c).is_some()
}

#[test]
fn power_by_terminal_is_the_base() {
    let d = b(Builtin::FreeIso);
    let fc = functor_category(&b(Builtin::Terminal), &d, DEFAULT_BUDGET).unwrap();
    assert!(isomorphic(&fc.cat, &d));
}

#[test]
fn power_of_arrow_by_free_iso_has_two_objects() {
    let fc = functor_category(&b(Builtin::FreeIso), &b(Builtin::Arrow), DEFAULT_BUDGET).unwrap();
    // only the constant functors survive: 𝟚 has no non-identity isomorphism
    assert_eq!(fc.cat.num_objects(), 2);
    assert!(fc.functors().iter().all(|f| f.omap()[0] == f.omap()[1]));
}

#[test]
fn power_of_arrow_by_two_is_the_square() {
    let arrow = b(Builtin::Arrow);
    let fc = functor_category(&b(Builtin::TwoDiscrete), &arrow, DEFAULT_BUDGET).unwrap();
    let square = Arc::new(product(&arrow, &arrow).cat.as_ref().clone());
    assert_eq!(fc.cat.num_objects(), 4);
    assert!(isomorphic(&fc.cat, &square));
}

#[test]
fn power_budget_is_reported() {
    let err = functor_category(&Arc::new(chaotic(3)), &Arc::new(chaotic(3)), 5).unwrap_err();
    assert!(matches!(err, Error::EnumerationBudgetExceeded { bound: 5, .. }));
}

#[test]
fn strict_pullbacks() {
    let c = b(Builtin::FreeIso);
    let id = FinFunctor::identity(c.clone());
    let w = pullback_strict(&id, &id);
    assert!(w.certificate.verified, "{:?}", w.certificate);
    assert!(isomorphic(&w.apex, &c));

    let arrow = b(Builtin::Arrow);
    let w = pullback_strict(&point(&arrow, 0), &point(&arrow, 1));
    assert_eq!(w.apex.num_objects(), 0);
    assert!(w.certificate.verified);
}

#[test]
fn isocommas() {
    let one = b(Builtin::Terminal);
    let id1 = FinFunctor::identity(one.clone());
    let ic = isocomma(&id1, &id1);
    assert!(ic.witness.certificate.verified);
    assert!(isomorphic(ic.apex(), &one));

    let i = b(Builtin::FreeIso);
    let idi = FinFunctor::identity(i.clone());
    let ic = isocomma(&idi, &idi);
    assert_eq!(ic.apex().num_objects(), 4);
    assert!(ic.witness.certificate.verified, "{:?}", ic.witness.certificate);
    assert!(ic.phi().is_invertible());

    // over a discrete base the isocomma is the strict pullback
    let d = Arc::new(fincosmos::fincat::discrete(2));
    let arrow = b(Builtin::Arrow);
    let f = FinFunctor::new(arrow.clone(), d.clone(), vec![0, 0], vec![0, 0, 0]).unwrap();
    let g = FinFunctor::identity(d.clone());
    let ic = isocomma(&f, &g);
    let pb = pullback_strict(&f, &g);
    assert!(isomorphic(ic.apex(), &pb.apex));
}

#[test]
fn pseudolimit_of_identity_is_the_free_iso_power() {
    for a in [b(Builtin::Arrow), b(Builtin::FreeIso), Arc::new(chaotic(2))] {
        let pl = pseudolimit_of_arrow(&FinFunctor::identity(a.clone()), DEFAULT_BUDGET).unwrap();
        pl.check().unwrap();
        assert!(isomorphic(&pl.l, &pl.a_iso.cat));
        assert!(pl.w.is_isomorphism());
    }
}

#[test]
fn pseudolimit_of_arrow_to_terminal() {
    let arrow = b(Builtin::Arrow);
    let f = bang(&arrow);
    let pl = pseudolimit_of_arrow(&f, DEFAULT_BUDGET).unwrap();
    pl.check().unwrap();
    assert_eq!(pl.l.num_objects(), 2);
    assert!(pl.u.after(&pl.d).is_identity());
    assert!(classify_equivalence(&pl.u).is_retract());
    assert!(classify_equivalence(&pl.d).is_injective());
}

#[test]
fn pseudolimit_is_a_pullback_of_cod() {
    let i = b(Builtin::FreeIso);
    let f = point(&i, 0);
    let pl = pseudolimit_of_arrow(&f, DEFAULT_BUDGET).unwrap();
    pl.check().unwrap();
    let pb = pullback_strict(&pl.cod(), &f);
    assert!(pb.certificate.verified);
    assert!(isomorphic(&pb.apex, &pl.l));
}

#[test]
fn inserters_and_equifiers() {
    let arrow = b(Builtin::Arrow);
    let f = FinFunctor::identity(arrow.clone());
    let w = inserter(&f, &f, DEFAULT_BUDGET).unwrap();
    assert!(w.certificate.verified, "{:?}", w.certificate);
    assert!(isomorphic(&w.apex, &arrow));

    let w = inserter(&point(&arrow, 0), &point(&arrow, 1), DEFAULT_BUDGET).unwrap();
    assert!(w.certificate.verified);
    assert!(isomorphic(&w.apex, &b(Builtin::Terminal)));

    let c = Arc::new(chaotic(2));
    let g = FinFunctor::identity(c.clone());
    let beta = NatTrans::identity(&g);
    let w = equifier(&beta, &beta, DEFAULT_BUDGET).unwrap();
    assert!(w.certificate.verified);
    assert!(isomorphic(&w.apex, &c));
}

#[test]
fn equifier_of_distinct_cells_is_empty() {
    // two transformations between constant functors 1 → 𝟚₂ differing at the only component
    let pp = b(Builtin::ParallelPair);
    let (s, t) = (point(&pp, 0), point(&pp, 1));
    let beta = NatTrans::new(s.clone(), t.clone(), vec![2], false).unwrap();
    let beta2 = NatTrans::new(s, t, vec![3], false).unwrap();
    let w = equifier(&beta, &beta2, DEFAULT_BUDGET).unwrap();
    assert!(w.certificate.verified);
    assert_eq!(w.apex.num_objects(), 0);
}

#[test]
fn idempotent_splittings() {
    let c = Arc::new(chaotic(2));
    let s = split_idempotent(&FinFunctor::identity(c.clone())).unwrap();
    s.check().unwrap();
    assert!(isomorphic(&s.l, &c));

    let collapse = FinFunctor::constant(c.clone(), c.clone(), 0);
    let s = split_idempotent(&collapse).unwrap();
    s.check().unwrap();
    assert_eq!((s.l.num_objects(), s.l.num_morphisms()), (1, 1));
    assert!(s.witness().certificate.verified);

    let arrow = b(Builtin::Arrow);
    let swap = FinFunctor::new(b(Builtin::FreeIso), b(Builtin::FreeIso), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
    assert!(matches!(split_idempotent(&swap), Err(Error::NotIdempotent(_))));
    let _ = arrow;
}

fn cod_iso_iso() -> FinFunctor {
    let i = b(Builtin::FreeIso);
    functor_category(&i, &i, DEFAULT_BUDGET).unwrap().evaluate(1)
}

#[test]
fn pullback_along_normal_isofibrations() {
    let c = b(Builtin::FreeIso);
    let id = FinFunctor::identity(c.clone());
    let g = point(&c, 1);
    let r = pullback_along_normal_isofibration(&id, &build_normal_cleavage(&id).unwrap(), &g).unwrap();
    assert!(r.witness.certificate.verified);
    assert!(isomorphic(&r.witness.apex, g.source()));

    let cod = cod_iso_iso();
    let cl = build_normal_cleavage(&cod).unwrap();
    let r = pullback_along_normal_isofibration(&cod, &cl, &cod).unwrap();
    assert!(r.comparison.is_isomorphism());
    assert!(r.e.after(&r.e) == r.e);

    let ch = Arc::new(chaotic(2));
    let p = bang(&ch);
    let one = FinFunctor::identity(b(Builtin::Terminal));
    let r = pullback_along_normal_isofibration(&p, &build_normal_cleavage(&p).unwrap(), &one).unwrap();
    assert!(isomorphic(&r.witness.apex, &ch));
}

#[test]
fn non_normal_cleavage_is_rejected() {
    // an isofibration whose fibre over an object contains a non-identity
    // automorphism can be given a cleavage that lifts an identity to it
    let ch = Arc::new(chaotic(2));
    let p = bang(&ch);
    let mut lifts = build_normal_cleavage(&p).unwrap().lifts().clone();
    let swap = ch.hom(0, 1)[0];
    let back = ch.hom(1, 0)[0];
    lifts.insert((0, 0), swap);
    lifts.insert((1, 0), back);
    let bad = Cleavage::from_lifts(p.clone(), lifts).unwrap();
    assert!(!bad.is_normal());
    let one = FinFunctor::identity(b(Builtin::Terminal));
    let err = pullback_along_normal_isofibration(&p, &bad, &one).unwrap_err();
    assert!(matches!(err, Error::CleavageNotNormal(_)));
}

#[test]
fn towers() {
    let a = b(Builtin::FreeIso);
    let id = FinFunctor::identity(a.clone());
    let t = Tower::with_cleavages(a.clone(), vec![id.clone(), id.clone()], LiftChoice::Smallest).unwrap();
    let l = tower_limit(&t).unwrap();
    assert!(l.witness.certificate.verified, "{:?}", l.witness.certificate);
    assert!(isomorphic(&l.witness.apex, &a));

    let ch = Arc::new(chaotic(2));
    let t = Tower::with_cleavages(b(Builtin::Terminal), vec![bang(&ch)], LiftChoice::Smallest).unwrap();
    let l = tower_limit(&t).unwrap();
    assert!(isomorphic(&l.witness.apex, &ch));
    assert_eq!(l.witness.projections[0], bang(&ch).after(&l.witness.projections[1]));
}

#[test]
fn tower_of_chaotic_categories() {
    let c3 = Arc::new(chaotic(3));
    let c2 = Arc::new(chaotic(2));
    let f = fincosmos::fincat::FunctorSearch::new(&c3, &c2)
        .restrict_object(0, vec![0])
        .restrict_object(1, vec![1])
        .restrict_object(2, vec![1])
        .first()
        .map(|(o, m)| FinFunctor::new(c3.clone(), c2.clone(), o, m).unwrap())
        .unwrap();
    let t = Tower::with_cleavages(b(Builtin::Terminal), vec![bang(&c2), f], LiftChoice::Smallest).unwrap();
    let l = tower_limit(&t).unwrap();
    assert!(l.witness.certificate.verified);
    assert!(l.comparison.is_isomorphism());
    assert!(isomorphic(&l.witness.apex, &c3));
    assert!(isomorphic(&strict_tower_limit(&t).apex, &c3));
    assert!(l.identity_checks > 0);
}
