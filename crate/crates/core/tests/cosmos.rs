use std::sync::Arc;

use fincosmos::cosmos::{
    check_fragment, nip_square_filler, CosmosFragment, IsofibrationClass, NipOutcome, Topos, DEFAULT_TOWER_BOUND,
};
use fincosmos::fincat::{chaotic, Builtin, FinCat};
use fincosmos::twolimits::DEFAULT_BUDGET;

fn fragment(objects: Vec<(&str, Arc<FinCat>)>, chosen: IsofibrationClass) -> CosmosFragment {
    CosmosFragment {
        objects: objects.into_iter().map(|(n, c)| (n.to_string(), c)).collect(),
        chosen,
        power_budget: DEFAULT_BUDGET,
        tower_bound: DEFAULT_TOWER_BOUND,
    }
}

fn small() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![("1", Builtin::Terminal.arc()), ("2", Builtin::Arrow.arc()), ("I", Builtin::FreeIso.arc())]
}

#[test]
fn normal_isofibrations_pass_on_a_small_fragment() {
    let report = check_fragment(&fragment(small(), IsofibrationClass::Normal)).unwrap();
    for c in &report.clauses {
        assert!(c.passed, "{} failed: {:?}", c.clause, c.witness);
    }
    assert!(report.passed);
    assert!(report.clause("c.leibniz").unwrap().checked > 0);
}

#[test]
fn discrete_isofibrations_pass_too() {
    let mut objs = small();
    objs.push(("C2", Arc::new(chaotic(2))));
    let report = check_fragment(&fragment(objs, IsofibrationClass::Discrete)).unwrap();
    assert!(report.clause("c.pullback_stability").unwrap().passed);
    assert!(report.clause("closure.composition").unwrap().passed);
}

#[test]
fn equivalences_are_not_a_class_of_isofibrations() {
    let mut objs = small();
    objs.push(("C2", Arc::new(chaotic(2))));
    let report = check_fragment(&fragment(objs, IsofibrationClass::Equivalences)).unwrap();
    assert!(!report.passed);
    let failed: Vec<_> = report.clauses.iter().filter(|c| !c.passed).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.witness.is_some()));
}

#[test]
fn empty_fragment_is_vacuous() {
    let report = check_fragment(&fragment(vec![], IsofibrationClass::Normal)).unwrap();
    assert!(report.passed);
}

#[test]
fn class_names_round_trip() {
    for c in [
        IsofibrationClass::Normal,
        IsofibrationClass::Representable,
        IsofibrationClass::Discrete,
        IsofibrationClass::Equivalences,
    ] {
        assert_eq!(c.to_string().parse::<IsofibrationClass>().unwrap(), c);
    }
    assert!("grothendieck_opfib".parse::<IsofibrationClass>().is_err());
}

#[test]
fn finite_sets_have_the_lifting_property() {
    match nip_square_filler(Topos::FinSet, 3).unwrap() {
        NipOutcome::AllFill { squares } => assert!(squares > 0),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn arrows_of_finite_sets_do_not() {
    let NipOutcome::Counterexample(cx) = nip_square_filler(Topos::FinSetArrow, 3).unwrap() else {
        panic!("expected a counterexample");
    };
    // i: ({•} → {•}) ↪ ({x, y} → {•}) selecting x
    assert_eq!((cx.a.sizes.as_slice(), cx.a.structure.as_slice()), (&[1, 1][..], &[0][..]));
    assert_eq!((cx.b.sizes.as_slice(), cx.b.structure.as_slice()), (&[2, 1][..], &[0, 0][..]));
    assert_eq!(cx.i.components, vec![vec![0], vec![0]]);
    assert_eq!(nip_square_filler(Topos::FinSetArrow, 3).unwrap(), NipOutcome::Counterexample(cx.clone()));
    // recorded splittings really split
    let compose = |g: &Vec<Vec<usize>>, f: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        g.iter().zip(f).map(|(g, f)| f.iter().map(|&x| g[x]).collect()).collect()
    };
    let ri = compose(&cx.retraction.components, &cx.i.components);
    assert!(ri.iter().all(|c| c.iter().enumerate().all(|(k, &x)| k == x)));
    let ps = compose(&cx.p.components, &cx.section.components);
    assert!(ps.iter().all(|c| c.iter().enumerate().all(|(k, &x)| k == x)));
    // the square commutes
    assert_eq!(compose(&cx.p.components, &cx.top.components), compose(&cx.bottom.components, &cx.i.components));
}

#[test]
fn arrows_of_small_finite_sets_are_too_small_to_fail() {
    assert!(nip_square_filler(Topos::FinSetArrow, 2).unwrap().all_fill());
}

#[test]
fn nip_bound_is_enforced() {
    assert!(nip_square_filler(Topos::FinSet, 99).is_err());
}
