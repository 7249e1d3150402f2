use serde::Serialize;

use super::cleavage::{Cleavage, LiftChoice};
use crate::error::Result;
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationFlags {
    pub representable: bool,
    pub discrete: bool,
    pub grothendieck: bool,
    pub normal: bool,
}

/// A lifting instance `(e, β)` at which a flag fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftFailure {
    pub object: String,
    pub morphism: String,
    pub dom: String,
    pub cod: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    pub flags: FibrationFlags,
    pub representable_failure: Option<LiftFailure>,
    pub discrete_failure: Option<LiftFailure>,
    pub grothendieck_failure: Option<LiftFailure>,
}

fn failure(p: &FinFunctor, e: Obj, beta: Mor, reason: &str) -> LiftFailure {
    let (src, b) = (p.source(), p.target());
    LiftFailure {
        object: src.object_name(e).to_string(),
        morphism: b.name(beta).to_string(),
        dom: b.object_name(b.dom(beta)).to_string(),
        cod: b.object_name(b.cod(beta)).to_string(),
        reason: reason.to_string(),
    }
}

/// Number of isomorphisms out of `e` lying over `beta`.
fn iso_lifts(p: &FinFunctor, e: Obj, beta: Mor) -> usize {
    p.source().isos_from(e).filter(|&m| p.mor(m) == beta).count()
}

fn iso_lift_failure(p: &FinFunctor, unique: bool) -> Option<LiftFailure> {
    let (src, b) = (p.source(), p.target());
    for e in src.objects() {
        for beta in b.isos_from(p.obj(e)) {
            match iso_lifts(p, e, beta) {
                0 => return Some(failure(p, e, beta, "no isomorphism lifts it")),
                1 => {}
                _ if unique => return Some(failure(p, e, beta, "it has more than one lift")),
                _ => {}
            }
        }
    }
    None
}

/// Every isomorphism out of `p(e)` lifts to an isomorphism out of `e`.
pub fn is_representable_isofibration(p: &FinFunctor) -> bool {
    iso_lift_failure(p, false).is_none()
}

/// Every isomorphism out of `p(e)` has exactly one lift out of `e`.
pub fn is_discrete_isofibration(p: &FinFunctor) -> bool {
    iso_lift_failure(p, true).is_none()
}

/// Whether `phi: e′ → e` is cartesian for `p`: every `ψ: e″ → e` with
/// `p(ψ) = p(phi)∘γ` factors as `phi∘χ` with `p(χ) = γ` for exactly one `χ`.
pub fn is_cartesian(p: &FinFunctor, phi: Mor) -> bool {
    let (e, b) = (&**p.source(), &**p.target());
    let (source, target) = (e.dom(phi), e.cod(phi));
    let beta = p.mor(phi);
    e.incoming(target).all(|psi| {
        let other = e.dom(psi);
        b.hom(p.obj(other), p.obj(source)).iter().filter(|&&gamma| b.compose(beta, gamma) == p.mor(psi)).all(|&gamma| {
            e.hom(other, source).iter().filter(|&&chi| p.mor(chi) == gamma && e.compose(phi, chi) == psi).count() == 1
        })
    })
}

fn grothendieck_failure(p: &FinFunctor) -> Option<LiftFailure> {
    let (e, b): (&FinCat, &FinCat) = (p.source(), p.target());
    for x in e.objects() {
        for beta in b.incoming(p.obj(x)) {
            let has_cartesian = e.incoming(x).any(|phi| p.mor(phi) == beta && is_cartesian(p, phi));
            if !has_cartesian {
                return Some(failure(p, x, beta, "no cartesian lift"));
            }
        }
    }
    None
}

/// Exhaustive classification of `p` as an isofibration and as a
/// Grothendieck fibration.
pub fn classify_fibration(p: &FinFunctor) -> FibrationReport {
    let representable_failure = iso_lift_failure(p, false);
    let discrete_failure = iso_lift_failure(p, true);
    let grothendieck_failure = grothendieck_failure(p);
    let normal = build_normal_cleavage(p).is_ok();
    FibrationReport {
        flags: FibrationFlags {
            representable: representable_failure.is_none(),
            discrete: discrete_failure.is_none(),
            grothendieck: grothendieck_failure.is_none(),
            normal,
        },
        representable_failure,
        discrete_failure,
        grothendieck_failure,
    }
}

/// A normal cleavage choosing the smallest valid lift of each non-identity
/// isomorphism.
pub fn build_normal_cleavage(p: &FinFunctor) -> Result<Cleavage> {
    Cleavage::build(p, LiftChoice::Smallest)
}
