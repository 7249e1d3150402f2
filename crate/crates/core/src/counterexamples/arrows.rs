//! Morphisms in `Cat^𝟚`, whose objects are functors `X₀ → X₁`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{classify_equivalence, FinFunctor, Mor, Obj};

/// A commuting square from the arrow `source` to the arrow `target`, with
/// components `top: X₀ → Y₀` and `bottom: X₁ → Y₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowMorphism {
    pub source: FinFunctor,
    pub target: FinFunctor,
    pub top: FinFunctor,
    pub bottom: FinFunctor,
}

impl ArrowMorphism {
    pub fn new(source: FinFunctor, target: FinFunctor, top: FinFunctor, bottom: FinFunctor) -> Result<Self> {
        let square = ArrowMorphism { source, target, top, bottom };
        square.check()?;
        Ok(square)
    }

    pub fn check(&self) -> Result<()> {
        let boundary = **self.top.source() == **self.source.source()
            && **self.top.target() == **self.target.source()
            && **self.bottom.source() == **self.source.target()
            && **self.bottom.target() == **self.target.target();
        if !boundary {
            return Err(Error::Invalid("square components have the wrong boundary".into()));
        }
        if self.target.after(&self.top).mmap() != self.bottom.after(&self.source).mmap() {
            return Err(Error::NotFunctorial("square of functors does not commute".into()));
        }
        Ok(())
    }

    /// `self∘first`.
    pub fn after(&self, first: &ArrowMorphism) -> ArrowMorphism {
        ArrowMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            top: self.top.after(&first.top),
            bottom: self.bottom.after(&first.bottom),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.bottom.is_identity()
    }

    /// Whether both components are retract equivalences.
    pub fn components_are_retract_equivalences(&self) -> bool {
        classify_equivalence(&self.top).is_retract() && classify_equivalence(&self.bottom).is_retract()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowFibrationFlags {
    pub representable: bool,
    pub normal: bool,
    /// Where the normal lifting fails, if it does.
    pub normal_failure: Option<String>,
    pub representable_failure: Option<String>,
}

/// Decides whether a morphism of `Cat^𝟚` is a representable, and a normal,
/// isofibration.
///
/// Pseudolimits of arrows in `Cat^𝟚` are computed pointwise, so it is enough
/// to lift the universal isomorphism out of `L_f`. An object of `L_{f₁}` is
/// an object `a` of `E₁` with an iso `β` out of `f₁a`; its lift must be an
/// iso over `β` out of `a`, and must be the image under `E₀ → E₁` of a lift
/// chosen for every object of `L_{f₀}` lying over it. A normal lift is an
/// identity wherever `β` is.
pub fn classify_arrow_fibration(f: &ArrowMorphism) -> ArrowFibrationFlags {
    let representable = lift_universal(f, false);
    let normal = lift_universal(f, true);
    ArrowFibrationFlags {
        representable: representable.is_ok(),
        normal: normal.is_ok(),
        normal_failure: normal.err(),
        representable_failure: representable.err(),
    }
}

fn lift_universal(f: &ArrowMorphism, normal: bool) -> std::result::Result<(), String> {
    let lifts = |p: &FinFunctor, a: Obj, beta: Mor| -> BTreeSet<Mor> {
        let e = p.source();
        if normal && p.target().is_identity(beta) {
            return [e.id(a)].into();
        }
        e.isos_from(a).filter(|&c| p.mor(c) == beta).collect()
    };
    let (e_map, b_map) = (&f.source, &f.target);
    let (e1, b1) = (f.bottom.source(), f.bottom.target());
    let mut choices: HashMap<(Obj, Mor), BTreeSet<Mor>> = HashMap::new();
    for a in e1.objects() {
        for beta in b1.isos_from(f.bottom.obj(a)) {
            choices.insert((a, beta), lifts(&f.bottom, a, beta));
        }
    }
    let (e0, b0) = (f.top.source(), f.top.target());
    for a in e0.objects() {
        for beta in b0.isos_from(f.top.obj(a)) {
            let image: BTreeSet<Mor> = lifts(&f.top, a, beta).into_iter().map(|c| e_map.mor(c)).collect();
            let key = (e_map.obj(a), b_map.mor(beta));
            let slot = choices.get_mut(&key).expect("square commutes");
            slot.retain(|c| image.contains(c));
            if slot.is_empty() {
                return Err(format!(
                    "no compatible lift of {} at {} over {} at {}",
                    b0.name(beta),
                    e0.object_name(a),
                    b1.name(key.1),
                    e1.object_name(key.0)
                ));
            }
        }
    }
    match choices.iter().find(|(_, c)| c.is_empty()) {
        Some((&(a, beta), _)) => Err(format!("no lift of {} at {}", b1.name(beta), e1.object_name(a))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chaotic, Builtin};
    use std::sync::Arc;

    fn id_arrow(c: Arc<crate::fincat::FinCat>) -> FinFunctor {
        FinFunctor::identity(c)
    }

    #[test]
    fn pointwise_identities_are_normal() {
        let c = Arc::new(chaotic(2));
        let a = id_arrow(c.clone());
        let f = ArrowMorphism::new(a.clone(), a, FinFunctor::identity(c.clone()), FinFunctor::identity(c)).unwrap();
        let flags = classify_arrow_fibration(&f);
        assert!(flags.representable && flags.normal);
        assert!(f.is_identity() && f.components_are_retract_equivalences());
    }

    #[test]
    fn non_isofibration_component_is_detected() {
        // 1 → 𝕀 on the bottom, identity arrows as objects
        let one = Builtin::Terminal.arc();
        let iso = Builtin::FreeIso.arc();
        let point = FinFunctor::constant(one.clone(), iso.clone(), 0);
        let f = ArrowMorphism::new(id_arrow(one), id_arrow(iso), point.clone(), point).unwrap();
        let flags = classify_arrow_fibration(&f);
        assert!(!flags.representable && !flags.normal);
    }

    #[test]
    fn non_commuting_squares_are_rejected() {
        let arrow = Builtin::Arrow.arc();
        let one = Builtin::Terminal.arc();
        let s = FinFunctor::constant(one.clone(), arrow.clone(), 0);
        let t = FinFunctor::constant(one.clone(), arrow.clone(), 1);
        assert!(ArrowMorphism::new(id_arrow(one.clone()), id_arrow(arrow), s, t).is_err());
    }
}
