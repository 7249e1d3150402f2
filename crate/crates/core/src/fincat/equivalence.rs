use std::ops::ControlFlow;

use serde::Serialize;

use super::category::Mor;
use super::functor::FinFunctor;
use super::search::{FunctorSearch, TransformationSearch};
use super::transformation::NatTrans;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceKind {
    Plain,
    /// The counit is an identity, so the inverse is a section.
    Retract,
    /// The unit is an identity, so the inverse is a retraction.
    Injective,
}

/// An adjoint equivalence `forward ⊣ inverse` with `unit: 1 ≅ inverse∘forward`
/// and `counit: forward∘inverse ≅ 1`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub forward: FinFunctor,
    pub inverse: FinFunctor,
    pub unit: NatTrans,
    pub counit: NatTrans,
    pub kind: EquivalenceKind,
}

impl EquivalenceWitness {
    /// Checks invertibility, both triangle equations and the kind constraint.
    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.forward, &self.inverse);
        let (c, d) = (f.source(), f.target());
        self.unit.check(true).map_err(|e| Error::WitnessInvalid(format!("unit: {e}")))?;
        self.counit.check(true).map_err(|e| Error::WitnessInvalid(format!("counit: {e}")))?;
        if !self.unit.source().is_identity() || self.unit.target() != &g.after(f) {
            return Err(Error::WitnessInvalid("unit is not 1 ⇒ GF".into()));
        }
        if self.counit.source() != &f.after(g) || !self.counit.target().is_identity() {
            return Err(Error::WitnessInvalid("counit is not FG ⇒ 1".into()));
        }
        for x in c.objects() {
            let lhs = d.compose(self.counit.component(f.obj(x)), f.mor(self.unit.component(x)));
            if lhs != d.id(f.obj(x)) {
                return Err(Error::WitnessInvalid(format!("triangle εF∘Fη fails at {}", c.object_name(x))));
            }
        }
        for y in d.objects() {
            let lhs = c.compose(g.mor(self.counit.component(y)), self.unit.component(g.obj(y)));
            if lhs != c.id(g.obj(y)) {
                return Err(Error::WitnessInvalid(format!("triangle Gε∘ηG fails at {}", d.object_name(y))));
            }
        }
        match self.kind {
            EquivalenceKind::Retract if !self.counit.is_identity() => {
                Err(Error::WitnessInvalid("retract witness with non-identity counit".into()))
            }
            EquivalenceKind::Injective if !self.unit.is_identity() => {
                Err(Error::WitnessInvalid("injective witness with non-identity unit".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub adjoint: EquivalenceWitness,
    pub retract: Option<EquivalenceWitness>,
    pub injective: Option<EquivalenceWitness>,
    pub isomorphism: bool,
}

impl EquivalenceReport {
    pub fn is_retract(&self) -> bool {
        self.retract.is_some()
    }

    pub fn is_injective(&self) -> bool {
        self.injective.is_some()
    }
}

#[derive(Clone, Debug)]
pub enum EquivalenceVerdict {
    Equivalence(Box<EquivalenceReport>),
    NotEquivalence(String),
}

impl EquivalenceVerdict {
    pub fn report(&self) -> Option<&EquivalenceReport> {
        match self {
            EquivalenceVerdict::Equivalence(r) => Some(r),
            EquivalenceVerdict::NotEquivalence(_) => None,
        }
    }

    pub fn is_equivalence(&self) -> bool {
        self.report().is_some()
    }

    pub fn is_retract(&self) -> bool {
        self.report().is_some_and(|r| r.is_retract())
    }

    pub fn is_injective(&self) -> bool {
        self.report().is_some_and(|r| r.is_injective())
    }
}

/// Decides whether `f` is an equivalence by searching for an inverse, and
/// separately for a section (retract kind) and a retraction (injective kind).
pub fn classify_equivalence(f: &FinFunctor) -> EquivalenceVerdict {
    let Some(adjoint) = adjoint_equivalence(f) else {
        return EquivalenceVerdict::NotEquivalence(non_equivalence_reason(f));
    };
    let report = EquivalenceReport {
        adjoint,
        retract: retract_witness(f),
        injective: injective_witness(f),
        isomorphism: f.is_isomorphism(),
    };
    EquivalenceVerdict::Equivalence(Box::new(report))
}

fn non_equivalence_reason(f: &FinFunctor) -> String {
    if !f.is_essentially_surjective() {
        "not essentially surjective".into()
    } else if !f.is_full() {
        "not full".into()
    } else if !f.is_faithful() {
        "not faithful".into()
    } else {
        "no inverse found".into()
    }
}

/// The brute-force criterion: fully faithful and essentially surjective.
pub fn is_fully_faithful_and_essentially_surjective(f: &FinFunctor) -> bool {
    f.is_full() && f.is_faithful() && f.is_essentially_surjective()
}

fn adjoint_equivalence(f: &FinFunctor) -> Option<EquivalenceWitness> {
    let (c, d) = (f.source(), f.target());
    let mut search = FunctorSearch::new(d, c);
    for y in d.objects() {
        let candidates: Vec<_> = c.objects().filter(|&x| d.are_isomorphic(f.obj(x), y)).collect();
        if candidates.is_empty() {
            return None;
        }
        search.restrict_object(y, candidates);
    }
    let id_c = FinFunctor::identity(c.clone());
    let id_d = FinFunctor::identity(d.clone());
    let mut found = None;
    search.run(|omap, mmap| {
        let g = FinFunctor::new_unchecked(d.clone(), c.clone(), omap.to_vec(), mmap.to_vec());
        let fg = f.after(&g);
        let gf = g.after(f);
        let Some(counit) = TransformationSearch::new(&fg, &id_d).invertible().first() else {
            return ControlFlow::Continue(());
        };
        let Some(unit) = TransformationSearch::new(&id_c, &gf).invertible().first() else {
            return ControlFlow::Continue(());
        };
        found = Some((g, unit, counit));
        ControlFlow::Break(())
    });
    let (g, unit, counit) = found?;
    let counit = adjust_counit(f, &g, &unit, &counit);
    let w = EquivalenceWitness { forward: f.clone(), inverse: g, unit, counit, kind: EquivalenceKind::Plain };
    w.check().ok()?;
    Some(w)
}

/// Replaces `ε` by `ε ∘ (F η⁻¹ G) ∘ (ε F G)⁻¹`, which together with `η`
/// satisfies the triangle equations.
fn adjust_counit(f: &FinFunctor, g: &FinFunctor, unit: &NatTrans, counit: &NatTrans) -> NatTrans {
    let d = f.target();
    let c = f.source();
    let components: Vec<Mor> = d
        .objects()
        .map(|y| {
            let gy = g.obj(y);
            let fgy = f.obj(gy);
            let eta_inv = c.inverse(unit.component(gy)).expect("unit is invertible");
            let eps_fg_inv = d.inverse(counit.component(fgy)).expect("counit is invertible");
            d.compose(counit.component(y), d.compose(f.mor(eta_inv), eps_fg_inv))
        })
        .collect();
    NatTrans::new_unchecked(counit.source().clone(), counit.target().clone(), components)
}

fn retract_witness(f: &FinFunctor) -> Option<EquivalenceWitness> {
    let (c, d) = (f.source(), f.target());
    let mut search = FunctorSearch::new(d, c);
    for y in d.objects() {
        search.restrict_object(y, c.objects().filter(|&x| f.obj(x) == y).collect());
    }
    for n in d.morphisms() {
        search.restrict_morphism(n, c.morphisms().filter(|&m| f.mor(m) == n).collect());
    }
    let (omap, mmap) = search.first()?;
    let g = FinFunctor::new_unchecked(d.clone(), c.clone(), omap, mmap);
    let gf = g.after(f);
    let id_c = FinFunctor::identity(c.clone());
    let mut units = TransformationSearch::new(&id_c, &gf);
    units.invertible();
    for x in c.objects() {
        let fx = f.obj(x);
        units.restrict_component(x, c.hom(x, gf.obj(x)).iter().copied().filter(|&m| f.mor(m) == d.id(fx)).collect());
    }
    let unit = units.first()?;
    let fg = f.after(&g);
    let counit = NatTrans::new_unchecked(
        fg.clone(),
        FinFunctor::identity(d.clone()),
        NatTrans::identity(&fg).components().to_vec(),
    );
    let w = EquivalenceWitness { forward: f.clone(), inverse: g, unit, counit, kind: EquivalenceKind::Retract };
    w.check().ok()?;
    Some(w)
}

fn injective_witness(f: &FinFunctor) -> Option<EquivalenceWitness> {
    let (c, d) = (f.source(), f.target());
    if !f.is_injective_on_objects() || !f.is_faithful() {
        return None;
    }
    let mut search = FunctorSearch::new(d, c);
    for x in c.objects() {
        search.restrict_object(f.obj(x), vec![x]);
    }
    for m in c.morphisms() {
        search.restrict_morphism(f.mor(m), vec![m]);
    }
    let (omap, mmap) = search.first()?;
    let r = FinFunctor::new_unchecked(d.clone(), c.clone(), omap, mmap);
    let rf = r.after(f);
    if !rf.is_identity() {
        return None;
    }
    let fr = f.after(&r);
    let id_d = FinFunctor::identity(d.clone());
    let mut counits = TransformationSearch::new(&fr, &id_d);
    counits.invertible();
    for y in d.objects() {
        let ry = r.obj(y);
        counits.restrict_component(y, d.hom(fr.obj(y), y).iter().copied().filter(|&m| r.mor(m) == c.id(ry)).collect());
    }
    for x in c.objects() {
        counits.restrict_component(f.obj(x), vec![d.id(f.obj(x))]);
    }
    let counit = counits.first()?;
    let unit = NatTrans::new_unchecked(
        FinFunctor::identity(c.clone()),
        rf.clone(),
        NatTrans::identity(&rf).components().to_vec(),
    );
    let w = EquivalenceWitness { forward: f.clone(), inverse: r, unit, counit, kind: EquivalenceKind::Injective };
    w.check().ok()?;
    Some(w)
}
