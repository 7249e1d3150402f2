use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fincat::{transport, FinFunctor, Mor, NatTrans, Obj};

/// How to pick among several valid lifts of a non-identity isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LiftChoice {
    #[default]
    Smallest,
    Largest,
}

/// Chosen isomorphism lifts for a functor `p: E → B`: for every object `e`
/// and every isomorphism `β` of `B` out of `p(e)`, an isomorphism `β′` of `E`
/// out of `e` with `p(β′) = β`.
#[derive(Clone, Debug)]
pub struct Cleavage {
    fibration: FinFunctor,
    lifts: BTreeMap<(Obj, Mor), Mor>,
    normal: bool,
}

impl Cleavage {
    /// Builds a cleavage from explicit lifts, checking every entry and totality.
    pub fn from_lifts(p: FinFunctor, lifts: BTreeMap<(Obj, Mor), Mor>) -> Result<Self> {
        let (e, b) = (p.source().clone(), p.target().clone());
        for x in e.objects() {
            for beta in b.isos_from(p.obj(x)) {
                let Some(&lift) = lifts.get(&(x, beta)) else {
                    return Err(Error::NotIsofibration {
                        object: e.object_name(x).to_string(),
                        iso: b.name(beta).to_string(),
                    });
                };
                if e.dom(lift) != x || !e.is_iso(lift) || p.mor(lift) != beta {
                    return Err(Error::Invalid(format!(
                        "`{}` is not a lift of `{}` at `{}`",
                        e.name(lift),
                        b.name(beta),
                        e.object_name(x)
                    )));
                }
            }
        }
        let normal = e.objects().all(|x| e.is_identity(lifts[&(x, b.id(p.obj(x)))]));
        Ok(Cleavage { fibration: p, lifts, normal })
    }

    /// Chooses lifts deterministically: identities over identities, otherwise
    /// the smallest (or largest) valid index.
    pub fn build(p: &FinFunctor, choice: LiftChoice) -> Result<Self> {
        let (e, b) = (p.source(), p.target());
        let mut lifts = BTreeMap::new();
        for x in e.objects() {
            for beta in b.isos_from(p.obj(x)) {
                let lift = if b.is_identity(beta) {
                    Some(e.id(x))
                } else {
                    let valid = e.isos_from(x).filter(|&m| p.mor(m) == beta);
                    match choice {
                        LiftChoice::Smallest => valid.min(),
                        LiftChoice::Largest => valid.max(),
                    }
                };
                let Some(lift) = lift else {
                    return Err(Error::NotIsofibration {
                        object: e.object_name(x).to_string(),
                        iso: b.name(beta).to_string(),
                    });
                };
                lifts.insert((x, beta), lift);
            }
        }
        Ok(Cleavage { fibration: p.clone(), lifts, normal: true })
    }

    pub fn fibration(&self) -> &FinFunctor {
        &self.fibration
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn lifts(&self) -> &BTreeMap<(Obj, Mor), Mor> {
        &self.lifts
    }

    /// The chosen lift of `beta` at `e`.
    pub fn lift(&self, e: Obj, beta: Mor) -> Result<Mor> {
        self.lifts.get(&(e, beta)).copied().ok_or_else(|| {
            let (src, tgt) = (self.fibration.source(), self.fibration.target());
            Error::NotIsofibration { object: src.object_name(e).to_string(), iso: tgt.name(beta).to_string() }
        })
    }

    /// Lifts an invertible `beta: p∘g ⇒ h` to `beta′: g ⇒ g′` with
    /// `p∘g′ = h` and `p·beta′ = beta`, componentwise via the cleavage.
    pub fn lift_transformation(&self, g: &FinFunctor, beta: &NatTrans) -> Result<(FinFunctor, NatTrans)> {
        let x = g.source();
        let comps = x.objects().map(|o| self.lift(g.obj(o), beta.component(o))).collect::<Result<Vec<_>>>()?;
        Ok(transport(g, comps))
    }
}
