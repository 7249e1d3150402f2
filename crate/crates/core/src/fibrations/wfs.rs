use std::ops::ControlFlow;

use super::classify::build_normal_cleavage;
use super::cleavage::Cleavage;
use crate::error::{Error, Result};
use crate::fincat::{EquivalenceKind, EquivalenceWitness, FinFunctor, FunctorSearch, NatTrans};
use crate::twolimits::{pseudolimit_of_arrow, PseudolimitOfArrow};

/// A commutative square `p∘top = bottom∘i`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: FinFunctor,
    pub p: FinFunctor,
    pub top: FinFunctor,
    pub bottom: FinFunctor,
}

impl LiftingProblem {
    pub fn new(i: FinFunctor, p: FinFunctor, top: FinFunctor, bottom: FinFunctor) -> Result<Self> {
        if p.after(&top) != bottom.after(&i) {
            return Err(Error::Invalid("the square does not commute".into()));
        }
        Ok(LiftingProblem { i, p, top, bottom })
    }

    /// Whether `h` is a diagonal filler: `h∘i = top` and `p∘h = bottom`.
    pub fn is_filler(&self, h: &FinFunctor) -> bool {
        h.after(&self.i) == self.top && self.p.after(h) == self.bottom
    }

    fn filler_search(&self) -> FunctorSearch<'_> {
        let (a, b, c) = (self.i.source(), self.i.target(), self.p.source());
        let mut search = FunctorSearch::new(b, c);
        let mut objects: Vec<Vec<usize>> =
            b.objects().map(|y| c.objects().filter(|&z| self.p.obj(z) == self.bottom.obj(y)).collect()).collect();
        let mut morphisms: Vec<Vec<usize>> =
            b.morphisms().map(|n| c.morphisms().filter(|&k| self.p.mor(k) == self.bottom.mor(n)).collect()).collect();
        for x in a.objects() {
            objects[self.i.obj(x)].retain(|&z| z == self.top.obj(x));
        }
        for m in a.morphisms() {
            morphisms[self.i.mor(m)].retain(|&k| k == self.top.mor(m));
        }
        for (y, allowed) in objects.into_iter().enumerate() {
            search.restrict_object(y, allowed);
        }
        for (n, allowed) in morphisms.into_iter().enumerate() {
            search.restrict_morphism(n, allowed);
        }
        search
    }

    /// Exhaustive search for fillers, at most `limit` of them.
    pub fn fillers(&self, limit: usize) -> Vec<FinFunctor> {
        let (b, c) = (self.i.target(), self.p.source());
        let mut out = Vec::new();
        self.filler_search().run(|o, m| {
            out.push(FinFunctor::new_unchecked(b.clone(), c.clone(), o.to_vec(), m.to_vec()));
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    pub fn has_filler(&self) -> bool {
        !self.fillers(1).is_empty()
    }
}

/// Builds a filler for a square whose left leg is an injective equivalence
/// and whose right leg carries a normal cleavage: lift `bottom·ε` along `p`
/// at `top∘r`; normality makes the lift restrict to `top` along `i`.
pub fn solve_lifting(problem: &LiftingProblem, iw: &EquivalenceWitness, cleavage: &Cleavage) -> Result<FinFunctor> {
    if iw.forward != problem.i {
        return Err(Error::WitnessInvalid("the witness is for a different functor".into()));
    }
    iw.check()?;
    if iw.kind != EquivalenceKind::Injective {
        return Err(Error::WitnessInvalid("the witness is not of injective kind".into()));
    }
    if cleavage.fibration() != &problem.p {
        return Err(Error::Invalid("the cleavage belongs to a different functor".into()));
    }
    if !cleavage.is_normal() {
        return Err(Error::CleavageNotNormal("an identity lifts to a non-identity".into()));
    }
    let top_r = problem.top.after(&iw.inverse);
    let cell = iw.counit.whisker_left(&problem.bottom);
    let cell = NatTrans::new_unchecked(problem.p.after(&top_r), problem.bottom.clone(), cell.components().to_vec());
    let (h, _) = cleavage.lift_transformation(&top_r, &cell)?;
    if !problem.is_filler(&h) {
        return Err(Error::Invalid("the lifted functor is not a filler".into()));
    }
    Ok(h)
}

/// The factorization `f = v∘d` through the pseudolimit of `f`, with `d` an
/// injective equivalence and `v` a normal isofibration.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub pseudolimit: PseudolimitOfArrow,
    pub d: FinFunctor,
    pub v: FinFunctor,
    pub cleavage: Cleavage,
}

impl Factorization {
    /// The injective-equivalence witness for `d` read off the pseudolimit:
    /// retraction `u`, identity unit and counit `δ⁻¹`.
    pub fn d_witness(&self) -> EquivalenceWitness {
        let pl = &self.pseudolimit;
        let ud = pl.u.after(&pl.d);
        let unit = NatTrans::new_unchecked(
            FinFunctor::identity(pl.f.source().clone()),
            ud.clone(),
            NatTrans::identity(&ud).components().to_vec(),
        );
        let inv = pl.delta.inverse().expect("δ is invertible");
        let counit =
            NatTrans::new_unchecked(pl.d.after(&pl.u), FinFunctor::identity(pl.l.clone()), inv.components().to_vec());
        EquivalenceWitness {
            forward: pl.d.clone(),
            inverse: pl.u.clone(),
            unit,
            counit,
            kind: EquivalenceKind::Injective,
        }
    }
}

pub fn factorize_wfs(f: &FinFunctor, budget: usize) -> Result<Factorization> {
    let pseudolimit = pseudolimit_of_arrow(f, budget)?;
    let d = pseudolimit.d.clone();
    let v = pseudolimit.v.clone();
    if v.after(&d) != *f {
        return Err(Error::Invalid("v∘d is not f".into()));
    }
    let cleavage = build_normal_cleavage(&v)?;
    Ok(Factorization { pseudolimit, d, v, cleavage })
}
