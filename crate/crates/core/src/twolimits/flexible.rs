use std::sync::Arc;

use super::certificate::{all_functors, certify, legs_key, ConeKey, LimitWitness};
use super::power::{functor_category, FunctorCategory};
use super::pullback::pullback_uncertified;
use crate::error::{Error, Result};
use crate::fibrations::is_discrete_isofibration;
use crate::fincat::{discrete, Builtin, FinCat, FinFunctor, NatTrans, TransformationSearch};

/// `j: 2 → 𝟚`, the inclusion of the endpoints of the generic arrow.
fn endpoints() -> FinFunctor {
    let arrow = Builtin::Arrow.arc();
    // arrow morphisms: id_0, 0->1, id_1
    FinFunctor::new_unchecked(Arc::new(discrete(2)), arrow, vec![0, 1], vec![0, 2])
}

/// `𝟚₂ → 𝟚`, identifying the two parallel arrows.
fn collapse() -> FinFunctor {
    let arrow = Builtin::Arrow.arc();
    // parallel pair morphisms: id_0, id_1, s, t
    FinFunctor::new_unchecked(Builtin::ParallelPair.arc(), arrow, vec![0, 1], vec![0, 2, 1, 1])
}

/// A restriction functor `B^𝟚 → B^J` along a bijective-on-objects `J → 𝟚`,
/// checked to be a discrete isofibration before it is used.
fn restriction(
    j: &FinFunctor,
    b: &Arc<FinCat>,
    budget: usize,
) -> Result<(FunctorCategory, FunctorCategory, FinFunctor)> {
    let arrows = functor_category(j.target(), b, budget)?;
    let restricted = functor_category(j.source(), b, budget)?;
    let res = arrows.precompose(j, &restricted);
    if !is_discrete_isofibration(&res) {
        return Err(Error::Invalid("restriction functor is not a discrete isofibration".into()));
    }
    Ok((arrows, restricted, res))
}

/// The inserter of `f, g: A → B`: the universal `e: I → A` with a cell
/// `θ: f e ⇒ g e`, built as a pullback of `B^𝟚 → B × B` along `(f, g)`.
pub fn inserter(f: &FinFunctor, g: &FinFunctor, budget: usize) -> Result<LimitWitness> {
    let (a, b) = (f.source(), f.target());
    let (arrows, pairs, res) = restriction(&endpoints(), b, budget)?;
    let fg = pairs.induced(a, |o| vec![b.id(f.obj(o)), b.id(g.obj(o))], |m| vec![f.mor(m), g.mor(m)])?;
    let pb = pullback_uncertified(&res, &fg);
    let (to_arrows, e) = (&pb.projections[0], pb.projections[1].clone());
    let theta = NatTrans::new_unchecked(
        f.after(&e),
        g.after(&e),
        pb.apex.objects().map(|o| arrows.functor(to_arrows.obj(o)).mor(1)).collect(),
    );
    let certificate = certify(
        &pb.apex,
        |y| {
            let mut key = legs_key(&[e.after(y)]);
            key.push(theta.whisker_right(y).components().to_vec());
            key
        },
        |x| inserter_cones(x, f, g),
    );
    Ok(LimitWitness { apex: pb.apex.clone(), projections: vec![e], structure_cells: vec![theta], certificate })
}

fn inserter_cones(x: &Arc<FinCat>, f: &FinFunctor, g: &FinFunctor) -> Vec<ConeKey> {
    let mut out = Vec::new();
    for u in all_functors(x, f.source()) {
        let (fu, gu) = (f.after(&u), g.after(&u));
        for comps in TransformationSearch::new(&fu, &gu).collect(usize::MAX).expect("unbounded") {
            out.push(vec![u.mmap().to_vec(), comps]);
        }
    }
    out
}

/// The equifier of `β, β′: h ⇒ k`: the universal `e: E → A` with `β e = β′ e`,
/// built as a pullback of `B^𝟚 → B^{𝟚₂}` along `(β, β′)`.
pub fn equifier(beta: &NatTrans, beta2: &NatTrans, budget: usize) -> Result<LimitWitness> {
    let (h, k) = (beta.source(), beta.target());
    if beta2.source() != h || beta2.target() != k {
        return Err(Error::Invalid("equifier of non-parallel transformations".into()));
    }
    let (a, b) = (h.source(), h.target());
    let (_, pairs, res) = restriction(&collapse(), b, budget)?;
    let cells = pairs.induced(
        a,
        |o| vec![b.id(h.obj(o)), b.id(k.obj(o)), beta.component(o), beta2.component(o)],
        |m| vec![h.mor(m), k.mor(m)],
    )?;
    let pb = pullback_uncertified(&res, &cells);
    let e = pb.projections[1].clone();
    let certificate = certify(
        &pb.apex,
        |y| legs_key(&[e.after(y)]),
        |x| {
            all_functors(x, a)
                .into_iter()
                .filter(|u| beta.whisker_right(u) == beta2.whisker_right(u))
                .map(|u| vec![u.mmap().to_vec()])
                .collect()
        },
    );
    Ok(LimitWitness { apex: pb.apex.clone(), projections: vec![e], structure_cells: Vec::new(), certificate })
}

/// A splitting `e = i∘r` with `r∘i = 1` of an idempotent `e: C → C`.
#[derive(Clone, Debug)]
pub struct IdempotentSplitting {
    pub e: FinFunctor,
    pub l: Arc<FinCat>,
    pub r: FinFunctor,
    pub i: FinFunctor,
}

pub fn split_idempotent(e: &FinFunctor) -> Result<IdempotentSplitting> {
    let c = e.source();
    if e.after(e) != *e {
        let bad = c.morphisms().find(|&m| e.mor(e.mor(m)) != e.mor(m)).unwrap_or(0);
        return Err(Error::NotIdempotent(format!("e∘e differs from e at `{}`", c.name(bad))));
    }
    let fixed: Vec<usize> = c.objects().filter(|&o| e.obj(o) == o).collect();
    let (sub, objects, old_mor) = c.subcategory(&fixed, |m| e.mor(m) == m);
    let l = Arc::new(sub);
    let mut new_obj = vec![usize::MAX; c.num_objects()];
    for (i, &o) in objects.iter().enumerate() {
        new_obj[o] = i;
    }
    let mut new_mor = vec![usize::MAX; c.num_morphisms()];
    for (i, &m) in old_mor.iter().enumerate() {
        new_mor[m] = i;
    }
    let i = FinFunctor::new_unchecked(l.clone(), c.clone(), objects, old_mor);
    let r = FinFunctor::new_unchecked(
        c.clone(),
        l.clone(),
        c.objects().map(|o| new_obj[e.obj(o)]).collect(),
        c.morphisms().map(|m| new_mor[e.mor(m)]).collect(),
    );
    Ok(IdempotentSplitting { e: e.clone(), l, r, i })
}

impl IdempotentSplitting {
    pub fn check(&self) -> Result<()> {
        if !self.r.after(&self.i).is_identity() {
            return Err(Error::Invalid("r∘i is not the identity".into()));
        }
        if self.i.after(&self.r) != self.e {
            return Err(Error::Invalid("i∘r is not e".into()));
        }
        Ok(())
    }

    /// The splitting as the limit of `e` and the identity: maps `x` with `e x = x`
    /// factor uniquely through `i`.
    pub fn witness(&self) -> LimitWitness {
        let (e, i) = (&self.e, &self.i);
        let certificate = certify(
            &self.l,
            |y| legs_key(&[i.after(y)]),
            |x| {
                all_functors(x, e.source())
                    .into_iter()
                    .filter(|u| e.after(u) == *u)
                    .map(|u| vec![u.mmap().to_vec()])
                    .collect()
            },
        );
        LimitWitness { apex: self.l.clone(), projections: vec![i.clone()], structure_cells: Vec::new(), certificate }
    }
}
