use std::sync::Arc;

use super::certificate::iso_over;
use super::power::{functor_category, FunctorCategory};
use super::pullback::{isocomma_uncertified, pullback_uncertified, Isocomma};
use crate::error::{Error, Result};
use crate::fincat::{Builtin, FinCat, FinFunctor, NatTrans};

/// The pseudolimit `L_f` of an arrow `f: A → B`, realized as the isocomma of
/// `f` and `1_B`: objects are `(a, b, λ: b ≅ f a)`.
#[derive(Clone, Debug)]
pub struct PseudolimitOfArrow {
    pub f: FinFunctor,
    pub iso: Isocomma,
    pub l: Arc<FinCat>,
    pub u: FinFunctor,
    pub v: FinFunctor,
    /// `λ: v ⇒ f∘u`.
    pub lambda: NatTrans,
    pub d: FinFunctor,
    /// `δ: 1 ⇒ d∘u`.
    pub delta: NatTrans,
    /// `w: A^𝕀 → L_f`, sending `ι: a0 ≅ a1` to `(a1, f a0, fι)`.
    pub w: FinFunctor,
    /// `p: L_f → B^𝕀`, sending `(a, b, λ)` to `λ`.
    pub p: FinFunctor,
    pub a_iso: FunctorCategory,
    pub b_iso: FunctorCategory,
}

pub fn pseudolimit_of_arrow(f: &FinFunctor, budget: usize) -> Result<PseudolimitOfArrow> {
    let (a, b) = (f.source().clone(), f.target().clone());
    let iso = isocomma_uncertified(f, &FinFunctor::identity(b.clone()));
    let l = iso.apex().clone();
    let u = iso.p().clone();
    let v = iso.q().clone();
    let lambda = NatTrans::new_unchecked(v.clone(), f.after(&u), iso.phi().components().to_vec());

    let d_omap = a
        .objects()
        .map(|x| iso.object(x, f.obj(x), b.id(f.obj(x))).expect("(a, fa, id) is an object"))
        .collect::<Vec<_>>();
    let d_mmap = a
        .morphisms()
        .map(|m| iso.morphism(d_omap[a.dom(m)], d_omap[a.cod(m)], m, f.mor(m)).expect("(m, fm) is a morphism"))
        .collect();
    let d = FinFunctor::new_unchecked(a.clone(), l.clone(), d_omap, d_mmap);
    let du = d.after(&u);
    let delta_comps = l
        .objects()
        .map(|o| {
            let (x, _, lam) = iso.object_data(o);
            iso.morphism(o, du.obj(o), a.id(x), lam).expect("(1, λ) is a morphism")
        })
        .collect();
    let delta = NatTrans::new_unchecked(FinFunctor::identity(l.clone()), du, delta_comps);

    let free_iso = Builtin::FreeIso.arc();
    let a_iso = functor_category(&free_iso, &a, budget)?;
    let b_iso = functor_category(&free_iso, &b, budget)?;

    let w = {
        let omap = a_iso
            .functors()
            .iter()
            .map(|g| {
                // morphism 2 of the free isomorphism is the generator `0 → 1`
                let iota = g.mor(2);
                iso.object(g.obj(1), f.obj(g.obj(0)), f.mor(iota)).expect("w on objects")
            })
            .collect::<Vec<_>>();
        let mmap = (0..a_iso.cat.num_morphisms())
            .map(|m| {
                let (s, t) = (a_iso.cat.dom(m), a_iso.cat.cod(m));
                let c = a_iso.components(m);
                iso.morphism(omap[s], omap[t], c[1], f.mor(c[0])).expect("w on morphisms")
            })
            .collect();
        FinFunctor::new_unchecked(a_iso.cat.clone(), l.clone(), omap, mmap)
    };

    let p = b_iso.induced(
        &l,
        |o| {
            let (_, _, lam) = iso.object_data(o);
            let inv = b.inverse(lam).expect("λ is invertible");
            vec![b.id(b.dom(lam)), b.id(b.cod(lam)), lam, inv]
        },
        |m| {
            let (alpha, beta) = iso.morphism_data(m);
            vec![beta, f.mor(alpha)]
        },
    )?;

    Ok(PseudolimitOfArrow { f: f.clone(), iso, l, u, v, lambda, d, delta, w, p, a_iso, b_iso })
}

impl PseudolimitOfArrow {
    /// `cod: B^𝕀 → B`, evaluation at the object `1`.
    pub fn cod(&self) -> FinFunctor {
        self.b_iso.evaluate(1)
    }

    /// Checks every structural equation of the pseudolimit, the strict
    /// pullback presentation and the defining triangles of `w`.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invalid(format!("pseudolimit of arrow: {what}")));
        let l = &self.l;
        self.lambda.check(true)?;
        self.delta.check(true)?;
        if !self.u.after(&self.d).is_identity() {
            return fail("u∘d is not the identity");
        }
        if self.v.after(&self.d) != self.f {
            return fail("v∘d is not f");
        }
        if !self.lambda.whisker_right(&self.d).is_identity() {
            return fail("λ·d is not an identity");
        }
        if !self.delta.whisker_left(&self.u).is_identity() {
            return fail("u·δ is not an identity");
        }
        if !self.delta.whisker_right(&self.d).is_identity() {
            return fail("δ·d is not an identity");
        }
        if self.delta.whisker_left(&self.v).components() != self.lambda.components() {
            return fail("v·δ is not λ");
        }
        let cod = self.cod();
        if cod.after(&self.p) != self.f.after(&self.u) {
            return fail("cod∘p is not f∘u");
        }
        let strict = pullback_uncertified(&cod, &self.f);
        let square = super::certificate::LimitWitness {
            apex: l.clone(),
            projections: vec![self.p.clone(), self.u.clone()],
            structure_cells: Vec::new(),
            certificate: strict.certificate.clone(),
        };
        if iso_over(&square, &strict).is_none() {
            return fail("the square (p, u) is not a strict pullback of cod along f");
        }
        let ev0 = self.a_iso.evaluate(0);
        let ev1 = self.a_iso.evaluate(1);
        if self.u.after(&self.w) != ev1 || self.v.after(&self.w) != self.f.after(&ev0) {
            return fail("the triangles defining w do not commute");
        }
        for o in self.a_iso.cat.objects() {
            let iota = self.a_iso.functor(o).mor(2);
            if self.lambda.component(self.w.obj(o)) != self.f.mor(iota) {
                return fail("λ·w is not f applied to the generic isomorphism");
            }
        }
        Ok(())
    }
}
