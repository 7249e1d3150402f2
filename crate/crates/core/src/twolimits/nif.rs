use super::certificate::{certify, iso_over, legs_key, LimitWitness};
use super::flexible::{split_idempotent, IdempotentSplitting};
use super::pullback::{isocomma_uncertified, pullback_uncertified, strict_cones, Isocomma};
use crate::error::{Error, Result};
use crate::fibrations::Cleavage;
use crate::fincat::{FinFunctor, NatTrans};

/// The pullback of a normal isofibration `f: A → C` along `g: B → C`,
/// obtained by splitting an idempotent on the isocomma of `f` and `g`.
#[derive(Clone, Debug)]
pub struct NifPullback {
    pub isocomma: Isocomma,
    /// The lifted functor `x: P → A` with `f x = g q`.
    pub x: FinFunctor,
    /// `ξ: x ⇒ p` with `f·ξ = φ`.
    pub xi: NatTrans,
    /// The idempotent with `p e = x`, `q e = q` and `φ·e` an identity.
    pub e: FinFunctor,
    pub splitting: IdempotentSplitting,
    pub witness: LimitWitness,
    /// The strict pullback, computed independently.
    pub strict: LimitWitness,
    /// An isomorphism from the constructed apex to the strict one over the cospan.
    pub comparison: FinFunctor,
}

pub fn pullback_along_normal_isofibration(f: &FinFunctor, cleavage: &Cleavage, g: &FinFunctor) -> Result<NifPullback> {
    if cleavage.fibration() != f {
        return Err(Error::Invalid("the cleavage belongs to a different functor".into()));
    }
    let iso = isocomma_uncertified(f, g);
    let (p, q, phi) = (iso.p(), iso.q(), iso.phi());
    let phi_inv = phi.inverse().expect("φ is invertible");
    let (x, lifted) = cleavage.lift_transformation(p, &phi_inv)?;
    let xi = lifted.inverse().expect("lifts are invertible");
    let identity = NatTrans::identity(&g.after(q));
    let identity = NatTrans::new_unchecked(g.after(q), f.after(&x), identity.components().to_vec());
    let e = iso
        .factor(&x, q, &identity)
        .ok_or_else(|| Error::Invalid("the lifted cone does not factor through the isocomma".into()))?;
    if !phi.whisker_right(&e).is_identity() {
        return Err(Error::Invalid("φ·e is not an identity".into()));
    }
    if e.after(&e) != e {
        return Err(Error::CleavageNotNormal("the induced endomorphism e is not idempotent".into()));
    }
    if !cleavage.is_normal() {
        return Err(Error::CleavageNotNormal("an identity lifts to a non-identity".into()));
    }
    let splitting = split_idempotent(&e)?;
    let (pi, qi) = (p.after(&splitting.i), q.after(&splitting.i));
    let certificate = certify(&splitting.l, |y| legs_key(&[pi.after(y), qi.after(y)]), |v| strict_cones(v, f, g));
    let witness =
        LimitWitness { apex: splitting.l.clone(), projections: vec![pi, qi], structure_cells: Vec::new(), certificate };
    let strict = pullback_uncertified(f, g);
    let comparison = iso_over(&witness, &strict)
        .ok_or_else(|| Error::Invalid("the split idempotent is not isomorphic to the strict pullback".into()))?;
    Ok(NifPullback { isocomma: iso, x, xi, e, splitting, witness, strict, comparison })
}
