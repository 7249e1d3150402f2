use super::cleavage::Cleavage;
use super::wfs::{factorize_wfs, solve_lifting, Factorization, LiftingProblem};
use crate::error::{Error, Result};
use crate::fincat::FinFunctor;

/// `f` exhibited as a retract of `v_f` in the arrow category, via
/// `(d_f, 1_B): f → v_f` and `(w, 1_B): v_f → f`.
#[derive(Clone, Debug)]
pub struct RetractWitness {
    pub factorization: Factorization,
    /// The filler of the square `d_f` against `f` with top `1_A` and bottom `v_f`.
    pub w: FinFunctor,
}

impl RetractWitness {
    pub fn check(&self) -> Result<()> {
        let (d, v, w) = (&self.factorization.d, &self.factorization.v, &self.w);
        let f = &self.factorization.pseudolimit.f;
        if v.after(d) != *f {
            return Err(Error::Invalid("(d, 1) is not a map f → v".into()));
        }
        if f.after(w) != *v {
            return Err(Error::Invalid("(w, 1) is not a map v → f".into()));
        }
        if !w.after(d).is_identity() {
            return Err(Error::Invalid("w∘d is not the identity".into()));
        }
        Ok(())
    }
}

pub fn minimal_retract_witness(f: &FinFunctor, cleavage: &Cleavage, budget: usize) -> Result<RetractWitness> {
    if cleavage.fibration() != f {
        return Err(Error::Invalid("the cleavage belongs to a different functor".into()));
    }
    if !cleavage.is_normal() {
        return Err(Error::CleavageNotNormal("an identity lifts to a non-identity".into()));
    }
    let factorization = factorize_wfs(f, budget)?;
    let problem = LiftingProblem::new(
        factorization.d.clone(),
        f.clone(),
        FinFunctor::identity(f.source().clone()),
        factorization.v.clone(),
    )?;
    let w = solve_lifting(&problem, &factorization.d_witness(), cleavage)?;
    let witness = RetractWitness { factorization, w };
    witness.check()?;
    Ok(witness)
}
