use serde::Serialize;

use super::classify::{classify_fibration, FibrationReport};
use crate::error::{Error, Result};
use crate::fincat::{classify_equivalence, FinFunctor};
use crate::twolimits::{functor_category, pseudolimit_of_arrow, FunctorCategory, LimitWitness, PseudolimitOfArrow};

/// The Leibniz power of `p: A → B` by `j: X → Y`: the map `A^Y → P` into the
/// pullback of `p^X` along `B^j`.
#[derive(Clone, Debug)]
pub struct LeibnizPower {
    pub a_y: FunctorCategory,
    pub a_x: FunctorCategory,
    pub b_y: FunctorCategory,
    pub b_x: FunctorCategory,
    /// `P` with projections to `B^Y` and `A^X`.
    pub pullback: LimitWitness,
    pub induced: FinFunctor,
    pub report: FibrationReport,
}

pub fn leibniz_power(j: &FinFunctor, p: &FinFunctor, budget: usize) -> Result<LeibnizPower> {
    let (x, y) = (j.source(), j.target());
    let (a, b) = (p.source(), p.target());
    let a_y = functor_category(y, a, budget)?;
    let a_x = functor_category(x, a, budget)?;
    let b_y = functor_category(y, b, budget)?;
    let b_x = functor_category(x, b, budget)?;
    let b_j = b_y.precompose(j, &b_x);
    let p_x = a_x.postcompose(p, &b_x);
    let pullback = crate::twolimits::pullback_strict(&b_j, &p_x);
    let p_y = a_y.postcompose(p, &b_y);
    let a_j = a_y.precompose(j, &a_x);
    let induced = pullback
        .factor_strict(&[p_y, a_j])
        .ok_or_else(|| Error::Invalid("the square (p^Y, A^j) does not factor through P".into()))?;
    let report = classify_fibration(&induced);
    Ok(LeibnizPower { a_y, a_x, b_y, b_x, pullback, induced, report })
}

#[derive(Clone, Debug, Serialize)]
pub struct WfSummary {
    pub f: FibrationReport,
    pub w: FibrationReport,
    pub representable_agrees: bool,
    pub normal_agrees: bool,
    /// Whether a retract equivalence is required of `w` (when `f` is a
    /// representable or normal isofibration).
    pub retract_required: bool,
    pub w_is_retract_equivalence: bool,
}

impl WfSummary {
    pub fn holds(&self) -> bool {
        self.representable_agrees && self.normal_agrees && (!self.retract_required || self.w_is_retract_equivalence)
    }
}

#[derive(Clone, Debug)]
pub struct Wf {
    pub pseudolimit: PseudolimitOfArrow,
    pub w: FinFunctor,
    pub summary: WfSummary,
}

/// Builds `w_f: A^𝕀 → L_f` and compares the isofibration flags of `f` and `w_f`.
pub fn compute_wf(f: &FinFunctor, budget: usize) -> Result<Wf> {
    let pseudolimit = pseudolimit_of_arrow(f, budget)?;
    pseudolimit.check()?;
    let w = pseudolimit.w.clone();
    let fr = classify_fibration(f);
    let wr = classify_fibration(&w);
    let retract_required = fr.flags.representable || fr.flags.normal;
    let w_is_retract_equivalence = classify_equivalence(&w).is_retract();
    let summary = WfSummary {
        representable_agrees: fr.flags.representable == wr.flags.representable,
        normal_agrees: fr.flags.normal == wr.flags.normal,
        retract_required,
        w_is_retract_equivalence,
        f: fr,
        w: wr,
    };
    Ok(Wf { pseudolimit, w, summary })
}
