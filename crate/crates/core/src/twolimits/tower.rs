use std::sync::Arc;

use super::certificate::{all_functors, certify, iso_over, legs_key, test_vertices, Certificate, LimitWitness};
use super::flexible::{split_idempotent, IdempotentSplitting};
use super::pullback::{isocomma_uncertified, pullback_uncertified, Isocomma};
use crate::error::{Error, Result};
use crate::fibrations::{Cleavage, LiftChoice};
use crate::fincat::{FinCat, FinFunctor, NatTrans};

/// A finite tower `A₀ ⟵ A₁ ⟵ … ⟵ A_n` of normal isofibrations with chosen
/// cleavages; `maps[k]: A_{k+1} → A_k`.
#[derive(Clone, Debug)]
pub struct Tower {
    maps: Vec<FinFunctor>,
    cleavages: Vec<Cleavage>,
    base: Arc<FinCat>,
}

impl Tower {
    pub fn new(base: Arc<FinCat>, maps: Vec<FinFunctor>, cleavages: Vec<Cleavage>) -> Result<Self> {
        if maps.len() != cleavages.len() {
            return Err(Error::Invalid("one cleavage per map is required".into()));
        }
        let mut below = &base;
        for (k, (f, c)) in maps.iter().zip(&cleavages).enumerate() {
            if **f.target() != **below {
                return Err(Error::Invalid(format!("map {k} does not land in the previous stage")));
            }
            if c.fibration() != f {
                return Err(Error::Invalid(format!("cleavage {k} belongs to a different functor")));
            }
            below = f.source();
        }
        Ok(Tower { maps, cleavages, base })
    }

    /// A tower whose cleavages are chosen by [`Cleavage::build`].
    pub fn with_cleavages(base: Arc<FinCat>, maps: Vec<FinFunctor>, choice: LiftChoice) -> Result<Self> {
        let cleavages = maps.iter().map(|f| Cleavage::build(f, choice)).collect::<Result<Vec<_>>>()?;
        Self::new(base, maps, cleavages)
    }

    /// Number of maps in the tower.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[FinFunctor] {
        &self.maps
    }

    pub fn cleavages(&self) -> &[Cleavage] {
        &self.cleavages
    }

    /// The stage `A_n`.
    pub fn stage(&self, n: usize) -> &Arc<FinCat> {
        if n == 0 {
            &self.base
        } else {
            self.maps[n - 1].source()
        }
    }

    /// The composite `f^m_n: A_m → A_n` for `n ≤ m`.
    pub fn composite(&self, m: usize, n: usize) -> FinFunctor {
        let mut f = FinFunctor::identity(self.stage(m).clone());
        for k in (n..m).rev() {
            f = self.maps[k].after(&f);
        }
        f
    }
}

/// The limit of a tower, constructed from its pseudolimit by splitting an
/// idempotent, together with every intermediate datum of the construction.
#[derive(Clone, Debug)]
pub struct TowerLimit {
    /// The iterated isocommas presenting the pseudolimit `P`.
    pub stages: Vec<Isocomma>,
    pub pseudolimit: Arc<FinCat>,
    /// Projections `p_n: P → A_n`.
    pub p: Vec<FinFunctor>,
    /// `pi[n]` is `π^{n+1}_n: p_n ⇒ f_n p_{n+1}`.
    pub pi: Vec<NatTrans>,
    /// The strict cone `q_n` built from the cleavages.
    pub q: Vec<FinFunctor>,
    /// `alpha[n]: q_n ⇒ p_n`.
    pub alpha: Vec<NatTrans>,
    pub e: FinFunctor,
    pub splitting: IdempotentSplitting,
    pub witness: LimitWitness,
    /// The iterated strict pullback, computed independently.
    pub strict: LimitWitness,
    pub comparison: FinFunctor,
    /// Number of maps into `P` on which `α` and `π` were checked to detect identities together.
    pub identity_checks: usize,
}

impl TowerLimit {
    /// `π^m_n: p_n ⇒ f^m_n p_m`, composed from consecutive cells.
    pub fn pi_between(&self, tower: &Tower, n: usize, m: usize) -> NatTrans {
        let mut cell = NatTrans::identity(&self.p[n]);
        for k in n..m {
            let step = self.pi[k].whisker_left(&tower.composite(k, n));
            cell = NatTrans::new_unchecked(cell.source().clone(), step.target().clone(), {
                let a = self.p[n].target();
                cell.components().iter().zip(step.components()).map(|(&x, &y)| a.compose(y, x)).collect()
            });
        }
        cell
    }
}

pub fn tower_limit(tower: &Tower) -> Result<TowerLimit> {
    let n = tower.len();
    // The pseudolimit as an iterated isocomma.
    let mut stages: Vec<Isocomma> = Vec::new();
    let mut apex = tower.stage(0).clone();
    let mut p = vec![FinFunctor::identity(apex.clone())];
    let mut pi: Vec<NatTrans> = Vec::new();
    for k in 0..n {
        let stage = isocomma_uncertified(&tower.maps[k], &p[k]);
        let q = stage.q().clone();
        p = p.iter().map(|x| x.after(&q)).collect();
        p.push(stage.p().clone());
        pi = pi.iter().map(|c| c.whisker_right(&q)).collect();
        pi.push(stage.phi().clone());
        apex = stage.apex().clone();
        stages.push(stage);
    }

    // The cone q_n with α_n: q_n ≅ p_n.
    let mut q = vec![p[0].clone()];
    let mut alpha = vec![NatTrans::identity(&p[0])];
    for k in 0..n {
        let gamma = alpha[k].then(&pi[k]);
        let gamma_inv = gamma.inverse().expect("invertible");
        let (next, lifted) = tower.cleavages[k].lift_transformation(&p[k + 1], &gamma_inv)?;
        if tower.maps[k].after(&next) != q[k] {
            return Err(Error::Invalid("lifted cone is not strict".into()));
        }
        q.push(next);
        alpha.push(lifted.inverse().expect("invertible"));
    }

    // The idempotent e with p_n e = q_n and every π·e an identity.
    let mut e = q[0].clone();
    for k in 0..n {
        let stage = &stages[k];
        let source = stage.g().after(&e);
        let target = stage.f().after(&q[k + 1]);
        let ids = NatTrans::identity(&source).components().to_vec();
        e = stage
            .factor(&q[k + 1], &e, &NatTrans::new_unchecked(source, target, ids))
            .ok_or_else(|| Error::Invalid("the lifted cone does not factor through the pseudolimit".into()))?;
    }
    if e.after(&e) != e {
        return Err(Error::CleavageNotNormal("the induced endomorphism e is not idempotent".into()));
    }
    if tower.cleavages.iter().any(|c| !c.is_normal()) {
        return Err(Error::CleavageNotNormal("an identity lifts to a non-identity".into()));
    }

    // Split e and read off a strict cone.
    let splitting = split_idempotent(&e)?;
    let legs: Vec<FinFunctor> = p.iter().map(|x| x.after(&splitting.i)).collect();
    for k in 0..n {
        if tower.maps[k].after(&legs[k + 1]) != legs[k] {
            return Err(Error::Invalid(format!("leg {k} of the split cone is not strict")));
        }
    }

    // The universal property, certified on the test vertices.
    let top = tower.stage(n).clone();
    let composites: Vec<FinFunctor> = (0..=n).map(|k| tower.composite(n, k)).collect();
    let certificate = certify(
        &splitting.l,
        |y| legs_key(&legs.iter().map(|l| l.after(y)).collect::<Vec<_>>()),
        |x| {
            all_functors(x, &top)
                .iter()
                .map(|t| legs_key(&composites.iter().map(|c| c.after(t)).collect::<Vec<_>>()))
                .collect()
        },
    );
    let witness =
        LimitWitness { apex: splitting.l.clone(), projections: legs, structure_cells: Vec::new(), certificate };

    let strict = strict_tower_limit(tower);
    let comparison = iso_over(&witness, &strict)
        .ok_or_else(|| Error::Invalid("the tower limit is not isomorphic to the strict limit".into()))?;

    let mut result = TowerLimit {
        stages,
        pseudolimit: apex,
        p,
        pi,
        q,
        alpha,
        e,
        splitting,
        witness,
        strict,
        comparison,
        identity_checks: 0,
    };
    result.identity_checks = check_identity_detection(tower, &result)?;
    Ok(result)
}

/// For every test map `x` into `P`, all `α_n·x` are identities iff
/// all `π^m_n·x` are. Returns the number of maps checked.
fn check_identity_detection(tower: &Tower, limit: &TowerLimit) -> Result<usize> {
    let n = tower.len();
    let mut pis = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            pis.push(limit.pi_between(tower, a, b));
        }
    }
    let mut count = 0;
    for (name, v) in test_vertices() {
        for x in all_functors(&v, &limit.pseudolimit) {
            let alphas = limit.alpha.iter().all(|c| c.whisker_right(&x).is_identity());
            let pis_id = pis.iter().all(|c| c.whisker_right(&x).is_identity());
            if alphas != pis_id {
                return Err(Error::Invalid(format!("α and π disagree on identities at a map from {name}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The strict limit of a tower as an iterated strict pullback, with one
/// projection per stage.
pub fn strict_tower_limit(tower: &Tower) -> LimitWitness {
    let mut legs = vec![FinFunctor::identity(tower.stage(0).clone())];
    let mut apex = tower.stage(0).clone();
    for k in 0..tower.len() {
        let pb = pullback_uncertified(&tower.maps[k], &legs[k]);
        let q = pb.projections[1].clone();
        legs = legs.iter().map(|l| l.after(&q)).collect();
        legs.push(pb.projections[0].clone());
        apex = pb.apex.clone();
    }
    LimitWitness { apex, projections: legs, structure_cells: Vec::new(), certificate: Certificate::unchecked() }
}
