use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{Builtin, FinCat, FinFunctor, FunctorSearch, Mor, NatTrans, Obj};

/// A cone over a limit diagram, flattened to the morphism maps of its legs
/// followed by the components of its 2-cells.
pub type ConeKey = Vec<Vec<usize>>;

/// The record of a 1-dimensional universal property check: for every test
/// vertex `X`, functors `X → apex` were compared with independently
/// enumerated cones with vertex `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub vertices: Vec<String>,
    pub cones: usize,
    pub verified: bool,
    pub failure: Option<String>,
}

impl Certificate {
    /// Placeholder for intermediate constructions that are not certified.
    pub fn unchecked() -> Self {
        Certificate { vertices: Vec::new(), cones: 0, verified: false, failure: Some("not checked".into()) }
    }
}

/// A constructed limit together with its certificate.
#[derive(Clone, Debug)]
pub struct LimitWitness {
    pub apex: Arc<FinCat>,
    pub projections: Vec<FinFunctor>,
    pub structure_cells: Vec<NatTrans>,
    pub certificate: Certificate,
}

/// The default cone vertices: the terminal category, the generic arrow and
/// the generic isomorphism.
pub fn test_vertices() -> Vec<(String, Arc<FinCat>)> {
    [Builtin::Terminal, Builtin::Arrow, Builtin::FreeIso].into_iter().map(|b| (b.to_string(), b.arc())).collect()
}

/// All functors `x → target`, without a budget. Callers only use small
/// vertices, so the count is bounded by a power of the morphism count.
pub(crate) fn all_functors(x: &Arc<FinCat>, target: &Arc<FinCat>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    FunctorSearch::new(x, target).run(|o, m| {
        out.push(FinFunctor::new_unchecked(x.clone(), target.clone(), o.to_vec(), m.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Checks that `key_of` is a bijection from functors `X → apex` onto the
/// cones returned by `cones`, for every test vertex `X`.
pub fn certify(
    apex: &Arc<FinCat>,
    key_of: impl Fn(&FinFunctor) -> ConeKey,
    cones: impl Fn(&Arc<FinCat>) -> Vec<ConeKey>,
) -> Certificate {
    let vertices = test_vertices();
    let mut total = 0;
    let mut failure = None;
    for (name, x) in &vertices {
        let expected: BTreeSet<ConeKey> = cones(x).into_iter().collect();
        total += expected.len();
        let mut seen = BTreeSet::new();
        for y in all_functors(x, apex) {
            let key = key_of(&y);
            if !expected.contains(&key) {
                failure = Some(format!("a map from {name} into the apex does not induce a cone"));
                break;
            }
            if !seen.insert(key) {
                failure = Some(format!("two maps from {name} into the apex induce the same cone"));
                break;
            }
        }
        if failure.is_none() && seen.len() != expected.len() {
            failure = Some(format!(
                "{} of {} cones with vertex {name} do not factor through the apex",
                expected.len() - seen.len(),
                expected.len()
            ));
        }
        if failure.is_some() {
            break;
        }
    }
    Certificate {
        vertices: vertices.into_iter().map(|(n, _)| n).collect(),
        cones: total,
        verified: failure.is_none(),
        failure,
    }
}

/// Cones for a strict limit whose legs are determined by a functor into a
/// single category: used for pullbacks and towers.
pub(crate) fn legs_key(legs: &[FinFunctor]) -> ConeKey {
    legs.iter().map(|l| l.mmap().to_vec()).collect()
}

impl LimitWitness {
    /// Factors a family of legs through the apex using only the projections,
    /// which must be jointly injective (as for a strict limit).
    pub fn factor_strict(&self, legs: &[FinFunctor]) -> Option<FinFunctor> {
        let x = legs.first()?.source().clone();
        let mut objects: HashMap<Vec<Obj>, Obj> = HashMap::new();
        for o in self.apex.objects() {
            objects.insert(self.projections.iter().map(|p| p.obj(o)).collect(), o);
        }
        let mut morphisms: HashMap<Vec<Mor>, Mor> = HashMap::new();
        for m in self.apex.morphisms() {
            morphisms.insert(self.projections.iter().map(|p| p.mor(m)).collect(), m);
        }
        let omap = x
            .objects()
            .map(|o| objects.get(&legs.iter().map(|l| l.obj(o)).collect::<Vec<_>>()).copied())
            .collect::<Option<Vec<_>>>()?;
        let mmap = x
            .morphisms()
            .map(|m| morphisms.get(&legs.iter().map(|l| l.mor(m)).collect::<Vec<_>>()).copied())
            .collect::<Option<Vec<_>>>()?;
        let f = FinFunctor::new_unchecked(x, self.apex.clone(), omap, mmap);
        f.check().ok()?;
        Some(f)
    }
}

/// An isomorphism `a.apex → b.apex` commuting with the projections, when the
/// projections of `b` are jointly injective.
pub fn iso_over(a: &LimitWitness, b: &LimitWitness) -> Option<FinFunctor> {
    if a.projections.len() != b.projections.len() {
        return None;
    }
    let f = b.factor_strict(&a.projections)?;
    f.is_isomorphism().then_some(f)
}
