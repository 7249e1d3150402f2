//! Backtracking enumeration of functors and natural transformations.
//!
//! Both searches visit candidates in lexicographic order of the source's
//! object and morphism indices, so the first hit is reproducible.

use std::ops::ControlFlow;
use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::FinFunctor;
use super::transformation::NatTrans;
use crate::error::{Error, Result};

/// Enumerates functors `source → target`, optionally constrained per object
/// and per morphism.
pub struct FunctorSearch<'a> {
    source: &'a FinCat,
    target: &'a FinCat,
    object_candidates: Vec<Vec<Obj>>,
    morphism_candidates: Vec<Option<Vec<Mor>>>,
    injective_on_objects: bool,
}

struct Plan {
    order: Vec<Mor>,
    // composable non-identity pair fixing the value of order[i], if any
    determiner: Vec<Option<(Mor, Mor)>>,
    // triples (g, f, gf) to check once order[i] is assigned
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
    // non-identity morphisms whose later endpoint is the given object
    by_endpoint: Vec<Vec<Mor>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &'a FinCat, target: &'a FinCat) -> Self {
        FunctorSearch {
            source,
            target,
            object_candidates: vec![target.objects().collect(); source.num_objects()],
            morphism_candidates: vec![None; source.num_morphisms()],
            injective_on_objects: false,
        }
    }

    /// Only visit functors that are injective on objects.
    pub fn injective_on_objects(&mut self) -> &mut Self {
        self.injective_on_objects = true;
        self
    }

    pub fn restrict_object(&mut self, o: Obj, allowed: Vec<Obj>) -> &mut Self {
        self.object_candidates[o] = allowed;
        self
    }

    pub fn fix_object(&mut self, o: Obj, value: Obj) -> &mut Self {
        self.restrict_object(o, vec![value])
    }

    pub fn restrict_morphism(&mut self, m: Mor, allowed: Vec<Mor>) -> &mut Self {
        self.morphism_candidates[m] = Some(allowed);
        self
    }

    fn plan(&self) -> Plan {
        let s = self.source;
        let order: Vec<Mor> = s.morphisms().filter(|&m| !s.is_identity(m)).collect();
        let mut pos = vec![usize::MAX; s.num_morphisms()];
        for (i, &m) in order.iter().enumerate() {
            pos[m] = i;
        }
        let mut determiner = vec![None; order.len()];
        let mut checks = vec![Vec::new(); order.len()];
        for (g, f) in s.composable_pairs() {
            if s.is_identity(g) || s.is_identity(f) {
                continue;
            }
            let gf = s.compose(g, f);
            let gf_pos = if s.is_identity(gf) { None } else { Some(pos[gf]) };
            let last = pos[g].max(pos[f]).max(gf_pos.unwrap_or(0));
            checks[last].push((g, f, gf));
            if let Some(p) = gf_pos {
                if pos[g] < p && pos[f] < p && determiner[p].is_none() {
                    determiner[p] = Some((g, f));
                }
            }
        }
        let mut by_endpoint = vec![Vec::new(); s.num_objects()];
        for &m in &order {
            by_endpoint[s.dom(m).max(s.cod(m))].push(m);
        }
        Plan { order, determiner, checks, by_endpoint }
    }

    /// Visits every functor; the visitor may stop the search early.
    /// Returns the number of functors visited.
    pub fn run(&self, mut visit: impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>) -> usize {
        let plan = self.plan();
        let mut omap = vec![usize::MAX; self.source.num_objects()];
        let mut mmap = vec![usize::MAX; self.source.num_morphisms()];
        let mut count = 0;
        let _ = self.assign_object(&plan, 0, &mut omap, &mut mmap, &mut count, &mut visit);
        count
    }

    fn allowed(&self, m: Mor, value: Mor) -> bool {
        self.morphism_candidates[m].as_ref().is_none_or(|c| c.contains(&value))
    }

    fn assign_object(
        &self,
        plan: &Plan,
        o: Obj,
        omap: &mut Vec<Obj>,
        mmap: &mut Vec<Mor>,
        count: &mut usize,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (s, t) = (self.source, self.target);
        if o == s.num_objects() {
            for x in s.objects() {
                let id = t.id(omap[x]);
                if !self.allowed(s.id(x), id) {
                    return ControlFlow::Continue(());
                }
                mmap[s.id(x)] = id;
            }
            return self.assign_morphism(plan, 0, omap, mmap, count, visit);
        }
        for &value in &self.object_candidates[o] {
            if self.injective_on_objects && omap[..o].contains(&value) {
                continue;
            }
            omap[o] = value;
            let feasible = plan.by_endpoint[o]
                .iter()
                .all(|&m| t.hom(omap[s.dom(m)], omap[s.cod(m)]).iter().any(|&c| self.allowed(m, c)));
            if feasible {
                self.assign_object(plan, o + 1, omap, mmap, count, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn assign_morphism(
        &self,
        plan: &Plan,
        i: usize,
        omap: &mut Vec<Obj>,
        mmap: &mut Vec<Mor>,
        count: &mut usize,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (s, t) = (self.source, self.target);
        if i == plan.order.len() {
            *count += 1;
            return visit(omap, mmap);
        }
        let m = plan.order[i];
        let forced;
        let candidates: &[Mor] = match plan.determiner[i] {
            Some((g, f)) => {
                forced = [t.compose(mmap[g], mmap[f])];
                &forced
            }
            None => t.hom(omap[s.dom(m)], omap[s.cod(m)]),
        };
        for &value in candidates {
            if !self.allowed(m, value) {
                continue;
            }
            mmap[m] = value;
            let ok = plan.checks[i].iter().all(|&(g, f, gf)| t.try_compose(mmap[g], mmap[f]) == Some(mmap[gf]));
            if ok {
                self.assign_morphism(plan, i + 1, omap, mmap, count, visit)?;
            }
        }
        mmap[m] = usize::MAX;
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<(Vec<Obj>, Vec<Mor>)> {
        let mut found = None;
        self.run(|o, m| {
            found = Some((o.to_vec(), m.to_vec()));
            ControlFlow::Break(())
        });
        found
    }

    /// All functors, failing once more than `limit` have been found.
    pub fn collect(&self, limit: usize) -> Result<Vec<(Vec<Obj>, Vec<Mor>)>> {
        let mut out = Vec::new();
        let mut exceeded = false;
        self.run(|o, m| {
            if out.len() == limit {
                exceeded = true;
                return ControlFlow::Break(());
            }
            out.push((o.to_vec(), m.to_vec()));
            ControlFlow::Continue(())
        });
        if exceeded {
            return Err(Error::EnumerationBudgetExceeded { bound: limit, required: limit + 1 });
        }
        Ok(out)
    }
}

/// All functors `source → target`, at most `limit` of them.
pub fn enumerate_functors(source: &Arc<FinCat>, target: &Arc<FinCat>, limit: usize) -> Result<Vec<FinFunctor>> {
    Ok(FunctorSearch::new(source, target)
        .collect(limit)?
        .into_iter()
        .map(|(o, m)| FinFunctor::new_unchecked(source.clone(), target.clone(), o, m))
        .collect())
}

/// Searches for an isomorphism of categories `a → b`.
pub fn find_isomorphism(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<FinFunctor> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return None;
    }
    let profile = |c: &FinCat, o: Obj| {
        let ends = c.hom(o, o).len();
        let out: Vec<usize> = {
            let mut v: Vec<usize> = c.objects().map(|x| c.hom(o, x).len()).collect();
            v.sort_unstable();
            v
        };
        let inc: Vec<usize> = {
            let mut v: Vec<usize> = c.objects().map(|x| c.hom(x, o).len()).collect();
            v.sort_unstable();
            v
        };
        (ends, out, inc)
    };
    let mut search = FunctorSearch::new(a, b);
    search.injective_on_objects();
    for x in a.objects() {
        let px = profile(a, x);
        search.restrict_object(x, b.objects().filter(|&y| profile(b, y) == px).collect());
    }
    let mut found = None;
    search.run(|omap, mmap| {
        let f = FinFunctor::new_unchecked(a.clone(), b.clone(), omap.to_vec(), mmap.to_vec());
        if f.is_isomorphism() {
            found = Some(f);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// Enumerates natural transformations `f ⇒ g`.
pub struct TransformationSearch<'a> {
    f: &'a FinFunctor,
    g: &'a FinFunctor,
    invertible: bool,
    component_candidates: Vec<Option<Vec<Mor>>>,
}

impl<'a> TransformationSearch<'a> {
    pub fn new(f: &'a FinFunctor, g: &'a FinFunctor) -> Self {
        TransformationSearch { f, g, invertible: false, component_candidates: vec![None; f.source().num_objects()] }
    }

    pub fn invertible(&mut self) -> &mut Self {
        self.invertible = true;
        self
    }

    pub fn restrict_component(&mut self, o: Obj, allowed: Vec<Mor>) -> &mut Self {
        self.component_candidates[o] = Some(allowed);
        self
    }

    pub fn run(&self, mut visit: impl FnMut(&[Mor]) -> ControlFlow<()>) -> usize {
        let c = &**self.f.source();
        let mut checks = vec![Vec::new(); c.num_objects()];
        for m in c.morphisms() {
            if !c.is_identity(m) {
                checks[c.dom(m).max(c.cod(m))].push(m);
            }
        }
        let mut comps = vec![usize::MAX; c.num_objects()];
        let mut count = 0;
        let _ = self.assign(&checks, 0, &mut comps, &mut count, &mut visit);
        count
    }

    fn assign(
        &self,
        checks: &[Vec<Mor>],
        o: Obj,
        comps: &mut Vec<Mor>,
        count: &mut usize,
        visit: &mut dyn FnMut(&[Mor]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (c, d) = (&**self.f.source(), &**self.f.target());
        if o == c.num_objects() {
            *count += 1;
            return visit(comps);
        }
        for &a in d.hom(self.f.obj(o), self.g.obj(o)) {
            if self.invertible && !d.is_iso(a) {
                continue;
            }
            if let Some(allowed) = &self.component_candidates[o] {
                if !allowed.contains(&a) {
                    continue;
                }
            }
            comps[o] = a;
            let natural = checks[o].iter().all(|&m| {
                let (x, y) = (c.dom(m), c.cod(m));
                d.compose(self.g.mor(m), comps[x]) == d.compose(comps[y], self.f.mor(m))
            });
            if natural {
                self.assign(checks, o + 1, comps, count, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<NatTrans> {
        let mut found = None;
        self.run(|c| {
            found = Some(c.to_vec());
            ControlFlow::Break(())
        });
        found.map(|c| NatTrans::new_unchecked(self.f.clone(), self.g.clone(), c))
    }

    pub fn collect(&self, limit: usize) -> Result<Vec<Vec<Mor>>> {
        let mut out = Vec::new();
        let mut exceeded = false;
        self.run(|c| {
            if out.len() == limit {
                exceeded = true;
                return ControlFlow::Break(());
            }
            out.push(c.to_vec());
            ControlFlow::Continue(())
        });
        if exceeded {
            return Err(Error::EnumerationBudgetExceeded { bound: limit, required: limit + 1 });
        }
        Ok(out)
    }
}
