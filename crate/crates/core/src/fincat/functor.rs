use std::fmt;
use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as its object and morphism maps.
#[derive(Clone)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    omap: Vec<Obj>,
    mmap: Vec<Mor>,
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self
            .source
            .objects()
            .map(|o| format!("{}↦{}", self.source.object_name(o), self.target.object_name(self.omap[o])))
            .collect();
        let mors: Vec<String> = self
            .source
            .morphisms()
            .filter(|&m| !self.source.is_identity(m))
            .map(|m| format!("{}↦{}", self.source.name(m), self.target.name(self.mmap[m])))
            .collect();
        write!(f, "FinFunctor[{} | {}]", objs.join(", "), mors.join(", "))
    }
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.omap == other.omap
            && self.mmap == other.mmap
            && same_cat(&self.source, &other.source)
            && same_cat(&self.target, &other.target)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinFunctor {
    /// Builds and exhaustively validates a functor.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, omap: Vec<Obj>, mmap: Vec<Mor>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, omap, mmap);
        f.check()?;
        Ok(f)
    }

    /// Builds a functor whose laws are guaranteed by the caller.
    pub fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, omap: Vec<Obj>, mmap: Vec<Mor>) -> Self {
        debug_assert_eq!(omap.len(), source.num_objects());
        debug_assert_eq!(mmap.len(), source.num_morphisms());
        FinFunctor { source, target, omap, mmap }
    }

    /// Builds a functor from its morphism map; the object map is read off identities.
    pub fn from_mmap(source: Arc<FinCat>, target: Arc<FinCat>, mmap: Vec<Mor>) -> Self {
        let omap = source.objects().map(|o| target.dom(mmap[source.id(o)])).collect();
        Self::new_unchecked(source, target, omap, mmap)
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let omap = cat.objects().collect();
        let mmap = cat.morphisms().collect();
        FinFunctor { source: cat.clone(), target: cat, omap, mmap }
    }

    /// The constant functor at object `at`.
    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, at: Obj) -> Self {
        let omap = vec![at; source.num_objects()];
        let mmap = vec![target.id(at); source.num_morphisms()];
        FinFunctor { source, target, omap, mmap }
    }

    /// The unique functor into a category with one object and one morphism.
    pub fn to_terminal(source: Arc<FinCat>, terminal: Arc<FinCat>) -> Self {
        Self::constant(source, terminal, 0)
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn omap(&self) -> &[Obj] {
        &self.omap
    }

    pub fn mmap(&self) -> &[Mor] {
        &self.mmap
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.omap[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mmap[m]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        debug_assert!(same_cat(first.target(), &self.source), "functors are not composable");
        FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            omap: first.omap.iter().map(|&o| self.omap[o]).collect(),
            mmap: first.mmap.iter().map(|&m| self.mmap[m]).collect(),
        }
    }

    /// Same maps, reinterpreted between (structurally equal) categories.
    pub fn retarget(&self, source: Arc<FinCat>, target: Arc<FinCat>) -> FinFunctor {
        debug_assert!(*source == *self.source && *target == *self.target);
        FinFunctor { source, target, omap: self.omap.clone(), mmap: self.mmap.clone() }
    }

    /// Exhaustive functoriality check.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.omap.len() != s.num_objects() || self.mmap.len() != s.num_morphisms() {
            return Err(Error::NotFunctorial("map sizes do not match the source".into()));
        }
        if let Some(&o) = self.omap.iter().find(|&&o| o >= t.num_objects()) {
            return Err(Error::NotFunctorial(format!("object index {o} out of range")));
        }
        if let Some(&m) = self.mmap.iter().find(|&&m| m >= t.num_morphisms()) {
            return Err(Error::NotFunctorial(format!("morphism index {m} out of range")));
        }
        for m in s.morphisms() {
            let fm = self.mmap[m];
            if t.dom(fm) != self.omap[s.dom(m)] || t.cod(fm) != self.omap[s.cod(m)] {
                return Err(Error::NotFunctorial(format!(
                    "image {} of {} does not run from F({}) to F({})",
                    t.name(fm),
                    s.name(m),
                    s.object_name(s.dom(m)),
                    s.object_name(s.cod(m))
                )));
            }
        }
        for o in s.objects() {
            if self.mmap[s.id(o)] != t.id(self.omap[o]) {
                return Err(Error::NotFunctorial(format!("identity of {} is not preserved", s.object_name(o))));
            }
        }
        for (g, f) in s.composable_pairs() {
            if self.mmap[s.compose(g, f)] != t.compose(self.mmap[g], self.mmap[f]) {
                return Err(Error::NotFunctorial(format!(
                    "composite of pair ({}, {}) is not preserved",
                    s.name(g),
                    s.name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.source, &self.target)
            && self.omap.iter().enumerate().all(|(i, &o)| i == o)
            && self.mmap.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.num_objects()];
        self.omap.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_bijective_on_objects(&self) -> bool {
        self.is_injective_on_objects() && self.omap.len() == self.target.num_objects()
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.target.num_morphisms()];
        self.mmap.iter().all(|&m| !std::mem::replace(&mut seen[m], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective_on_objects()
            && self.is_injective_on_morphisms()
            && self.mmap.len() == self.target.num_morphisms()
    }

    /// The inverse functor, when `self` is an isomorphism of categories.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut omap = vec![0; self.omap.len()];
        for (i, &o) in self.omap.iter().enumerate() {
            omap[o] = i;
        }
        let mut mmap = vec![0; self.mmap.len()];
        for (i, &m) in self.mmap.iter().enumerate() {
            mmap[m] = i;
        }
        Some(FinFunctor { source: self.target.clone(), target: self.source.clone(), omap, mmap })
    }

    pub fn is_full(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        s.objects().all(|a| {
            s.objects().all(|b| {
                let image: Vec<Mor> = s.hom(a, b).iter().map(|&m| self.mmap[m]).collect();
                t.hom(self.omap[a], self.omap[b]).iter().all(|m| image.contains(m))
            })
        })
    }

    pub fn is_faithful(&self) -> bool {
        let s = &*self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let hom = s.hom(a, b);
                hom.iter().enumerate().all(|(i, &m)| hom[i + 1..].iter().all(|&n| self.mmap[m] != self.mmap[n]))
            })
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        self.target.objects().all(|d| self.omap.iter().any(|&c| self.target.are_isomorphic(c, d)))
    }
}
