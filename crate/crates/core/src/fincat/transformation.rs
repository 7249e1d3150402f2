use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::{same_cat, FinFunctor};
use crate::error::{Error, Result};

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<Mor>,
}

impl NatTrans {
    /// Builds and checks a transformation; with `invertible` set, every
    /// component must also be an isomorphism.
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<Mor>, invertible: bool) -> Result<Self> {
        let t = Self::new_unchecked(source, target, components);
        t.check(invertible)?;
        Ok(t)
    }

    pub fn new_unchecked(source: FinFunctor, target: FinFunctor, components: Vec<Mor>) -> Self {
        debug_assert_eq!(components.len(), source.source().num_objects());
        NatTrans { source, target, components }
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let t = f.target();
        let components = f.omap().iter().map(|&o| t.id(o)).collect();
        NatTrans { source: f.clone(), target: f.clone(), components }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn component(&self, o: Obj) -> Mor {
        self.components[o]
    }

    pub fn domain_cat(&self) -> &Arc<FinCat> {
        self.source.source()
    }

    pub fn codomain_cat(&self) -> &Arc<FinCat> {
        self.source.target()
    }

    pub fn check(&self, invertible: bool) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if !same_cat(f.source(), g.source()) || !same_cat(f.target(), g.target()) {
            return Err(Error::Invalid("transformation between non-parallel functors".into()));
        }
        let (c, d) = (&**f.source(), &**f.target());
        if self.components.len() != c.num_objects() {
            return Err(Error::Invalid("wrong number of components".into()));
        }
        for o in c.objects() {
            let a = self.components[o];
            if a >= d.num_morphisms() || d.dom(a) != f.obj(o) || d.cod(a) != g.obj(o) {
                return Err(Error::Invalid(format!("component at {} has the wrong boundary", c.object_name(o))));
            }
        }
        for m in c.morphisms() {
            let (x, y) = (c.dom(m), c.cod(m));
            if d.compose(g.mor(m), self.components[x]) != d.compose(self.components[y], f.mor(m)) {
                return Err(Error::NotNatural { morphism: c.name(m).into() });
            }
        }
        if invertible {
            if let Some(o) = c.objects().find(|&o| !d.is_iso(self.components[o])) {
                return Err(Error::NotInvertible { object: c.object_name(o).into() });
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        let d = self.codomain_cat();
        self.components.iter().all(|&m| d.is_identity(m))
    }

    pub fn is_invertible(&self) -> bool {
        let d = self.codomain_cat();
        self.components.iter().all(|&m| d.is_iso(m))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let d = self.codomain_cat();
        let components = self.components.iter().map(|&m| d.inverse(m)).collect::<Option<Vec<_>>>()?;
        Some(NatTrans { source: self.target.clone(), target: self.source.clone(), components })
    }

    /// Vertical composite `next ∘ self`.
    pub fn then(&self, next: &NatTrans) -> NatTrans {
        debug_assert_eq!(self.target, next.source);
        let d = self.codomain_cat();
        let components = self.components.iter().zip(&next.components).map(|(&a, &b)| d.compose(b, a)).collect();
        NatTrans { source: self.source.clone(), target: next.target.clone(), components }
    }

    /// Whiskering `h · self` by a functor on the codomain side.
    pub fn whisker_left(&self, h: &FinFunctor) -> NatTrans {
        NatTrans {
            source: h.after(&self.source),
            target: h.after(&self.target),
            components: self.components.iter().map(|&m| h.mor(m)).collect(),
        }
    }

    /// Whiskering `self · x` by a functor on the domain side.
    pub fn whisker_right(&self, x: &FinFunctor) -> NatTrans {
        NatTrans {
            source: self.source.after(x),
            target: self.target.after(x),
            components: x.omap().iter().map(|&o| self.components[o]).collect(),
        }
    }
}

/// Moves a functor along a family of isomorphisms: given `g: X → E` and, for
/// every object `x`, an isomorphism `iso[x]: g(x) → y_x`, returns the functor
/// `h` with `h(x) = y_x` and the invertible transformation `g ⇒ h` made of
/// the given components.
pub fn transport(g: &FinFunctor, isos: Vec<Mor>) -> (FinFunctor, NatTrans) {
    let (x, e) = (g.source(), g.target());
    let omap: Vec<Obj> = isos.iter().map(|&m| e.cod(m)).collect();
    let mmap: Vec<Mor> = x
        .morphisms()
        .map(|m| {
            let (a, b) = (x.dom(m), x.cod(m));
            let back = e.inverse(isos[a]).expect("transport along a non-isomorphism");
            e.compose(isos[b], e.compose(g.mor(m), back))
        })
        .collect();
    let h = FinFunctor::new_unchecked(x.clone(), e.clone(), omap, mmap);
    let t = NatTrans::new_unchecked(g.clone(), h.clone(), isos);
    (h, t)
}
