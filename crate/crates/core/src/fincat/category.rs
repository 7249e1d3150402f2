use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an object inside a [`FinCat`].
pub type Obj = usize;
/// Index of a morphism inside a [`FinCat`].
pub type Mor = usize;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A finite category given by an explicit, total composition table.
///
/// Objects and morphisms are addressed by their position; names are only
/// used for input/output. `compose(g, f)` is `g ∘ f` and is defined exactly
/// when `dom g = cod f`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    comp: Vec<u32>,
    homs: Vec<Vec<Mor>>,
    inverses: Vec<Option<Mor>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| format!("{}: {} -> {}", m.name, self.objects[m.dom], self.objects[m.cod]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Incremental construction of a [`FinCat`]; composition is supplied as a
/// closure once every morphism is known.
#[derive(Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Option<Mor>>,
}

impl CatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Obj {
        self.objects.push(name.into());
        self.identity.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, dom: Obj, cod: Obj) -> Mor {
        self.morphisms.push(Morphism { name: name.into(), dom, cod });
        self.morphisms.len() - 1
    }

    /// Adds a morphism `obj -> obj` and records it as the identity of `obj`.
    pub fn add_identity(&mut self, obj: Obj, name: impl Into<String>) -> Mor {
        let m = self.add_morphism(name, obj, obj);
        self.identity[obj] = Some(m);
        m
    }

    pub fn set_identity(&mut self, obj: Obj, m: Mor) {
        self.identity[obj] = Some(m);
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m]
    }

    /// Finishes the category. `compose(g, f)` is called once for every pair
    /// with `dom g = cod f`. No law is checked here; see [`FinCat::check_laws`].
    pub fn build(self, mut compose: impl FnMut(Mor, Mor) -> Mor) -> FinCat {
        let identity: Vec<Mor> = self
            .identity
            .iter()
            .enumerate()
            .map(|(o, m)| m.unwrap_or_else(|| panic!("object {} has no identity", self.objects[o])))
            .collect();
        let n = self.morphisms.len();
        let mut comp = vec![NONE; n * n];
        let mut out: Vec<Vec<Mor>> = vec![Vec::new(); self.objects.len()];
        let mut into: Vec<Vec<Mor>> = vec![Vec::new(); self.objects.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            out[m.dom].push(i);
            into[m.cod].push(i);
        }
        for o in 0..self.objects.len() {
            for &f in &into[o] {
                for &g in &out[o] {
                    comp[g * n + f] = compose(g, f) as u32;
                }
            }
        }
        FinCat::assemble(self.objects, self.morphisms, identity, comp)
    }
}

impl FinCat {
    fn assemble(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<Mor>, comp: Vec<u32>) -> Self {
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom * no + m.cod].push(i);
        }
        let mut cat = FinCat { objects, morphisms, identity, comp, homs, inverses: Vec::new() };
        cat.inverses = (0..cat.morphisms.len())
            .map(|f| {
                let (a, b) = (cat.dom(f), cat.cod(f));
                cat.hom(b, a)
                    .iter()
                    .copied()
                    .find(|&g| cat.try_compose(g, f) == Some(cat.id(a)) && cat.try_compose(f, g) == Some(cat.id(b)))
            })
            .collect();
        cat
    }

    /// Builds a category from a table given by names and checks every law.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identity: &HashMap<String, String>,
        comp: &[(String, String, String)],
    ) -> Result<FinCat> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate object `{o}`")));
            }
        }
        let lookup_obj =
            |o: &str| obj_index.get(o).copied().ok_or_else(|| Error::Malformed(format!("unknown object `{o}`")));
        let mut mor_index = HashMap::new();
        let mut mors = Vec::with_capacity(morphisms.len());
        for (i, (name, dom, cod)) in morphisms.iter().enumerate() {
            if mor_index.insert(name.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate morphism `{name}`")));
            }
            mors.push(Morphism { name: name.clone(), dom: lookup_obj(dom)?, cod: lookup_obj(cod)? });
        }
        let lookup_mor =
            |m: &str| mor_index.get(m).copied().ok_or_else(|| Error::Malformed(format!("unknown morphism `{m}`")));
        let mut ids = Vec::with_capacity(objects.len());
        for o in &objects {
            let name = identity.get(o).ok_or_else(|| Error::Malformed(format!("object `{o}` has no identity")))?;
            let m = lookup_mor(name)?;
            if mors[m].dom != obj_index[o] || mors[m].cod != obj_index[o] {
                return Err(Error::IdentityViolation {
                    morphism: name.clone(),
                    detail: format!("declared identity of `{o}` is not an endomorphism of `{o}`"),
                });
            }
            ids.push(m);
        }
        if identity.len() != objects.len() {
            return Err(Error::Malformed("identity map lists unknown objects".into()));
        }
        let n = mors.len();
        let mut table = vec![NONE; n * n];
        for (g, f, gf) in comp {
            let (gi, fi, gfi) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(gf)?);
            if mors[gi].dom != mors[fi].cod {
                return Err(Error::Malformed(format!("composite listed for non-composable pair ({g}, {f})")));
            }
            if table[gi * n + fi] != NONE {
                return Err(Error::Malformed(format!("composite of ({g}, {f}) listed twice")));
            }
            table[gi * n + fi] = gfi as u32;
        }
        for g in 0..n {
            for f in 0..n {
                if mors[g].dom == mors[f].cod && table[g * n + f] == NONE {
                    return Err(Error::Malformed(format!(
                        "composite of ({}, {}) is missing",
                        mors[g].name, mors[f].name
                    )));
                }
            }
        }
        let cat = FinCat::assemble(objects, mors, ids, table);
        cat.check_laws()?;
        Ok(cat)
    }

    /// Exhaustive check of the boundary, unit and associativity laws.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.morphisms.len();
        for g in 0..n {
            for f in self.incoming(self.dom(g)) {
                let gf = self.comp[g * n + f];
                if gf == NONE {
                    return Err(Error::Malformed(format!(
                        "composite of ({}, {}) is missing",
                        self.name(g),
                        self.name(f)
                    )));
                }
                let gf = gf as usize;
                if self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g) {
                    return Err(Error::BoundaryViolation {
                        g: self.name(g).into(),
                        f: self.name(f).into(),
                        gf: self.name(gf).into(),
                    });
                }
            }
        }
        for f in 0..n {
            if self.compose(self.id(self.cod(f)), f) != f {
                return Err(Error::IdentityViolation {
                    morphism: self.name(f).into(),
                    detail: format!("id_{} ∘ f ≠ f", self.objects[self.cod(f)]),
                });
            }
            if self.compose(f, self.id(self.dom(f))) != f {
                return Err(Error::IdentityViolation {
                    morphism: self.name(f).into(),
                    detail: format!("f ∘ id_{} ≠ f", self.objects[self.dom(f)]),
                });
            }
        }
        for f in 0..n {
            for g in self.outgoing(self.cod(f)) {
                let gf = self.compose(g, f);
                for h in self.outgoing(self.cod(g)) {
                    let left = self.compose(h, gf);
                    let right = self.compose(self.compose(h, g), f);
                    if left != right {
                        return Err(Error::AssociativityViolation {
                            h: self.name(h).into(),
                            g: self.name(g).into(),
                            f: self.name(f).into(),
                            left: self.name(left).into(),
                            right: self.name(right).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn dom(&self, m: Mor) -> Obj {
        self.morphisms[m].dom
    }

    pub fn cod(&self, m: Mor) -> Obj {
        self.morphisms[m].cod
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.dom(m)] == m
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {} and {} are not composable", self.name(g), self.name(f)))
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let c = self.comp[g * self.morphisms.len() + f];
        (c != NONE).then_some(c as usize)
    }

    /// Composite of a path given in diagrammatic order (first morphism first).
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.try_compose(m, acc))
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Morphisms out of `o`.
    pub fn outgoing(&self, o: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |b| self.hom(o, b).iter().copied())
    }

    /// Morphisms into `o`.
    pub fn incoming(&self, o: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |a| self.hom(a, o).iter().copied())
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        self.inverses[m]
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverses[m].is_some()
    }

    pub fn isos_from(&self, o: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.outgoing(o).filter(move |&m| self.is_iso(m))
    }

    pub fn are_isomorphic(&self, a: Obj, b: Obj) -> bool {
        self.hom(a, b).iter().any(|&m| self.is_iso(m))
    }

    /// True when every morphism is an identity.
    pub fn is_discrete(&self) -> bool {
        self.morphisms().all(|m| self.is_identity(m))
    }

    /// Composable pairs `(g, f)` with `dom g = cod f`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms().flat_map(move |f| self.outgoing(self.cod(f)).map(move |g| (g, f)))
    }

    /// Full subcategory-like restriction: keeps the given objects and those
    /// morphisms accepted by `keep` (which must be closed under composition
    /// and contain the identities of kept objects). Returns the subcategory
    /// with the index maps back into `self`.
    pub fn subcategory(&self, objects: &[Obj], keep: impl Fn(Mor) -> bool) -> (FinCat, Vec<Obj>, Vec<Mor>) {
        let mut b = CatBuilder::new();
        let mut new_obj = vec![usize::MAX; self.num_objects()];
        for &o in objects {
            new_obj[o] = b.add_object(self.object_name(o));
        }
        let mut new_mor = vec![usize::MAX; self.num_morphisms()];
        let mut old_mor = Vec::new();
        for m in self.morphisms() {
            let (d, c) = (self.dom(m), self.cod(m));
            if new_obj[d] != usize::MAX && new_obj[c] != usize::MAX && keep(m) {
                new_mor[m] = b.add_morphism(self.name(m), new_obj[d], new_obj[c]);
                old_mor.push(m);
            }
        }
        for &o in objects {
            b.set_identity(new_obj[o], new_mor[self.id(o)]);
        }
        let cat = b.build(|g, f| new_mor[self.compose(old_mor[g], old_mor[f])]);
        (cat, objects.to_vec(), old_mor)
    }
}
