//! The JSON interchange format for categories, functors and transformations.
//!
//! Categories are stored by name:
//!
//! ```json
//! {"objects": ["0", "1"],
//!  "morphisms": [{"name": "id_0", "dom": "0", "cod": "0"}, ...],
//!  "identity": {"0": "id_0", "1": "id_1"},
//!  "comp": [{"g": "id_1", "f": "0->1", "gf": "0->1"}, ...]}
//! ```
//!
//! A functor names its source and target either inline or by a string, which
//! is a file path (relative to the referring file) or `builtin:<name>`.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builtin::builtin;
use super::category::FinCat;
use super::functor::FinFunctor;
use super::transformation::NatTrans;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub gf: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identity: BTreeMap<String, String>,
    pub comp: Vec<RawComposite>,
}

impl RawCategory {
    pub fn from_cat(cat: &FinCat) -> Self {
        RawCategory {
            objects: cat.object_names().to_vec(),
            morphisms: cat
                .morphisms()
                .map(|m| RawMorphism {
                    name: cat.name(m).to_string(),
                    dom: cat.object_name(cat.dom(m)).to_string(),
                    cod: cat.object_name(cat.cod(m)).to_string(),
                })
                .collect(),
            identity: cat
                .objects()
                .map(|o| (cat.object_name(o).to_string(), cat.name(cat.id(o)).to_string()))
                .collect(),
            comp: cat
                .composable_pairs()
                .map(|(g, f)| RawComposite {
                    g: cat.name(g).to_string(),
                    f: cat.name(f).to_string(),
                    gf: cat.name(cat.compose(g, f)).to_string(),
                })
                .collect(),
        }
    }

    /// Checks the table format and every category law.
    pub fn validate(&self) -> Result<FinCat> {
        let identity: HashMap<String, String> = self.identity.clone().into_iter().collect();
        FinCat::from_table(
            self.objects.clone(),
            self.morphisms.iter().map(|m| (m.name.clone(), m.dom.clone(), m.cod.clone())).collect(),
            &identity,
            &self.comp.iter().map(|c| (c.g.clone(), c.f.clone(), c.gf.clone())).collect::<Vec<_>>(),
        )
    }
}

pub fn validate_category(raw: &RawCategory) -> Result<FinCat> {
    raw.validate()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatRef {
    Named(String),
    Inline(RawCategory),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub source: CatRef,
    pub target: CatRef,
    pub omap: BTreeMap<String, String>,
    /// Identities may be omitted; they follow the object map.
    pub mmap: BTreeMap<String, String>,
}

impl RawFunctor {
    pub fn from_functor(f: &FinFunctor) -> Self {
        let (s, t) = (f.source(), f.target());
        RawFunctor {
            source: CatRef::Inline(RawCategory::from_cat(s)),
            target: CatRef::Inline(RawCategory::from_cat(t)),
            omap: s.objects().map(|o| (s.object_name(o).to_string(), t.object_name(f.obj(o)).to_string())).collect(),
            mmap: s.morphisms().map(|m| (s.name(m).to_string(), t.name(f.mor(m)).to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctorRef {
    Named(String),
    Inline(Box<RawFunctor>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransformation {
    pub source: FunctorRef,
    pub target: FunctorRef,
    pub components: BTreeMap<String, String>,
}

/// Resolves references relative to a base directory, sharing categories that
/// were loaded from the same file.
#[derive(Debug, Default)]
pub struct Loader {
    base: PathBuf,
    cache: HashMap<PathBuf, Arc<FinCat>>,
    /// Every file read, in order, with its contents.
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into(), ..Default::default() }
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = std::fs::read(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        self.files.push((path.to_path_buf(), bytes.clone()));
        Ok(bytes)
    }

    fn resolve(&self, name: &str) -> PathBuf {
        self.base.join(name)
    }

    pub fn read_json<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
    }

    pub fn category(&mut self, r: &CatRef) -> Result<Arc<FinCat>> {
        match r {
            CatRef::Inline(raw) => Ok(Arc::new(raw.validate()?)),
            CatRef::Named(name) => {
                if let Some(b) = name.strip_prefix("builtin:") {
                    return Ok(Arc::new(builtin(b)?));
                }
                let path = self.resolve(name);
                if let Some(c) = self.cache.get(&path) {
                    return Ok(c.clone());
                }
                let raw: RawCategory = self.read_json(&path)?;
                let cat = Arc::new(raw.validate()?);
                self.cache.insert(path, cat.clone());
                Ok(cat)
            }
        }
    }

    pub fn functor(&mut self, r: &FunctorRef) -> Result<FinFunctor> {
        match r {
            FunctorRef::Inline(raw) => self.raw_functor(raw),
            FunctorRef::Named(name) => {
                let path = self.resolve(name);
                let raw: RawFunctor = self.read_json(&path)?;
                let mut nested = Loader::new(path.parent().unwrap_or(Path::new(".")));
                nested.cache = std::mem::take(&mut self.cache);
                let f = nested.raw_functor(&raw);
                self.cache = nested.cache;
                self.files.extend(nested.files);
                f
            }
        }
    }

    pub fn raw_functor(&mut self, raw: &RawFunctor) -> Result<FinFunctor> {
        let source = self.category(&raw.source)?;
        let target = self.category(&raw.target)?;
        functor_from_names(source, target, &raw.omap, &raw.mmap)
    }

    pub fn transformation(&mut self, raw: &RawTransformation) -> Result<NatTrans> {
        let f = self.functor(&raw.source)?;
        let g = self.functor(&raw.target)?;
        let parallel = *g.source() == *f.source() && *g.target() == *f.target();
        let g = if parallel { g.retarget(f.source().clone(), f.target().clone()) } else { g };
        transformation_from_names(f, g, &raw.components)
    }
}

/// Builds and validates a functor from name maps.
pub fn functor_from_names(
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    omap: &BTreeMap<String, String>,
    mmap: &BTreeMap<String, String>,
) -> Result<FinFunctor> {
    let lookup_obj =
        |cat: &FinCat, n: &str| cat.object_index(n).ok_or_else(|| Error::Malformed(format!("unknown object `{n}`")));
    let lookup_mor = |cat: &FinCat, n: &str| {
        cat.morphism_index(n).ok_or_else(|| Error::Malformed(format!("unknown morphism `{n}`")))
    };
    let mut om = vec![usize::MAX; source.num_objects()];
    for (k, v) in omap {
        om[lookup_obj(&source, k)?] = lookup_obj(&target, v)?;
    }
    if let Some(o) = source.objects().find(|&o| om[o] == usize::MAX) {
        return Err(Error::Malformed(format!("object map misses `{}`", source.object_name(o))));
    }
    let mut mm = vec![usize::MAX; source.num_morphisms()];
    for (k, v) in mmap {
        mm[lookup_mor(&source, k)?] = lookup_mor(&target, v)?;
    }
    for o in source.objects() {
        if mm[source.id(o)] == usize::MAX {
            mm[source.id(o)] = target.id(om[o]);
        }
    }
    if let Some(m) = source.morphisms().find(|&m| mm[m] == usize::MAX) {
        return Err(Error::Malformed(format!("morphism map misses `{}`", source.name(m))));
    }
    FinFunctor::new(source, target, om, mm)
}

pub fn transformation_from_names(
    f: FinFunctor,
    g: FinFunctor,
    components: &BTreeMap<String, String>,
) -> Result<NatTrans> {
    let (c, d) = (f.source().clone(), f.target().clone());
    let mut comps = vec![usize::MAX; c.num_objects()];
    for (k, v) in components {
        let o = c.object_index(k).ok_or_else(|| Error::Malformed(format!("unknown object `{k}`")))?;
        comps[o] = d.morphism_index(v).ok_or_else(|| Error::Malformed(format!("unknown morphism `{v}`")))?;
    }
    if let Some(o) = c.objects().find(|&o| comps[o] == usize::MAX) {
        return Err(Error::Malformed(format!("no component at `{}`", c.object_name(o))));
    }
    NatTrans::new(f, g, comps, false)
}
