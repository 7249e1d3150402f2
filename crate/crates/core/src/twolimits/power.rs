use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, CatBuilder, FinCat, FinFunctor, Mor, NatTrans, Obj, TransformationSearch};

/// The default cap on enumerated functors (and, separately, transformations)
/// per functor category.
pub const DEFAULT_BUDGET: usize = 20_000;

/// The functor category `[C, D]`: objects are functors, morphisms are natural
/// transformations, composition is vertical.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub cat: Arc<FinCat>,
    domain: Arc<FinCat>,
    codomain: Arc<FinCat>,
    functors: Vec<FinFunctor>,
    // (source object, target object, components) per morphism
    cells: Vec<(Obj, Obj, Vec<Mor>)>,
    object_of: HashMap<Vec<Mor>, Obj>,
    morphism_of: HashMap<(Obj, Obj, Vec<Mor>), Mor>,
}

fn functor_name(f: &FinFunctor) -> String {
    let (s, t) = (f.source(), f.target());
    let objs: Vec<&str> = s.objects().map(|o| t.object_name(f.obj(o))).collect();
    let mors: Vec<&str> = s.morphisms().filter(|&m| !s.is_identity(m)).map(|m| t.name(f.mor(m))).collect();
    if mors.is_empty() {
        format!("[{}]", objs.join(","))
    } else {
        format!("[{}|{}]", objs.join(","), mors.join(","))
    }
}

pub fn functor_category(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(c, d, budget)?;
    let mut builder = CatBuilder::new();
    let mut object_of = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        builder.add_object(functor_name(f));
        object_of.insert(f.mmap().to_vec(), i);
    }
    let names: Vec<String> = functors.iter().map(functor_name).collect();
    let mut cells = Vec::new();
    let mut morphism_of = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            let remaining = budget.saturating_sub(cells.len());
            let found = TransformationSearch::new(f, g)
                .collect(remaining)
                .map_err(|_| Error::EnumerationBudgetExceeded { bound: budget, required: budget + 1 })?;
            for comps in found {
                let is_id = i == j && comps.iter().all(|&m| d.is_identity(m));
                let name = if is_id {
                    format!("id_{}", names[i])
                } else {
                    let cs: Vec<&str> = comps.iter().map(|&m| d.name(m)).collect();
                    format!("<{}>:{}=>{}", cs.join(","), names[i], names[j])
                };
                let m = builder.add_morphism(name, i, j);
                if is_id {
                    builder.set_identity(i, m);
                }
                morphism_of.insert((i, j, comps.clone()), m);
                cells.push((i, j, comps));
            }
        }
    }
    let cat = builder.build(|g, f| {
        let (a, _, ref fc) = cells[f];
        let (_, c2, ref gc) = cells[g];
        let comps: Vec<Mor> = fc.iter().zip(gc).map(|(&x, &y)| d.compose(y, x)).collect();
        morphism_of[&(a, c2, comps)]
    });
    Ok(FunctorCategory {
        cat: Arc::new(cat),
        domain: c.clone(),
        codomain: d.clone(),
        functors,
        cells,
        object_of,
        morphism_of,
    })
}

impl FunctorCategory {
    pub fn domain(&self) -> &Arc<FinCat> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinCat> {
        &self.codomain
    }

    pub fn functor(&self, o: Obj) -> &FinFunctor {
        &self.functors[o]
    }

    pub fn functors(&self) -> &[FinFunctor] {
        &self.functors
    }

    /// The object for a functor given by its morphism map.
    pub fn object_for(&self, mmap: &[Mor]) -> Option<Obj> {
        self.object_of.get(mmap).copied()
    }

    pub fn object(&self, f: &FinFunctor) -> Option<Obj> {
        self.object_for(f.mmap())
    }

    pub fn morphism_for(&self, src: Obj, tgt: Obj, comps: &[Mor]) -> Option<Mor> {
        self.morphism_of.get(&(src, tgt, comps.to_vec())).copied()
    }

    pub fn morphism(&self, t: &NatTrans) -> Option<Mor> {
        self.morphism_for(self.object(t.source())?, self.object(t.target())?, t.components())
    }

    pub fn components(&self, m: Mor) -> &[Mor] {
        &self.cells[m].2
    }

    pub fn transformation(&self, m: Mor) -> NatTrans {
        let (i, j, ref comps) = self.cells[m];
        NatTrans::new_unchecked(self.functors[i].clone(), self.functors[j].clone(), comps.clone())
    }

    /// Evaluation at an object of the domain, `[C, D] → D`.
    pub fn evaluate(&self, c: Obj) -> FinFunctor {
        FinFunctor::new_unchecked(
            self.cat.clone(),
            self.codomain.clone(),
            self.functors.iter().map(|f| f.obj(c)).collect(),
            self.cells.iter().map(|cell| cell.2[c]).collect(),
        )
    }

    /// Builds a functor `X → [C, D]` from an object assignment (as morphism
    /// maps of functors `C → D`) and a morphism assignment (as components).
    pub fn induced(
        &self,
        x: &Arc<FinCat>,
        objects: impl Fn(Obj) -> Vec<Mor>,
        morphisms: impl Fn(Mor) -> Vec<Mor>,
    ) -> Result<FinFunctor> {
        let omap = x
            .objects()
            .map(|o| {
                self.object_for(&objects(o))
                    .ok_or_else(|| Error::Invalid(format!("object `{}` is not sent to a functor", x.object_name(o))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mmap = x
            .morphisms()
            .map(|m| {
                self.morphism_for(omap[x.dom(m)], omap[x.cod(m)], &morphisms(m))
                    .ok_or_else(|| Error::Invalid(format!("morphism `{}` is not sent to a transformation", x.name(m))))
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(x.clone(), self.cat.clone(), omap, mmap)
    }

    /// Postcomposition `g∘-: [C, D] → [C, E]`, where `target = [C, E]`.
    pub fn postcompose(&self, g: &FinFunctor, target: &FunctorCategory) -> FinFunctor {
        let omap: Vec<Obj> = self
            .functors
            .iter()
            .map(|f| target.object_for(&f.mmap().iter().map(|&m| g.mor(m)).collect::<Vec<_>>()).expect("functor"))
            .collect();
        let mmap = self
            .cells
            .iter()
            .map(|(i, j, comps)| {
                let cs: Vec<Mor> = comps.iter().map(|&m| g.mor(m)).collect();
                target.morphism_for(omap[*i], omap[*j], &cs).expect("transformation")
            })
            .collect();
        FinFunctor::new_unchecked(self.cat.clone(), target.cat.clone(), omap, mmap)
    }

    /// Precomposition `-∘j: [C, D] → [C′, D]`, where `j: C′ → C` and
    /// `target = [C′, D]`.
    pub fn precompose(&self, j: &FinFunctor, target: &FunctorCategory) -> FinFunctor {
        let omap: Vec<Obj> = self
            .functors
            .iter()
            .map(|f| target.object_for(&j.mmap().iter().map(|&m| f.mor(m)).collect::<Vec<_>>()).expect("functor"))
            .collect();
        let mmap = self
            .cells
            .iter()
            .map(|(a, b, comps)| {
                let cs: Vec<Mor> = j.omap().iter().map(|&o| comps[o]).collect();
                target.morphism_for(omap[*a], omap[*b], &cs).expect("transformation")
            })
            .collect();
        FinFunctor::new_unchecked(self.cat.clone(), target.cat.clone(), omap, mmap)
    }

    /// The diagonal `D → [C, D]` sending an object to the constant functor.
    pub fn diagonal(&self) -> FinFunctor {
        let (c, d) = (&self.domain, &self.codomain);
        let omap: Vec<Obj> = d
            .objects()
            .map(|o| self.object_for(&vec![d.id(o); c.num_morphisms()]).expect("constant functor"))
            .collect();
        let mmap = d
            .morphisms()
            .map(|m| {
                self.morphism_for(omap[d.dom(m)], omap[d.cod(m)], &vec![m; c.num_objects()])
                    .expect("constant transformation")
            })
            .collect();
        FinFunctor::new_unchecked(d.clone(), self.cat.clone(), omap, mmap)
    }
}
