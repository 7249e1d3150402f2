use std::collections::HashMap;
use std::sync::Arc;

use super::certificate::{all_functors, certify, legs_key, Certificate, ConeKey, LimitWitness};
use crate::fincat::{CatBuilder, FinCat, FinFunctor, Mor, NatTrans, Obj, TransformationSearch};

/// The strict pullback of a cospan `f: A → C ← B: g`, realized inside `A × B`.
pub fn pullback_strict(f: &FinFunctor, g: &FinFunctor) -> LimitWitness {
    let mut w = pullback_uncertified(f, g);
    let (p, q) = (w.projections[0].clone(), w.projections[1].clone());
    w.certificate = certify(&w.apex, |y| legs_key(&[p.after(y), q.after(y)]), |x| strict_cones(x, f, g));
    w
}

pub(crate) fn pullback_uncertified(f: &FinFunctor, g: &FinFunctor) -> LimitWitness {
    let (a, b) = (f.source(), g.source());
    let mut builder = CatBuilder::new();
    let mut obj_pairs = Vec::new();
    let mut obj_index = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.obj(x) == g.obj(y) {
                obj_index.insert((x, y), builder.add_object(format!("({},{})", a.object_name(x), b.object_name(y))));
                obj_pairs.push((x, y));
            }
        }
    }
    let mut mor_pairs = Vec::new();
    let mut mor_index = HashMap::new();
    for m in a.morphisms() {
        for n in b.morphisms() {
            if f.mor(m) == g.mor(n) {
                let (d, c) = (obj_index[&(a.dom(m), b.dom(n))], obj_index[&(a.cod(m), b.cod(n))]);
                mor_index.insert((m, n), builder.add_morphism(format!("({},{})", a.name(m), b.name(n)), d, c));
                mor_pairs.push((m, n));
            }
        }
    }
    for (i, &(x, y)) in obj_pairs.iter().enumerate() {
        builder.set_identity(i, mor_index[&(a.id(x), b.id(y))]);
    }
    let apex = Arc::new(builder.build(|g2, f2| {
        let ((m1, n1), (m2, n2)) = (mor_pairs[g2], mor_pairs[f2]);
        mor_index[&(a.compose(m1, m2), b.compose(n1, n2))]
    }));
    let p = FinFunctor::new_unchecked(
        apex.clone(),
        a.clone(),
        obj_pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    );
    let q = FinFunctor::new_unchecked(
        apex.clone(),
        b.clone(),
        obj_pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    );
    LimitWitness { apex, projections: vec![p, q], structure_cells: Vec::new(), certificate: Certificate::unchecked() }
}

pub(crate) fn strict_cones(x: &Arc<FinCat>, f: &FinFunctor, g: &FinFunctor) -> Vec<ConeKey> {
    let mut by_image: HashMap<Vec<Mor>, Vec<FinFunctor>> = HashMap::new();
    for v in all_functors(x, g.source()) {
        by_image.entry(g.after(&v).mmap().to_vec()).or_default().push(v);
    }
    let mut out = Vec::new();
    for u in all_functors(x, f.source()) {
        if let Some(vs) = by_image.get(f.after(&u).mmap()) {
            for v in vs {
                out.push(legs_key(&[u.clone(), v.clone()]));
            }
        }
    }
    out
}

/// The isocomma object of `f: A → C ← B: g`: objects are triples
/// `(a, b, φ: g b ≅ f a)`, morphisms pairs `(α, β)` with `φ′∘gβ = fα∘φ`.
#[derive(Clone, Debug)]
pub struct Isocomma {
    pub witness: LimitWitness,
    f: FinFunctor,
    g: FinFunctor,
    objects: Vec<(Obj, Obj, Mor)>,
    morphisms: Vec<(Mor, Mor)>,
    object_index: HashMap<(Obj, Obj, Mor), Obj>,
    morphism_index: HashMap<(Obj, Obj, Mor, Mor), Mor>,
}

pub fn isocomma(f: &FinFunctor, g: &FinFunctor) -> Isocomma {
    let mut iso = isocomma_uncertified(f, g);
    let (p, q, phi) = (iso.p().clone(), iso.q().clone(), iso.phi().clone());
    iso.witness.certificate = certify(
        iso.apex(),
        |y| {
            let mut key = legs_key(&[p.after(y), q.after(y)]);
            key.push(phi.whisker_right(y).components().to_vec());
            key
        },
        |x| iso_cones(x, f, g),
    );
    iso
}

pub(crate) fn isocomma_uncertified(f: &FinFunctor, g: &FinFunctor) -> Isocomma {
    let (a, b, c) = (f.source(), g.source(), f.target());
    let mut builder = CatBuilder::new();
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            for &phi in c.hom(g.obj(y), f.obj(x)) {
                if c.is_iso(phi) {
                    let name = format!("({},{},{})", a.object_name(x), b.object_name(y), c.name(phi));
                    object_index.insert((x, y, phi), builder.add_object(name));
                    objects.push((x, y, phi));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    for (s, &(x, y, phi)) in objects.iter().enumerate() {
        for alpha in a.outgoing(x) {
            for beta in b.outgoing(y) {
                let (x2, y2) = (a.cod(alpha), b.cod(beta));
                let lhs_tail = c.compose(f.mor(alpha), phi);
                for &phi2 in c.hom(g.obj(y2), f.obj(x2)) {
                    if !c.is_iso(phi2) || c.compose(phi2, g.mor(beta)) != lhs_tail {
                        continue;
                    }
                    let t = object_index[&(x2, y2, phi2)];
                    let m = builder.add_morphism(format!("({},{})", a.name(alpha), b.name(beta)), s, t);
                    morphism_index.insert((s, t, alpha, beta), m);
                    morphisms.push((alpha, beta));
                    if alpha == a.id(x) && beta == b.id(y) {
                        builder.set_identity(s, m);
                    }
                }
            }
        }
    }
    let ends: Vec<(Obj, Obj)> =
        (0..builder.num_morphisms()).map(|m| (builder.morphism(m).dom, builder.morphism(m).cod)).collect();
    let apex = Arc::new(builder.build(|h, k| {
        let ((a1, b1), (a2, b2)) = (morphisms[h], morphisms[k]);
        morphism_index[&(ends[k].0, ends[h].1, a.compose(a1, a2), b.compose(b1, b2))]
    }));
    let p = FinFunctor::new_unchecked(
        apex.clone(),
        a.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    );
    let q = FinFunctor::new_unchecked(
        apex.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        morphisms.iter().map(|m| m.1).collect(),
    );
    let phi = NatTrans::new_unchecked(g.after(&q), f.after(&p), objects.iter().map(|o| o.2).collect());
    let witness = LimitWitness {
        apex,
        projections: vec![p, q],
        structure_cells: vec![phi],
        certificate: Certificate::unchecked(),
    };
    Isocomma { witness, f: f.clone(), g: g.clone(), objects, morphisms, object_index, morphism_index }
}

fn iso_cones(x: &Arc<FinCat>, f: &FinFunctor, g: &FinFunctor) -> Vec<ConeKey> {
    let us = all_functors(x, f.source());
    let vs = all_functors(x, g.source());
    let mut out = Vec::new();
    for u in &us {
        let fu = f.after(u);
        for v in &vs {
            let gv = g.after(v);
            let mut search = TransformationSearch::new(&gv, &fu);
            search.invertible();
            for comps in search.collect(usize::MAX).expect("unbounded") {
                out.push(vec![u.mmap().to_vec(), v.mmap().to_vec(), comps]);
            }
        }
    }
    out
}

impl Isocomma {
    pub fn apex(&self) -> &Arc<FinCat> {
        &self.witness.apex
    }

    /// Projection to the domain of `f`.
    pub fn p(&self) -> &FinFunctor {
        &self.witness.projections[0]
    }

    /// Projection to the domain of `g`.
    pub fn q(&self) -> &FinFunctor {
        &self.witness.projections[1]
    }

    /// The invertible cell `φ: g∘q ⇒ f∘p`.
    pub fn phi(&self) -> &NatTrans {
        &self.witness.structure_cells[0]
    }

    pub fn f(&self) -> &FinFunctor {
        &self.f
    }

    pub fn g(&self) -> &FinFunctor {
        &self.g
    }

    pub fn object(&self, a: Obj, b: Obj, phi: Mor) -> Option<Obj> {
        self.object_index.get(&(a, b, phi)).copied()
    }

    pub fn object_data(&self, o: Obj) -> (Obj, Obj, Mor) {
        self.objects[o]
    }

    pub fn morphism_data(&self, m: Mor) -> (Mor, Mor) {
        self.morphisms[m]
    }

    pub fn morphism(&self, src: Obj, tgt: Obj, alpha: Mor, beta: Mor) -> Option<Mor> {
        self.morphism_index.get(&(src, tgt, alpha, beta)).copied()
    }

    /// The unique `X → apex` induced by `u: X → A`, `v: X → B` and an
    /// invertible `θ: g∘v ⇒ f∘u`.
    pub fn factor(&self, u: &FinFunctor, v: &FinFunctor, theta: &NatTrans) -> Option<FinFunctor> {
        let x = u.source();
        let omap =
            x.objects().map(|o| self.object(u.obj(o), v.obj(o), theta.component(o))).collect::<Option<Vec<_>>>()?;
        let mmap = x
            .morphisms()
            .map(|m| self.morphism(omap[x.dom(m)], omap[x.cod(m)], u.mor(m), v.mor(m)))
            .collect::<Option<Vec<_>>>()?;
        Some(FinFunctor::new_unchecked(x.clone(), self.apex().clone(), omap, mmap))
    }
}
