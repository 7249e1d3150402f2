use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Obj};
use crate::twolimits::{functor_category, FunctorCategory};

use super::classifying::{classifying_category, ClassifyingCategory};
use super::sset::{product_sset, standard_simplex, TruncSSet};

/// A map `Z → NY` recorded on vertices and edges; the rest is determined.
type NerveMap = (Vec<Obj>, Vec<Mor>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowersDim {
    pub k: usize,
    /// Maps `Δ[k] × X → NY`.
    pub lhs_count: usize,
    /// `k`-simplices of `N[ΠX, Y]`.
    pub rhs_count: usize,
    pub bijective: bool,
    pub faces_commute: bool,
    pub degeneracies_commute: bool,
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowersReport {
    pub pi_objects: usize,
    pub pi_morphisms: usize,
    pub dims: Vec<PowersDim>,
    pub passed: bool,
}

/// A chain `F₀ ⇒ ⋯ ⇒ F_k` in the functor category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Chain {
    objs: Vec<Obj>,
    mors: Vec<Mor>,
}

fn chains(fc: &FinCat, k: usize) -> Vec<Chain> {
    let mut out: Vec<Chain> = fc.objects().map(|o| Chain { objs: vec![o], mors: vec![] }).collect();
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = *c.objs.last().unwrap();
                fc.outgoing(last).map(move |m| {
                    let mut next = c.clone();
                    next.objs.push(fc.cod(m));
                    next.mors.push(m);
                    next
                })
            })
            .collect();
    }
    out
}

fn chain_face(fc: &FinCat, c: &Chain, i: usize) -> Chain {
    let mut out = c.clone();
    out.objs.remove(i);
    let k = c.mors.len();
    if i == 0 {
        out.mors.remove(0);
    } else if i == k {
        out.mors.pop();
    } else {
        out.mors.splice(i - 1..=i, [fc.compose(c.mors[i], c.mors[i - 1])]);
    }
    out
}

fn chain_degeneracy(fc: &FinCat, c: &Chain, i: usize) -> Chain {
    let mut out = c.clone();
    out.objs.insert(i, c.objs[i]);
    out.mors.insert(i, fc.id(c.objs[i]));
    out
}

/// Every map of simplicial sets `Z → NY`, found by assigning vertices and
/// edges and checking each 2-simplex; nerves are 2-coskeletal, so nothing
/// above dimension 2 constrains the map.
fn maps_into_nerve(z: &TruncSSet, y: &FinCat, budget: usize) -> Result<Vec<NerveMap>> {
    let (nv, ne) = (z.count(0), z.count(1));
    let mut checks_at: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for s in 0..z.count(2) {
        let last = (0..3).map(|i| z.face(2, i, s)).max().unwrap();
        checks_at[last].push(s);
    }
    let degenerate: Vec<bool> = (0..ne).map(|e| z.is_degenerate(1, e)).collect();
    let mut out = Vec::new();
    let mut verts = vec![0; nv];
    let mut edges = vec![0; ne];

    struct Ctx<'a> {
        z: &'a TruncSSet,
        y: &'a FinCat,
        checks_at: &'a [Vec<usize>],
        degenerate: &'a [bool],
        budget: usize,
    }

    fn assign_edges(ctx: &Ctx, e: usize, verts: &[Obj], edges: &mut Vec<Mor>, out: &mut Vec<NerveMap>) -> Result<()> {
        if e == edges.len() {
            if out.len() >= ctx.budget {
                return Err(Error::EnumerationBudgetExceeded { bound: ctx.budget, required: out.len() + 1 });
            }
            out.push((verts.to_vec(), edges.clone()));
            return Ok(());
        }
        let (a, b) = (verts[ctx.z.face(1, 1, e)], verts[ctx.z.face(1, 0, e)]);
        let candidates: Vec<Mor> = if ctx.degenerate[e] {
            if a != b {
                return Ok(());
            }
            vec![ctx.y.id(a)]
        } else {
            ctx.y.hom(a, b).to_vec()
        };
        for m in candidates {
            edges[e] = m;
            let ok = ctx.checks_at[e].iter().all(|&s| {
                let f = |i| edges[ctx.z.face(2, i, s)];
                ctx.y.try_compose(f(0), f(2)) == Some(f(1))
            });
            if ok {
                assign_edges(ctx, e + 1, verts, edges, out)?;
            }
        }
        Ok(())
    }

    let ctx = Ctx { z, y, checks_at: &checks_at, degenerate: &degenerate, budget };
    let ny = y.num_objects();
    if nv > 0 && ny == 0 {
        return Ok(out);
    }
    loop {
        assign_edges(&ctx, 0, &verts, &mut edges, &mut out)?;
        // next vertex assignment, odometer style
        let mut v = 0;
        while v < nv {
            verts[v] += 1;
            if verts[v] < ny {
                break;
            }
            verts[v] = 0;
            v += 1;
        }
        if v == nv {
            return Ok(out);
        }
    }
}

struct Comparison<'a> {
    x: &'a TruncSSet,
    pi: &'a ClassifyingCategory,
    fc: &'a FunctorCategory,
    y: &'a FinCat,
}

impl Comparison<'_> {
    /// The map `Δ[k] × X → NY` corresponding to a chain of transformations.
    fn phi(&self, k: usize, delta: &TruncSSet, c: &Chain) -> NerveMap {
        let (nx0, nx1) = (self.x.count(0), self.x.count(1));
        let mut verts = vec![0; (k + 1) * nx0];
        for j in 0..=k {
            let f = self.fc.functor(c.objs[j]);
            for v in 0..nx0 {
                verts[j * nx0 + v] = f.obj(v);
            }
        }
        let mut edges = vec![0; delta.count(1) * nx1];
        for t in 0..delta.count(1) {
            let (j0, j1) = (delta.vertex(1, t, 0), delta.vertex(1, t, 1));
            let f = self.fc.functor(c.objs[j1]);
            for e in 0..nx1 {
                let x0 = self.x.face(1, 1, e);
                let along = (j0..j1).fold(self.y.id(self.fc.functor(c.objs[j0]).obj(x0)), |acc, i| {
                    self.y.compose(self.fc.components(c.mors[i])[x0], acc)
                });
                edges[t * nx1 + e] = self.y.compose(f.mor(self.pi.edge_image[e]), along);
            }
        }
        (verts, edges)
    }

    /// Precomposes a map on `Δ[k] × X` with `θ × X` for `θ: Δ[m] → Δ[k]`
    /// given on vertices.
    fn restrict(&self, map: &NerveMap, theta: &[usize], from: &TruncSSet, to: &TruncSSet) -> NerveMap {
        let (nx0, nx1) = (self.x.count(0), self.x.count(1));
        let mut verts = Vec::with_capacity(from.count(0) * nx0);
        for j in 0..from.count(0) {
            for v in 0..nx0 {
                verts.push(map.0[theta[j] * nx0 + v]);
            }
        }
        let mut edges = Vec::with_capacity(from.count(1) * nx1);
        for t in 0..from.count(1) {
            let name: String =
                [from.vertex(1, t, 0), from.vertex(1, t, 1)].iter().map(|&j| theta[j].to_string()).collect();
            let image = to.index_of(1, &name).expect("monotone image of an edge");
            for e in 0..nx1 {
                edges.push(map.1[image * nx1 + e]);
            }
        }
        (verts, edges)
    }
}

/// Compares `[X, NY]` with `N[ΠX, Y]` in dimensions `0..=dim` through the
/// canonical comparison map, checking that it is a bijection compatible with
/// faces and degeneracies.
pub fn check_powers_iso(
    x: &TruncSSet,
    y: &Arc<FinCat>,
    dim: usize,
    budget: usize,
    word_bound: usize,
) -> Result<PowersReport> {
    if dim > 2 {
        return Err(Error::Invalid(format!("powers are compared up to dimension 2, not {dim}")));
    }
    let pi = classifying_category(x, word_bound)?;
    let fc = functor_category(&pi.cat, y, budget)?;
    let cmp = Comparison { x, pi: &pi, fc: &fc, y };
    let deltas: Vec<TruncSSet> = (0..=dim).map(standard_simplex).collect();
    let mut lhs: Vec<HashMap<NerveMap, usize>> = Vec::new();
    let mut rhs: Vec<Vec<Chain>> = Vec::new();
    let mut dims = Vec::new();
    for k in 0..=dim {
        let z = product_sset(&deltas[k], x).sset;
        let maps = maps_into_nerve(&z, y, budget)?;
        lhs.push(maps.into_iter().enumerate().map(|(i, m)| (m, i)).collect());
        rhs.push(chains(&fc.cat, k));
        let mut row = PowersDim {
            k,
            lhs_count: lhs[k].len(),
            rhs_count: rhs[k].len(),
            bijective: false,
            faces_commute: true,
            degeneracies_commute: true,
            mismatch: None,
        };
        let mut hit = vec![false; lhs[k].len()];
        let mut injective = true;
        for c in &rhs[k] {
            match lhs[k].get(&cmp.phi(k, &deltas[k], c)) {
                Some(&i) if !hit[i] => hit[i] = true,
                Some(_) => injective = false,
                None => {
                    row.mismatch.get_or_insert_with(|| format!("comparison of a {k}-chain is not a simplicial map"));
                    injective = false;
                }
            }
        }
        row.bijective = injective && hit.iter().all(|&h| h);
        if !row.bijective {
            row.mismatch.get_or_insert_with(|| format!("{} maps against {} chains", row.lhs_count, row.rhs_count));
        }
        dims.push(row);
    }
    for k in 1..=dim {
        for c in &rhs[k] {
            let full = cmp.phi(k, &deltas[k], c);
            for i in 0..=k {
                let theta: Vec<usize> = (0..k).map(|j| if j < i { j } else { j + 1 }).collect();
                let face = cmp.phi(k - 1, &deltas[k - 1], &chain_face(&fc.cat, c, i));
                if cmp.restrict(&full, &theta, &deltas[k - 1], &deltas[k]) != face {
                    dims[k].faces_commute = false;
                }
            }
        }
    }
    for k in 0..dim {
        for c in &rhs[k] {
            let base = cmp.phi(k, &deltas[k], c);
            for i in 0..=k {
                let theta: Vec<usize> = (0..=k + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
                let degenerate = cmp.phi(k + 1, &deltas[k + 1], &chain_degeneracy(&fc.cat, c, i));
                if cmp.restrict(&base, &theta, &deltas[k + 1], &deltas[k]) != degenerate {
                    dims[k].degeneracies_commute = false;
                }
            }
        }
    }
    let passed = dims.iter().all(|d| d.bijective && d.faces_commute && d.degeneracies_commute);
    Ok(PowersReport { pi_objects: pi.cat.num_objects(), pi_morphisms: pi.cat.num_morphisms(), dims, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Builtin;
    use crate::nerve::{nerve_truncated, DEFAULT_WORD_BOUND};
    use crate::twolimits::DEFAULT_BUDGET;

    #[test]
    fn maps_from_a_simplex_into_a_nerve_are_chains() {
        // maps Δ[2] → N𝟚 are the 2-simplices of N𝟚: four monotone triples
        let arrow = Builtin::Arrow.build();
        assert_eq!(maps_into_nerve(&standard_simplex(2), &arrow, 1000).unwrap().len(), 4);
        let iso = Builtin::FreeIso.build();
        assert_eq!(maps_into_nerve(&standard_simplex(1), &iso, 1000).unwrap().len(), 4);
    }

    #[test]
    fn powers_of_small_simplicial_sets() {
        let arrow = Builtin::Arrow.arc();
        for x in [standard_simplex(0), standard_simplex(1), nerve_truncated(&Builtin::FreeIso.build())] {
            let r = check_powers_iso(&x, &arrow, 2, DEFAULT_BUDGET, DEFAULT_WORD_BOUND).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
