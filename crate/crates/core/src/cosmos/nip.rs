use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The finite toposes in which the lifting property is searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topos {
    /// Finite sets.
    FinSet,
    /// Functors `𝟚 → FinSet`, i.e. maps `X₀ → X₁` of finite sets.
    FinSetArrow,
}

impl fmt::Display for Topos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topos::FinSet => "finset",
            Topos::FinSetArrow => "finset_arrow",
        })
    }
}

impl FromStr for Topos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finset" | "FinSet" => Ok(Topos::FinSet),
            "finset_arrow" | "finset2" | "FinSet^2" => Ok(Topos::FinSetArrow),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

pub const MAX_SIZE_BOUND: usize = 4;

/// An object of the topos: one finite set, or a map `X₀ → X₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetObject {
    pub sizes: Vec<usize>,
    /// The map `X₀ → X₁`; empty for plain sets.
    pub structure: Vec<usize>,
}

impl SetObject {
    fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// A morphism given by its components, one per set of the object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetMorphism {
    pub components: Vec<Vec<usize>>,
}

impl SetMorphism {
    /// `self∘first`.
    fn after(&self, first: &SetMorphism) -> SetMorphism {
        SetMorphism {
            components: self
                .components
                .iter()
                .zip(&first.components)
                .map(|(g, f)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    fn is_identity(&self) -> bool {
        self.components.iter().all(|c| c.iter().enumerate().all(|(i, &x)| i == x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NipCounterexample {
    pub a: SetObject,
    pub b: SetObject,
    pub c: SetObject,
    pub d: SetObject,
    /// The split monomorphism `i: A → B` with its retraction.
    pub i: SetMorphism,
    pub retraction: SetMorphism,
    /// The split epimorphism `p: C → D` with its section.
    pub p: SetMorphism,
    pub section: SetMorphism,
    pub top: SetMorphism,
    pub bottom: SetMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum NipOutcome {
    AllFill { squares: usize },
    Counterexample(Box<NipCounterexample>),
}

impl NipOutcome {
    pub fn all_fill(&self) -> bool {
        matches!(self, NipOutcome::AllFill { .. })
    }
}

fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(from)];
    for _ in 0..from {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..to).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn objects(topos: Topos, bound: usize) -> Vec<SetObject> {
    let mut out = Vec::new();
    match topos {
        Topos::FinSet => {
            for n in 0..=bound {
                out.push(SetObject { sizes: vec![n], structure: vec![] });
            }
        }
        Topos::FinSetArrow => {
            for n0 in 0..=bound {
                for n1 in 0..=bound {
                    for s in all_maps(n0, n1) {
                        out.push(SetObject { sizes: vec![n0, n1], structure: s });
                    }
                }
            }
        }
    }
    out.sort_by_key(|o| o.total());
    out
}

fn hom(x: &SetObject, y: &SetObject) -> Vec<SetMorphism> {
    if x.sizes.len() == 1 {
        return all_maps(x.sizes[0], y.sizes[0]).into_iter().map(|h| SetMorphism { components: vec![h] }).collect();
    }
    let mut out = Vec::new();
    for h1 in all_maps(x.sizes[1], y.sizes[1]) {
        // h0 sends each element over e to an element of Y₀ over h1(e)
        let choices: Vec<Vec<usize>> =
            x.structure.iter().map(|&e| (0..y.sizes[0]).filter(|&z| y.structure[z] == h1[e]).collect()).collect();
        let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
        for c in &choices {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    c.iter().map(move |&z| {
                        let mut q = p.clone();
                        q.push(z);
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|h0| SetMorphism { components: vec![h0, h1.clone()] }));
    }
    out
}

struct Homs<'a> {
    objects: &'a [SetObject],
    cache: HashMap<(usize, usize), Vec<SetMorphism>>,
}

impl Homs<'_> {
    fn get(&mut self, x: usize, y: usize) -> &[SetMorphism] {
        let objects = self.objects;
        self.cache.entry((x, y)).or_insert_with(|| hom(&objects[x], &objects[y]))
    }
}

/// Whether some `h: B → C` has `h∘i = top` and `p∘h = bottom`, searched
/// elementwise.
fn has_filler(
    b: &SetObject,
    c: &SetObject,
    i: &SetMorphism,
    p: &SetMorphism,
    top: &SetMorphism,
    bottom: &SetMorphism,
) -> bool {
    let dims = b.sizes.len();
    // forced values on the image of i
    let mut forced: Vec<Vec<Option<usize>>> = (0..dims).map(|k| vec![None; b.sizes[k]]).collect();
    for k in 0..dims {
        for (a, &bi) in i.components[k].iter().enumerate() {
            forced[k][bi] = Some(top.components[k][a]);
        }
    }
    let candidates = |k: usize, x: usize| -> Vec<usize> {
        match forced[k][x] {
            Some(v) => vec![v],
            None => (0..c.sizes[k]).filter(|&z| p.components[k][z] == bottom.components[k][x]).collect(),
        }
    };
    let lower_ok = |h1: &[usize]| -> bool {
        (0..b.sizes[0]).all(|x| candidates(0, x).into_iter().any(|z| dims == 1 || c.structure[z] == h1[b.structure[x]]))
    };
    if dims == 1 {
        return lower_ok(&[]);
    }
    fn assign(x: usize, h1: &mut Vec<usize>, cands: &[Vec<usize>], lower_ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if x == cands.len() {
            return lower_ok(h1);
        }
        for &z in &cands[x] {
            h1.push(z);
            if assign(x + 1, h1, cands, lower_ok) {
                return true;
            }
            h1.pop();
        }
        false
    }
    let cands: Vec<Vec<usize>> = (0..b.sizes[1]).map(|x| candidates(1, x)).collect();
    assign(0, &mut Vec::new(), &cands, &lower_ok)
}

fn quadruples<'a>(
    a: &'a [usize],
    b: &'a [usize],
    c: &'a [usize],
    d: &'a [usize],
) -> impl Iterator<Item = (&'a usize, &'a usize, &'a usize, &'a usize)> + 'a {
    a.iter()
        .flat_map(move |x| b.iter().flat_map(move |y| c.iter().flat_map(move |z| d.iter().map(move |w| (x, y, z, w)))))
}

/// Searches, in order of increasing total size, for a commuting square from a
/// split monomorphism to a split epimorphism with no diagonal filler.
pub fn nip_square_filler(topos: Topos, size_bound: usize) -> Result<NipOutcome> {
    if size_bound > MAX_SIZE_BOUND {
        return Err(Error::Invalid(format!("size bound {size_bound} exceeds the maximum {MAX_SIZE_BOUND}")));
    }
    let objs = objects(topos, size_bound);
    let mut homs = Homs { objects: &objs, cache: HashMap::new() };
    let max_size = objs.last().map_or(0, |o| o.total());
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); max_size + 1];
    for (k, o) in objs.iter().enumerate() {
        by_size[o.total()].push(k);
    }
    let mut squares = 0;
    for total in 0..=4 * max_size {
        for ta in 0..=max_size.min(total) {
            for tb in 0..=max_size.min(total - ta) {
                for tc in 0..=max_size.min(total - ta - tb) {
                    let td = total - ta - tb - tc;
                    if td > max_size {
                        continue;
                    }
                    for (&ai, &bi, &ci, &di) in quadruples(&by_size[ta], &by_size[tb], &by_size[tc], &by_size[td]) {
                        let (a, b, c, d) = (&objs[ai], &objs[bi], &objs[ci], &objs[di]);
                        let monos: Vec<(SetMorphism, SetMorphism)> = {
                            let back = homs.get(bi, ai).to_vec();
                            homs.get(ai, bi)
                                .iter()
                                .filter_map(|i| {
                                    back.iter().find(|r| r.after(i).is_identity()).map(|r| (i.clone(), r.clone()))
                                })
                                .collect()
                        };
                        if monos.is_empty() {
                            continue;
                        }
                        let epis: Vec<(SetMorphism, SetMorphism)> = {
                            let back = homs.get(di, ci).to_vec();
                            homs.get(ci, di)
                                .iter()
                                .filter_map(|p| {
                                    back.iter().find(|s| p.after(s).is_identity()).map(|s| (p.clone(), s.clone()))
                                })
                                .collect()
                        };
                        if epis.is_empty() {
                            continue;
                        }
                        let tops = homs.get(ai, ci).to_vec();
                        let bottoms = homs.get(bi, di).to_vec();
                        for (i, r) in &monos {
                            for (p, s) in &epis {
                                for top in &tops {
                                    let pt = p.after(top);
                                    for bottom in bottoms.iter().filter(|bt| bt.after(i) == pt) {
                                        squares += 1;
                                        if !has_filler(b, c, i, p, top, bottom) {
                                            return Ok(NipOutcome::Counterexample(Box::new(NipCounterexample {
                                                a: a.clone(),
                                                b: b.clone(),
                                                c: c.clone(),
                                                d: d.clone(),
                                                i: i.clone(),
                                                retraction: r.clone(),
                                                p: p.clone(),
                                                section: s.clone(),
                                                top: top.clone(),
                                                bottom: bottom.clone(),
                                            })));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(NipOutcome::AllFill { squares })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts() {
        let two = SetObject { sizes: vec![2], structure: vec![] };
        let three = SetObject { sizes: vec![3], structure: vec![] };
        assert_eq!(hom(&two, &three).len(), 9);
        // ({x,y} → {•}) to itself: h1 fixed, h0 arbitrary
        let b = SetObject { sizes: vec![2, 1], structure: vec![0, 0] };
        assert_eq!(hom(&b, &b).len(), 4);
        // (1 → 2) to (2 → 2) with identity-like structure
        let s = SetObject { sizes: vec![1, 2], structure: vec![0] };
        let t = SetObject { sizes: vec![2, 2], structure: vec![0, 1] };
        assert_eq!(hom(&s, &t).len(), 4);
    }

    #[test]
    fn bound_zero_is_vacuous() {
        assert!(nip_square_filler(Topos::FinSet, 0).unwrap().all_fill());
        assert!(nip_square_filler(Topos::FinSetArrow, 0).unwrap().all_fill());
    }
}
