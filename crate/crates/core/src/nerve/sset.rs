use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// Simplices are stored up to this dimension.
pub const TOP_DIM: usize = 3;

/// A simplicial set truncated at dimension 3.
///
/// `faces[n][σ]` lists `d₀σ, …, dₙσ` for `1 ≤ n ≤ 3`; `degeneracies[n][σ]`
/// lists `s₀σ, …, sₙσ` for `n ≤ 2`. Entries are indices into the simplices
/// of the adjacent dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    names: [Vec<String>; 4],
    faces: [Vec<Vec<usize>>; 4],
    degeneracies: [Vec<Vec<usize>>; 4],
    index: [HashMap<String, usize>; 4],
}

/// The JSON form of a [`TruncSSet`], with simplices referred to by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSSet {
    pub simplices: [Vec<String>; 4],
    pub faces: BTreeMap<String, Vec<Vec<String>>>,
    pub degeneracies: BTreeMap<String, Vec<Vec<String>>>,
}

impl TruncSSet {
    /// Builds and validates a truncated simplicial set, including every
    /// simplicial identity.
    pub fn new(
        names: [Vec<String>; 4],
        faces: [Vec<Vec<usize>>; 4],
        degeneracies: [Vec<Vec<usize>>; 4],
    ) -> Result<Self> {
        let x = Self::new_unchecked(names, faces, degeneracies)?;
        x.check_simplicial_identities()?;
        Ok(x)
    }

    /// Checks shapes and names only.
    pub(crate) fn new_unchecked(
        names: [Vec<String>; 4],
        faces: [Vec<Vec<usize>>; 4],
        degeneracies: [Vec<Vec<usize>>; 4],
    ) -> Result<Self> {
        let mut index: [HashMap<String, usize>; 4] = Default::default();
        for n in 0..=TOP_DIM {
            for (i, s) in names[n].iter().enumerate() {
                if index[n].insert(s.clone(), i).is_some() {
                    return Err(Error::Malformed(format!("duplicate {n}-simplex `{s}`")));
                }
            }
        }
        for n in 0..=TOP_DIM {
            let (want_faces, want_degs) =
                (if n == 0 { 0 } else { names[n].len() }, if n == TOP_DIM { 0 } else { names[n].len() });
            if faces[n].len() != want_faces || degeneracies[n].len() != want_degs {
                return Err(Error::Malformed(format!(
                    "face or degeneracy table of dimension {n} has the wrong length"
                )));
            }
            for row in &faces[n] {
                if row.len() != n + 1 || row.iter().any(|&f| f >= names[n - 1].len()) {
                    return Err(Error::Malformed(format!("bad face row in dimension {n}")));
                }
            }
            for row in &degeneracies[n] {
                if row.len() != n + 1 || row.iter().any(|&s| s >= names[n + 1].len()) {
                    return Err(Error::Malformed(format!("bad degeneracy row in dimension {n}")));
                }
            }
        }
        Ok(TruncSSet { names, faces, degeneracies, index })
    }

    pub fn from_raw(raw: &RawSSet) -> Result<Self> {
        let mut index: [HashMap<&str, usize>; 4] = Default::default();
        for n in 0..=TOP_DIM {
            for (i, s) in raw.simplices[n].iter().enumerate() {
                index[n].insert(s.as_str(), i);
            }
        }
        let lookup = |n: usize, s: &str| {
            index[n].get(s).copied().ok_or_else(|| Error::Malformed(format!("unknown {n}-simplex `{s}`")))
        };
        let table = |map: &BTreeMap<String, Vec<Vec<String>>>,
                     n: usize,
                     other: usize,
                     present: bool|
         -> Result<Vec<Vec<usize>>> {
            match map.get(&n.to_string()) {
                None if !present || raw.simplices[n].is_empty() => Ok(Vec::new()),
                None => Err(Error::Malformed(format!("missing table for dimension {n}"))),
                Some(_) if !present => Err(Error::Malformed(format!("unexpected table for dimension {n}"))),
                Some(rows) => rows.iter().map(|r| r.iter().map(|s| lookup(other, s)).collect()).collect(),
            }
        };
        let mut faces: [Vec<Vec<usize>>; 4] = Default::default();
        let mut degeneracies: [Vec<Vec<usize>>; 4] = Default::default();
        for n in 0..=TOP_DIM {
            faces[n] = table(&raw.faces, n, n.saturating_sub(1), n > 0)?;
            degeneracies[n] = table(&raw.degeneracies, n, (n + 1).min(TOP_DIM), n < TOP_DIM)?;
        }
        for key in raw.faces.keys().chain(raw.degeneracies.keys()) {
            if !matches!(key.as_str(), "0" | "1" | "2" | "3") {
                return Err(Error::Malformed(format!("unknown dimension key `{key}`")));
            }
        }
        TruncSSet::new(raw.simplices.clone(), faces, degeneracies)
    }

    pub fn to_raw(&self) -> RawSSet {
        let rows = |tables: &[Vec<Vec<usize>>; 4], range: std::ops::RangeInclusive<usize>, shift: isize| {
            range
                .map(|n| {
                    let other = (n as isize + shift) as usize;
                    let rows =
                        tables[n].iter().map(|r| r.iter().map(|&i| self.names[other][i].clone()).collect()).collect();
                    (n.to_string(), rows)
                })
                .collect()
        };
        RawSSet {
            simplices: self.names.clone(),
            faces: rows(&self.faces, 1..=3, -1),
            degeneracies: rows(&self.degeneracies, 0..=2, 1),
        }
    }

    pub fn count(&self, n: usize) -> usize {
        self.names[n].len()
    }

    pub fn name(&self, n: usize, s: usize) -> &str {
        &self.names[n][s]
    }

    pub fn index_of(&self, n: usize, name: &str) -> Option<usize> {
        self.index[n].get(name).copied()
    }

    /// `dᵢσ` for an `n`-simplex `σ`.
    pub fn face(&self, n: usize, i: usize, s: usize) -> usize {
        self.faces[n][s][i]
    }

    /// `sᵢσ` for an `n`-simplex `σ`.
    pub fn degeneracy(&self, n: usize, i: usize, s: usize) -> usize {
        self.degeneracies[n][s][i]
    }

    /// Whether an `n`-simplex is in the image of some degeneracy.
    pub fn is_degenerate(&self, n: usize, s: usize) -> bool {
        n > 0 && self.degeneracies[n - 1].iter().any(|row| row.contains(&s))
    }

    /// The `k`-th vertex of an `n`-simplex.
    pub fn vertex(&self, n: usize, s: usize, k: usize) -> usize {
        let (mut dim, mut cur) = (n, s);
        // delete every vertex above k, then every vertex below it
        for _ in k..n {
            cur = self.face(dim, dim, cur);
            dim -= 1;
        }
        while dim > 0 {
            cur = self.face(dim, 0, cur);
            dim -= 1;
        }
        cur
    }

    pub fn check_simplicial_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Malformed(format!("simplicial identity fails: {what}")));
        for n in 2..=TOP_DIM {
            for s in 0..self.count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let l = self.face(n - 1, i, self.face(n, j, s));
                        let r = self.face(n - 1, j - 1, self.face(n, i, s));
                        if l != r {
                            return fail(format!("d{i}d{j} ≠ d{}d{i} on {}", j - 1, self.names[n][s]));
                        }
                    }
                }
            }
        }
        for n in 0..TOP_DIM {
            for s in 0..self.count(n) {
                for j in 0..=n {
                    let sj = self.degeneracy(n, j, s);
                    for i in 0..=n + 1 {
                        let l = self.face(n + 1, i, sj);
                        let r = if i < j {
                            Some(self.degeneracy(n - 1, j - 1, self.face(n, i, s)))
                        } else if i == j || i == j + 1 {
                            Some(s)
                        } else {
                            Some(self.degeneracy(n - 1, j, self.face(n, i - 1, s)))
                        };
                        if r != Some(l) {
                            return fail(format!("d{i}s{j} on {}", self.names[n][s]));
                        }
                    }
                }
                if n + 2 <= TOP_DIM {
                    for j in 0..=n {
                        for i in 0..=j {
                            let l = self.degeneracy(n + 1, i, self.degeneracy(n, j, s));
                            let r = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, s));
                            if l != r {
                                return fail(format!("s{i}s{j} ≠ s{}s{i} on {}", j + 1, self.names[n][s]));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds a truncated simplicial set whose `n`-simplices are keyed by values
/// of type `K`, from closures computing faces and degeneracies on keys.
fn from_keys<K: Clone + Eq + std::hash::Hash>(
    keys: [Vec<K>; 4],
    name: impl Fn(usize, &K) -> String,
    face: impl Fn(usize, usize, &K) -> K,
    degeneracy: impl Fn(usize, usize, &K) -> K,
) -> TruncSSet {
    let lookup: Vec<HashMap<K, usize>> =
        keys.iter().map(|ks| ks.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let mut names: [Vec<String>; 4] = Default::default();
    for n in 0..=TOP_DIM {
        names[n] = keys[n].iter().map(|k| name(n, k)).collect();
    }
    let mut faces: [Vec<Vec<usize>>; 4] = Default::default();
    let mut degeneracies: [Vec<Vec<usize>>; 4] = Default::default();
    for n in 0..=TOP_DIM {
        if n > 0 {
            faces[n] = keys[n].iter().map(|k| (0..=n).map(|i| lookup[n - 1][&face(n, i, k)]).collect()).collect();
        }
        if n < TOP_DIM {
            degeneracies[n] =
                keys[n].iter().map(|k| (0..=n).map(|i| lookup[n + 1][&degeneracy(n, i, k)]).collect()).collect();
        }
    }
    TruncSSet::new_unchecked(names, faces, degeneracies).expect("generated simplicial set is well formed")
}

/// The nerve of a finite category, truncated at dimension 3.
///
/// A `k`-simplex is a chain `(f₁, …, f_k)` of composable morphisms listed in
/// the order they are traversed; `d₀` drops `f₁`, `d_k` drops `f_k`, inner
/// faces compose, and degeneracies insert identities.
pub fn nerve_truncated(c: &FinCat) -> TruncSSet {
    // a 0-simplex is stored as the one-element chain of its identity
    let mut keys: [Vec<Vec<usize>>; 4] = Default::default();
    keys[0] = c.objects().map(|o| vec![c.id(o)]).collect();
    keys[1] = c.morphisms().map(|m| vec![m]).collect();
    for n in 2..=TOP_DIM {
        keys[n] = keys[n - 1]
            .iter()
            .flat_map(|chain| {
                let last = *chain.last().unwrap();
                c.outgoing(c.cod(last)).map(move |g| {
                    let mut next = chain.clone();
                    next.push(g);
                    next
                })
            })
            .collect();
    }
    let name = |n: usize, chain: &Vec<usize>| {
        if n == 0 {
            c.object_name(c.dom(chain[0])).to_string()
        } else if n == 1 {
            c.name(chain[0]).to_string()
        } else {
            format!("({})", chain.iter().map(|&m| c.name(m)).collect::<Vec<_>>().join(","))
        }
    };
    let face = |n: usize, i: usize, chain: &Vec<usize>| -> Vec<usize> {
        if n == 1 {
            let m = chain[0];
            return vec![c.id(if i == 0 { c.cod(m) } else { c.dom(m) })];
        }
        let mut out = chain.clone();
        if i == 0 {
            out.remove(0);
        } else if i == n {
            out.pop();
        } else {
            let composite = c.compose(chain[i], chain[i - 1]);
            out.splice(i - 1..=i, [composite]);
        }
        out
    };
    let degeneracy = |n: usize, i: usize, chain: &Vec<usize>| -> Vec<usize> {
        if n == 0 {
            return chain.clone();
        }
        let vertex = if i == 0 { c.dom(chain[0]) } else { c.cod(chain[i - 1]) };
        let mut out = chain.clone();
        out.insert(i, c.id(vertex));
        out
    };
    from_keys(keys, name, face, degeneracy)
}

/// The standard simplex `Δ[k]`; an `n`-simplex is a weakly increasing
/// sequence in `0..=k`, named by its digits.
pub fn standard_simplex(k: usize) -> TruncSSet {
    assert!(k <= 9, "standard simplices are named by decimal digits");
    let mut keys: [Vec<Vec<usize>>; 4] = Default::default();
    keys[0] = (0..=k).map(|j| vec![j]).collect();
    for n in 1..=TOP_DIM {
        keys[n] = keys[n - 1]
            .iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                (last..=k).map(move |j| {
                    let mut t = s.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    from_keys(
        keys,
        |_, s| s.iter().map(|d| d.to_string()).collect(),
        |_, i, s| {
            let mut t = s.clone();
            t.remove(i);
            t
        },
        |_, i, s| {
            let mut t = s.clone();
            t.insert(i, s[i]);
            t
        },
    )
}

/// The simplicial set of a directed graph: every simplex above dimension 1
/// is degenerate. Simplices are named like chains in a nerve, with `1_v` for
/// the degenerate edge at `v`.
pub fn graph_sset(vertices: &[&str], edges: &[(&str, usize, usize)]) -> TruncSSet {
    // (None, v) is vertex v; (Some(e), p) has its jump from dom e to cod e before vertex p
    type Key = (Option<usize>, usize);
    let mut keys: [Vec<Key>; 4] = Default::default();
    for n in 0..=TOP_DIM {
        keys[n] = (0..vertices.len()).map(|v| (None, v)).collect();
        for e in 0..edges.len() {
            keys[n].extend((1..=n).map(|p| (Some(e), p)));
        }
    }
    let chain = |n: usize, k: &Key| -> Vec<String> {
        match *k {
            (None, v) => vec![format!("1_{}", vertices[v]); n],
            (Some(e), p) => (1..=n)
                .map(|i| match i.cmp(&p) {
                    std::cmp::Ordering::Less => format!("1_{}", vertices[edges[e].1]),
                    std::cmp::Ordering::Equal => edges[e].0.to_string(),
                    std::cmp::Ordering::Greater => format!("1_{}", vertices[edges[e].2]),
                })
                .collect(),
        }
    };
    from_keys(
        keys,
        |n, k| match (n, k) {
            (0, (None, v)) => vertices[*v].to_string(),
            (1, _) => chain(1, k).remove(0),
            _ => format!("({})", chain(n, k).join(",")),
        },
        |n, i, &(edge, p)| match edge {
            None => (None, p),
            Some(e) => {
                let q = if i >= p { p } else { p - 1 };
                if q == 0 {
                    (None, edges[e].2)
                } else if q == n {
                    (None, edges[e].1)
                } else {
                    (Some(e), q)
                }
            }
        },
        |_, i, &(edge, p)| match edge {
            None => (None, p),
            Some(e) => (Some(e), if i >= p { p } else { p + 1 }),
        },
    )
}

/// A map of truncated simplicial sets, given dimensionwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    pub maps: [Vec<usize>; 4],
}

impl SSetMap {
    pub fn check(&self, source: &TruncSSet, target: &TruncSSet) -> Result<()> {
        for n in 0..=TOP_DIM {
            if self.maps[n].len() != source.count(n) || self.maps[n].iter().any(|&s| s >= target.count(n)) {
                return Err(Error::Malformed(format!("map table of dimension {n} has the wrong shape")));
            }
        }
        for n in 0..=TOP_DIM {
            for s in 0..source.count(n) {
                let image = self.maps[n][s];
                for i in 0..=n {
                    if n > 0 && self.maps[n - 1][source.face(n, i, s)] != target.face(n, i, image) {
                        return Err(Error::Invalid(format!("map does not commute with d{i} at {}", source.name(n, s))));
                    }
                    if n < TOP_DIM && self.maps[n + 1][source.degeneracy(n, i, s)] != target.degeneracy(n, i, image) {
                        return Err(Error::Invalid(format!("map does not commute with s{i} at {}", source.name(n, s))));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A product `X × Y` with its projections. The `n`-simplex `(σ, τ)` has
/// index `σ · |Yₙ| + τ`.
#[derive(Clone, Debug)]
pub struct SSetProduct {
    pub sset: TruncSSet,
    pub left: SSetMap,
    pub right: SSetMap,
}

pub fn product_sset(x: &TruncSSet, y: &TruncSSet) -> SSetProduct {
    let mut names: [Vec<String>; 4] = Default::default();
    let mut faces: [Vec<Vec<usize>>; 4] = Default::default();
    let mut degeneracies: [Vec<Vec<usize>>; 4] = Default::default();
    let mut left: [Vec<usize>; 4] = Default::default();
    let mut right: [Vec<usize>; 4] = Default::default();
    for n in 0..=TOP_DIM {
        let ny = y.count(n);
        for a in 0..x.count(n) {
            for b in 0..ny {
                names[n].push(format!("({},{})", x.name(n, a), y.name(n, b)));
                left[n].push(a);
                right[n].push(b);
                if n > 0 {
                    let m = y.count(n - 1);
                    faces[n].push((0..=n).map(|i| x.face(n, i, a) * m + y.face(n, i, b)).collect());
                }
                if n < TOP_DIM {
                    let m = y.count(n + 1);
                    degeneracies[n].push((0..=n).map(|i| x.degeneracy(n, i, a) * m + y.degeneracy(n, i, b)).collect());
                }
            }
        }
    }
    SSetProduct {
        sset: TruncSSet::new_unchecked(names, faces, degeneracies).expect("product of well-formed simplicial sets"),
        left: SSetMap { maps: left },
        right: SSetMap { maps: right },
    }
}

/// Outcome of the 2-coskeletality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoskeletalReport {
    pub boundaries_2: usize,
    pub boundaries_3: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Checks that every compatible 2-boundary has at most one filler and every
/// compatible 3-boundary exactly one.
pub fn check_two_coskeletal(x: &TruncSSet) -> CoskeletalReport {
    let mut report = CoskeletalReport { boundaries_2: 0, boundaries_3: 0, passed: true, failure: None };
    let mut fillers2: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..x.count(2) {
        *fillers2.entry(x.faces[2][s].clone()).or_default() += 1;
    }
    let n1 = x.count(1);
    for y0 in 0..n1 {
        for y1 in (0..n1).filter(|&y1| x.face(1, 0, y1) == x.face(1, 0, y0)) {
            for y2 in (0..n1).filter(|&y2| x.face(1, 0, y2) == x.face(1, 1, y0) && x.face(1, 1, y2) == x.face(1, 1, y1))
            {
                report.boundaries_2 += 1;
                let count = fillers2.get(&vec![y0, y1, y2]).copied().unwrap_or(0);
                if count > 1 && report.failure.is_none() {
                    report.failure = Some(format!(
                        "2-boundary ({}, {}, {}) has {count} fillers",
                        x.name(1, y0),
                        x.name(1, y1),
                        x.name(1, y2)
                    ));
                }
            }
        }
    }
    let mut fillers3: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..x.count(3) {
        *fillers3.entry(x.faces[3][s].clone()).or_default() += 1;
    }
    let mut by_d2: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..x.count(2) {
        by_d2.entry(x.face(2, 2, s)).or_default().push(s);
    }
    let empty = Vec::new();
    for y3 in 0..x.count(2) {
        for &y2 in by_d2.get(&x.face(2, 2, y3)).unwrap_or(&empty) {
            for &y1 in by_d2.get(&x.face(2, 1, y3)).unwrap_or(&empty) {
                if x.face(2, 1, y2) != x.face(2, 1, y1) {
                    continue;
                }
                for &y0 in by_d2.get(&x.face(2, 0, y3)).unwrap_or(&empty) {
                    if x.face(2, 0, y2) != x.face(2, 1, y0) || x.face(2, 0, y1) != x.face(2, 0, y0) {
                        continue;
                    }
                    report.boundaries_3 += 1;
                    let count = fillers3.get(&vec![y0, y1, y2, y3]).copied().unwrap_or(0);
                    if count != 1 && report.failure.is_none() {
                        report.failure = Some(format!(
                            "3-boundary ({}, {}, {}, {}) has {count} fillers",
                            x.name(2, y0),
                            x.name(2, y1),
                            x.name(2, y2),
                            x.name(2, y3)
                        ));
                    }
                }
            }
        }
    }
    report.passed = report.failure.is_none();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chaotic, Builtin};

    fn nondegenerate(x: &TruncSSet, n: usize) -> usize {
        (0..x.count(n)).filter(|&s| !x.is_degenerate(n, s)).count()
    }

    #[test]
    fn nerves_satisfy_the_identities() {
        for c in [Builtin::Terminal.build(), Builtin::Arrow.build(), Builtin::FreeIso.build(), chaotic(3)] {
            nerve_truncated(&c).check_simplicial_identities().unwrap();
        }
    }

    #[test]
    fn simplex_counts() {
        let one = nerve_truncated(&Builtin::Terminal.build());
        assert!((0..=3).all(|n| one.count(n) == 1));
        let arrow = nerve_truncated(&Builtin::Arrow.build());
        assert_eq!([0, 1, 2, 3].map(|n| nondegenerate(&arrow, n)), [2, 1, 0, 0]);
        // chains in 𝕀 alternate, and those of length 2 with no identity are nondegenerate
        let iso = nerve_truncated(&Builtin::FreeIso.build());
        assert_eq!([0, 1, 2, 3].map(|n| nondegenerate(&iso, n)), [2, 2, 2, 2]);
        let d2 = standard_simplex(2);
        assert_eq!([0, 1, 2, 3].map(|n| d2.count(n)), [3, 6, 10, 15]);
        d2.check_simplicial_identities().unwrap();
    }

    #[test]
    fn standard_simplex_is_the_nerve_of_an_ordinal() {
        let chain = crate::fincat::poset(3, &[(0, 1), (1, 2)]);
        let n = nerve_truncated(&chain);
        let d = standard_simplex(2);
        assert_eq!([0, 1, 2, 3].map(|k| n.count(k)), [0, 1, 2, 3].map(|k| d.count(k)));
    }

    #[test]
    fn vertices() {
        let d = standard_simplex(3);
        let s = d.index_of(3, "0123").unwrap();
        assert_eq!((0..4).map(|k| d.name(0, d.vertex(3, s, k))).collect::<Vec<_>>(), ["0", "1", "2", "3"]);
    }

    #[test]
    fn raw_round_trip() {
        let x = nerve_truncated(&Builtin::FreeIso.build());
        let raw = x.to_raw();
        let y = TruncSSet::from_raw(&raw).unwrap();
        assert_eq!(x, y);
        let json = serde_json::to_string(&raw).unwrap();
        assert_eq!(serde_json::from_str::<RawSSet>(&json).unwrap(), raw);
    }

    #[test]
    fn broken_identities_are_reported() {
        let mut raw = standard_simplex(1).to_raw();
        // make both faces of the edge 01 the same vertex
        raw.faces.get_mut("1").unwrap()[1] = vec!["0".into(), "0".into()];
        assert!(TruncSSet::from_raw(&raw).is_err());
    }

    #[test]
    fn products_and_projections() {
        let d1 = standard_simplex(1);
        let p = product_sset(&d1, &d1);
        p.sset.check_simplicial_identities().unwrap();
        p.left.check(&p.sset, &d1).unwrap();
        p.right.check(&p.sset, &d1).unwrap();
        assert_eq!(nondegenerate(&p.sset, 2), 2);
        assert_eq!(nondegenerate(&p.sset, 3), 0);
    }

    #[test]
    fn nerves_are_two_coskeletal() {
        for c in [Builtin::Arrow.build(), Builtin::FreeIso.build(), chaotic(3), Builtin::ParallelPair.build()] {
            let r = check_two_coskeletal(&nerve_truncated(&c));
            assert!(r.passed, "{:?}", r.failure);
            assert!(r.boundaries_3 >= r.boundaries_2.min(1));
        }
    }
}
