use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCat, FinFunctor, Mor, Obj};

use super::sset::{SSetMap, TruncSSet};

pub const DEFAULT_WORD_BOUND: usize = 4;

/// Words beyond this count make the closure give up.
pub const WORD_LIMIT: usize = 400_000;

/// A path of nondegenerate 1-simplices, in the order traversed.
type Word = (Obj, Vec<u32>);

/// The generators and relations presenting the classifying category.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    /// Nondegenerate 1-simplices.
    pub generators: Vec<usize>,
    /// `d₁σ ~ d₂σ·d₀σ` for each 2-simplex `σ`, as words in 1-simplex indices
    /// with degenerate edges erased.
    pub relations: Vec<(Word, Word)>,
    pub bound: usize,
}

impl RewriteSystem {
    pub fn new(x: &TruncSSet, bound: usize) -> Result<Self> {
        let generators: Vec<usize> = (0..x.count(1)).filter(|&e| !x.is_degenerate(1, e)).collect();
        let word = |e: usize| -> Word {
            let start = x.face(1, 1, e);
            if x.is_degenerate(1, e) {
                (start, vec![])
            } else {
                (start, vec![e as u32])
            }
        };
        let mut relations = Vec::new();
        for s in 0..x.count(2) {
            let (a, b, c) = (word(x.face(2, 1, s)), word(x.face(2, 2, s)), word(x.face(2, 0, s)));
            let mut rhs = b.1.clone();
            rhs.extend(&c.1);
            let (l, r) = (a, (b.0, rhs));
            if x.face(1, 0, x.face(2, 2, s)) != x.face(1, 1, x.face(2, 0, s)) || l.0 != r.0 {
                return Err(Error::Malformed(format!("relation from {} is not boundary compatible", x.name(2, s))));
            }
            if l != r {
                relations.push((l, r));
            }
        }
        Ok(RewriteSystem { generators, relations, bound })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// `ΠX` together with the image of every 1-simplex.
#[derive(Clone, Debug)]
pub struct ClassifyingCategory {
    pub cat: Arc<FinCat>,
    /// The morphism each 1-simplex of `X` becomes; degenerate ones go to identities.
    pub edge_image: Vec<Mor>,
    /// A shortest representing word for each morphism.
    pub representatives: Vec<Vec<usize>>,
}

impl ClassifyingCategory {
    /// The composite of a path of 1-simplices.
    pub fn path_image(&self, start: Obj, path: &[usize]) -> Mor {
        path.iter().fold(self.cat.id(start), |acc, &e| self.cat.compose(self.edge_image[e], acc))
    }
}

/// The classifying category of a truncated simplicial set, computed by
/// congruence closure over words of length at most `bound`.
///
/// The quotient keeps the classes containing a word of length at most
/// `bound / 2`. It is returned only once it is closed under composition, is a
/// category, satisfies every relation and is generated as claimed; any
/// failure is reported as [`Error::BoundExceeded`], which does not by itself
/// mean that `ΠX` is infinite.
pub fn classifying_category(x: &TruncSSet, bound: usize) -> Result<ClassifyingCategory> {
    let system = RewriteSystem::new(x, bound)?;
    let exceeded = || Error::BoundExceeded { bound };
    let ends = |e: u32| (x.face(1, 1, e as usize), x.face(1, 0, e as usize));
    let mut outgoing: Vec<Vec<u32>> = vec![Vec::new(); x.count(0)];
    for &g in &system.generators {
        outgoing[ends(g as u32).0].push(g as u32);
    }

    let mut words: Vec<Word> = (0..x.count(0)).map(|o| (o, vec![])).collect();
    let mut end_of: Vec<Obj> = (0..x.count(0)).collect();
    let mut frontier: Vec<usize> = (0..words.len()).collect();
    for _ in 0..bound {
        let mut next = Vec::new();
        for &w in &frontier {
            for &g in &outgoing[end_of[w]] {
                let mut path = words[w].1.clone();
                path.push(g);
                words.push((words[w].0, path));
                end_of.push(ends(g).1);
                next.push(words.len() - 1);
            }
        }
        if words.len() > WORD_LIMIT {
            return Err(Error::EnumerationBudgetExceeded { bound: WORD_LIMIT, required: words.len() });
        }
        frontier = next;
    }
    let table: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

    // one-step rewrites in both directions, indexed by the first letter
    let mut by_first: HashMap<u32, Vec<(&[u32], &[u32])>> = HashMap::new();
    for (l, r) in &system.relations {
        if let Some(&g) = l.1.first() {
            by_first.entry(g).or_default().push((&l.1, &r.1));
        }
        if let Some(&g) = r.1.first() {
            by_first.entry(g).or_default().push((&r.1, &l.1));
        }
    }
    let mut uf = UnionFind((0..words.len()).collect());
    for (w, (start, path)) in words.iter().enumerate() {
        for p in 0..path.len() {
            for &(from, to) in by_first.get(&path[p]).into_iter().flatten() {
                if path[p..].starts_with(from) {
                    let mut other = path[..p].to_vec();
                    other.extend_from_slice(to);
                    other.extend_from_slice(&path[p + from.len()..]);
                    if let Some(&v) = table.get(&(*start, other)) {
                        uf.union(w, v);
                    }
                }
            }
        }
    }

    // words are generated by length, so the first member of a class is a shortest one
    let half = bound / 2;
    let mut class_morphism: HashMap<usize, Mor> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    for w in 0..words.len() {
        let root = uf.find(w);
        if words[w].1.len() <= half && !class_morphism.contains_key(&root) {
            class_morphism.insert(root, reps.len());
            reps.push(w);
        }
    }
    let mut builder = CatBuilder::new();
    for o in 0..x.count(0) {
        builder.add_object(x.name(0, o));
    }
    for &w in &reps {
        let (start, path) = &words[w];
        let name = match path.len() {
            0 => x.name(1, x.degeneracy(0, 0, *start)).to_string(),
            _ => path.iter().rev().map(|&e| x.name(1, e as usize)).collect::<Vec<_>>().join("∘"),
        };
        builder.add_morphism(name, *start, end_of[w]);
    }
    for o in 0..x.count(0) {
        builder.set_identity(o, o);
    }
    let mut closed = true;
    let cat = builder.build(|g, f| {
        let mut path = words[reps[f]].1.clone();
        path.extend(&words[reps[g]].1);
        let root = uf.find(table[&(words[reps[f]].0, path)]);
        match class_morphism.get(&root) {
            Some(&m) => m,
            None => {
                closed = false;
                0
            }
        }
    });
    if !closed || cat.check_laws().is_err() {
        return Err(exceeded());
    }
    let cat = Arc::new(cat);
    let mut edge_image = Vec::with_capacity(x.count(1));
    for e in 0..x.count(1) {
        let start = x.face(1, 1, e);
        let key = if x.is_degenerate(1, e) { (start, vec![]) } else { (start, vec![e as u32]) };
        match table.get(&key).and_then(|&w| class_morphism.get(&uf.find(w))) {
            Some(&m) => edge_image.push(m),
            None => return Err(exceeded()),
        }
    }
    let pi = ClassifyingCategory {
        cat,
        edge_image,
        representatives: reps.iter().map(|&w| words[w].1.iter().map(|&e| e as usize).collect()).collect(),
    };
    for (l, r) in &system.relations {
        let lhs = pi.path_image(l.0, &l.1.iter().map(|&e| e as usize).collect::<Vec<_>>());
        let rhs = pi.path_image(r.0, &r.1.iter().map(|&e| e as usize).collect::<Vec<_>>());
        if lhs != rhs {
            return Err(exceeded());
        }
    }
    for (m, rep) in pi.representatives.iter().enumerate() {
        if pi.path_image(pi.cat.dom(m), rep) != m {
            return Err(exceeded());
        }
    }
    Ok(pi)
}

/// `Πf` for a map of simplicial sets.
pub fn classifying_functor(f: &SSetMap, source: &ClassifyingCategory, target: &ClassifyingCategory) -> FinFunctor {
    let cat = &source.cat;
    let omap = cat.objects().map(|o| f.maps[0][o]).collect();
    let mmap = cat
        .morphisms()
        .map(|m| {
            let path: Vec<usize> = source.representatives[m].iter().map(|&e| f.maps[1][e]).collect();
            target.path_image(f.maps[0][cat.dom(m)], &path)
        })
        .collect();
    FinFunctor::new_unchecked(source.cat.clone(), target.cat.clone(), omap, mmap)
}

/// The comparison `ΠNC → C`, sending a chain to its composite.
pub fn counit(c: &Arc<FinCat>, pi: &ClassifyingCategory) -> FinFunctor {
    let mmap = pi
        .cat
        .morphisms()
        .map(|m| pi.representatives[m].iter().fold(c.id(pi.cat.dom(m)), |acc, &e| c.compose(e, acc)))
        .collect();
    FinFunctor::new_unchecked(pi.cat.clone(), c.clone(), pi.cat.objects().collect(), mmap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chaotic, Builtin};
    use crate::nerve::{graph_sset, nerve_truncated, standard_simplex};

    #[test]
    fn pi_of_nerve_is_the_category() {
        for c in [Builtin::Arrow.arc(), Builtin::FreeIso.arc(), Arc::new(chaotic(3)), Builtin::ParallelPair.arc()] {
            let pi = classifying_category(&nerve_truncated(&c), DEFAULT_WORD_BOUND).unwrap();
            let eps = counit(&c, &pi);
            eps.check().unwrap();
            assert!(eps.is_isomorphism());
        }
    }

    #[test]
    fn pi_of_simplices() {
        let pi = classifying_category(&standard_simplex(1), 2).unwrap();
        assert_eq!((pi.cat.num_objects(), pi.cat.num_morphisms()), (2, 3));
        // Δ[2] has a 2-simplex relating its long edge to the composite
        let pi = classifying_category(&standard_simplex(2), 2).unwrap();
        assert_eq!(pi.cat.num_morphisms(), 6);
    }

    #[test]
    fn graphs() {
        // one arrow between distinct vertices: the free category on it is 𝟚
        let x = graph_sset(&["a", "b"], &[("f", 0, 1)]);
        let pi = classifying_category(&x, DEFAULT_WORD_BOUND).unwrap();
        assert!(crate::fincat::find_isomorphism(&pi.cat, &Builtin::Arrow.arc()).is_some());
        // a loop generates a free monoid
        let x = graph_sset(&["*"], &[("e", 0, 0)]);
        assert_eq!(classifying_category(&x, 6).unwrap_err(), Error::BoundExceeded { bound: 6 });
    }
}
