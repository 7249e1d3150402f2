//! A fixed, deterministic corpus of small categories and functors between
//! them, used by the acceptance suite and the property tests.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::fibrations::{classify_fibration, FibrationFlags};
use crate::fincat::{chaotic, coproduct, monoid, poset, product, Builtin, FinCat, FinFunctor, FunctorSearch};

/// Functors enumerated per ordered pair before sampling.
pub const SCAN_PER_PAIR: usize = 64;
/// Functors kept per ordered pair, besides identities.
pub const SAMPLES_PER_PAIR: usize = 4;
pub const MAX_TOWER_LENGTH: usize = 4;
/// Towers kept per length.
pub const TOWERS_PER_LENGTH: usize = 64;
/// Partial towers kept while extending to the next length.
const TOWER_FRONTIER: usize = 256;

#[derive(Clone, Debug)]
pub struct CorpusCategory {
    pub name: String,
    pub cat: Arc<FinCat>,
}

#[derive(Clone, Debug)]
pub struct CorpusMorphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub f: FinFunctor,
    pub flags: FibrationFlags,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub categories: Vec<CorpusCategory>,
    pub morphisms: Vec<CorpusMorphism>,
}

/// The builtins, with one instance of each parametrised family.
pub fn builtin_categories() -> Vec<(String, Arc<FinCat>)> {
    [
        Builtin::Terminal,
        Builtin::Discrete(3),
        Builtin::TwoDiscrete,
        Builtin::Arrow,
        Builtin::ParallelPair,
        Builtin::FreeIso,
        Builtin::Chaotic(3),
    ]
    .into_iter()
    .map(|b| (b.to_string(), b.arc()))
    .collect()
}

pub fn generated_categories() -> Vec<(String, Arc<FinCat>)> {
    let iso = Builtin::FreeIso.arc();
    let arrow = Builtin::Arrow.arc();
    let (sum, _, _) = coproduct(&Arc::new(chaotic(2)), &Builtin::Terminal.arc());
    vec![
        ("chain(3)".into(), Arc::new(poset(3, &[(0, 1), (1, 2)]))),
        ("square".into(), Arc::new(poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]))),
        ("span".into(), Arc::new(poset(3, &[(1, 0), (1, 2)]))),
        ("z2".into(), Arc::new(monoid(&["1", "t"], &[vec![0, 1], vec![1, 0]]))),
        ("idempotent".into(), Arc::new(monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]))),
        ("free_iso×arrow".into(), product(&iso, &arrow).cat),
        ("chaotic(2)+terminal".into(), sum),
    ]
}

impl Corpus {
    pub fn standard() -> Self {
        let categories = builtin_categories()
            .into_iter()
            .chain(generated_categories())
            .map(|(name, cat)| CorpusCategory { name, cat })
            .collect();
        let mut corpus = Corpus { categories, morphisms: Vec::new() };
        let n = corpus.categories.len();
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    corpus.push(s, t, format!("id_{}", corpus.categories[s].name), None);
                }
                for (k, f) in sample_functors(&corpus.categories[s].cat, &corpus.categories[t].cat) {
                    let name = format!("{}→{}#{k}", corpus.categories[s].name, corpus.categories[t].name);
                    corpus.push(s, t, name, Some(f));
                }
            }
        }
        corpus.add_structure_maps();
        corpus
    }

    fn index(&self, name: &str) -> usize {
        self.categories.iter().position(|c| c.name == name).expect("corpus category")
    }

    /// Product projections and coproduct injections of the generated
    /// categories, so that the corpus has non-trivial (co)cartesian maps.
    fn add_structure_maps(&mut self) {
        let (iso, arrow) = (self.index("free_iso"), self.index("arrow"));
        let prod = product(&self.categories[iso].cat, &self.categories[arrow].cat);
        let at = self.index("free_iso×arrow");
        let left = prod.left.retarget(self.categories[at].cat.clone(), self.categories[iso].cat.clone());
        let right = prod.right.retarget(self.categories[at].cat.clone(), self.categories[arrow].cat.clone());
        self.push(at, iso, "π_free_iso".into(), Some(left));
        self.push(at, arrow, "π_arrow".into(), Some(right));

        let (ch, one) = (self.index("chaotic(3)"), self.index("terminal"));
        let two = Arc::new(chaotic(2));
        let (_, inl, inr) = coproduct(&two, &self.categories[one].cat);
        let at = self.index("chaotic(2)+terminal");
        let sum = self.categories[at].cat.clone();
        let inr = inr.retarget(self.categories[one].cat.clone(), sum.clone());
        self.push(one, at, "ι_terminal".into(), Some(inr));
        // bijective on objects, so not full
        let include = FinFunctor::from_mmap(sum.clone(), self.categories[ch].cat.clone(), include_mmap(&sum, &inl));
        self.push(at, ch, "ι_chaotic".into(), Some(include));
    }

    fn push(&mut self, source: usize, target: usize, name: String, f: Option<FinFunctor>) {
        let f = f.unwrap_or_else(|| FinFunctor::identity(self.categories[source].cat.clone()));
        if self.morphisms.iter().any(|m| m.source == source && m.target == target && m.f == f) {
            return;
        }
        let flags = classify_fibration(&f).flags;
        self.morphisms.push(CorpusMorphism { name, source, target, f, flags });
    }

    pub fn category(&self, i: usize) -> &CorpusCategory {
        &self.categories[i]
    }

    pub fn normal_isofibrations(&self) -> impl Iterator<Item = &CorpusMorphism> {
        self.morphisms.iter().filter(|m| m.flags.normal)
    }

    /// Pairs `(f, g)` of morphism indices with a common codomain and `f` a
    /// normal isofibration.
    pub fn cospans(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.morphisms.iter().enumerate().filter(|(_, m)| m.flags.normal) {
            for (j, _) in self.morphisms.iter().enumerate().filter(|(_, g)| g.target == f.target) {
                out.push((i, j));
            }
        }
        out
    }

    /// Towers of non-identity normal isofibrations, as morphism indices from
    /// the base upwards, of every length up to `max_len`.
    pub fn towers(&self, max_len: usize) -> Vec<Vec<usize>> {
        let steps: Vec<usize> = (0..self.morphisms.len())
            .filter(|&i| self.morphisms[i].flags.normal && !self.morphisms[i].f.is_identity())
            .collect();
        let mut out = Vec::new();
        let mut level: Vec<Vec<usize>> = steps.iter().map(|&i| vec![i]).collect();
        for _ in 0..max_len {
            out.extend(spread(&level, TOWERS_PER_LENGTH));
            let mut next = Vec::new();
            for t in &level {
                let top = self.morphisms[*t.last().expect("nonempty")].source;
                for &i in steps.iter().filter(|&&i| self.morphisms[i].target == top) {
                    let mut longer = t.clone();
                    longer.push(i);
                    next.push(longer);
                }
            }
            level = spread(&next, TOWER_FRONTIER);
        }
        out
    }

    pub fn label(&self, i: usize) -> &str {
        &self.morphisms[i].name
    }
}

/// `chaotic(2)+1 → chaotic(3)`, sending the summands to `{0, 1}` and `2`.
fn include_mmap(sum: &FinCat, inl: &FinFunctor) -> Vec<usize> {
    let object = |o: usize| inl.omap().iter().position(|&x| x == o).unwrap_or(2);
    sum.morphisms().map(|m| object(sum.dom(m)) * 3 + object(sum.cod(m))).collect()
}

/// Up to [`SAMPLES_PER_PAIR`] functors, evenly spread over the first
/// [`SCAN_PER_PAIR`] found, tagged with their enumeration position.
fn sample_functors(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Vec<(usize, FinFunctor)> {
    let mut found = Vec::new();
    FunctorSearch::new(a, b).run(|o, m| {
        found.push(FinFunctor::new_unchecked(a.clone(), b.clone(), o.to_vec(), m.to_vec()));
        if found.len() >= SCAN_PER_PAIR {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let n = found.len();
    let mut picks: Vec<usize> =
        (0..SAMPLES_PER_PAIR.min(n)).map(|k| k * (n - 1) / (SAMPLES_PER_PAIR - 1).max(1)).collect();
    picks.dedup();
    picks.into_iter().map(|k| (k, found[k].clone())).collect()
}

fn spread<T: Clone>(items: &[T], cap: usize) -> Vec<T> {
    if items.len() <= cap {
        return items.to_vec();
    }
    (0..cap).map(|k| items[k * (items.len() - 1) / (cap - 1)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let corpus = Corpus::standard();
        assert!(corpus.categories.len() >= 12);
        for c in &corpus.categories {
            assert!(c.cat.num_objects() <= 6 && c.cat.num_morphisms() <= 24, "{}", c.name);
            c.cat.check_laws().unwrap();
        }
        for m in &corpus.morphisms {
            m.f.check().unwrap();
        }
    }

    #[test]
    fn towers_are_composable() {
        let corpus = Corpus::standard();
        let towers = corpus.towers(MAX_TOWER_LENGTH);
        assert!(towers.iter().any(|t| t.len() == MAX_TOWER_LENGTH));
        for t in towers {
            for w in t.windows(2) {
                assert_eq!(corpus.morphisms[w[0]].source, corpus.morphisms[w[1]].target);
            }
        }
    }
}
