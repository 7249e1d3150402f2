use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::category::{CatBuilder, FinCat, Mor};
use crate::error::{Error, Result};

/// The named small categories used throughout the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Terminal,
    Discrete(usize),
    /// The discrete category on two objects.
    TwoDiscrete,
    /// The generic arrow `0 → 1`.
    Arrow,
    /// The generic parallel pair `0 ⇉ 1`.
    ParallelPair,
    /// The generic isomorphism `0 ≅ 1`.
    FreeIso,
    /// `n` objects with exactly one morphism between any two.
    Chaotic(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Terminal => write!(f, "terminal"),
            Builtin::Discrete(n) => write!(f, "discrete({n})"),
            Builtin::TwoDiscrete => write!(f, "two_discrete"),
            Builtin::Arrow => write!(f, "arrow"),
            Builtin::ParallelPair => write!(f, "parallel_pair"),
            Builtin::FreeIso => write!(f, "free_iso"),
            Builtin::Chaotic(n) => write!(f, "chaotic({n})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
        };
        Ok(match s {
            "terminal" | "1" => Builtin::Terminal,
            "two_discrete" | "2" => Builtin::TwoDiscrete,
            "arrow" => Builtin::Arrow,
            "parallel_pair" => Builtin::ParallelPair,
            "free_iso" => Builtin::FreeIso,
            _ => {
                if let Some(n) = arg("discrete") {
                    Builtin::Discrete(n)
                } else if let Some(n) = arg("chaotic") {
                    Builtin::Chaotic(n)
                } else {
                    return Err(Error::UnknownBuiltin(s.to_string()));
                }
            }
        })
    }
}

impl Builtin {
    pub fn build(self) -> FinCat {
        match self {
            Builtin::Terminal => discrete(1),
            Builtin::Discrete(n) => discrete(n),
            Builtin::TwoDiscrete => discrete(2),
            Builtin::Arrow => poset(2, &[(0, 1)]),
            Builtin::ParallelPair => parallel_pair(),
            Builtin::FreeIso => free_iso(),
            Builtin::Chaotic(n) => chaotic(n),
        }
    }

    pub fn arc(self) -> Arc<FinCat> {
        Arc::new(self.build())
    }
}

/// Looks up a builtin by name, e.g. `arrow` or `chaotic(3)`.
pub fn builtin(name: &str) -> Result<FinCat> {
    Ok(name.parse::<Builtin>()?.build())
}

pub fn discrete(n: usize) -> FinCat {
    let mut b = CatBuilder::new();
    for i in 0..n {
        let name = if n == 1 { "*".to_string() } else { i.to_string() };
        let o = b.add_object(name.clone());
        b.add_identity(o, format!("id_{name}"));
    }
    b.build(|g, _| g)
}

/// The poset on `0..n` generated by the given relations (reflexive-transitive closure).
pub fn poset(n: usize, relations: &[(usize, usize)]) -> FinCat {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in relations {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            assert!(i == j || !(le[i][j] && le[j][i]), "relations are not antisymmetric");
        }
    }
    thin(n, &le)
}

/// A thin category on `0..n` where `hom(i, j)` is inhabited iff `rel[i][j]`.
/// `rel` must be reflexive and transitive.
pub fn thin(n: usize, rel: &[Vec<bool>]) -> FinCat {
    let mut b = CatBuilder::new();
    for i in 0..n {
        b.add_object(i.to_string());
    }
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] {
                let name = if i == j { format!("id_{i}") } else { format!("{i}->{j}") };
                index[i][j] = b.add_morphism(name, i, j);
            }
        }
        b.set_identity(i, index[i][i]);
    }
    let ends: Vec<(usize, usize)> = (0..b.num_morphisms()).map(|m| (b.morphism(m).dom, b.morphism(m).cod)).collect();
    b.build(|g, f| index[ends[f].0][ends[g].1])
}

pub fn chaotic(n: usize) -> FinCat {
    thin(n, &vec![vec![true; n]; n])
}

fn parallel_pair() -> FinCat {
    let mut b = CatBuilder::new();
    let (x, y) = (b.add_object("0"), b.add_object("1"));
    b.add_identity(x, "id_0");
    b.add_identity(y, "id_1");
    b.add_morphism("s", x, y);
    b.add_morphism("t", x, y);
    // the only composable pairs involve identities
    b.build(|g, f| if g < 2 { f } else { g })
}

fn free_iso() -> FinCat {
    let mut b = CatBuilder::new();
    let (x, y) = (b.add_object("0"), b.add_object("1"));
    let ix = b.add_identity(x, "id_0");
    let iy = b.add_identity(y, "id_1");
    let i = b.add_morphism("i", x, y);
    let j = b.add_morphism("i^-1", y, x);
    b.build(|g, f| match (g, f) {
        (g, f) if g == ix || g == iy => f,
        (g, f) if f == ix || f == iy => g,
        (g, f) if g == j && f == i => ix,
        (g, f) if g == i && f == j => iy,
        _ => unreachable!(),
    })
}

/// A one-object category from a monoid multiplication table; element 0 is the unit.
pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> FinCat {
    let mut b = CatBuilder::new();
    let o = b.add_object("*");
    for (i, n) in names.iter().enumerate() {
        let m: Mor = b.add_morphism(*n, o, o);
        if i == 0 {
            b.set_identity(o, m);
        }
    }
    b.build(|g, f| table[g][f])
}
