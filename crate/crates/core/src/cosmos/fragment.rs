use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibrations::{build_normal_cleavage, classify_fibration, leibniz_power, LiftChoice};
use crate::fincat::{
    classify_equivalence, discrete, enumerate_functors, product, product_functor, Builtin, FinCat, FinFunctor,
};
use crate::twolimits::{
    functor_category, pullback_along_normal_isofibration, pullback_strict, strict_tower_limit, tower_limit, Tower,
};

/// The class of maps declared to be the isofibrations of a fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsofibrationClass {
    Normal,
    Representable,
    Discrete,
    /// Not a valid choice; useful to see the axioms fail.
    Equivalences,
}

impl IsofibrationClass {
    pub fn contains(self, f: &FinFunctor) -> bool {
        match self {
            IsofibrationClass::Normal => classify_fibration(f).flags.normal,
            IsofibrationClass::Representable => classify_fibration(f).flags.representable,
            IsofibrationClass::Discrete => classify_fibration(f).flags.discrete,
            IsofibrationClass::Equivalences => classify_equivalence(f).is_equivalence(),
        }
    }
}

impl fmt::Display for IsofibrationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsofibrationClass::Normal => "normal",
            IsofibrationClass::Representable => "representable",
            IsofibrationClass::Discrete => "discrete",
            IsofibrationClass::Equivalences => "equivalences",
        })
    }
}

impl FromStr for IsofibrationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(IsofibrationClass::Normal),
            "representable" => Ok(IsofibrationClass::Representable),
            "discrete" => Ok(IsofibrationClass::Discrete),
            "equivalences" => Ok(IsofibrationClass::Equivalences),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

pub const DEFAULT_TOWER_BOUND: usize = 4;

/// Towers sampled per length, to keep clause (b) bounded.
const TOWERS_PER_LENGTH: usize = 8;

/// A finite set of categories with a chosen class of isofibrations among the
/// functors between them.
#[derive(Clone, Debug)]
pub struct CosmosFragment {
    pub objects: Vec<(String, Arc<FinCat>)>,
    pub chosen: IsofibrationClass,
    pub power_budget: usize,
    pub tower_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub witness: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub chosen: IsofibrationClass,
    pub objects: Vec<String>,
    pub tower_bound: usize,
    pub clauses: Vec<ClauseResult>,
    pub passed: bool,
}

impl AxiomReport {
    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

#[derive(Clone, Debug)]
struct Map {
    from: usize,
    to: usize,
    f: FinFunctor,
    chosen: bool,
}

struct Clause {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
    note: Option<String>,
}

impl Clause {
    fn new(name: &'static str) -> Self {
        Clause { name, checked: 0, witness: None, note: None }
    }

    /// Records an instance; the first failure becomes the witness.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn fail_with(&mut self, err: &Error) {
        if self.witness.is_none() {
            self.witness = Some(err.to_string());
        }
    }

    fn finish(self) -> ClauseResult {
        ClauseResult {
            clause: self.name.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
            note: self.note,
        }
    }
}

struct Checker<'a> {
    fragment: &'a CosmosFragment,
    maps: Vec<Map>,
}

impl Checker<'_> {
    fn name(&self, i: usize) -> &str {
        &self.fragment.objects[i].0
    }

    fn label(&self, m: &Map) -> String {
        label(self.name(m.from), self.name(m.to), &m.f)
    }

    fn chosen(&self) -> impl Iterator<Item = &Map> {
        self.maps.iter().filter(|m| m.chosen)
    }
}

/// Names a functor by its endpoints and its object and morphism assignment.
pub fn label(source: &str, target: &str, f: &FinFunctor) -> String {
    let (s, t) = (f.source(), f.target());
    let objs: Vec<&str> = s.objects().map(|o| t.object_name(f.obj(o))).collect();
    let mors: Vec<&str> = s.morphisms().filter(|&m| !s.is_identity(m)).map(|m| t.name(f.mor(m))).collect();
    if mors.is_empty() {
        format!("{source}→{target} [{}]", objs.join(","))
    } else {
        format!("{source}→{target} [{}|{}]", objs.join(","), mors.join(","))
    }
}

pub fn check_fragment(fragment: &CosmosFragment) -> Result<AxiomReport> {
    for (name, c) in &fragment.objects {
        c.check_laws().map_err(|e| Error::Invalid(format!("fragment object `{name}`: {e}")))?;
    }
    let n = fragment.objects.len();
    let mut maps = Vec::new();
    for from in 0..n {
        for to in 0..n {
            let (a, b) = (&fragment.objects[from].1, &fragment.objects[to].1);
            for f in enumerate_functors(a, b, fragment.power_budget)? {
                let chosen = fragment.chosen.contains(&f);
                maps.push(Map { from, to, f, chosen });
            }
        }
    }
    let ck = Checker { fragment, maps };
    let clauses = vec![
        composition_closure(&ck),
        isomorphism_closure(&ck),
        hom_isofibrations(&ck),
        products(&ck),
        powers(&ck),
        pullbacks(&ck),
        towers(&ck),
        pullback_stability(&ck),
        product_stability(&ck),
        leibniz_stability(&ck),
        terminal_maps(&ck),
    ];
    Ok(AxiomReport {
        chosen: fragment.chosen,
        objects: fragment.objects.iter().map(|(n, _)| n.clone()).collect(),
        tower_bound: fragment.tower_bound,
        passed: clauses.iter().all(|c| c.passed),
        clauses,
    })
}

fn composition_closure(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("closure.composition");
    for g in ck.chosen() {
        for f in ck.chosen().filter(|f| f.to == g.from) {
            let gf = g.f.after(&f.f);
            clause.record(ck.fragment.chosen.contains(&gf), || {
                format!("{} after {} is not in the class", ck.label(g), ck.label(f))
            });
        }
    }
    clause.finish()
}

fn isomorphism_closure(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("closure.isomorphisms");
    for m in ck.maps.iter().filter(|m| m.f.is_isomorphism()) {
        clause.record(m.chosen, || format!("the isomorphism {} is not in the class", ck.label(m)));
    }
    clause.finish()
}

/// (a): `p∘-: [A, B] → [A, C]` is an isofibration for chosen `p`.
fn hom_isofibrations(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("a.hom_isofibration");
    let budget = ck.fragment.power_budget;
    for p in ck.chosen() {
        for (name, a) in &ck.fragment.objects {
            let run = || -> Result<bool> {
                let ab = functor_category(a, p.f.source(), budget)?;
                let ac = functor_category(a, p.f.target(), budget)?;
                Ok(classify_fibration(&ab.postcompose(&p.f, &ac)).flags.representable)
            };
            match run() {
                Ok(ok) => clause.record(ok, || format!("postcomposition with {} on maps from {name}", ck.label(p))),
                Err(e) => clause.fail_with(&e),
            }
        }
    }
    clause.finish()
}

fn terminal() -> Arc<FinCat> {
    Builtin::Terminal.arc()
}

fn bang(a: &Arc<FinCat>) -> FinFunctor {
    FinFunctor::to_terminal(a.clone(), terminal())
}

fn products(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("b.products");
    let objs = &ck.fragment.objects;
    for (an, a) in objs {
        for (bn, b) in objs {
            let w = pullback_strict(&bang(a), &bang(b));
            clause.record(w.certificate.verified, || format!("the product {an}×{bn} is not certified"));
        }
    }
    clause.finish()
}

fn powers(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("b.powers");
    clause.note = Some("witnessed on fragment members as exponents".into());
    let objs = &ck.fragment.objects;
    for (_, x) in objs {
        for (_, a) in objs {
            match functor_category(x, a, ck.fragment.power_budget) {
                Ok(fc) => clause.record(fc.cat.check_laws().is_ok(), || "a power is not a category".into()),
                Err(e) => clause.fail_with(&e),
            }
        }
    }
    clause.finish()
}

fn cospans<'a>(ck: &'a Checker) -> impl Iterator<Item = (&'a Map, &'a Map)> + 'a {
    ck.chosen().flat_map(move |p| ck.maps.iter().filter(move |g| g.to == p.to).map(move |g| (p, g)))
}

fn pullbacks(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("b.pullbacks");
    for (p, g) in cospans(ck) {
        let w = pullback_strict(&p.f, &g.f);
        let mut ok = w.certificate.verified;
        if ok && ck.fragment.chosen == IsofibrationClass::Normal {
            ok = build_normal_cleavage(&p.f).and_then(|cl| pullback_along_normal_isofibration(&p.f, &cl, &g.f)).is_ok();
        }
        clause.record(ok, || format!("pullback of {} along {}", ck.label(p), ck.label(g)));
    }
    clause.finish()
}

/// Towers `A₀ ⟵ A₁ ⟵ …` of chosen maps, up to the tower bound, a bounded
/// number per length in enumeration order.
fn sample_towers(ck: &Checker) -> Vec<Vec<usize>> {
    let chosen: Vec<usize> = (0..ck.maps.len()).filter(|&i| ck.maps[i].chosen).collect();
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = chosen.iter().map(|&i| vec![i]).collect();
    for _ in 0..ck.fragment.tower_bound {
        out.extend(level.iter().take(TOWERS_PER_LENGTH).cloned());
        let mut next = Vec::new();
        for t in &level {
            let top = ck.maps[*t.last().expect("nonempty")].from;
            for &i in chosen.iter().filter(|&&i| ck.maps[i].to == top) {
                let mut longer = t.clone();
                longer.push(i);
                next.push(longer);
                if next.len() >= TOWERS_PER_LENGTH {
                    break;
                }
            }
            if next.len() >= TOWERS_PER_LENGTH {
                break;
            }
        }
        level = next;
    }
    out
}

fn build_tower(ck: &Checker, t: &[usize]) -> Result<Tower> {
    let base = ck.fragment.objects[ck.maps[t[0]].to].1.clone();
    let maps = t.iter().map(|&i| ck.maps[i].f.clone()).collect();
    Tower::with_cleavages(base, maps, LiftChoice::Smallest)
}

fn tower_label(ck: &Checker, t: &[usize]) -> String {
    t.iter().map(|&i| ck.label(&ck.maps[i])).collect::<Vec<_>>().join(" ⟵ ")
}

fn towers(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("b.towers");
    clause.note =
        Some(format!("towers truncated at length {}; at most {TOWERS_PER_LENGTH} per length", ck.fragment.tower_bound));
    for t in sample_towers(ck) {
        match build_tower(ck, &t).and_then(|tw| tower_limit(&tw)) {
            Ok(l) => clause.record(l.witness.certificate.verified, || format!("tower {}", tower_label(ck, &t))),
            Err(e) => {
                clause.checked += 1;
                if clause.witness.is_none() {
                    clause.witness = Some(format!("tower {}: {e}", tower_label(ck, &t)));
                }
            }
        }
    }
    clause.finish()
}

fn pullback_stability(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("c.pullback_stability");
    for (p, g) in cospans(ck) {
        let w = pullback_strict(&p.f, &g.f);
        clause.record(ck.fragment.chosen.contains(&w.projections[1]), || {
            format!("the pullback of {} along {} is not in the class", ck.label(p), ck.label(g))
        });
    }
    for t in sample_towers(ck) {
        if let Ok(tw) = build_tower(ck, &t) {
            let l = strict_tower_limit(&tw);
            clause.record(ck.fragment.chosen.contains(&l.projections[0]), || {
                format!("the limit projection of tower {} is not in the class", tower_label(ck, &t))
            });
        }
    }
    clause.finish()
}

fn product_stability(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("c.product_stability");
    for p in ck.chosen() {
        for q in ck.chosen() {
            let from = product(p.f.source(), q.f.source());
            let to = product(p.f.target(), q.f.target());
            let pq = product_functor(&p.f, &q.f, &from, &to);
            clause.record(ck.fragment.chosen.contains(&pq), || {
                format!("{} × {} is not in the class", ck.label(p), ck.label(q))
            });
        }
    }
    clause.finish()
}

/// The generating injective-on-objects functors `0 → 1`, `1 → 𝕀`, `2 → 𝟚`
/// and `𝟚₂ → 𝟚`.
pub fn leibniz_generators() -> Vec<(&'static str, FinFunctor)> {
    let empty = Arc::new(discrete(0));
    let arrow = Builtin::Arrow.arc();
    vec![
        ("0→1", FinFunctor::new_unchecked(empty, terminal(), vec![], vec![])),
        ("1→𝕀", FinFunctor::constant(terminal(), Builtin::FreeIso.arc(), 1)),
        ("2→𝟚", FinFunctor::new_unchecked(Builtin::TwoDiscrete.arc(), arrow.clone(), vec![0, 1], vec![0, 2])),
        ("𝟚₂→𝟚", FinFunctor::new_unchecked(Builtin::ParallelPair.arc(), arrow, vec![0, 1], vec![0, 2, 1, 1])),
    ]
}

fn leibniz_stability(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("c.leibniz");
    for (jn, j) in leibniz_generators() {
        for p in ck.chosen() {
            match leibniz_power(&j, &p.f, ck.fragment.power_budget) {
                Ok(lp) => clause.record(ck.fragment.chosen.contains(&lp.induced), || {
                    format!("the Leibniz power of {} by {jn} is not in the class", ck.label(p))
                }),
                Err(e) => clause.fail_with(&e),
            }
        }
    }
    clause.finish()
}

fn terminal_maps(ck: &Checker) -> ClauseResult {
    let mut clause = Clause::new("c.terminal");
    for (name, a) in &ck.fragment.objects {
        clause.record(ck.fragment.chosen.contains(&bang(a)), || format!("{name}→1 is not in the class"));
    }
    clause.finish()
}
