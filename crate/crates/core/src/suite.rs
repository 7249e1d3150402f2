//! The acceptance battery: ten checks over the standard corpus and the
//! counterexample catalog, each reporting pass/fail with a short detail.

use std::ops::ControlFlow;
use std::time::Instant;

use serde::Serialize;

use crate::corpus::{Corpus, CorpusMorphism, MAX_TOWER_LENGTH};
use crate::cosmos::{nip_square_filler, NipOutcome, Topos};
use crate::counterexamples::{run_counterexample, CounterexampleName};
use crate::fibrations::{
    build_normal_cleavage, classify_fibration, compute_wf, factorize_wfs, minimal_retract_witness, solve_lifting,
    LiftingProblem,
};
use crate::fincat::{classify_equivalence, find_isomorphism, Builtin, FinFunctor, FunctorSearch};
use crate::nerve::{check_powers_iso, classifying_category, counit, nerve_truncated, standard_simplex, TruncSSet};
use crate::twolimits::{
    iso_over, pullback_along_normal_isofibration, pullback_strict, strict_tower_limit, tower_limit, Tower,
};

/// Lifting squares solved against normal isofibrations.
pub const LIFTING_SQUARES: usize = 400;
/// Lifting squares tested against maps that are not normal isofibrations.
pub const NON_NORMAL_SQUARES: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Budgets shared by every check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSettings {
    pub budget: usize,
    pub tower_bound: usize,
    pub word_bound: usize,
}

impl Default for SuiteSettings {
    fn default() -> Self {
        SuiteSettings {
            budget: crate::twolimits::DEFAULT_BUDGET,
            tower_bound: MAX_TOWER_LENGTH,
            word_bound: crate::nerve::DEFAULT_WORD_BOUND,
        }
    }
}

type Check = fn(&Corpus, &SuiteSettings) -> Result<String, String>;

pub const CRITERIA: [(&str, Check); 10] = [
    ("wfs_round_trip", wfs_round_trip),
    ("lifting_completeness", lifting_completeness),
    ("nif_pullback_oracle", nif_pullback_oracle),
    ("tower_oracle", tower_oracle),
    ("groth_leibniz", groth_leibniz),
    ("nip_dichotomy", nip_dichotomy),
    ("fy_dichotomy", fy_dichotomy),
    ("nerve_and_powers", nerve_and_powers),
    ("minimal_retract", minimal_retract),
    ("wf_biconditionals", wf_biconditionals),
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, corpus: &Corpus, settings: &SuiteSettings) -> Option<CriterionResult> {
    let (name, check) = CRITERIA.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let outcome = check(corpus, settings);
    let millis = start.elapsed().as_millis();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult { id, name: name.to_string(), passed, detail, millis })
}

pub fn run_acceptance(settings: &SuiteSettings) -> Vec<CriterionResult> {
    let corpus = Corpus::standard();
    (1..=CRITERIA.len()).filter_map(|id| run_criterion(id, &corpus, settings)).collect()
}

fn fail(m: &CorpusMorphism, what: impl std::fmt::Display) -> String {
    format!("{}: {what}", m.name)
}

fn wfs_round_trip(corpus: &Corpus, s: &SuiteSettings) -> Result<String, String> {
    for m in &corpus.morphisms {
        let fact = factorize_wfs(&m.f, s.budget).map_err(|e| fail(m, e))?;
        fact.d_witness().check().map_err(|e| fail(m, e))?;
        if !classify_equivalence(&fact.d).is_injective() {
            return Err(fail(m, "d is not an injective equivalence"));
        }
        if !classify_fibration(&fact.v).flags.normal {
            return Err(fail(m, "v is not a normal isofibration"));
        }
        if fact.v.after(&fact.d) != m.f {
            return Err(fail(m, "v∘d differs from f"));
        }
    }
    Ok(format!("{} morphisms over {} categories", corpus.morphisms.len(), corpus.categories.len()))
}

/// One commuting square per bottom map `B → D` from the corpus, with the
/// first top map found, for every pair `(i, p)` accepted by `keep_p`.
fn squares(corpus: &Corpus, keep_p: impl Fn(&CorpusMorphism) -> bool, cap: usize) -> Vec<LiftingProblem> {
    let is: Vec<&CorpusMorphism> =
        corpus.morphisms.iter().filter(|m| classify_equivalence(&m.f).is_injective()).collect();
    let ps: Vec<&CorpusMorphism> = corpus.morphisms.iter().filter(|m| keep_p(m)).collect();
    // walk the pairs diagonally so that the batch is not dominated by one `i`
    let mut pairs = Vec::new();
    for k in 0..is.len() + ps.len() {
        for a in 0..=k.min(is.len().saturating_sub(1)) {
            if let Some(p) = ps.get(k - a) {
                pairs.push((is[a], *p));
            }
        }
    }
    let mut out = Vec::new();
    for (i, p) in pairs {
        if out.len() >= cap {
            break;
        }
        let bottom = corpus.morphisms.iter().find(|b| b.source == i.target && b.target == p.target);
        let Some(bottom) = bottom else { continue };
        let want: Vec<usize> = bottom.f.after(&i.f).mmap().to_vec();
        let (a, e) = (i.f.source(), p.f.source());
        let mut top = None;
        FunctorSearch::new(a, e).run(|o, mm| {
            if mm.iter().map(|&x| p.f.mor(x)).eq(want.iter().copied()) {
                top = Some(FinFunctor::new_unchecked(a.clone(), e.clone(), o.to_vec(), mm.to_vec()));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(top) = top {
            let problem = LiftingProblem::new(i.f.clone(), p.f.clone(), top, bottom.f.clone());
            out.extend(problem.ok());
        }
    }
    out
}

fn lifting_completeness(corpus: &Corpus, _: &SuiteSettings) -> Result<String, String> {
    let batch = squares(corpus, |m| m.flags.normal, LIFTING_SQUARES);
    if batch.len() < 100 {
        return Err(format!("only {} squares were generated", batch.len()));
    }
    for (k, problem) in batch.iter().enumerate() {
        let iw = match classify_equivalence(&problem.i).report().and_then(|r| r.injective.clone()) {
            Some(w) => w,
            None => return Err(format!("square {k}: i lost its injective-equivalence witness")),
        };
        let cleavage = build_normal_cleavage(&problem.p).map_err(|e| format!("square {k}: {e}"))?;
        let h = solve_lifting(problem, &iw, &cleavage).map_err(|e| format!("square {k}: {e}"))?;
        if !problem.is_filler(&h) {
            return Err(format!("square {k}: returned map is not a filler"));
        }
    }
    let control = squares(corpus, |m| !m.flags.normal, NON_NORMAL_SQUARES);
    if control.len() < 10 {
        return Err(format!("only {} non-normal squares were generated", control.len()));
    }
    let unfillable = control.iter().filter(|p| !p.has_filler()).count();
    if unfillable == 0 {
        return Err(format!("all {} non-normal squares have fillers", control.len()));
    }
    Ok(format!("{} squares filled; {unfillable} of {} non-normal squares unfillable", batch.len(), control.len()))
}

fn nif_pullback_oracle(corpus: &Corpus, _: &SuiteSettings) -> Result<String, String> {
    let cospans = corpus.cospans();
    for &(fi, gi) in &cospans {
        let (f, g) = (&corpus.morphisms[fi], &corpus.morphisms[gi]);
        let label = format!("({}, {})", f.name, g.name);
        let cleavage = build_normal_cleavage(&f.f).map_err(|e| format!("{label}: {e}"))?;
        let nif = pullback_along_normal_isofibration(&f.f, &cleavage, &g.f).map_err(|e| format!("{label}: {e}"))?;
        let strict = pullback_strict(&f.f, &g.f);
        let iso = iso_over(&nif.witness, &strict).ok_or_else(|| format!("{label}: no isomorphism over the cospan"))?;
        if !iso.is_isomorphism() || iso != nif.comparison {
            return Err(format!("{label}: comparison is not the isomorphism over the cospan"));
        }
    }
    Ok(format!("{} cospans", cospans.len()))
}

fn tower_oracle(corpus: &Corpus, s: &SuiteSettings) -> Result<String, String> {
    let towers = corpus.towers(s.tower_bound);
    let mut cones = 0;
    let mut by_length = vec![0usize; s.tower_bound + 1];
    for t in &towers {
        let label = t.iter().map(|&i| corpus.label(i)).collect::<Vec<_>>().join(" ⟵ ");
        let base = corpus.morphisms[t[0]].f.target().clone();
        let maps: Vec<FinFunctor> = t.iter().map(|&i| corpus.morphisms[i].f.clone()).collect();
        let cleavages = maps.iter().map(build_normal_cleavage).collect::<crate::Result<Vec<_>>>();
        let tower = cleavages.and_then(|c| Tower::new(base, maps, c)).map_err(|e| format!("{label}: {e}"))?;
        let limit = tower_limit(&tower).map_err(|e| format!("{label}: {e}"))?;
        if iso_over(&limit.witness, &strict_tower_limit(&tower)).is_none() {
            return Err(format!("{label}: not isomorphic to the strict limit"));
        }
        cones += limit.identity_checks;
        by_length[t.len()] += 1;
    }
    let counts: Vec<String> = (1..by_length.len()).map(|k| format!("{}×{k}", by_length[k])).collect();
    Ok(format!("towers by length [{}]; {cones} test cones", counts.join(", ")))
}

fn groth_leibniz(_: &Corpus, _: &SuiteSettings) -> Result<String, String> {
    let w = run_counterexample(CounterexampleName::GrothLeibniz).map_err(|e| e.to_string())?;
    let discrete = w.claim("discrete_isofibration").map(|c| c.observed);
    let groth = w.claim("grothendieck_fibration");
    if discrete != Some(true) {
        return Err("not a discrete isofibration".into());
    }
    let groth = groth.ok_or("missing Grothendieck claim")?;
    if groth.observed {
        return Err("unexpectedly a Grothendieck fibration".into());
    }
    let locus = groth.locus.clone().unwrap_or_default();
    if locus != "(1,0)→(1,1)" {
        return Err(format!("failing arrow is {locus}"));
    }
    if !w.passed() {
        return Err("a catalog claim fails".into());
    }
    Ok(format!("discrete isofibration, not Grothendieck; failing arrow {locus}"))
}

fn nip_dichotomy(_: &Corpus, _: &SuiteSettings) -> Result<String, String> {
    let run = |t| nip_square_filler(t, 3).map_err(|e| e.to_string());
    let (set, set2) = (run(Topos::FinSet)?, run(Topos::FinSetArrow)?);
    let (squares, _) = match (&set, &set2) {
        (NipOutcome::AllFill { squares }, NipOutcome::Counterexample(c)) => (*squares, c),
        _ => return Err("unexpected outcome".into()),
    };
    if run(Topos::FinSet)? != set || run(Topos::FinSetArrow)? != set2 {
        return Err("repeated runs differ".into());
    }
    Ok(format!("FinSet: all {squares} squares fill; FinSet^𝟚: counterexample found; deterministic"))
}

fn fy_dichotomy(_: &Corpus, _: &SuiteSettings) -> Result<String, String> {
    let mut cases = 0;
    for size in 0..=4 {
        for alpha in 2..=4 {
            let label = format!("fy_family({size},{alpha})");
            let w = run_counterexample(CounterexampleName::FyFamily { size, alpha })
                .map_err(|e| format!("{label}: {e}"))?;
            let observed = |p: &str| w.claim(p).map(|c| c.observed);
            if observed("f_y_has_section") != Some(size < alpha) {
                return Err(format!("{label}: section exists iff k < α fails"));
            }
            for p in ["f_y_is_normal_isofibration", "pi_y_is_retract_equivalence", "s_y_to_1_is_retract_equivalence"] {
                if observed(p) != Some(true) {
                    return Err(format!("{label}: {p} fails"));
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn nerve_and_powers(corpus: &Corpus, s: &SuiteSettings) -> Result<String, String> {
    for c in &corpus.categories {
        let pi =
            classifying_category(&nerve_truncated(&c.cat), s.word_bound).map_err(|e| format!("{}: {e}", c.name))?;
        let eps = counit(&c.cat, &pi);
        if eps.check().is_err() || !eps.is_isomorphism() || find_isomorphism(&pi.cat, &c.cat).is_none() {
            return Err(format!("{}: ΠN is not isomorphic to the category", c.name));
        }
    }
    let arrow = Builtin::Arrow.arc();
    let mut cases: Vec<(String, TruncSSet, _)> = vec![
        ("(Δ[1], arrow)".into(), standard_simplex(1), arrow.clone()),
        ("(N free_iso, arrow)".into(), nerve_truncated(&Builtin::FreeIso.build()), arrow),
    ];
    for c in &corpus.categories {
        cases.push((format!("(Δ[0], {})", c.name), standard_simplex(0), c.cat.clone()));
    }
    for (label, x, y) in &cases {
        let r = check_powers_iso(x, y, 2, s.budget, s.word_bound).map_err(|e| format!("{label}: {e}"))?;
        if !r.passed {
            let why = r.dims.iter().find_map(|d| d.mismatch.clone()).unwrap_or_default();
            return Err(format!("{label}: {why}"));
        }
    }
    Ok(format!("{} categories; {} powers cases", corpus.categories.len(), cases.len()))
}

fn minimal_retract(corpus: &Corpus, s: &SuiteSettings) -> Result<String, String> {
    let mut n = 0;
    for m in corpus.normal_isofibrations() {
        let cleavage = build_normal_cleavage(&m.f).map_err(|e| fail(m, e))?;
        let w = minimal_retract_witness(&m.f, &cleavage, s.budget).map_err(|e| fail(m, e))?;
        w.check().map_err(|e| fail(m, e))?;
        n += 1;
    }
    Ok(format!("{n} normal isofibrations"))
}

fn wf_biconditionals(corpus: &Corpus, s: &SuiteSettings) -> Result<String, String> {
    for m in &corpus.morphisms {
        let wf = compute_wf(&m.f, s.budget).map_err(|e| fail(m, e))?;
        if !wf.summary.holds() {
            return Err(fail(m, format!("{:?}", wf.summary)));
        }
    }
    Ok(format!("{} morphisms", corpus.morphisms.len()))
}
