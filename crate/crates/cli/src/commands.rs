use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::thread;

use fincosmos::corpus::Corpus;
use fincosmos::cosmos::{check_fragment, nip_square_filler, CosmosFragment, IsofibrationClass, Topos};
use fincosmos::counterexamples::{run_counterexample, CounterexampleName};
use fincosmos::fibrations::{
    build_normal_cleavage, classify_fibration, compute_wf, factorize_wfs, leibniz_power, solve_lifting, LiftingProblem,
};
use fincosmos::fincat::raw::{CatRef, FunctorRef, Loader};
use fincosmos::fincat::{
    classify_equivalence, EquivalenceVerdict, FinCat, FinFunctor, NatTrans, RawCategory, RawFunctor, RawTransformation,
};
use fincosmos::nerve::{
    check_powers_iso, check_two_coskeletal, classifying_category, nerve_truncated, RawSSet, TruncSSet,
};
use fincosmos::suite::{run_criterion, CriterionResult, SuiteSettings, CRITERIA};
use fincosmos::twolimits::{
    equifier, inserter, isocomma, pseudolimit_of_arrow, pullback_along_normal_isofibration, pullback_strict,
    split_idempotent, tower_limit, Tower,
};
use fincosmos::{Error, Result};
use serde_json::{json, Value};

use crate::cli::{Command, Kind, LimitCommand};
use crate::report::{self, Outcome, ReportEnvelope, Settings};

pub struct Context {
    pub loader: Loader,
    pub settings: Settings,
}

fn base_of(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new(""))
}

fn path_ref(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

fn malformed(path: &Path, e: serde_json::Error) -> Error {
    Error::Malformed(format!("{}: {e}", path.display()))
}

impl Context {
    pub fn new(settings: Settings) -> Self {
        Context { loader: Loader::new(""), settings }
    }

    /// SHA-256 of every file read so far.
    pub fn digests(&self) -> BTreeMap<String, String> {
        self.loader.files.iter().map(|(p, bytes)| (p.display().to_string(), report::digest(bytes))).collect()
    }

    fn functor(&mut self, path: &Path) -> Result<FinFunctor> {
        self.loader.functor(&FunctorRef::Named(path_ref(path)))
    }

    fn category(&mut self, r: &str) -> Result<Arc<FinCat>> {
        self.loader.category(&CatRef::Named(r.to_string()))
    }

    /// Runs `f` with a loader resolving references relative to `path`.
    fn nested<T>(&mut self, path: &Path, f: impl FnOnce(&mut Loader) -> Result<T>) -> Result<T> {
        let mut nested = Loader::new(base_of(path));
        let out = f(&mut nested);
        self.loader.files.extend(nested.files);
        out
    }

    fn transformation(&mut self, path: &Path) -> Result<NatTrans> {
        let raw: RawTransformation = self.loader.read_json(path)?;
        self.nested(path, |l| l.transformation(&raw))
    }

    fn sset(&mut self, path: &Path) -> Result<TruncSSet> {
        let raw: RawSSet = self.loader.read_json(path)?;
        TruncSSet::from_raw(&raw)
    }
}

pub fn run(ctx: &mut Context, command: &Command) -> Result<Outcome> {
    let budget = ctx.settings.budget;
    match command {
        Command::Validate { file, kind } => validate(ctx, file, *kind),
        Command::Classify(a) => {
            let f = ctx.functor(&a.functor)?;
            let report = classify_fibration(&f);
            Ok(Outcome::pass(json!({
                "flags": report.flags,
                "failures": {
                    "representable": report.representable_failure,
                    "discrete": report.discrete_failure,
                    "grothendieck": report.grothendieck_failure,
                },
                "equivalence": equivalence(&f),
            })))
        }
        Command::Factorize(a) => {
            let f = ctx.functor(&a.functor)?;
            let fact = factorize_wfs(&f, budget)?;
            let claims = json!({
                "d_injective_equivalence": classify_equivalence(&fact.d).is_injective(),
                "v_normal_isofibration": classify_fibration(&fact.v).flags.normal,
                "v_after_d_is_f": fact.v.after(&fact.d) == f,
            });
            let passed = claims.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
            let payload = json!({
                "claims": claims,
                "pseudolimit": report::category(&fact.pseudolimit.l),
                "d": report::functor(&fact.d),
                "v": report::functor(&fact.v),
            });
            Ok(Outcome::new(payload, passed))
        }
        Command::Lift { i, p, top, bottom } => {
            let (i, p, top, bottom) = (ctx.functor(i)?, ctx.functor(p)?, ctx.functor(top)?, ctx.functor(bottom)?);
            lift(LiftingProblem::new(i, p, top, bottom)?)
        }
        Command::Limit(l) => limit(ctx, l),
        Command::Leibniz { j, p } => {
            let (j, p) = (ctx.functor(j)?, ctx.functor(p)?);
            let lp = leibniz_power(&j, &p, budget)?;
            Ok(Outcome::pass(json!({
                "flags": lp.report.flags,
                "pullback": { "objects": lp.pullback.apex.num_objects(), "morphisms": lp.pullback.apex.num_morphisms() },
                "induced": report::functor(&lp.induced),
            })))
        }
        Command::Wf(a) => {
            let f = ctx.functor(&a.functor)?;
            let wf = compute_wf(&f, budget)?;
            let passed = wf.summary.holds();
            Ok(Outcome::new(json!({ "summary": wf.summary, "w": report::functor(&wf.w) }), passed))
        }
        Command::CosmosCheck { categories, class } => {
            let chosen: IsofibrationClass = class.parse()?;
            let objects = categories.iter().map(|c| Ok((c.clone(), ctx.category(c)?))).collect::<Result<Vec<_>>>()?;
            let fragment =
                CosmosFragment { objects, chosen, power_budget: budget, tower_bound: ctx.settings.tower_bound };
            let report = check_fragment(&fragment)?;
            let passed = report.passed;
            Ok(Outcome::new(serde_json::to_value(report).expect("serializes"), passed))
        }
        Command::Nip { topos, bound } => {
            let topos: Topos = topos.parse()?;
            let outcome = nip_square_filler(topos, *bound)?;
            Ok(Outcome::pass(json!({ "topos": topos.to_string(), "bound": bound, "result": outcome })))
        }
        Command::Nerve { category } => {
            let c = ctx.category(category)?;
            let n = nerve_truncated(&c);
            let cosk = check_two_coskeletal(&n);
            let passed = cosk.passed;
            Ok(Outcome::new(json!({ "sset": n.to_raw(), "two_coskeletal": cosk }), passed))
        }
        Command::ClassifySset { sset } => {
            let x = ctx.sset(sset)?;
            let pi = classifying_category(&x, ctx.settings.word_bound)?;
            let edges: BTreeMap<&str, &str> =
                (0..x.count(1)).map(|e| (x.name(1, e), pi.cat.name(pi.edge_image[e]))).collect();
            Ok(Outcome::pass(json!({ "category": report::category(&pi.cat), "edge_image": edges })))
        }
        Command::PowersCheck { sset, category, dim } => {
            let x = ctx.sset(sset)?;
            let y = ctx.category(category)?;
            let r = check_powers_iso(&x, &y, *dim, budget, ctx.settings.word_bound)?;
            let passed = r.passed;
            Ok(Outcome::new(serde_json::to_value(r).expect("serializes"), passed))
        }
        Command::Counterexample { name } => {
            let w = run_counterexample(name.parse::<CounterexampleName>()?)?;
            let passed = w.passed();
            Ok(Outcome::new(serde_json::to_value(w).expect("serializes"), passed))
        }
        Command::Suite { .. } => Err(Error::Invalid("suites produce several reports; use run_suite".into())),
    }
}

fn equivalence(f: &FinFunctor) -> Value {
    match classify_equivalence(f) {
        EquivalenceVerdict::NotEquivalence(reason) => json!({ "equivalence": false, "reason": reason }),
        EquivalenceVerdict::Equivalence(r) => json!({
            "equivalence": true,
            "isomorphism": r.isomorphism,
            "retract": r.is_retract(),
            "injective": r.is_injective(),
        }),
    }
}

fn lift(problem: LiftingProblem) -> Result<Outcome> {
    let witness = classify_equivalence(&problem.i).report().and_then(|r| r.injective.clone());
    let normal = classify_fibration(&problem.p).flags.normal;
    let (method, filler) = match witness {
        Some(iw) if normal => {
            let cleavage = build_normal_cleavage(&problem.p)?;
            ("solve_lifting", Some(solve_lifting(&problem, &iw, &cleavage)?))
        }
        _ => ("exhaustive", problem.fillers(1).into_iter().next()),
    };
    let verified = filler.as_ref().is_some_and(|h| problem.is_filler(h));
    let payload = json!({
        "i_injective_equivalence": classify_equivalence(&problem.i).is_injective(),
        "p_normal_isofibration": normal,
        "method": method,
        "filler": filler.as_ref().map(report::functor),
        "verified": verified,
    });
    Ok(Outcome::new(payload, verified))
}

fn limit(ctx: &mut Context, command: &LimitCommand) -> Result<Outcome> {
    let budget = ctx.settings.budget;
    let certified = |w: &fincosmos::twolimits::LimitWitness| w.certificate.verified;
    match command {
        LimitCommand::Pullback(c) => {
            let (f, g) = (ctx.functor(&c.f)?, ctx.functor(&c.g)?);
            let w = pullback_strict(&f, &g);
            Ok(Outcome::new(report::witness(&w), certified(&w)))
        }
        LimitCommand::Isocomma(c) => {
            let (f, g) = (ctx.functor(&c.f)?, ctx.functor(&c.g)?);
            let iso = isocomma(&f, &g);
            Ok(Outcome::new(report::witness(&iso.witness), certified(&iso.witness)))
        }
        LimitCommand::Pseudolimit { f } => {
            let f = ctx.functor(f)?;
            let pl = pseudolimit_of_arrow(&f, budget)?;
            let passed = pl.v.after(&pl.d) == f;
            Ok(Outcome::new(
                json!({
                    "apex": report::category(&pl.l),
                    "u": report::functor(&pl.u),
                    "v": report::functor(&pl.v),
                    "lambda": report::transformation(&pl.lambda),
                    "d": report::functor(&pl.d),
                }),
                passed,
            ))
        }
        LimitCommand::Inserter(c) => {
            let (f, g) = (ctx.functor(&c.f)?, ctx.functor(&c.g)?);
            let w = inserter(&f, &g, budget)?;
            Ok(Outcome::new(report::witness(&w), certified(&w)))
        }
        LimitCommand::Equifier { alpha, beta } => {
            let (a, b) = (ctx.transformation(alpha)?, ctx.transformation(beta)?);
            let b = NatTrans::new(a.source().clone(), a.target().clone(), b.components().to_vec(), false)
                .map_err(|_| Error::Invalid("equifier of non-parallel transformations".into()))?;
            let w = equifier(&a, &b, budget)?;
            Ok(Outcome::new(report::witness(&w), certified(&w)))
        }
        LimitCommand::Split(a) => {
            let e = ctx.functor(&a.functor)?;
            let s = split_idempotent(&e)?;
            let w = s.witness();
            let mut payload = report::witness(&w);
            payload["retraction"] = report::functor(&s.r);
            Ok(Outcome::new(payload, certified(&w)))
        }
        LimitCommand::PullbackNif(c) => {
            let (f, g) = (ctx.functor(&c.f)?, ctx.functor(&c.g)?);
            let cleavage = build_normal_cleavage(&f)?;
            let nif = pullback_along_normal_isofibration(&f, &cleavage, &g)?;
            let mut payload = report::witness(&nif.witness);
            payload["idempotent"] = report::functor(&nif.e);
            payload["comparison"] = report::functor(&nif.comparison);
            let passed = certified(&nif.witness) && nif.comparison.is_isomorphism();
            Ok(Outcome::new(payload, passed))
        }
        LimitCommand::Tower { maps } => {
            if maps.len() > ctx.settings.tower_bound {
                return Err(Error::EnumerationBudgetExceeded { bound: ctx.settings.tower_bound, required: maps.len() });
            }
            let maps = maps.iter().map(|m| ctx.functor(m)).collect::<Result<Vec<_>>>()?;
            let base = maps[0].target().clone();
            let maps: Vec<FinFunctor> = retarget_chain(maps);
            let cleavages = maps.iter().map(build_normal_cleavage).collect::<Result<Vec<_>>>()?;
            let tower = Tower::new(base, maps, cleavages)?;
            let limit = tower_limit(&tower)?;
            let mut payload = report::witness(&limit.witness);
            payload["comparison"] = report::functor(&limit.comparison);
            payload["identity_checks"] = json!(limit.identity_checks);
            let passed = certified(&limit.witness) && limit.comparison.is_isomorphism();
            Ok(Outcome::new(payload, passed))
        }
    }
}

/// Makes consecutive maps share their middle category, which may have been
/// loaded twice from inline definitions.
fn retarget_chain(maps: Vec<FinFunctor>) -> Vec<FinFunctor> {
    let mut out: Vec<FinFunctor> = Vec::with_capacity(maps.len());
    for f in maps {
        let f = match out.last() {
            Some(prev) if **prev.source() == **f.target() => f.retarget(f.source().clone(), prev.source().clone()),
            _ => f,
        };
        out.push(f);
    }
    out
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Auto => "auto",
        Kind::Category => "category",
        Kind::Functor => "functor",
        Kind::Transformation => "transformation",
    }
}

fn detect(value: &Value) -> Kind {
    match value {
        Value::Object(o) if o.contains_key("components") => Kind::Transformation,
        Value::Object(o) if o.contains_key("omap") => Kind::Functor,
        _ => Kind::Category,
    }
}

fn validate(ctx: &mut Context, file: &Path, kind: Kind) -> Result<Outcome> {
    let value: Value = ctx.loader.read_json(file)?;
    let kind = if kind == Kind::Auto { detect(&value) } else { kind };
    let checked = match kind {
        Kind::Category | Kind::Auto => {
            let raw: RawCategory = serde_json::from_value(value).map_err(|e| malformed(file, e))?;
            raw.validate().map(|c| json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() }))
        }
        Kind::Functor => {
            let raw: RawFunctor = serde_json::from_value(value).map_err(|e| malformed(file, e))?;
            ctx.nested(file, |l| l.raw_functor(&raw)).map(
                |f| json!({ "source_objects": f.source().num_objects(), "target_objects": f.target().num_objects() }),
            )
        }
        Kind::Transformation => {
            let raw: RawTransformation = serde_json::from_value(value).map_err(|e| malformed(file, e))?;
            ctx.nested(file, |l| l.transformation(&raw)).map(|t| json!({ "components": t.components().len() }))
        }
    };
    match checked {
        Ok(summary) => Ok(Outcome::pass(json!({ "kind": kind_name(kind), "valid": true, "summary": summary }))),
        Err(e) => match violation(&e) {
            Some(v) => Ok(Outcome::new(json!({ "kind": kind_name(kind), "valid": false, "violation": v }), false)),
            None => Err(e),
        },
    }
}

/// Law violations are failed claims; anything else is a format error.
fn violation(e: &Error) -> Option<Value> {
    let message = e.to_string();
    Some(match e {
        Error::AssociativityViolation { h, g, f, left, right } => json!({
            "law": "associativity",
            "triple": [h, g, f],
            "left": left,
            "right": right,
            "message": message,
        }),
        Error::IdentityViolation { morphism, .. } => {
            json!({ "law": "identity", "morphism": morphism, "message": message })
        }
        Error::BoundaryViolation { g, f, gf } => {
            json!({ "law": "boundary", "pair": [g, f], "composite": gf, "message": message })
        }
        Error::NotFunctorial(_) => json!({ "law": "functoriality", "message": message }),
        Error::NotNatural { morphism } => json!({ "law": "naturality", "morphism": morphism, "message": message }),
        Error::NotInvertible { object } => json!({ "law": "invertibility", "object": object, "message": message }),
        _ => return None,
    })
}

/// Runs the acceptance battery, one envelope per criterion, criteria
/// evaluated concurrently and reported in order.
pub fn run_suite(settings: Settings) -> Vec<ReportEnvelope> {
    let corpus = Corpus::standard();
    let suite =
        SuiteSettings { budget: settings.budget, tower_bound: settings.tower_bound, word_bound: settings.word_bound };
    let mut results: Vec<CriterionResult> = thread::scope(|s| {
        let corpus = &corpus;
        let handles: Vec<_> =
            (1..=CRITERIA.len()).map(|id| (id, s.spawn(move || run_criterion(id, corpus, &suite)))).collect();
        handles
            .into_iter()
            .filter_map(|(id, h)| {
                h.join().unwrap_or_else(|_| {
                    Some(CriterionResult {
                        id,
                        name: CRITERIA[id - 1].0.to_string(),
                        passed: false,
                        detail: "the check panicked".into(),
                        millis: 0,
                    })
                })
            })
            .collect()
    });
    results.sort_by_key(|r| r.id);
    results
        .into_iter()
        .map(|r| ReportEnvelope {
            command: "suite acceptance".into(),
            inputs: BTreeMap::new(),
            payload: json!({ "id": r.id, "criterion": r.name, "detail": r.detail }),
            passed: r.passed,
            millis: r.millis,
            settings,
        })
        .collect()
}
