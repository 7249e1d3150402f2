use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use fincosmos::fincat::{Builtin, FinCat, FinFunctor, RawFunctor};
use fincosmos::nerve::graph_sset;
use fincosmos::twolimits::{functor_category, DEFAULT_BUDGET};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn report(&self) -> Value {
        serde_json::from_str(self.stdout.trim()).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fincosmos")).current_dir(dir).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, value: &Value) {
    std::fs::write(dir.path().join(name), serde_json::to_vec_pretty(value).unwrap()).unwrap();
}

fn write_functor(dir: &TempDir, name: &str, f: &FinFunctor) {
    write(dir, name, &serde_json::to_value(RawFunctor::from_functor(f)).unwrap());
}

/// Evaluation at object 1, `C^𝕀 → C`.
fn cod(c: &Arc<FinCat>) -> FinFunctor {
    functor_category(&Builtin::FreeIso.arc(), c, DEFAULT_BUDGET).unwrap().evaluate(1)
}

/// The functor `source → target` given by name maps, with files for
/// categories referenced by path or builtin name.
fn named(source: &str, target: &str, omap: Value, mmap: Value) -> Value {
    json!({ "source": source, "target": target, "omap": omap, "mmap": mmap })
}

fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    let b = "builtin:";
    write(
        &dir,
        "to_one.json",
        &named(
            &format!("{b}free_iso"),
            &format!("{b}terminal"),
            json!({"0": "*", "1": "*"}),
            json!({"i": "id_*", "i^-1": "id_*"}),
        ),
    );
    write(
        &dir,
        "arrow_to_one.json",
        &named(&format!("{b}arrow"), &format!("{b}terminal"), json!({"0": "*", "1": "*"}), json!({"0->1": "id_*"})),
    );
    write(&dir, "point0.json", &named(&format!("{b}terminal"), &format!("{b}free_iso"), json!({"*": "0"}), json!({})));
    write(&dir, "point1.json", &named(&format!("{b}terminal"), &format!("{b}free_iso"), json!({"*": "1"}), json!({})));
    write(&dir, "one_id.json", &named(&format!("{b}terminal"), &format!("{b}terminal"), json!({"*": "*"}), json!({})));
    write(
        &dir,
        "iso_id.json",
        &named(
            &format!("{b}free_iso"),
            &format!("{b}free_iso"),
            json!({"0": "0", "1": "1"}),
            json!({"i": "i", "i^-1": "i^-1"}),
        ),
    );
    write(
        &dir,
        "const1.json",
        &named("arrow.json", "arrow.json", json!({"0": "1", "1": "1"}), json!({"0->1": "id_1"})),
    );
    let arrow = fincosmos::fincat::RawCategory::from_cat(&Builtin::Arrow.build());
    write(&dir, "arrow.json", &serde_json::to_value(arrow).unwrap());
    write(&dir, "c0.json", &named(&format!("{b}terminal"), &format!("{b}arrow"), json!({"*": "0"}), json!({})));
    write(&dir, "c1.json", &named(&format!("{b}terminal"), &format!("{b}arrow"), json!({"*": "1"}), json!({})));
    write(&dir, "alpha.json", &json!({"source": "point0.json", "target": "point1.json", "components": {"*": "i"}}));
    write_functor(&dir, "cod_arrow.json", &cod(&Builtin::Arrow.arc()));
    write_functor(&dir, "cod_iso.json", &cod(&Builtin::FreeIso.arc()));
    dir
}

#[test]
fn classify_reports_flags() {
    let dir = fixtures();
    let r = run(dir.path(), &["classify", "--functor", "cod_arrow.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let flags = &r.report()["payload"]["flags"];
    assert_eq!(flags["representable"], true);
    assert_eq!(flags["normal"], true);
    // every functor 𝕀 → 𝟚 is constant, so evaluation is an isomorphism
    assert_eq!(flags["discrete"], true);
    let r = run(dir.path(), &["classify", "--functor", "cod_iso.json"]);
    let flags = &r.report()["payload"]["flags"];
    assert_eq!((flags["representable"].clone(), flags["discrete"].clone()), (json!(true), json!(false)));
}

#[test]
fn groth_leibniz_replays() {
    let dir = fixtures();
    let r = run(dir.path(), &["counterexample", "groth_leibniz"]);
    assert_eq!(r.code, 0);
    let report = r.report();
    let claims = report["payload"]["claims"].as_array().unwrap();
    let groth = claims.iter().find(|c| c["predicate"] == "grothendieck_fibration").unwrap();
    assert_eq!(groth["observed"], false);
    assert_eq!(groth["locus"], "(1,0)→(1,1)");
}

#[test]
fn validate_reports_the_associativity_defect() {
    let dir = fixtures();
    // aa = b, ab = a, ba = b: (aa)a = b but a(aa) = a
    let mut comp = vec![];
    for x in ["1", "a", "b"] {
        comp.push(json!({"g": "1", "f": x, "gf": x}));
        if x != "1" {
            comp.push(json!({"g": x, "f": "1", "gf": x}));
        }
    }
    for (g, f, gf) in [("a", "a", "b"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")] {
        comp.push(json!({"g": g, "f": f, "gf": gf}));
    }
    let morphisms: Vec<Value> = ["1", "a", "b"].iter().map(|m| json!({"name": m, "dom": "*", "cod": "*"})).collect();
    write(
        &dir,
        "broken.json",
        &json!({"objects": ["*"], "morphisms": morphisms, "identity": {"*": "1"}, "comp": comp}),
    );
    let r = run(dir.path(), &["validate", "broken.json"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    let v = &r.report()["payload"]["violation"];
    assert_eq!(v["law"], "associativity");
    assert_eq!(v["triple"].as_array().unwrap().len(), 3);

    let r = run(dir.path(), &["validate", "arrow.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report()["payload"]["summary"]["morphisms"], 3);
}

#[test]
fn format_errors_exit_two() {
    let dir = fixtures();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let r = run(dir.path(), &["validate", "bad.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty() && r.stderr.starts_with("error:"));

    // comp must list every composable pair
    write(
        &dir,
        "partial.json",
        &json!({
            "objects": ["0"], "morphisms": [{"name": "id", "dom": "0", "cod": "0"}],
            "identity": {"0": "id"}, "comp": []
        }),
    );
    assert_eq!(run(dir.path(), &["validate", "partial.json"]).code, 2);
    assert_eq!(run(dir.path(), &["nerve", "--category", "builtin:nonesuch"]).code, 2);
    assert_eq!(run(dir.path(), &["counterexample", "nonesuch"]).code, 2);
    assert_eq!(run(dir.path(), &["classify", "--functor", "missing.json"]).code, 2);
    assert_eq!(run(dir.path(), &["frobnicate"]).code, 2);
}

#[test]
fn budget_overruns_exit_two() {
    let dir = fixtures();
    let r = run(dir.path(), &["--budget", "1", "factorize", "--functor", "cod_iso.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("budget"), "{}", r.stderr);
    let r = run(dir.path(), &["--tower-bound", "1", "limit", "tower", "--map", "to_one.json", "--map", "iso_id.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn reports_are_deterministic_and_carry_digests() {
    let dir = fixtures();
    let a = run(dir.path(), &["factorize", "--functor", "cod_iso.json"]).report();
    let b = run(dir.path(), &["factorize", "--functor", "cod_iso.json"]).report();
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["passed"], true);
    let bytes = std::fs::read(dir.path().join("cod_iso.json")).unwrap();
    assert_eq!(a["inputs"]["cod_iso.json"], hex::encode(Sha256::digest(&bytes)));
    assert_eq!(a["settings"]["budget"], DEFAULT_BUDGET);
}

#[test]
fn pretty_output_is_the_same_report() {
    let dir = fixtures();
    let compact = run(dir.path(), &["classify", "--functor", "to_one.json"]);
    let pretty = run(dir.path(), &["--pretty", "classify", "--functor", "to_one.json"]);
    assert!(pretty.stdout.trim().lines().count() > 1);
    let (mut a, mut b) = (compact.report(), pretty.report());
    a["millis"] = json!(0);
    b["millis"] = json!(0);
    assert_eq!(a, b);
}

#[test]
fn limits() {
    let dir = fixtures();
    let cases: Vec<Vec<&str>> = vec![
        vec!["limit", "pullback", "--f", "to_one.json", "--g", "arrow_to_one.json"],
        vec!["limit", "isocomma", "--f", "point0.json", "--g", "point1.json"],
        vec!["limit", "pseudolimit", "--f", "point0.json"],
        vec!["limit", "inserter", "--f", "c0.json", "--g", "c1.json"],
        vec!["limit", "equifier", "--alpha", "alpha.json", "--beta", "alpha.json"],
        vec!["limit", "split", "--functor", "const1.json"],
        vec!["limit", "pullback-nif", "--f", "to_one.json", "--g", "arrow_to_one.json"],
        vec!["limit", "tower", "--map", "to_one.json", "--map", "iso_id.json"],
    ];
    for args in cases {
        let r = run(dir.path(), &args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let report = r.report();
        assert_eq!(report["command"], format!("limit {}", args[1]));
        assert!(report["payload"]["apex"]["objects"].is_array(), "{args:?}");
    }
    // 𝕀 × 𝟚 has four objects
    let r = run(dir.path(), &["limit", "pullback-nif", "--f", "to_one.json", "--g", "arrow_to_one.json"]).report();
    assert_eq!(r["payload"]["apex"]["objects"].as_array().unwrap().len(), 4);
    // the isocomma of the two points of 𝕀 is a point
    let r = run(dir.path(), &["limit", "isocomma", "--f", "point0.json", "--g", "point1.json"]).report();
    assert_eq!(r["payload"]["apex"]["objects"].as_array().unwrap().len(), 1);
}

#[test]
fn nif_pullback_rejects_non_isofibrations() {
    let dir = fixtures();
    let r = run(dir.path(), &["limit", "pullback-nif", "--f", "point0.json", "--g", "point1.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn lifting() {
    let dir = fixtures();
    let r = run(
        dir.path(),
        &["lift", "--i", "point0.json", "--p", "to_one.json", "--top", "point1.json", "--bottom", "to_one.json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report();
    assert_eq!(report["payload"]["method"], "solve_lifting");
    assert_eq!(report["payload"]["filler"]["omap"]["0"], "1");

    // against a non-isofibration the square (1, 1) from point0 to itself has no filler
    let r = run(
        dir.path(),
        &["lift", "--i", "point0.json", "--p", "point0.json", "--top", "one_id.json", "--bottom", "iso_id.json"],
    );
    assert_eq!(r.code, 1);
    assert_eq!(r.report()["payload"]["filler"], Value::Null);
}

#[test]
fn leibniz_and_wf() {
    let dir = fixtures();
    let r = run(dir.path(), &["wf", "--functor", "cod_arrow.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(dir.path(), &["leibniz", "--j", "point1.json", "--p", "to_one.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report()["payload"]["flags"]["normal"], true);
}

#[test]
fn cosmos_check() {
    let dir = fixtures();
    let objects = ["builtin:terminal", "arrow.json", "builtin:free_iso"];
    let r = run(dir.path(), &[&["cosmos-check"], &objects[..]].concat());
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report()["payload"]["passed"], true);
    let r = run(dir.path(), &[&["cosmos-check", "--class", "equivalences"], &objects[..]].concat());
    assert_eq!(r.code, 1);
    assert_eq!(run(dir.path(), &["cosmos-check", "--class", "nonesuch", "arrow.json"]).code, 2);
}

#[test]
fn nip() {
    let dir = fixtures();
    let r = run(dir.path(), &["nip", "--topos", "finset", "--bound", "2"]).report();
    assert_eq!(r["payload"]["result"]["outcome"], "all_fill");
    let r = run(dir.path(), &["nip", "--topos", "finset_arrow", "--bound", "3"]).report();
    assert_eq!(r["payload"]["result"]["outcome"], "counterexample");
    assert_eq!(run(dir.path(), &["nip", "--bound", "9"]).code, 2);
}

#[test]
fn nerve_round_trips_through_classify_sset() {
    let dir = fixtures();
    let r = run(dir.path(), &["nerve", "--category", "builtin:free_iso"]);
    assert_eq!(r.code, 0);
    write(&dir, "n.json", &r.report()["payload"]["sset"]);
    let r = run(dir.path(), &["classify-sset", "--sset", "n.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let cat = &r.report()["payload"]["category"];
    assert_eq!(cat["objects"].as_array().unwrap().len(), 2);
    assert_eq!(cat["morphisms"].as_array().unwrap().len(), 4);

    let r = run(dir.path(), &["powers-check", "--sset", "n.json", "--category", "arrow.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report()["payload"]["passed"], true);
    assert_eq!(
        run(dir.path(), &["powers-check", "--sset", "n.json", "--category", "arrow.json", "--dim", "3"]).code,
        2
    );
}

#[test]
fn classify_sset_reports_the_word_bound() {
    let dir = fixtures();
    // the free monoid on a loop has no finite quotient to find
    let x = graph_sset(&["v"], &[("e", 0, 0)]);
    write(&dir, "loop.json", &serde_json::to_value(x.to_raw()).unwrap());
    let r = run(dir.path(), &["--word-bound", "6", "classify-sset", "--sset", "loop.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("word bound 6"), "{}", r.stderr);

    write(
        &dir,
        "partial.json",
        &json!({
            "simplices": [["v"], ["1_v"], ["(1_v,1_v)"], ["(1_v,1_v,1_v)"]],
            "faces": {}, "degeneracies": {}
        }),
    );
    assert_eq!(run(dir.path(), &["classify-sset", "--sset", "partial.json"]).code, 2);
}

#[test]
fn acceptance_suite_emits_one_report_per_criterion() {
    let dir = fixtures();
    let r = run(dir.path(), &["suite", "acceptance"]);
    let lines: Vec<Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    for (k, l) in lines.iter().enumerate() {
        assert_eq!(l["payload"]["id"], k + 1);
        assert_eq!(l["passed"], true, "{l}");
    }
    assert_eq!(r.code, 0);
}
