use std::collections::BTreeMap;

use fincosmos::fincat::{FinCat, FinFunctor, NatTrans, RawCategory};
use fincosmos::twolimits::LimitWitness;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub budget: usize,
    pub tower_bound: usize,
    pub word_bound: usize,
}

/// One report per command run. Everything except `millis` is a function of
/// the inputs and settings.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    /// SHA-256 of every input file read, keyed by path.
    pub inputs: BTreeMap<String, String>,
    pub payload: Value,
    pub passed: bool,
    pub millis: u128,
    pub settings: Settings,
}

/// What a command computed, and whether its claims hold.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub payload: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn pass(payload: Value) -> Self {
        Outcome { payload, passed: true }
    }

    pub fn new(payload: Value, passed: bool) -> Self {
        Outcome { payload, passed }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn category(c: &FinCat) -> Value {
    serde_json::to_value(RawCategory::from_cat(c)).expect("categories serialize")
}

/// A functor by its object and morphism maps, named as in the source and
/// target categories.
pub fn functor(f: &FinFunctor) -> Value {
    let (s, t) = (f.source(), f.target());
    let omap: BTreeMap<&str, &str> = s.objects().map(|o| (s.object_name(o), t.object_name(f.obj(o)))).collect();
    let mmap: BTreeMap<&str, &str> = s.morphisms().map(|m| (s.name(m), t.name(f.mor(m)))).collect();
    json!({ "omap": omap, "mmap": mmap })
}

pub fn transformation(t: &NatTrans) -> Value {
    let (c, d) = (t.domain_cat(), t.codomain_cat());
    let comps: BTreeMap<&str, &str> = c.objects().map(|o| (c.object_name(o), d.name(t.component(o)))).collect();
    json!({ "components": comps })
}

pub fn witness(w: &LimitWitness) -> Value {
    json!({
        "apex": category(&w.apex),
        "projections": w.projections.iter().map(functor).collect::<Vec<_>>(),
        "structure_cells": w.structure_cells.iter().map(transformation).collect::<Vec<_>>(),
        "certificate": w.certificate,
    })
}

pub fn render(envelope: &ReportEnvelope, pretty: bool) -> String {
    let out = if pretty { serde_json::to_string_pretty(envelope) } else { serde_json::to_string(envelope) };
    out.expect("reports serialize")
}
