use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cosmos::{nip_square_filler, NipCounterexample, NipOutcome, SetMorphism, SetObject, Topos};
use crate::error::{Error, Result};
use crate::fibrations::{classify_fibration, leibniz_power};
use crate::fincat::{
    classify_equivalence, discrete, find_isomorphism, product, Builtin, CatBuilder, FinCat, FinFunctor, FunctorSearch,
    Obj, RawFunctor,
};
use crate::twolimits::{functor_category, DEFAULT_BUDGET};

use super::arrows::{classify_arrow_fibration, ArrowMorphism};

/// Largest `|Y|` and threshold accepted by the `f_Y` family.
pub const FY_MAX_SIZE: usize = 6;
pub const FY_MAX_THRESHOLD: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CounterexampleName {
    GrothLeibniz,
    NipCat2,
    FyFamily { size: usize, alpha: usize },
}

impl fmt::Display for CounterexampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterexampleName::GrothLeibniz => f.write_str("groth_leibniz"),
            CounterexampleName::NipCat2 => f.write_str("nip_cat2"),
            CounterexampleName::FyFamily { size, alpha } => write!(f, "fy_family({size},{alpha})"),
        }
    }
}

impl FromStr for CounterexampleName {
    type Err = Error;

    /// Accepts `groth_leibniz`, `nip_cat2` and `fy_family(k,α)`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(s.to_string());
        match s.trim() {
            "groth_leibniz" => Ok(CounterexampleName::GrothLeibniz),
            "nip_cat2" => Ok(CounterexampleName::NipCat2),
            other => {
                let args = other.strip_prefix("fy_family(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
                let (k, a) = args.split_once(',').ok_or_else(unknown)?;
                let size = k.trim().parse().map_err(|_| unknown())?;
                let alpha = a.trim().parse().map_err(|_| unknown())?;
                Ok(CounterexampleName::FyFamily { size, alpha })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub predicate: String,
    pub expected: bool,
    pub observed: bool,
    pub locus: Option<String>,
}

impl Claim {
    fn new(predicate: &str, expected: bool, observed: bool, locus: Option<String>) -> Self {
        Claim { predicate: predicate.to_string(), expected, observed, locus }
    }

    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

/// A reproducible witness: its inputs, the claims checked on them, and the
/// command that replays it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    pub replay: String,
    pub note: Option<String>,
}

impl Witness {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::holds)
    }

    pub fn claim(&self, predicate: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.predicate == predicate)
    }
}

pub fn run_counterexample(name: CounterexampleName) -> Result<Witness> {
    match name {
        CounterexampleName::GrothLeibniz => groth_leibniz(),
        CounterexampleName::NipCat2 => nip_cat2(),
        CounterexampleName::FyFamily { size, alpha } => fy_family(size, alpha),
    }
}

fn functor_json(f: &FinFunctor) -> Value {
    serde_json::to_value(RawFunctor::from_functor(f)).expect("functors serialize")
}

/// The endpoint restriction `𝟚^j: 𝟚^𝟚 → 𝟚 × 𝟚` for `j: 2 → 𝟚`, which is the
/// Leibniz power of `𝟚 → 1` by `j`.
fn groth_leibniz() -> Result<Witness> {
    let arrow = Builtin::Arrow.arc();
    let two = Builtin::TwoDiscrete.arc();
    let one = Builtin::Terminal.arc();
    let j = FinFunctor::new(two, arrow.clone(), vec![0, 1], vec![0, 2])?;
    let p = FinFunctor::to_terminal(arrow.clone(), one);

    let lp = leibniz_power(&j, &p, DEFAULT_BUDGET)?;
    let power = functor_category(&arrow, &arrow, DEFAULT_BUDGET)?;
    let square = product(&arrow, &arrow);
    let restriction = square.pair(&power.evaluate(0), &power.evaluate(1));
    let report = classify_fibration(&restriction);

    let image: Vec<String> = (0..restriction.source().num_objects())
        .map(|o| square.cat.object_name(restriction.obj(o)).to_string())
        .collect();
    let failure = report.grothendieck_failure.as_ref().map(|f| format!("{}→{}", f.dom, f.cod));
    let claims = vec![
        Claim::new("p_is_grothendieck_fibration", true, classify_fibration(&p).flags.grothendieck, None),
        Claim::new("j_is_injective_on_objects", true, j.is_injective_on_objects(), None),
        Claim::new(
            "leibniz_power_is_endpoint_restriction",
            true,
            find_isomorphism(lp.induced.source(), restriction.source()).is_some()
                && find_isomorphism(lp.induced.target(), restriction.target()).is_some()
                && lp.report.flags == report.flags,
            None,
        ),
        Claim::new(
            "full_subcategory_on_three_objects",
            true,
            restriction.is_full() && restriction.is_faithful() && restriction.is_injective_on_objects(),
            Some(image.join(", ")),
        ),
        Claim::new("discrete_isofibration", true, report.flags.discrete, None),
        Claim::new("grothendieck_fibration", false, report.flags.grothendieck, failure.clone()),
        Claim::new("failing_arrow_is_(1,0)→(1,1)", true, failure.as_deref() == Some("(1,0)→(1,1)"), failure),
    ];
    Ok(Witness {
        name: CounterexampleName::GrothLeibniz.to_string(),
        inputs: BTreeMap::from([
            ("j".to_string(), functor_json(&j)),
            ("p".to_string(), functor_json(&p)),
            ("restriction".to_string(), functor_json(&restriction)),
        ]),
        claims,
        replay: "counterexample groth_leibniz".into(),
        note: None,
    })
}

/// A chaotic category on the given object names.
fn chaotic_named(names: &[String]) -> FinCat {
    let mut b = CatBuilder::new();
    for n in names {
        b.add_object(n.clone());
    }
    let n = names.len();
    for x in 0..n {
        for y in 0..n {
            let m = b.add_morphism(format!("{}→{}", names[x], names[y]), x, y);
            if x == y {
                b.set_identity(x, m);
            }
        }
    }
    b.build(|g, f| (f / n) * n + g % n)
}

/// The functor between chaotic categories induced by a map of objects.
fn chaotic_functor(source: &Arc<FinCat>, target: &Arc<FinCat>, omap: &[Obj]) -> FinFunctor {
    let mmap = source.morphisms().map(|m| target.hom(omap[source.dom(m)], omap[source.cod(m)])[0]).collect();
    FinFunctor::new_unchecked(source.clone(), target.clone(), omap.to_vec(), mmap)
}

/// The arrow `X₀ → X₁` of chaotic categories on a set-valued arrow.
struct ChaoticArrow {
    structure: FinFunctor,
}

impl ChaoticArrow {
    fn new(x: &SetObject, label: &str) -> Self {
        let names = |k: usize, n: usize| (0..n).map(|i| format!("{label}{k}.{i}")).collect::<Vec<_>>();
        let x0 = Arc::new(chaotic_named(&names(0, x.sizes[0])));
        let x1 = Arc::new(chaotic_named(&names(1, x.sizes[1])));
        ChaoticArrow { structure: chaotic_functor(&x0, &x1, &x.structure) }
    }

    fn top(&self) -> &Arc<FinCat> {
        self.structure.source()
    }

    fn bottom(&self) -> &Arc<FinCat> {
        self.structure.target()
    }
}

fn chaotic_morphism(source: &ChaoticArrow, target: &ChaoticArrow, h: &SetMorphism) -> Result<ArrowMorphism> {
    ArrowMorphism::new(
        source.structure.clone(),
        target.structure.clone(),
        chaotic_functor(source.top(), target.top(), &h.components[0]),
        chaotic_functor(source.bottom(), target.bottom(), &h.components[1]),
    )
}

/// Applies the chaotic-category functor to the smallest split mono / split
/// epi square in `FinSet^𝟚` without a filler. The image of the split epi is
/// a representable isofibration in `Cat^𝟚` with no normal cleavage.
fn nip_cat2() -> Result<Witness> {
    let outcome = nip_square_filler(Topos::FinSetArrow, 3)?;
    let NipOutcome::Counterexample(cx) = &outcome else {
        return Ok(Witness {
            name: CounterexampleName::NipCat2.to_string(),
            inputs: BTreeMap::new(),
            claims: vec![Claim::new("finset_arrow_square_without_filler", true, false, None)],
            replay: "counterexample nip_cat2".into(),
            note: None,
        });
    };
    let NipCounterexample { a, b, c, d, i, retraction, p, section, top, bottom } = cx.as_ref();
    let (ca, cb, cc, cd) =
        (ChaoticArrow::new(a, "a"), ChaoticArrow::new(b, "b"), ChaoticArrow::new(c, "c"), ChaoticArrow::new(d, "d"));
    let ci = chaotic_morphism(&ca, &cb, i)?;
    let cr = chaotic_morphism(&cb, &ca, retraction)?;
    let cp = chaotic_morphism(&cc, &cd, p)?;
    let cs = chaotic_morphism(&cd, &cc, section)?;
    let ctop = chaotic_morphism(&ca, &cc, top)?;
    let cbottom = chaotic_morphism(&cb, &cd, bottom)?;

    let i_components = [&ci.top, &ci.bottom].iter().all(|f| classify_equivalence(f).is_injective());
    let p_flags = classify_arrow_fibration(&cp);
    let commutes = cp.after(&ctop) == cbottom.after(&ci);

    // exhaustive search for a diagonal h with h∘i = top and p∘h = bottom
    let mut filler = None;
    let tops = FunctorSearch::new(cb.top(), cc.top()).collect(usize::MAX)?;
    let bottoms = FunctorSearch::new(cb.bottom(), cc.bottom()).collect(usize::MAX)?;
    'search: for (o0, m0) in &tops {
        for (o1, m1) in &bottoms {
            let h0 = FinFunctor::new_unchecked(cb.top().clone(), cc.top().clone(), o0.clone(), m0.clone());
            let h1 = FinFunctor::new_unchecked(cb.bottom().clone(), cc.bottom().clone(), o1.clone(), m1.clone());
            let Ok(h) = ArrowMorphism::new(cb.structure.clone(), cc.structure.clone(), h0, h1) else {
                continue;
            };
            if h.after(&ci) == ctop && cp.after(&h) == cbottom {
                filler = Some(h);
                break 'search;
            }
        }
    }
    let claims = vec![
        Claim::new("square_commutes", true, commutes, None),
        Claim::new("i_split_by_retraction", true, cr.after(&ci).is_identity(), None),
        Claim::new("p_split_by_section", true, cp.after(&cs).is_identity(), None),
        Claim::new("i_components_are_injective_equivalences", true, i_components, None),
        Claim::new(
            "p_is_representable_isofibration",
            true,
            p_flags.representable,
            p_flags.representable_failure.clone(),
        ),
        Claim::new("p_is_normal_isofibration", false, p_flags.normal, p_flags.normal_failure.clone()),
        Claim::new("square_has_filler", false, filler.is_some(), None),
    ];
    Ok(Witness {
        name: CounterexampleName::NipCat2.to_string(),
        inputs: BTreeMap::from([(
            "finset_arrow_square".to_string(),
            serde_json::to_value(cx.as_ref()).expect("serializable"),
        )]),
        claims,
        replay: "counterexample nip_cat2".into(),
        note: None,
    })
}

fn subset_name(u: &[usize]) -> String {
    format!("{{{}}}", u.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(","))
}

/// The square `f_Y` from `P_Y → S_Y` to `Y → 1` in `Cat^𝟚`.
pub struct FyFamily {
    pub size: usize,
    pub alpha: usize,
    pub subsets: Vec<Vec<usize>>,
    pub f: ArrowMorphism,
}

/// Builds `f_Y` for `Y` discrete of the given size, with `S_Y` chaotic on
/// the subsets of size below `alpha` and `P_Y` on pairs `(U, x ∈ U)`, with a
/// unique morphism `(U, x) → (V, y)` exactly when `x = y`.
pub fn fy_square(size: usize, alpha: usize) -> Result<FyFamily> {
    if size > FY_MAX_SIZE || alpha > FY_MAX_THRESHOLD {
        return Err(Error::EnumerationBudgetExceeded {
            bound: FY_MAX_SIZE.min(FY_MAX_THRESHOLD),
            required: size.max(alpha),
        });
    }
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << size)
        .map(|bits| (0..size).filter(|&y| bits & (1 << y) != 0).collect::<Vec<_>>())
        .filter(|u| u.len() < alpha)
        .collect();
    subsets.sort_by(|u, v| (u.len(), u).cmp(&(v.len(), v)));
    let s = Arc::new(chaotic_named(&subsets.iter().map(|u| subset_name(u)).collect::<Vec<_>>()));

    // P_Y is a disjoint union over x of chaotic categories on the subsets containing x
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..size {
        pairs.extend((0..subsets.len()).filter(|&u| subsets[u].contains(&x)).map(|u| (u, x)));
    }
    let mut b = CatBuilder::new();
    for &(u, x) in &pairs {
        b.add_object(format!("({},{x})", subset_name(&subsets[u])));
    }
    let mut index = vec![vec![usize::MAX; pairs.len()]; pairs.len()];
    for (i, &(u, x)) in pairs.iter().enumerate() {
        for (j, &(v, y)) in pairs.iter().enumerate() {
            if x == y {
                index[i][j] = b.add_morphism(
                    format!("({},{x})→({},{y})", subset_name(&subsets[u]), subset_name(&subsets[v])),
                    i,
                    j,
                );
            }
        }
        b.set_identity(i, index[i][i]);
    }
    let ends: Vec<(usize, usize)> = (0..b.num_morphisms()).map(|m| (b.morphism(m).dom, b.morphism(m).cod)).collect();
    let pcat = Arc::new(b.build(|g, f| index[ends[f].0][ends[g].1]));

    let y = Arc::new(discrete(size));
    let one = Builtin::Terminal.arc();
    let pi = FinFunctor::new(
        pcat.clone(),
        y.clone(),
        pairs.iter().map(|&(_, x)| x).collect(),
        pcat.morphisms().map(|m| y.id(pairs[pcat.dom(m)].1)).collect(),
    )?;
    let omap: Vec<Obj> = pairs.iter().map(|&(u, _)| u).collect();
    let to_subsets = chaotic_functor(&pcat, &s, &omap);
    let y_to_one = FinFunctor::to_terminal(y, one.clone());
    let s_to_one = FinFunctor::to_terminal(s, one);
    let f = ArrowMorphism::new(to_subsets, y_to_one, pi, s_to_one)?;
    Ok(FyFamily { size, alpha, subsets, f })
}

impl FyFamily {
    /// Searches every `1 → S_Y` and every `Y → P_Y` over the identity for a
    /// section of `f_Y`; returns the chosen subset.
    pub fn find_section(&self) -> Option<Vec<usize>> {
        let f = &self.f;
        let (p, s) = (f.source.source(), f.source.target());
        let (y, one) = (f.target.source(), f.target.target());
        for u in s.objects() {
            let s1 = FinFunctor::constant(one.clone(), s.clone(), u);
            let mut search = FunctorSearch::new(y, p);
            for x in y.objects() {
                search.restrict_object(x, p.objects().filter(|&q| f.top.obj(q) == x).collect());
            }
            let mut found = false;
            search.run(|o, m| {
                let s0 = FinFunctor::new_unchecked(y.clone(), p.clone(), o.to_vec(), m.to_vec());
                let section = ArrowMorphism::new(f.target.clone(), f.source.clone(), s0, s1.clone());
                if section.is_ok_and(|sec| f.after(&sec).is_identity()) {
                    found = true;
                    return std::ops::ControlFlow::Break(());
                }
                std::ops::ControlFlow::Continue(())
            });
            if found {
                return Some(self.subsets[u].clone());
            }
        }
        None
    }
}

fn fy_family(size: usize, alpha: usize) -> Result<Witness> {
    let fy = fy_square(size, alpha)?;
    let flags = classify_arrow_fibration(&fy.f);
    let section = fy.find_section();
    let claims = vec![
        Claim::new("f_y_is_representable_isofibration", true, flags.representable, flags.representable_failure.clone()),
        Claim::new("f_y_is_normal_isofibration", true, flags.normal, flags.normal_failure.clone()),
        Claim::new("pi_y_is_retract_equivalence", true, classify_equivalence(&fy.f.top).is_retract(), None),
        Claim::new("s_y_to_1_is_retract_equivalence", true, classify_equivalence(&fy.f.bottom).is_retract(), None),
        Claim::new(
            "f_y_has_section",
            size < alpha,
            section.is_some(),
            Some(match &section {
                Some(u) => format!("section through {}", subset_name(u)),
                None => format!("no subset of size below {alpha} contains all {size} elements"),
            }),
        ),
    ];
    Ok(Witness {
        name: CounterexampleName::FyFamily { size, alpha }.to_string(),
        inputs: BTreeMap::from([
            ("size".to_string(), json!(size)),
            ("alpha".to_string(), json!(alpha)),
            ("pi_y".to_string(), functor_json(&fy.f.top)),
            ("p_y_to_s_y".to_string(), functor_json(&fy.f.source)),
        ]),
        claims,
        replay: format!("counterexample 'fy_family({size},{alpha})'"),
        note: Some("the threshold alpha is a finite stand-in for a regular cardinal".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!("groth_leibniz".parse::<CounterexampleName>().unwrap(), CounterexampleName::GrothLeibniz);
        assert_eq!(
            "fy_family(3, 2)".parse::<CounterexampleName>().unwrap(),
            CounterexampleName::FyFamily { size: 3, alpha: 2 }
        );
        assert!("fy_family(3)".parse::<CounterexampleName>().is_err());
        assert!("sMonCat".parse::<CounterexampleName>().is_err());
        for n in [CounterexampleName::NipCat2, CounterexampleName::FyFamily { size: 1, alpha: 4 }] {
            assert_eq!(n.to_string().parse::<CounterexampleName>().unwrap(), n);
        }
    }

    #[test]
    fn chaotic_named_is_chaotic() {
        let c = chaotic_named(&["a".into(), "b".into(), "c".into()]);
        c.check_laws().unwrap();
        assert!(find_isomorphism(&Arc::new(c), &Arc::new(crate::fincat::chaotic(3))).is_some());
    }

    #[test]
    fn fy_sizes() {
        let fy = fy_square(3, 3).unwrap();
        // subsets of size < 3 of a 3-element set, and pairs (U, x ∈ U)
        assert_eq!(fy.f.bottom.source().num_objects(), 7);
        assert_eq!(fy.f.top.source().num_objects(), 9);
        assert!(fy_square(9, 3).is_err());
    }
}
