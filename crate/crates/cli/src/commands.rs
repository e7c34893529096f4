//! Subcommand implementations.

use std::path::Path;
use std::sync::Arc;

use gquant_core::famquant::{compose_spans_with, quant_prod_span, quant_sum_span};
use gquant_core::kan::{KanPackage, Side};
use gquant_core::nakayama::{gamma_transversal, WeightTable};
use gquant_core::{
    cardinality, delta, homotopy_fiber, homotopy_pullback_with, nakayama_map, FiniteGroup, Groupoid, GroupoidMap,
    RepChoice, Representation, Scalar, Span,
};
use serde_json::{json, Value};

use crate::args::{Command, FunctorArg, Kind, SideArg, VariantArg};
use crate::instances::{write_corpus_dir, Instances};
use crate::laws::{self, LawConfig};
use crate::output::{read_json, read_value, from_value, to_value, Failure, Outcome};
use crate::{counterexample, with_field};

pub fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    let field = cmd.common().field;
    match cmd {
        Command::Validate { input, kind, .. } => with_field!(field, validate(input, *kind)),
        Command::ValidateRep { rep, .. } => with_field!(field, validate_rep(rep)),
        Command::Fiber { map, object, .. } => fiber(map, object.as_deref()),
        Command::Pullback { g, h, choice, .. } => pullback(g, h, (*choice).into()),
        Command::Cardinality { groupoid, .. } => {
            let x: Groupoid = read_json(groupoid)?;
            Ok(Outcome::pass(json!({ "cardinality": cardinality(&x).to_exact_string() })))
        }
        Command::Kan {
            map, rep, side, choice, ..
        } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            with_field!(field, kan(map, rep, side, (*choice).into()))
        }
        Command::Nakayama { map, rep, variant, .. } => with_field!(field, nakayama(map, rep.as_deref(), *variant)),
        Command::Quantize { span, functor, .. } => with_field!(field, quantize(span, *functor)),
        Command::Compose { a, b, choice, .. } => with_field!(field, compose(a, b, (*choice).into())),
        Command::Laws {
            corpus,
            max_order,
            max_dim,
            laws,
            spans,
            timings,
            common,
        } => {
            let cfg = LawConfig {
                laws: laws::select(laws).map_err(|e| Failure::input("BadArgument", e))?,
                spans: *spans,
                seed: common.seed,
                timings: *timings,
            };
            with_field!(field, run_laws(corpus.as_deref(), *max_order, *max_dim, &cfg))
        }
        Command::Counterexample { n, m, .. } => with_field!(field, counterexample_run(*n, *m)),
        Command::Corpus {
            max_order,
            max_dim,
            common,
        } => {
            let dir = common
                .out
                .as_deref()
                .ok_or_else(|| Failure::input("BadArgument", "corpus needs --out DIR"))?;
            let manifest = write_corpus_dir(*max_order, common.seed, *max_dim, dir)?;
            Ok(Outcome::pass(json!({ "directory": dir.display().to_string(), "manifest": manifest })))
        }
    }
}

fn counterexample_run<S: Scalar>(n: usize, m: Option<usize>) -> Result<Outcome, Failure> {
    counterexample::run::<S>(n, m)
}

fn detect(v: &Value) -> Option<Kind> {
    let has = |k: &str| v.get(k).is_some();
    if has("table") {
        Some(Kind::Group)
    } else if has("on_objects") {
        Some(Kind::Map)
    } else if has("action") {
        Some(Kind::Rep)
    } else if has("left") && has("right") && has("filling") {
        Some(Kind::Span)
    } else if has("objects") {
        Some(Kind::Groupoid)
    } else {
        None
    }
}

fn groupoid_summary(x: &Groupoid) -> Value {
    json!({
        "objects": (0..x.len()).map(|i| json!({"name": x.name(i), "order": x.group(i).order()})).collect::<Vec<_>>(),
        "cardinality": cardinality(x).to_exact_string(),
    })
}

fn validate<S: Scalar>(input: &Path, kind: Kind) -> Result<Outcome, Failure> {
    let v = read_value(input)?;
    let kind = match kind {
        Kind::Auto => detect(&v).ok_or_else(|| Failure::input("UnknownKind", "cannot tell what kind of object this is"))?,
        k => k,
    };
    let (name, summary) = match kind {
        Kind::Group => {
            let g: FiniteGroup = from_value(v, input)?;
            ("group", json!({ "order": g.order(), "abelian": g.is_abelian() }))
        }
        Kind::Groupoid => ("groupoid", groupoid_summary(&from_value(v, input)?)),
        Kind::Map => {
            let f: GroupoidMap = from_value(v, input)?;
            ("map", json!({ "source": groupoid_summary(f.source()), "target": groupoid_summary(f.target()), "faithful": f.is_faithful() }))
        }
        Kind::Rep => ("rep", rep_summary(&from_value::<Representation<S>>(v, input)?)),
        Kind::Span => {
            let s: Span<S> = from_value(v, input)?;
            ("span", json!({ "apex": groupoid_summary(s.apex()), "source": rep_summary(&s.source().rep), "target": rep_summary(&s.target().rep) }))
        }
        Kind::Auto => unreachable!("resolved above"),
    };
    Ok(Outcome::pass(json!({ "kind": name, "valid": true, "summary": summary })))
}

fn rep_summary<S: Scalar>(v: &Representation<S>) -> Value {
    let x = v.groupoid();
    json!({
        "field": S::field().to_string(),
        "dims": (0..x.len()).map(|i| (x.name(i).to_owned(), json!(v.dim(i)))).collect::<serde_json::Map<_, _>>(),
    })
}

fn validate_rep<S: Scalar>(rep: &Path) -> Result<Outcome, Failure> {
    let v: Representation<S> = read_json(rep)?;
    Ok(Outcome::pass(json!({ "kind": "rep", "valid": true, "summary": rep_summary(&v) })))
}

fn fiber(map: &Path, object: Option<&str>) -> Result<Outcome, Failure> {
    let f: GroupoidMap = read_json(map)?;
    let y = match object {
        Some(name) => f.target().object_index(name)?,
        None if f.target().is_empty() => return Err(Failure::input("UnknownObject", "the target has no objects")),
        None => 0,
    };
    let fd = homotopy_fiber(&f, y)?;
    let components: Vec<Value> = fd
        .components
        .iter()
        .map(|c| {
            json!({
                "object": f.source().name(c.x),
                "coset_rep": c.coset_rep,
                "isotropy_order": c.isotropy.order(),
                "isotropy": c.isotropy,
                "inclusion": c.inclusion,
            })
        })
        .collect();
    let groupoid = fd.groupoid(f.source());
    Ok(Outcome::pass(json!({
        "base_point": f.target().name(y),
        "components": components,
        "groupoid": groupoid,
        "cardinality": cardinality(&groupoid).to_exact_string(),
    })))
}

fn pullback(g: &Path, h: &Path, choice: RepChoice) -> Result<Outcome, Failure> {
    let g: GroupoidMap = read_json(g)?;
    let h: GroupoidMap = read_json(h)?;
    let pb = homotopy_pullback_with(&g, &h, choice)?;
    Ok(Outcome::pass(json!({
        "apex": pb.apex.as_ref(),
        "p": pb.p,
        "q": pb.q,
        "pi": (0..pb.apex.len()).map(|i| (pb.apex.name(i).to_owned(), json!(pb.pi.component(i)))).collect::<serde_json::Map<_, _>>(),
        "cardinality": cardinality(&pb.apex).to_exact_string(),
    })))
}

fn kan<S: Scalar>(map: &Path, rep: &Path, side: Side, choice: RepChoice) -> Result<Outcome, Failure> {
    let f: GroupoidMap = read_json(map)?;
    let v: Representation<S> = read_json(rep)?;
    let v = rebase(v, f.source())?;
    Ok(Outcome::pass(to_value(&KanPackage::new(side, &f, &v, choice)?)?))
}

/// Puts a representation read from its own file on the map's copy of the
/// groupoid, so that the two compare by pointer.
fn rebase<S: Scalar>(v: Representation<S>, x: &Arc<Groupoid>) -> Result<Representation<S>, Failure> {
    if v.groupoid().as_ref() != x.as_ref() {
        return Err(Failure::input("GroupoidMismatch", "the representation does not live on the map's source"));
    }
    let action = (0..x.len()).map(|i| v.action_table(i).to_vec()).collect();
    Ok(Representation::new(x.clone(), action)?)
}

fn weights_json<S: Scalar>(w: &WeightTable<S>) -> Value {
    let f = &w.map;
    json!(w
        .weights
        .iter()
        .map(|c| json!({
            "target": f.target().name(c.y),
            "object": f.source().name(c.x),
            "coset_rep": c.coset_rep,
            "kernel_order": c.kernel_order,
            "value": c.value.to_exact_string(),
            "invertible": c.invertible,
        }))
        .collect::<Vec<_>>())
}

fn nakayama<S: Scalar>(map: &Path, rep: Option<&Path>, variant: VariantArg) -> Result<Outcome, Failure> {
    let f: GroupoidMap = read_json(map)?;
    let weights = delta::<S>(&f);
    let field = S::field().to_string();
    if variant == VariantArg::Delta {
        let passed = weights.all_invertible();
        return Ok(Outcome {
            report: json!({ "variant": "delta", "field": field, "weights": weights_json(&weights), "passed": passed }),
            passed,
        });
    }
    let rep = rep.ok_or_else(|| Failure::input("BadArgument", "--rep is required for gamma and nu"))?;
    let v = rebase(read_json::<Representation<S>>(rep)?, f.source())?;
    let (name, m) = match variant {
        VariantArg::Gamma => ("gamma", gamma_transversal(&f, &v)?),
        _ if !weights.all_invertible() => {
            return Ok(Outcome {
                report: json!({
                    "variant": "nu",
                    "field": field,
                    "error": "NonInvertibleDelta",
                    "failing_components": weights.failing_components(),
                    "weights": weights_json(&weights),
                    "passed": false,
                }),
                passed: false,
            })
        }
        _ => ("nu", nakayama_map(&f, &v)?),
    };
    let invertible = m.is_invertible();
    Ok(Outcome {
        report: json!({
            "variant": name,
            "field": field,
            "map": m,
            "invertible": invertible,
            "weights": weights_json(&weights),
            "passed": invertible,
        }),
        passed: invertible,
    })
}

fn quantize<S: Scalar>(span: &Path, functor: FunctorArg) -> Result<Outcome, Failure> {
    let s: Span<S> = read_json(span)?;
    let (name, q) = match functor {
        FunctorArg::Sum => ("sum", quant_sum_span(&s)?),
        FunctorArg::Prod => ("prod", quant_prod_span(&s)?),
    };
    Ok(Outcome::pass(json!({
        "functor": name,
        "field": S::field().to_string(),
        "source_dim": q.source_dim,
        "target_dim": q.target_dim,
        "matrix": q.matrix,
        "stages": q.stages.iter().map(|st| json!({ "name": st.name, "matrix": st.matrix })).collect::<Vec<_>>(),
    })))
}

fn compose<S: Scalar>(a: &Path, b: &Path, choice: RepChoice) -> Result<Outcome, Failure> {
    let a: Span<S> = read_json(a)?;
    let b: Span<S> = read_json(b)?;
    Ok(Outcome::pass(to_value(&compose_spans_with(&a, &b, choice)?)?))
}

fn run_laws<S: Scalar>(corpus: Option<&Path>, max_order: usize, max_dim: usize, cfg: &LawConfig) -> Result<Outcome, Failure> {
    let inst = match corpus {
        Some(dir) => Instances::<S>::load(dir)?,
        None => Instances::<S>::generate(max_order, cfg.seed, max_dim),
    };
    let records = laws::run_laws(&inst, cfg);
    let (report, passed) = laws::report(&inst, &records);
    Ok(Outcome { report, passed })
}
