//! Law checks over a corpus. Each law yields one record per instance; the
//! report is sorted by law and instance so it does not depend on the order
//! in which worker threads finish.

use std::time::Instant;

use gquant_core::famquant::{
    cardinality_span, compose_spans, nakayama_montran, prod_monoidal_iso, quant_prod_span, quant_sum_object,
    quant_sum_span, sum_monoidal_iso, FamObject,
};
use gquant_core::kan::{left_mate, proj_lambda, proj_rho, right_mate, SquareWitness};
use gquant_core::nakayama::{
    check_frobenius, check_triangle, delta, delta_at_basepoint, delta_generic, gamma, gamma_generic, nakayama_map,
    Discrepancy, Variant,
};
use gquant_core::{cardinality, from_rational, homotopy_pullback, Error, Matrix, RepMap, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::instances::Instances;

pub const LAWS: &[&str] = &[
    "nu-invertible",
    "nu-triangle",
    "gamma-oracle",
    "delta-basepoint",
    "beck-chevalley",
    "projection",
    "frobenius",
    "cardinality",
    "character",
    "functoriality",
    "nu-natural",
    "nu-monoidal",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// The law does not apply over this field.
    Skip,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawRecord {
    pub law: &'static str,
    pub instance: String,
    pub status: Status,
    pub discrepancy: Option<Value>,
    pub runtime_ms: Option<f64>,
}

impl LawRecord {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("law".into(), json!(self.law));
        m.insert("instance".into(), json!(self.instance));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("discrepancy".into(), self.discrepancy.clone().unwrap_or(Value::Null));
        if let Some(t) = self.runtime_ms {
            m.insert("runtime_ms".into(), json!(t));
        }
        Value::Object(m)
    }
}

#[derive(Debug, Clone)]
pub struct LawConfig {
    pub laws: Vec<&'static str>,
    /// Random spans (and span pairs) for the quantization laws.
    pub spans: usize,
    pub seed: u64,
    pub timings: bool,
}

impl LawConfig {
    pub fn all(seed: u64) -> Self {
        LawConfig {
            laws: LAWS.to_vec(),
            spans: 100,
            seed,
            timings: false,
        }
    }

    pub fn only(law: &'static str, seed: u64) -> Self {
        LawConfig {
            laws: vec![law],
            ..Self::all(seed)
        }
    }
}

/// Resolves user-supplied law names.
pub fn select(names: &[String]) -> Result<Vec<&'static str>, String> {
    if names.is_empty() {
        return Ok(LAWS.to_vec());
    }
    names
        .iter()
        .map(|n| LAWS.iter().copied().find(|l| l == n).ok_or_else(|| format!("unknown law {n}; known: {}", LAWS.join(", "))))
        .collect()
}

/// Outcome of one check: pass, or fail with a discrepancy.
type Check = Result<(), Value>;

fn verdict(ok: bool, detail: impl FnOnce() -> Value) -> Check {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.code(), "message": e.to_string() })
}

pub fn discrepancy_json<S: Scalar>(d: &Discrepancy<S>) -> Value {
    match d {
        Discrepancy::Equal => json!({ "kind": "equal" }),
        Discrepancy::Scalar(c) => json!({ "kind": "scalar", "factor": c.to_exact_string() }),
        Discrepancy::Diagonal(ds) => json!({
            "kind": "diagonal",
            "factors": ds.iter().map(|d| d.iter().map(|c| c.to_exact_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        Discrepancy::Matrices { reference, path } => json!({ "kind": "matrices", "reference": reference, "path": path }),
    }
}

/// One unit of work: a law, an instance label and the check.
struct Task<'a> {
    law: &'static str,
    instance: String,
    run: Box<dyn Fn() -> Result<Check, Skip> + Send + Sync + 'a>,
}

/// The law's precondition fails over this field.
struct Skip(Value);

fn task<'a>(law: &'static str, instance: String, run: impl Fn() -> Result<Check, Skip> + Send + Sync + 'a) -> Task<'a> {
    Task {
        law,
        instance,
        run: Box::new(run),
    }
}

/// Core errors count as failures with the error as discrepancy.
fn checked(r: Result<Check, Error>) -> Result<Check, Skip> {
    Ok(r.unwrap_or_else(|e| Err(error_value(&e))))
}

pub fn run_laws<S: Scalar>(inst: &Instances<S>, cfg: &LawConfig) -> Vec<LawRecord> {
    let mut tasks = Vec::new();
    for &law in &cfg.laws {
        match law {
            "nu-invertible" => nu_invertible(inst, &mut tasks),
            "nu-triangle" => nu_triangle(inst, &mut tasks),
            "gamma-oracle" => gamma_oracle(inst, &mut tasks),
            "delta-basepoint" => delta_basepoint(inst, &mut tasks),
            "beck-chevalley" => beck_chevalley(inst, &mut tasks),
            "projection" => projection(inst, &mut tasks),
            "frobenius" => frobenius(inst, &mut tasks),
            "cardinality" => cardinality_law(inst, &mut tasks),
            "character" => character(inst, &mut tasks),
            "functoriality" => functoriality(inst, cfg, &mut tasks),
            "nu-natural" => nu_natural(inst, cfg, &mut tasks),
            "nu-monoidal" => nu_monoidal(inst, cfg, &mut tasks),
            other => panic!("unknown law {other}"),
        }
    }
    let mut records: Vec<LawRecord> = tasks
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let (status, discrepancy) = match (t.run)() {
                Ok(Ok(())) => (Status::Pass, None),
                Ok(Err(d)) => (Status::Fail, Some(d)),
                Err(Skip(why)) => (Status::Skip, Some(why)),
            };
            LawRecord {
                law: t.law,
                instance: t.instance,
                status,
                discrepancy,
                runtime_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
            }
        })
        .collect();
    records.sort_by(|a, b| (a.law, &a.instance).cmp(&(b.law, &b.instance)));
    records
}

/// The JSON report and whether no record failed.
pub fn report<S: Scalar>(inst: &Instances<S>, records: &[LawRecord]) -> (Value, bool) {
    let mut summary = Map::new();
    for law in LAWS {
        let mine: Vec<&LawRecord> = records.iter().filter(|r| r.law == *law).collect();
        if mine.is_empty() {
            continue;
        }
        let count = |s: Status| mine.iter().filter(|r| r.status == s).count();
        summary.insert(
            (*law).into(),
            json!({ "pass": count(Status::Pass), "fail": count(Status::Fail), "skip": count(Status::Skip) }),
        );
    }
    let passed = records.iter().all(|r| r.status != Status::Fail);
    let v = json!({
        "field": S::field().to_string(),
        "corpus": inst.description(),
        "passed": passed,
        "summary": summary,
        "records": records.iter().map(LawRecord::to_json).collect::<Vec<_>>(),
    });
    (v, passed)
}

fn nu_invertible<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for i in 0..inst.corpus.maps.len() {
        for (name, v) in inst.source_reps(i) {
            let f = inst.map(i);
            tasks.push(task("nu-invertible", format!("{}|{name}", inst.map_name(i)), move || {
                checked((|| {
                    let nu = nakayama_map(f, v)?;
                    let inv = nu.inverse()?;
                    Ok(verdict(nu.then(&inv)?.is_identity() && inv.then(&nu)?.is_identity(), || {
                        json!({ "error": "NotInverse" })
                    }))
                })())
            }));
        }
    }
}

fn nu_triangle<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for &(i, j) in &inst.corpus.pairs {
        for (name, v) in inst.source_reps(i) {
            let (f, g) = (inst.map(i), inst.map(j));
            let label = format!("{};{}|{name}", inst.map_name(i), inst.map_name(j));
            tasks.push(task("nu-triangle", label, move || {
                checked(check_triangle(Variant::Nu, f, g, v).map(|t| {
                    verdict(t.holds(), || {
                        json!({ "left": discrepancy_json(&t.left), "right": discrepancy_json(&t.right) })
                    })
                }))
            }));
        }
    }
}

fn gamma_oracle<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for i in 0..inst.corpus.maps.len() {
        for (name, v) in inst.source_reps(i) {
            let f = inst.map(i);
            tasks.push(task("gamma-oracle", format!("{}|{name}", inst.map_name(i)), move || {
                let closed = gamma(f, v).map_err(|e| Skip(error_value(&e)))?;
                checked(gamma_generic(f, v).map(|g| {
                    verdict(g.components() == closed.components(), || {
                        json!({ "closed": closed.components(), "composite": g.components() })
                    })
                }))
            }));
        }
    }
}

fn delta_basepoint<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for i in 0..inst.corpus.maps.len() {
        let f = inst.map(i);
        tasks.push(task("delta-basepoint", inst.map_name(i).to_owned(), move || {
            checked((|| {
                let closed = delta::<S>(f);
                if delta_generic::<S>(f)? != closed {
                    return Ok(Err(json!({ "error": "ClosedFormDiffers" })));
                }
                for x in 0..f.source().len() {
                    let expected = S::from_usize(f.kernel(x).len());
                    for h in f.target().group(f.on_object(x)).elements() {
                        let got = delta_at_basepoint::<S>(f, x, h)?;
                        if got != expected {
                            return Ok(Err(json!({
                                "object": f.source().name(x),
                                "basepoint": h,
                                "expected": expected.to_exact_string(),
                                "got": got.to_exact_string(),
                            })));
                        }
                    }
                }
                Ok(Ok(()))
            })())
        }));
    }
}

fn beck_chevalley<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    let n = inst.corpus.maps.len();
    for i in 0..n {
        for j in i..n {
            if inst.targets[i] != inst.targets[j] {
                continue;
            }
            for (name, w) in inst.source_reps(j) {
                let (g, h) = (inst.map(i), inst.map(j));
                let label = format!("{};{}|{name}", inst.map_name(i), inst.map_name(j));
                tasks.push(task("beck-chevalley", label, move || {
                    checked((|| {
                        let pb = homotopy_pullback(g, h)?;
                        let sq = SquareWitness::from_pullback(&pb, g, h)?;
                        let l = left_mate(&sq, w)?.is_invertible();
                        let r = right_mate(&sq, w)?.is_invertible();
                        Ok(verdict(l && r, || json!({ "left_invertible": l, "right_invertible": r })))
                    })())
                }));
            }
        }
    }
}

fn exact_inverse<S: Scalar>(m: &RepMap<S>) -> Result<bool, Error> {
    let inv = m.inverse()?;
    Ok(m.then(&inv)?.is_identity() && inv.then(m)?.is_identity())
}

fn projection<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for i in 0..inst.corpus.maps.len() {
        for (an, a) in inst.source_reps(i) {
            for (bn, b) in inst.target_reps(i) {
                let f = inst.map(i);
                let label = format!("{}|{an},{bn}", inst.map_name(i));
                tasks.push(task("projection", label, move || {
                    checked((|| {
                        let l = exact_inverse(&proj_lambda(f, a, b)?)?;
                        let r = exact_inverse(&proj_rho(f, b, a)?)?;
                        Ok(verdict(l && r, || json!({ "lambda_invertible": l, "rho_invertible": r })))
                    })())
                }));
            }
        }
    }
}

fn frobenius<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for i in 0..inst.corpus.maps.len() {
        let (vs, ws) = (inst.source_reps(i), inst.target_reps(i));
        for k in 0..vs.len().max(ws.len()) {
            let (vn, v) = &vs[k % vs.len()];
            let (wn, w) = &ws[k % ws.len()];
            let f = inst.map(i);
            let label = format!("{}|{vn},{wn}", inst.map_name(i));
            tasks.push(task("frobenius", label, move || {
                checked(check_frobenius(f, v, w).map(|c| {
                    verdict(c.holds(), || json!({ "left_adjoint": c.left_adjoint, "right_adjoint": c.right_adjoint }))
                }))
            }));
        }
    }
}

fn cardinality_law<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for g in &inst.corpus.groupoids {
        tasks.push(task("cardinality", g.name.clone(), move || {
            let expected = from_rational::<S>(&cardinality(&g.groupoid)).map_err(|e| Skip(error_value(&e)))?;
            checked(cardinality_span::<S>(&g.groupoid).and_then(|s| quant_sum_span(&s)).map(|r| {
                verdict(r.matrix == Matrix::scalar(expected.clone()), || {
                    json!({ "expected": expected.to_exact_string(), "got": r.matrix })
                })
            }))
        }));
    }
}

fn character<'a, S: Scalar>(inst: &'a Instances<S>, tasks: &mut Vec<Task<'a>>) {
    for (gi, g) in inst.corpus.groupoids.iter().enumerate() {
        if g.groupoid.len() != 1 {
            continue;
        }
        for (name, v) in &inst.reps[gi] {
            tasks.push(task("character", format!("{}|{name}", g.name), move || {
                let order = S::from_usize(g.groupoid.group(0).order());
                let inv = order.inverse().map_err(|e| Skip(error_value(&e)))?;
                let traces = v.character(0).into_iter().fold(S::zero(), |acc, t| acc + t);
                let expected = traces * inv;
                checked(quant_sum_object(&FamObject::new(v.clone())).map(|pkg| {
                    let dim = S::from_usize(pkg.output().dim(0));
                    verdict(dim == expected, || {
                        json!({ "dimension": pkg.output().dim(0), "average_trace": expected.to_exact_string() })
                    })
                }))
            }));
        }
    }
}

fn functoriality<'a, S: Scalar>(inst: &'a Instances<S>, cfg: &LawConfig, tasks: &mut Vec<Task<'a>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..cfg.spans {
        let (a, b) = inst.corpus.random_span_pair::<S>(2, &mut rng);
        tasks.push(task("functoriality", format!("pair{k:04}"), move || {
            checked((|| {
                let ba = compose_spans(&a, &b)?;
                let sum = quant_sum_span(&ba)?.matrix == quant_sum_span(&b)?.matrix.matmul(&quant_sum_span(&a)?.matrix)?;
                let prod =
                    quant_prod_span(&ba)?.matrix == quant_prod_span(&b)?.matrix.matmul(&quant_prod_span(&a)?.matrix)?;
                Ok(verdict(sum && prod, || json!({ "sum": sum, "prod": prod })))
            })())
        }));
    }
}

fn nu_natural<'a, S: Scalar>(inst: &'a Instances<S>, cfg: &LawConfig, tasks: &mut Vec<Task<'a>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6e75);
    for k in 0..cfg.spans {
        let s = inst.corpus.random_span::<S>(None, 2, &mut rng);
        tasks.push(task("nu-natural", format!("span{k:04}"), move || {
            checked((|| {
                let nu_src = nakayama_montran(s.source())?;
                let nu_tgt = nakayama_montran(s.target())?;
                let lhs = quant_sum_span(&s)?.matrix.matmul(&nu_src)?;
                let rhs = nu_tgt.matmul(&quant_prod_span(&s)?.matrix)?;
                Ok(verdict(lhs == rhs && nu_src.is_invertible(), || json!({ "sum_after_nu": lhs, "nu_after_prod": rhs })))
            })())
        }));
    }
}

fn nu_monoidal<'a, S: Scalar>(inst: &'a Instances<S>, cfg: &LawConfig, tasks: &mut Vec<Task<'a>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6d6f);
    tasks.push(task("nu-monoidal", "unit".into(), || {
        checked(nakayama_montran(&FamObject::<S>::unit()).map(|m| verdict(m.is_identity(), || json!({ "nu": m }))))
    }));
    for k in 0..cfg.spans {
        let a = inst.corpus.random_span::<S>(None, 2, &mut rng).source().clone();
        let b = inst.corpus.random_span::<S>(None, 2, &mut rng).target().clone();
        tasks.push(task("nu-monoidal", format!("objects{k:04}"), move || {
            checked((|| {
                let lhs = sum_monoidal_iso(&a, &b)?.matmul(&nakayama_montran(&a.tensor(&b))?)?;
                let rhs = nakayama_montran(&a)?.kronecker(&nakayama_montran(&b)?).matmul(&prod_monoidal_iso(&a, &b)?)?;
                Ok(verdict(lhs == rhs, || json!({ "lhs": lhs, "rhs": rhs })))
            })())
        }));
    }
}
