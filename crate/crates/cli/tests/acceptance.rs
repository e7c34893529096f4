//! Acceptance run: twelve criteria, each checked against an oracle written
//! here, with one pass/fail line per criterion. Built without the libtest
//! harness so that the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gquant_cli::instances::Instances;
use gquant_cli::laws::{run_laws, LawConfig, Status};
use gquant_core::corpus::{random_rep, reps_on, Corpus};
use gquant_core::famquant::{cardinality_span, nakayama_montran, quant_sum_object, quant_sum_span};
use gquant_core::kan::{comp_left, left_kan, left_mate, push_transformation, right_kan, Side, SquareWitness};
use gquant_core::nakayama::check_frobenius;
use gquant_core::{
    delta, homotopy_pullback, nakayama_map, Error, FamObject, FiniteGroup, Fp, Groupoid, GroupoidMap, Matrix,
    Rational, RepMap, Representation, Scalar,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

type Q = Rational;

type Verdict = Result<String, String>;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the binary's entry point and parses the report it writes.
fn cli(args: &[&str], dir: &Path) -> (i32, Value) {
    let out = dir.join("report.json");
    let mut argv = vec!["gquant".to_owned()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend(["--out".to_owned(), out.display().to_string()]);
    let code = gquant_cli::run(argv);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    let _ = std::fs::remove_file(&out);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn criterion_1(dir: &Path) -> Verdict {
    let mut slowest = Duration::ZERO;
    for n in 2..=6 {
        let start = Instant::now();
        let (code, r) = cli(&["counterexample", "--n", &n.to_string(), "--field", "q"], dir);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(code == 0, || format!("n={n}: exit {code}"))?;
        let expected = n.to_string();
        for side in ["left", "right"] {
            let g = &r["gamma"][side];
            ensure(g["kind"] == "scalar" && g["factor"] == expected.as_str(), || {
                format!("n={n}: gamma {side} discrepancy {g}")
            })?;
        }
        ensure(r["nu"]["holds"] == true, || format!("n={n}: nu paths differ: {}", r["nu"]))?;
        ensure(took < Duration::from_secs(1), || format!("n={n}: took {took:?}"))?;
    }
    Ok(format!("factor n for n = 2..6, nu exact; slowest {slowest:.2?}"))
}

fn criterion_2(dir: &Path) -> Verdict {
    for (m, n) in [(2, 3), (3, 4)] {
        let (code, r) = cli(&["counterexample", "--m", &m.to_string(), "--n", &n.to_string()], dir);
        ensure(code == 0, || format!("({m},{n}): exit {code}"))?;
        let expected = Value::from(vec![m.to_string(), n.to_string()]);
        ensure(r["factors"] == expected, || format!("({m},{n}): factors {}", r["factors"]))?;
        ensure(r["gamma"]["left"]["kind"] == "diagonal", || format!("({m},{n}): {}", r["gamma"]["left"]))?;
        ensure(r["nu"]["holds"] == true, || format!("({m},{n}): nu {}", r["nu"]))?;
    }
    Ok("factors (2,3) and (3,4)".into())
}

fn identity_of(g: &FiniteGroup) -> usize {
    g.elements().find(|&e| g.mul(e, e) == e).expect("a group has an identity")
}

/// Fiber components over `f(x)` whose stabilizer order `p` divides, counted
/// from the group tables alone: `[A_y : f(A_x)] = |A_y|·|K_x| / |A_x|`.
fn scan_bad_components(f: &GroupoidMap, p: u64) -> usize {
    (0..f.source().len())
        .map(|x| {
            let ax = f.source().group(x);
            let ay = f.target().group(f.on_object(x));
            let e = identity_of(ay);
            let k = ax.elements().filter(|&a| f.on_hom(x, a) == e).count();
            if k as u64 % p == 0 {
                ay.order() * k / ax.order()
            } else {
                0
            }
        })
        .sum()
}

fn obstruction<const P: u64>(corpus: &Corpus) -> Result<usize, String> {
    let mut failing = 0;
    for m in &corpus.maps {
        let f = &m.map;
        let expected = scan_bad_components(f, P);
        let v = Representation::<Fp<P>>::unit(f.source());
        match nakayama_map(f, &v) {
            Ok(_) => ensure(expected == 0, || format!("{} over F_{P}: accepted, scan finds {expected}", m.name))?,
            Err(Error::NonInvertibleDelta(parts)) => {
                ensure(parts.len() == expected, || {
                    format!("{} over F_{P}: {} flagged, scan finds {expected}", m.name, parts.len())
                })?;
                let flagged: Vec<usize> = delta::<Fp<P>>(f).weights.iter().filter(|w| !w.invertible).map(|w| w.x).collect();
                for x in flagged {
                    let ax = f.source().group(x);
                    let e = identity_of(f.target().group(f.on_object(x)));
                    let k = ax.elements().filter(|&a| f.on_hom(x, a) == e).count();
                    ensure(k as u64 % P == 0, || format!("{} over F_{P}: object {x} flagged", m.name))?;
                }
                failing += 1;
            }
            Err(e) => return Err(format!("{} over F_{P}: {e}", m.name)),
        }
    }
    Ok(failing)
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let corpus = Corpus::new(8, 0);
    let counts = [obstruction::<2>(&corpus)?, obstruction::<3>(&corpus)?, obstruction::<5>(&corpus)?, obstruction::<7>(&corpus)?];
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!(
        "{} maps; refused for p = 2, 3, 5, 7: {:?}; {took:.2?}",
        corpus.maps.len(),
        counts
    ))
}

fn criterion_4(dir: &Path) -> Verdict {
    let start = Instant::now();
    let (code, r) = cli(
        &["laws", "--field", "q", "--max-order", "6", "--max-dim", "3", "--law", "nu-invertible", "--law", "nu-triangle"],
        dir,
    );
    let took = start.elapsed();
    let records = r["records"].as_array().ok_or("no records")?;
    let count = |law: &str| records.iter().filter(|x| x["law"] == law).count();
    let bad: Vec<&Value> = records.iter().filter(|x| x["status"] != "pass").collect();
    ensure(bad.is_empty(), || format!("{} failing, first {}", bad.len(), bad[0]))?;
    ensure(code == 0, || format!("exit {code}"))?;
    let pairs = r["corpus"]["pairs"].as_u64().unwrap_or(0);
    ensure(count("nu-triangle") as u64 >= pairs, || "fewer triangle checks than pairs".into())?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "{} invertibility and {} triangle checks over {pairs} pairs; {took:.2?}",
        count("nu-invertible"),
        count("nu-triangle")
    ))
}

/// `dim k[A_y] ⊗_{k[A_x]} V(x)`.
fn coequalizer_dim<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, x: usize) -> usize {
    let ay = f.target().group(f.on_object(x));
    let ax = f.source().group(x);
    let d = v.dim(x);
    let n = ay.order() * d;
    let mut rows = Vec::new();
    for g in ay.elements() {
        for a in ax.elements() {
            let ga = ay.mul(g, f.on_hom(x, a));
            for i in 0..d {
                let mut row = vec![S::zero(); n];
                row[ga * d + i] = row[ga * d + i].add_ref(&S::one());
                for k in 0..d {
                    row[g * d + k] = row[g * d + k].sub_ref(v.action(x, a).get(k, i));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - Matrix::from_rows(rows).expect("rectangular").rank()
}

/// `dim Hom_{A_x}(k[A_y], V(x))`.
fn equalizer_dim<S: Scalar>(f: &GroupoidMap, v: &Representation<S>, x: usize) -> usize {
    let ay = f.target().group(f.on_object(x));
    let ax = f.source().group(x);
    let d = v.dim(x);
    let n = ay.order() * d;
    let mut rows = Vec::new();
    for g in ay.elements() {
        for a in ax.elements() {
            let ag = ay.mul(f.on_hom(x, a), g);
            for i in 0..d {
                let mut row = vec![S::zero(); n];
                row[ag * d + i] = row[ag * d + i].add_ref(&S::one());
                for k in 0..d {
                    row[g * d + k] = row[g * d + k].sub_ref(v.action(x, a).get(i, k));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - Matrix::from_rows(rows).expect("rectangular").rank()
}

fn criterion_5() -> Verdict {
    let corpus = Corpus::new(6, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..200 {
        let m = &corpus.maps[rng.gen_range(0..corpus.maps.len())];
        let f = &m.map;
        let d = rng.gen_range(1..=3);
        let v = random_rep::<Q>(f.source(), d, &mut rng);
        let left = left_kan(f, &v).map_err(|e| e.to_string())?;
        let right = right_kan(f, &v).map_err(|e| e.to_string())?;
        for y in 0..f.target().len() {
            let fiber = f.fiber_objects(y);
            let lo: usize = fiber.iter().map(|&x| coequalizer_dim(f, &v, x)).sum();
            let ro: usize = fiber.iter().map(|&x| equalizer_dim(f, &v, x)).sum();
            ensure(left.output().dim(y) == lo && right.output().dim(y) == ro, || {
                format!(
                    "instance {k} ({}): dims ({}, {}) against oracle ({lo}, {ro})",
                    m.name,
                    left.output().dim(y),
                    right.output().dim(y)
                )
            })?;
        }
    }
    Ok("200 random instances".into())
}

fn criterion_6(inst: &Instances<Q>) -> Verdict {
    let mut checked = 0;
    for (g, reps) in inst.corpus.groupoids.iter().zip(&inst.reps) {
        if g.groupoid.len() != 1 {
            continue;
        }
        let order = g.groupoid.group(0).order();
        for (name, v) in reps {
            let traces = g.groupoid.group(0).elements().fold(Q::from_i64(0), |acc, a| acc + v.action(0, a).trace());
            let expected = traces * Q::new(1, order as i64);
            let dim = quant_sum_object(&FamObject::new(v.clone())).map_err(|e| e.to_string())?.output().dim(0);
            ensure(Q::from_usize(dim) == expected, || {
                format!("{}|{name}: dim {dim}, average trace {}", g.name, expected.to_exact_string())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (G, V) pairs"))
}

fn law_sweep(inst: &Instances<Q>, laws: &[&'static str], spans: usize) -> Result<Vec<usize>, String> {
    let cfg = LawConfig {
        laws: laws.to_vec(),
        spans,
        seed: 0,
        timings: false,
    };
    let records = run_laws(inst, &cfg);
    if let Some(r) = records.iter().find(|r| r.status != Status::Pass) {
        return Err(format!("{} on {}: {:?} {}", r.law, r.instance, r.status, r.to_json()["discrepancy"]));
    }
    Ok(laws.iter().map(|l| records.iter().filter(|r| r.law == *l).count()).collect())
}

/// The left mate of a vertical pasting, assembled from the two mates and
/// the composition isomorphisms of left extensions.
fn pasted_left_mate(bottom: &SquareWitness, top: &SquareWitness, u: &Representation<Q>) -> gquant_core::Result<RepMap<Q>> {
    let qu = u.restrict(&top.q)?;
    let into = comp_left(&top.p, &bottom.p, &qu)?;
    let upper = push_transformation(Side::Left, &bottom.p, &left_mate(top, u)?)?;
    let hu = left_kan(&top.h, u)?;
    let lower = left_mate(bottom, hu.output())?;
    let out = comp_left(&top.h, &bottom.h, u)?.inverse()?.restrict(&bottom.g)?;
    let upper = upper.retype(into.target(), upper.target())?;
    let lower = lower.retype(upper.target(), lower.target())?;
    into.then(&upper)?.then(&lower)?.then(&out)
}

fn criterion_7(inst: &Instances<Q>) -> Verdict {
    let [squares] = law_sweep(inst, &["beck-chevalley"], 0)?[..] else {
        unreachable!()
    };
    let maps = &inst.corpus.maps;
    let cospans: Vec<(usize, usize)> = (0..maps.len())
        .flat_map(|i| (i..maps.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| maps[i].map.target() == maps[j].map.target())
        .collect();
    let pasted: usize = cospans
        .par_iter()
        .map(|&(i, j)| -> Result<usize, String> {
            let (g, h) = (&maps[i].map, &maps[j].map);
            let bottom = SquareWitness::from_pullback(&homotopy_pullback(g, h).map_err(|e| e.to_string())?, g, h)
                .map_err(|e| e.to_string())?;
            let mut n = 0;
            for h2 in maps.iter().filter(|m| m.map.target() == bottom.q.target()) {
                let top_pb = homotopy_pullback(&bottom.q, &h2.map).map_err(|e| e.to_string())?;
                let top = SquareWitness::from_pullback(&top_pb, &bottom.q, &h2.map).map_err(|e| e.to_string())?;
                let pasted = bottom.paste_vertical(&top).map_err(|e| e.to_string())?;
                for (name, u) in reps_on::<Q>(h2.map.source(), 2, 0) {
                    let direct = left_mate(&pasted, &u).map_err(|e| e.to_string())?;
                    let rebuilt = pasted_left_mate(&bottom, &top, &u).map_err(|e| e.to_string())?;
                    ensure(direct.components() == rebuilt.components(), || {
                        format!("pasting {};{} over {}|{name}", maps[i].name, maps[j].name, h2.name)
                    })?;
                    n += 1;
                }
            }
            Ok(n)
        })
        .sum::<Result<usize, String>>()?;
    Ok(format!("{squares} pullback mates invertible, {pasted} pastings exact"))
}

fn criterion_8(inst: &Instances<Q>) -> Verdict {
    let [n] = law_sweep(inst, &["projection"], 0)?[..] else {
        unreachable!()
    };
    Ok(format!("lambda and rho inverted exactly on {n} instances"))
}

fn criterion_9(inst: &Instances<Q>) -> Verdict {
    let [g, d] = law_sweep(inst, &["gamma-oracle", "delta-basepoint"], 0)?[..] else {
        unreachable!()
    };
    Ok(format!("gamma on {g} instances, delta at every basepoint of {d} maps"))
}

fn criterion_10(inst: &Instances<Q>) -> Verdict {
    let [f, n, m] = law_sweep(inst, &["functoriality", "nu-natural", "nu-monoidal"], 100)?[..] else {
        unreachable!()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let o = inst.corpus.random_span::<Q>(None, 3, &mut rng).source().clone();
        let nu = nakayama_montran(&o).map_err(|e| e.to_string())?;
        let inv = nu.inverse().map_err(|e| e.to_string())?;
        let id = Matrix::identity(nu.rows());
        ensure(nu.matmul(&inv).ok() == Some(id.clone()) && inv.matmul(&nu).ok() == Some(id), || {
            "nu inverse is not two-sided".into()
        })?;
    }
    Ok(format!("{f} span pairs, {n} naturality and {m} monoidality squares, 100 inverses"))
}

fn criterion_11(inst: &Instances<Q>) -> Verdict {
    let baez_dolan = |x: &Groupoid| (0..x.len()).fold(Q::from_i64(0), |acc, i| acc + Q::new(1, x.group(i).order() as i64));
    let quantized = |x: &Arc<Groupoid>| -> Result<Q, String> {
        let s = cardinality_span::<Q>(x).map_err(|e| e.to_string())?;
        let m = quant_sum_span(&s).map_err(|e| e.to_string())?.matrix;
        ensure(m.rows() == 1 && m.cols() == 1, || "not a 1x1 matrix".into())?;
        Ok(m.get(0, 0).clone())
    };
    for g in &inst.corpus.groupoids {
        let (got, expected) = (quantized(&g.groupoid)?, baez_dolan(&g.groupoid));
        ensure(got == expected, || format!("{}: {} against {}", g.name, got.to_exact_string(), expected.to_exact_string()))?;
    }
    let bc = |n| Groupoid::one_object(FiniteGroup::cyclic(n));
    let b2 = quantized(&Arc::new(bc(2)))?;
    let b23 = quantized(&Arc::new(Groupoid::disjoint_union(&[&bc(2), &bc(3)])))?;
    ensure(b2 == Q::new(1, 2) && b23 == Q::new(5, 6), || {
        format!("BC2 {}, BC2+BC3 {}", b2.to_exact_string(), b23.to_exact_string())
    })?;
    Ok(format!("{} groupoids; BC2 = 1/2, BC2+BC3 = 5/6", inst.corpus.groupoids.len()))
}

fn criterion_12(inst: &Instances<Q>) -> Verdict {
    let homs: Vec<usize> = (0..inst.corpus.maps.len())
        .filter(|&i| inst.map(i).source().len() == 1 && inst.map(i).target().len() == 1)
        .collect();
    let checks: usize = homs
        .par_iter()
        .map(|&i| -> Result<usize, String> {
            let f = inst.map(i);
            let name = inst.map_name(i);
            let mut n = 0;
            for (vn, v) in inst.source_reps(i) {
                let nu = nakayama_map(f, v).map_err(|e| format!("{name}|{vn}: {e}"))?;
                let inv = nu.inverse().map_err(|e| format!("{name}|{vn}: {e}"))?;
                let both = nu.then(&inv).map(|m| m.is_identity()).unwrap_or(false)
                    && inv.then(&nu).map(|m| m.is_identity()).unwrap_or(false);
                ensure(both, || format!("{name}|{vn}: nu not inverted"))?;
                for (wn, w) in inst.target_reps(i) {
                    let c = check_frobenius(f, v, w).map_err(|e| format!("{name}|{vn},{wn}: {e}"))?;
                    ensure(c.holds(), || format!("{name}|{vn},{wn}: {c:?}"))?;
                    n += 1;
                }
            }
            Ok(n)
        })
        .sum::<Result<usize, String>>()?;
    Ok(format!("{} homomorphisms, {checks} (V, W) pairs", homs.len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let small = Instances::<Q>::generate(4, 0, 3);
    let medium = Instances::<Q>::generate(6, 0, 3);
    let criteria: Vec<Criterion> = vec![
        ("counterexample factor", Box::new(|| criterion_1(dir.path()))),
        ("two-component counterexample", Box::new(|| criterion_2(dir.path()))),
        ("characteristic-p obstruction", Box::new(criterion_3)),
        ("Nakayama-category laws", Box::new(|| criterion_4(dir.path()))),
        ("Kan dimension formulas", Box::new(criterion_5)),
        ("character oracle", Box::new(|| criterion_6(&medium))),
        ("Beck-Chevalley and pasting", Box::new(|| criterion_7(&small))),
        ("projection formulas", Box::new(|| criterion_8(&small))),
        ("gamma and delta oracles", Box::new(|| criterion_9(&medium))),
        ("quantization functoriality", Box::new(|| criterion_10(&medium))),
        ("cardinality semantics", Box::new(|| criterion_11(&medium))),
        ("Frobenius", Box::new(|| criterion_12(&medium))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
