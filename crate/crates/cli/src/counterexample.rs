//! The cyclic counterexamples: the γ comparison for `* -> BC_n -> *` differs
//! from the composite of the two γ's by the factor `n`, and per component
//! for `{x, y} -> BC_m ⊔ BC_n -> *`. The ν comparison repairs both whenever
//! the weights are invertible.

use std::sync::Arc;

use gquant_core::nakayama::{check_triangle, delta, Discrepancy, TriangleCheck, Variant};
use gquant_core::{Error, FiniteGroup, Groupoid, GroupoidMap, Representation, Scalar};
use serde_json::{json, Value};

use crate::laws::discrepancy_json;
use crate::output::{Failure, Outcome};

fn order_arg(name: &str, n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::input("BadArgument", format!("--{name} must be at least 1")));
    }
    Ok(())
}

/// Factors per summand of the two-dimensional (or one-dimensional) target,
/// when the discrepancy is diagonal.
fn factors<S: Scalar>(d: &Discrepancy<S>, components: usize) -> Option<Vec<S>> {
    match d {
        Discrepancy::Equal => Some(vec![S::one(); components]),
        Discrepancy::Scalar(c) => Some(vec![c.clone(); components]),
        Discrepancy::Diagonal(ds) => Some(ds.concat()),
        Discrepancy::Matrices { .. } => None,
    }
}

fn strings<S: Scalar>(v: &Option<Vec<S>>) -> Value {
    match v {
        Some(v) => json!(v.iter().map(S::to_exact_string).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn nu_json<S: Scalar>(r: &Result<TriangleCheck<S>, Error>) -> Value {
    match r {
        Ok(t) => json!({
            "holds": t.holds(),
            "left": discrepancy_json(&t.left),
            "right": discrepancy_json(&t.right),
        }),
        Err(e) => json!({ "error": e.code(), "message": e.to_string() }),
    }
}

/// ν agrees exactly when every order is invertible and is refused with
/// `NonInvertibleDelta` otherwise.
fn nu_as_expected<S: Scalar>(r: &Result<TriangleCheck<S>, Error>, orders: &[usize]) -> bool {
    let invertible = orders.iter().all(|&k| !S::from_usize(k).is_zero());
    match r {
        Ok(t) => invertible && t.holds(),
        Err(Error::NonInvertibleDelta(_)) => !invertible,
        Err(_) => false,
    }
}

pub fn run<S: Scalar>(n: usize, m: Option<usize>) -> Result<Outcome, Failure> {
    order_arg("n", n)?;
    match m {
        None => single::<S>(n),
        Some(m) => {
            order_arg("m", m)?;
            two_components::<S>(m, n)
        }
    }
}

fn single<S: Scalar>(n: usize) -> Result<Outcome, Failure> {
    let y = Arc::new(Groupoid::one_object(FiniteGroup::cyclic(n)));
    let f = GroupoidMap::from_point(&y, 0);
    let g = GroupoidMap::terminal(&y);
    let one = Representation::<S>::unit(f.source());
    let gamma = check_triangle(Variant::Gamma, &f, &g, &one)?;
    let nu = check_triangle(Variant::Nu, &f, &g, &one);

    let expected = S::from_usize(n);
    let left = factors(&gamma.left, 1);
    let right = factors(&gamma.right, 1);
    let gamma_ok = [&left, &right].iter().all(|f| f.as_deref() == Some(std::slice::from_ref(&expected)));
    let passed = gamma_ok && nu_as_expected(&nu, &[n]);
    let factor = left.as_ref().map(|f| f[0].to_exact_string());
    Ok(Outcome {
        report: json!({
            "n": n,
            "field": S::field().to_string(),
            "factor": factor,
            "expected_factor": expected.to_exact_string(),
            "gamma": {
                "left": discrepancy_json(&gamma.left),
                "right": discrepancy_json(&gamma.right),
            },
            "nu": nu_json(&nu),
            "passed": passed,
        }),
        passed,
    })
}

fn two_components<S: Scalar>(m: usize, n: usize) -> Result<Outcome, Failure> {
    let y = Arc::new(Groupoid::from_groups(vec![
        ("x".into(), FiniteGroup::cyclic(m)),
        ("y".into(), FiniteGroup::cyclic(n)),
    ])?);
    let x = Arc::new(Groupoid::discrete(2));
    let f = GroupoidMap::new(x.clone(), y.clone(), vec![0, 1], vec![vec![0], vec![0]])?;
    let g = GroupoidMap::terminal(&y);
    let one = Representation::<S>::unit(&x);
    let gamma = check_triangle(Variant::Gamma, &f, &g, &one)?;
    let nu = check_triangle(Variant::Nu, &f, &g, &one);

    let weights = delta::<S>(&g);
    let expected = vec![S::from_usize(m), S::from_usize(n)];
    let left = factors(&gamma.left, 2);
    let right = factors(&gamma.right, 2);
    let gamma_ok = left.as_ref() == Some(&expected) && right.as_ref() == Some(&expected);
    let passed = gamma_ok && nu_as_expected(&nu, &[m, n]);
    let components: Vec<Value> = [m, n]
        .iter()
        .enumerate()
        .map(|(k, &order)| {
            json!({
                "object": y.name(k),
                "order": order,
                "factor": left.as_ref().map(|f| f[k].to_exact_string()),
                "weight_invertible": weights.weights.iter().filter(|w| w.x == k).all(|w| w.invertible),
            })
        })
        .collect();
    Ok(Outcome {
        report: json!({
            "m": m,
            "n": n,
            "field": S::field().to_string(),
            "factors": strings(&left),
            "expected_factors": strings(&Some(expected)),
            "components": components,
            "gamma": {
                "left": discrepancy_json(&gamma.left),
                "right": discrepancy_json(&gamma.right),
            },
            "nu": nu_json(&nu),
            "passed": passed,
        }),
        passed,
    })
}
