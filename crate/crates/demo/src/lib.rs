//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes the plain-text ideal format and returns a JSON
//! string. Failures come back as `{"error": "..."}` so the page never has
//! to catch exceptions. Exponents are sent as decimal strings since they
//! may exceed what a JavaScript number holds exactly.

use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use slice_core::compress::{alexander_dual_big, CompressionMode, Narrowed};
use slice_core::decomposition::{for_each_component, msm_with_stats};
use slice_core::idp::{solve_linear_idp, IdpOptions, IdpResult, LinearObjective};
use slice_core::io::{format_rows, parse_ideal, parse_vector};
use slice_core::random::{random_ideal, RandomIdealSpec};
use slice_core::{BigIdeal, EngineOptions, EngineStats, Result, StrategyId};

/// Upper limit on components returned to the page.
const MAX_COMPONENTS: usize = 5000;

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn rows<T: ToString>(rows: impl IntoIterator<Item = Vec<T>>) -> Value {
    rows.into_iter()
        .map(|r| Value::Array(r.iter().map(|e| Value::String(e.to_string())).collect()))
        .collect()
}

fn stats_json(s: &EngineStats) -> Value {
    json!({
        "processed": s.processed,
        "base_cases": s.base_cases,
        "pivot_splits": s.pivot_splits,
        "label_splits": s.label_splits,
        "independence_splits": s.independence_splits,
        "pruned": s.pruned,
    })
}

fn options(strategy: &str) -> Result<EngineOptions> {
    let strategy: StrategyId = if strategy.is_empty() { StrategyId::default() } else { strategy.parse()? };
    Ok(EngineOptions { strategy, check_invariants: false, ..EngineOptions::default() })
}

fn load(text: &str) -> Result<(BigIdeal, usize)> {
    let parsed = parse_ideal(text)?;
    Ok((parsed.ideal, parsed.redundant_rows))
}

/// Minimal generators and maximal standard monomials, enough to draw the
/// staircase of a two-variable ideal.
#[wasm_bindgen]
pub fn staircase(text: &str, strategy: &str) -> String {
    respond((|| {
        let (ideal, redundant) = load(text)?;
        let narrowed = Narrowed::new(&ideal, CompressionMode::Auto)?;
        let (found, stats) = msm_with_stats(narrowed.ideal(), &options(strategy)?);
        Ok(json!({
            "n": ideal.n(),
            "generators": rows(ideal.generators().iter().cloned()),
            "redundant": redundant,
            "msm": rows(found.iter().map(|d| narrowed.standard_to_big(d))),
            "stats": stats_json(&stats),
        }))
    })())
}

/// Irreducible components (0 marks an absent variable) and the Alexander
/// dual with respect to the lcm of the generators.
#[wasm_bindgen]
pub fn decompose(text: &str, strategy: &str) -> String {
    respond((|| {
        let (ideal, _) = load(text)?;
        let opts = options(strategy)?;
        let narrowed = Narrowed::new(&ideal, CompressionMode::Auto)?;
        let mut comps = Vec::new();
        let mut total = 0usize;
        let stats = for_each_component(narrowed.ideal(), &opts, |c| {
            total += 1;
            if comps.len() < MAX_COMPONENTS {
                comps.push(c);
            }
        })?;
        comps.sort_unstable();
        let dual = if total <= MAX_COMPONENTS {
            Some(rows(alexander_dual_big(&ideal, None, CompressionMode::Auto, &opts)?.generators().iter().cloned()))
        } else {
            None
        };
        Ok(json!({
            "n": ideal.n(),
            "count": total,
            "components": rows(comps.iter().map(|c| narrowed.component_to_big(c).into_exponents())),
            "truncated": total > comps.len(),
            "dual": dual,
            "stats": stats_json(&stats),
        }))
    })())
}

/// Maximizes `weights . d` over the maximal standard monomials `d`.
#[wasm_bindgen]
pub fn optimize(text: &str, weights: &str, use_bound: bool) -> String {
    respond((|| {
        let (ideal, _) = load(text)?;
        let weights = parse_vector::<BigRational>(weights)?;
        if weights.len() != ideal.n() {
            return Err(slice_core::Error::DimensionMismatch { expected: ideal.n(), found: weights.len() });
        }
        let narrowed = Narrowed::new(&ideal, CompressionMode::Auto)?;
        let objective = match narrowed.compression() {
            Some(f) => LinearObjective::with_compression(weights, f),
            None => LinearObjective::new(weights),
        };
        let idp = IdpOptions { engine: options("")?, use_bound };
        let (result, stats) = solve_linear_idp(narrowed.ideal(), &objective, &idp);
        let mut out = match result {
            IdpResult::Optimal { value, witness } => json!({
                "feasible": true,
                "value": value.to_string(),
                "witness": rows([narrowed.standard_to_big(&witness)])[0].clone(),
            }),
            IdpResult::Infeasible => json!({ "feasible": false }),
        };
        out["stats"] = stats_json(&stats.engine);
        out["eliminations"] = json!(stats.eliminations);
        Ok(out)
    })())
}

/// A random minimal ideal in the text format.
#[wasm_bindgen]
pub fn random(n: usize, generators: usize, max_exponent: u32, seed: u32) -> String {
    respond((|| {
        let spec = RandomIdealSpec::new(n, generators, max_exponent, seed.into());
        let ideal = random_ideal(&spec)?;
        Ok(json!({ "text": format_rows(ideal.n(), ideal.generators()) }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn staircase_of_a_plane_ideal() {
        let v = call(staircase("2 3\n2 0\n1 1\n0 3\n", "median"));
        assert_eq!(v["msm"], json!([["0", "2"], ["1", "0"]]));
        assert_eq!(v["redundant"], 0);
    }

    #[test]
    fn bad_input_becomes_an_error_object() {
        let v = call(staircase("2 1\n1\n", ""));
        assert!(v["error"].as_str().unwrap().contains("line 2"));
        let v = call(decompose("2 1\n1 1\n", "sideways"));
        assert!(v["error"].is_string());
    }
}
