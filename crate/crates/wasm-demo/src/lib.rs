//! Browser bindings. Every operation is a plain function returning JSON so it
//! can be tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::{json, Value};
use subspace_metric::channel::{run_trials, ChannelSpec};
use subspace_metric::metrics::{code_min_distance, hamming_distance, insdel_distance, subset_distance, subspace_distance};
use subspace_metric::rank_metric::{delsarte_rank_distribution, empirical_rank_distribution, gabidulin_code};
use subspace_metric::suites::spread_channel_code;
use subspace_metric::{FieldCtx, Metric, SearchLimit, Word};
use wasm_bindgen::prelude::*;

const CENSUS_LIMIT: u64 = 1 << 16;
const TRIAL_LIMIT: u64 = 100_000;

fn parse_word(ctx: &FieldCtx, text: &str) -> Result<Word, String> {
    let mut symbols = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let i: u64 = tok.parse().map_err(|_| format!("'{tok}' is not an element index"))?;
        if i >= ctx.order() {
            return Err(format!("index {i} is outside F_{}", ctx.order()));
        }
        symbols.push(ctx.element_at(i));
    }
    Ok(Word::new(symbols))
}

/// Distances between two words given as element indices, e.g. `"1, 2, 3"`.
pub fn word_distances(q: u32, n: usize, a: &str, b: &str) -> Result<Value, String> {
    let ctx = FieldCtx::new(q, n, None).map_err(|e| e.to_string())?;
    let (a, b) = (parse_word(&ctx, a)?, parse_word(&ctx, b)?);
    Ok(json!({
        "field": {"q": q, "n": n, "modulus": ctx.modulus()},
        "hamming": hamming_distance(&a, &b).ok(),
        "insdel": insdel_distance(&a, &b),
        "subset": subset_distance(&a, &b),
        "subspace": subspace_distance(&ctx, &a, &b),
    }))
}

/// Rank distribution of the Gabidulin code, counted and from the closed form.
pub fn rank_census(q: u32, n: usize, t: usize) -> Result<Value, String> {
    let ctx = FieldCtx::new(q, n, None).map_err(|e| e.to_string())?;
    if t >= n {
        return Err(format!("t must be below n = {n}"));
    }
    let size = (q as u64).checked_pow((n * (t + 1)) as u32).unwrap_or(u64::MAX);
    if size > CENSUS_LIMIT {
        return Err(format!("{size} codewords is too many to count here (limit {CENSUS_LIMIT})"));
    }
    let code = gabidulin_code(&ctx, t).map_err(|e| e.to_string())?;
    let census = empirical_rank_distribution(&code);
    let formula = delsarte_rank_distribution(n, n - t, q).map_err(|e| e.to_string())?;
    let counts = |d| serde_json::to_value(d).map(|v: Value| v["counts"].clone()).unwrap_or(Value::Null);
    Ok(json!({
        "codewords": code.len(),
        "distance": n - t,
        "census": counts(&census),
        "formula": counts(&formula),
        "match": census.counts == formula.counts,
    }))
}

/// Nearest-codeword decoding on the length-3 all-vectors code of the binary 2-spread of F_2^4.
pub fn channel_trials(insertions: usize, deletions: usize, trials: u64, seed: u64) -> Result<Value, String> {
    if trials > TRIAL_LIMIT {
        return Err(format!("at most {TRIAL_LIMIT} trials"));
    }
    let code = spread_channel_code().map_err(|e| e.to_string())?;
    let d = code_min_distance(&code, Metric::Insdel, SearchLimit::default()).map_err(|e| e.to_string())?.minimum;
    let run = run_trials(&code, d, ChannelSpec { insertions, deletions, seed }, trials).map_err(|e| e.to_string())?;
    let sample: Vec<Value> = run
        .records
        .iter()
        .take(8)
        .map(|r| serde_json::to_value(r).unwrap_or(Value::Null))
        .collect();
    Ok(json!({"codewords": code.len(), "summary": run.summary, "first_trials": sample}))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = wordDistances)]
pub fn word_distances_js(q: u32, n: usize, a: &str, b: &str) -> Result<String, JsError> {
    to_js(word_distances(q, n, a, b))
}

#[wasm_bindgen(js_name = rankCensus)]
pub fn rank_census_js(q: u32, n: usize, t: usize) -> Result<String, JsError> {
    to_js(rank_census(q, n, t))
}

#[wasm_bindgen(js_name = channelTrials)]
pub fn channel_trials_js(insertions: usize, deletions: usize, trials: u32, seed: u32) -> Result<String, JsError> {
    to_js(channel_trials(insertions, deletions, trials as u64, seed as u64))
}
