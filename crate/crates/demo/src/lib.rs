//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function takes the inputs as typed in the page and
//! returns a JSON string; errors become JavaScript exceptions.

use edsi_core::edsi::{count_matching_pairs, shortest_witness};
use edsi_core::similarity::matching_statistics;
use edsi_core::unary::{compute_lengths, CompactUnary};
use edsi_core::EdString;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn parse(label: &str, s: &str) -> Result<EdString, String> {
    EdString::parse(s).map_err(|e| format!("{label}: {e}"))
}

fn unary(label: &str, s: &str) -> Result<CompactUnary, String> {
    CompactUnary::parse(s).map_err(|e| format!("{label}: {e}"))
}

pub fn intersect_json(a: &str, b: &str) -> Result<String, String> {
    let (t1, t2) = (parse("first", a)?, parse("second", b)?);
    let w = shortest_witness(&t1, &t2);
    let count = count_matching_pairs(&t1, &t2);
    Ok(json!({
        "answer": w.found,
        "witness": w.found.then(|| String::from_utf8_lossy(&w.witness).into_owned()),
        // as a string: the count easily exceeds what a JS number holds
        "count": count.to_string(),
    })
    .to_string())
}

pub fn matching_statistics_json(a: &str, b: &str) -> Result<String, String> {
    let ms = matching_statistics(&parse("first", a)?, &parse("second", b)?);
    Ok(json!({ "ms": ms }).to_string())
}

pub fn unary_json(a: &str, b: &str) -> Result<String, String> {
    let (l1, l2) = (compute_lengths(&unary("first", a)?), compute_lengths(&unary("second", b)?));
    let common: Vec<u64> = l1.iter().copied().filter(|x| l2.binary_search(x).is_ok()).collect();
    Ok(json!({ "first": l1, "second": l2, "common": common }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Decision, a shortest common string and the number of matching
/// alignment pairs.
#[wasm_bindgen]
pub fn intersect(a: &str, b: &str) -> Result<String, JsError> {
    js(intersect_json(a, b))
}

#[wasm_bindgen(js_name = matchingStatistics)]
pub fn matching_statistics_js(a: &str, b: &str) -> Result<String, JsError> {
    js(matching_statistics_json(a, b))
}

/// Length sets of two unary strings in the compact format and their
/// intersection.
#[wasm_bindgen(js_name = unaryLengths)]
pub fn unary_lengths(a: &str, b: &str) -> Result<String, JsError> {
    js(unary_json(a, b))
}
