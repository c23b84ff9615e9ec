//! Browser bindings. Every operation has a plain Rust form returning a JSON
//! string (tested natively) and a thin `wasm_bindgen` export.

use fca_core::dot::reduced_labels;
use fca_core::families::{family_kk, optimal_split, predicted_counts_kk};
use fca_core::{
    count_concepts, covering_relation, enumerate_concepts_with, merge_exists, pair_increase_report,
    parse_cxt, write_cxt, EnumerationLimits,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Lattices above this size are not drawn.
pub const MAX_DRAWN_CONCEPTS: usize = 400;
/// Largest family offered by the explorer.
pub const MAX_FAMILY_N: usize = 16;

fn names(all: &[String], set: impl Iterator<Item = usize>) -> Vec<String> {
    set.map(|i| all[i].clone()).collect()
}

/// Concepts with reduced labels and Hasse levels, plus cover edges.
///
/// The level of a concept is the length of the longest chain below it.
pub fn lattice_json(cxt: &str) -> Result<String, String> {
    let ctx = parse_cxt(cxt).map_err(|e| e.to_string())?;
    let limits = EnumerationLimits {
        max_concepts: MAX_DRAWN_CONCEPTS,
    };
    let lat = enumerate_concepts_with(&ctx, &limits).map_err(|e| e.to_string())?;
    let edges = covering_relation(&lat);

    let mut order: Vec<usize> = (0..lat.len()).collect();
    order.sort_by_key(|&i| lat.concepts()[i].extent().count());
    let mut level = vec![0usize; lat.len()];
    for &i in &order {
        for e in edges.iter().filter(|e| e.upper == i) {
            level[i] = level[i].max(level[e.lower] + 1);
        }
    }

    let labels = reduced_labels(&lat);
    let concepts: Vec<Value> = lat
        .concepts()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "extent": names(ctx.object_names(), c.extent().iter()),
                "intent": names(ctx.attribute_names(), c.intent().iter()),
                "level": level[i],
                "attributes": names(ctx.attribute_names(), labels[i].attributes.iter().copied()),
                "objects": names(ctx.object_names(), labels[i].objects.iter().copied()),
            })
        })
        .collect();
    let edges: Vec<[usize; 2]> = edges.iter().map(|e| [e.lower, e.upper]).collect();
    Ok(json!({ "concepts": concepts, "edges": edges }).to_string())
}

/// Counts of `Kᵏₙ` before and after merging `m1`, `m2`, measured and predicted.
pub fn family_json(n: usize, k: usize) -> Result<String, String> {
    if n > MAX_FAMILY_N {
        return Err(format!("n is limited to {MAX_FAMILY_N} here"));
    }
    let ctx = family_kk(n, k).map_err(|e| e.to_string())?;
    let merged = merge_exists(&ctx, "m1", "m2", "m12").map_err(|e| e.to_string())?;
    let predicted = predicted_counts_kk(n, k).map_err(|e| e.to_string())?;
    let (best_k, best) = optimal_split(n).map_err(|e| e.to_string())?;
    let (initial, generalized) = (count_concepts(&ctx), count_concepts(&merged));
    Ok(json!({
        "n": n,
        "k": k,
        "initial": initial,
        "generalized": generalized,
        "increase": generalized as i64 - initial as i64,
        "predicted": {
            "initial": predicted.initial_count,
            "generalized": predicted.generalized_count,
            "increase": predicted.increase,
        },
        "best_k": best_k,
        "best_increase": best,
        "cxt": write_cxt(&ctx),
    })
    .to_string())
}

/// The increase report for merging attributes `a` and `b` with exists;
/// `values` lists `[key, value]` pairs in report order.
pub fn pair_json(cxt: &str, a: &str, b: &str) -> Result<String, String> {
    let ctx = parse_cxt(cxt).map_err(|e| e.to_string())?;
    let r = pair_increase_report(&ctx, a, b).map_err(|e| e.to_string())?;
    let values: Vec<[String; 2]> = r
        .key_values()
        .into_iter()
        .map(|(k, v)| [k.to_string(), v])
        .collect();
    Ok(json!({
        "a": r.a,
        "b": r.b,
        "concepts_without_pair": r.count_k00,
        "concepts_with_pair": r.count_k12,
        "concepts_merged": r.count_k0s,
        "values": values,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn lattice(cxt: &str) -> Result<String, JsValue> {
    lattice_json(cxt).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn family(n: usize, k: usize) -> Result<String, JsValue> {
    family_json(n, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pair(cxt: &str, a: &str, b: &str) -> Result<String, JsValue> {
    pair_json(cxt, a, b).map_err(|e| JsValue::from_str(&e))
}
