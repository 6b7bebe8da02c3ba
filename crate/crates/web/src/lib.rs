//! wasm-bindgen bindings for the static demo in `www/`.
//!
//! Each export returns a JSON string; errors come back as a thrown string.
//! The `*_json` functions hold the logic so native tests can call them.

use cyclebook::constructions::{lower_bound_witness, Component};
use cyclebook::verify::{verify_graph, Expectations, Mode, VerifyConfig};
use cyclebook::{formula, io};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

pub fn predict_json(t: i64, k: i64, n: i64, m: i64) -> Result<String, String> {
    formula::predict(t, k, n, m).map(|p| p.to_json()).map_err(|e| e.to_string())
}

/// Places each component on its own circle, components left to right in
/// rows. Coordinates are in the unit square.
pub fn layout(components: &[Component]) -> Vec<[f64; 2]> {
    let per_row = (components.len() as f64).sqrt().ceil().max(1.0) as usize;
    let rows = components.len().div_ceil(per_row).max(1);
    let (w, h) = (1.0 / per_row as f64, 1.0 / rows as f64);
    let radius = 0.4 * w.min(h);
    let mut out = Vec::new();
    for (i, c) in components.iter().enumerate() {
        let (cx, cy) = ((i % per_row) as f64 * w + w / 2.0, (i / per_row) as f64 * h + h / 2.0);
        let size = c.order();
        for j in 0..size {
            let a = std::f64::consts::TAU * j as f64 / size as f64;
            let r = if size == 1 { 0.0 } else { radius };
            out.push([cx + r * a.cos(), cy + r * a.sin()]);
        }
    }
    out
}

pub fn construct_json(t: i64, k: i64, n: i64, m: i64) -> Result<String, String> {
    let ctx = formula::validate(t, k, n, m).map_err(|e| e.to_string())?;
    let (g, spec) = lower_bound_witness(&ctx).map_err(|e| e.to_string())?;
    let spec_value: Value = serde_json::from_str(&spec.to_json()).expect("spec JSON round trips");
    let out = json!({
        "graph6": io::to_graph6(&g),
        "order": g.order(),
        "edges": g.edges(),
        "positions": layout(&spec.components),
        "spec": spec_value,
    });
    Ok(out.to_string())
}

pub fn verify_json(graph6: &str, m: usize, n: usize, k: usize) -> Result<String, String> {
    let g = io::from_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    let report = verify_graph(&g, (m, n, k), Mode::Auto, &VerifyConfig::default(), Expectations::default())
        .map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[wasm_bindgen]
pub fn predict(t: i64, k: i64, n: i64, m: i64) -> Result<String, JsValue> {
    predict_json(t, k, n, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn construct(t: i64, k: i64, n: i64, m: i64) -> Result<String, JsValue> {
    construct_json(t, k, n, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(graph6: &str, m: usize, n: usize, k: usize) -> Result<String, JsValue> {
    verify_json(graph6, m, n, k).map_err(|e| JsValue::from_str(&e))
}
