//! Browser bindings. Each exported function takes plain numbers, runs one operation of the
//! library and returns its report as a JSON string. Build with
//! `wasm-pack build crates/web --target web --out-dir www/pkg`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use hyperreg::construct::{random_fill, random_graph, random_triad};
use hyperreg::count::full_density;
use hyperreg::graphreg::{sampled_partition_audit, szemeredi_partition};
use hyperreg::quasi::{counting_audit, dev23, measured_triad_epsilon};
use hyperreg::structures::VertexPartition;
use hyperreg::verify;

/// Largest part size the page accepts; larger inputs stall the tab.
pub const MAX_TRIAD_PART: usize = 60;
pub const MAX_GRAPH: usize = 600;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Random triad with parts of size `n`, a trigraph keeping each triangle with probability
/// `fill`, its deviation report and the counting-lemma check.
pub fn triad_deviation_json(n: usize, p: f64, fill: f64, seed: u64) -> Result<String, String> {
    if n == 0 || n > MAX_TRIAD_PART {
        return Err(format!("part size must be in 1..={MAX_TRIAD_PART}"));
    }
    let g = random_triad([n; 3], p, seed).map_err(err)?;
    let h = random_fill(&g, fill, seed.wrapping_add(1)).map_err(err)?;
    let dev = dev23(&h, &g).map_err(err)?;
    let eps = measured_triad_epsilon(&g);
    let d = [g.xy(), g.xz(), g.yz()].map(|c| full_density(c).ratio());
    let counting = counting_audit(&g, [&d[0], &d[1], &d[2]], eps).map_err(err)?;
    Ok(json!({
        "triangles": g.k3_count(),
        "triples": h.triple_count(),
        "relative_density": dev.density.value,
        "normalized_deviation": dev.normalized,
        "component_deviation": dev.components.iter().map(|c| c.normalized).collect::<Vec<_>>(),
        "counting": counting,
    })
    .to_string())
}

/// Regularity partition of `G(n, p)` at `eps` with its energy ledger and a sampled audit.
pub fn partition_json(n: usize, p: f64, eps: f64, seed: u64) -> Result<String, String> {
    if n == 0 || n > MAX_GRAPH {
        return Err(format!("vertex count must be in 1..={MAX_GRAPH}"));
    }
    let g = random_graph(n, p, seed).map_err(err)?;
    let (part, ledger) = szemeredi_partition(&g, eps, &VertexPartition::trivial(n), None).map_err(err)?;
    let audit = sampled_partition_audit(&g, &part, eps, 500, seed);
    Ok(json!({ "sizes": part.sizes(), "ledger": ledger, "audit": audit }).to_string())
}

/// One verification suite; the fast ones finish in well under a second.
pub fn suite_json(name: &str, seed: u64) -> Result<String, String> {
    let r = verify::run_suite(name, seed).map_err(err)?;
    Ok(json!({ "report": r, "elapsed_secs": r.elapsed_secs }).to_string())
}

pub fn suite_names() -> Vec<&'static str> {
    verify::SUITES.iter().map(|(n, _)| *n).collect()
}

// Seeds cross the boundary as u32 so JavaScript passes plain numbers rather than BigInts.

#[wasm_bindgen]
pub fn triad_deviation(n: usize, p: f64, fill: f64, seed: u32) -> Result<String, JsValue> {
    triad_deviation_json(n, p, fill, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn partition(n: usize, p: f64, eps: f64, seed: u32) -> Result<String, JsValue> {
    partition_json(n, p, eps, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn run_suite(name: &str, seed: u32) -> Result<String, JsValue> {
    suite_json(name, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn suites() -> String {
    json!(suite_names()).to_string()
}
