//! Three toolkit operations exported to JavaScript. Every export takes a
//! graph6 string and returns a JSON string; errors become thrown strings.

use serde_json::json;
use shortness::{bounds, cycles, factors, format, structure, Edge, Graph};
use wasm_bindgen::prelude::*;

/// Graphs larger than this skip the exact circumference search in the page.
pub const CIRC_CAP: usize = 40;
pub const ODD_CAP: usize = 30;

fn parse(graph6: &str) -> Result<Graph, String> {
    format::parse_graph6(graph6.trim()).map_err(|e| e.to_string())
}

fn text(e: impl ToString) -> String {
    e.to_string()
}

pub fn analyze_json(graph6: &str) -> Result<String, String> {
    let g = parse(graph6)?;
    let class = structure::classify(&g).map_err(text)?;
    let circ = if g.n() <= CIRC_CAP {
        let (len, c) = cycles::circumference(&g).map_err(text)?;
        json!({ "length": len, "cycle": c })
    } else {
        json!({ "skipped": format!("n > {CIRC_CAP}") })
    };
    let odd = if g.n() <= ODD_CAP {
        let r = factors::oddness(&g).map_err(text)?;
        json!({ "oddness": r.oddness, "two_factors": r.two_factors })
    } else {
        json!({ "skipped": format!("n > {ODD_CAP}") })
    };
    let out = json!({
        "graph6": format::serialize_graph6(&g),
        "vertices": g.n(),
        "structure": class,
        "circumference": circ,
        "oddness": odd,
    });
    Ok(out.to_string())
}

pub fn bound_json(graph6: &str, u: usize, v: usize) -> Result<String, String> {
    let g = parse(graph6)?;
    let r = bounds::shortness_report(&g, Edge::new(u, v), "input").map_err(text)?;
    serde_json::to_string(&r).map_err(text)
}

pub fn dominate_json(graph6: &str, k: usize) -> Result<String, String> {
    let g = parse(graph6)?;
    let r = cycles::matching_survey(&g, k).map_err(text)?;
    serde_json::to_string(&r).map_err(text)
}

#[wasm_bindgen]
pub fn analyze(graph6: &str) -> Result<String, JsValue> {
    analyze_json(graph6).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound(graph6: &str, u: usize, v: usize) -> Result<String, JsValue> {
    bound_json(graph6, u, v).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dominate(graph6: &str, k: usize) -> Result<String, JsValue> {
    dominate_json(graph6, k).map_err(|e| JsValue::from_str(&e))
}
