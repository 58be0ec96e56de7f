//! Browser bindings: classify a system, explore its component, compare two
//! systems. Every function takes and returns JSON text.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use coxgalaxy::galaxy::{
    decide_isomorphic, explore, fragment_to_json, starlet, system_summary, system_to_dot, vertical_core, Budget,
};
use coxgalaxy::parse_system;

fn budget(max_vertices: u32, horizontal: bool) -> Budget {
    Budget {
        time_limit: None,
        horizontal,
        ..Budget::default()
    }
    .with_max_vertices(max_vertices.max(1) as usize)
}

pub fn classify_json(system: &str) -> Result<String, String> {
    let m = parse_system(system).map_err(|e| e.to_string())?;
    let mut s = system_summary(&m);
    s["dot"] = Value::String(system_to_dot(&m));
    Ok(s.to_string())
}

pub fn explore_json(system: &str, max_vertices: u32, horizontal: bool, core: bool) -> Result<String, String> {
    let m = parse_system(system).map_err(|e| e.to_string())?;
    let mut f = explore(&m, &budget(max_vertices, horizontal));
    if core {
        f = vertical_core(&f);
    }
    let mut v = fragment_to_json(&f);
    let pairs: Vec<Value> = f.edges.iter().map(|e| json!([e.a, e.b])).collect();
    v["pairs"] = Value::Array(pairs);
    Ok(v.to_string())
}

pub fn starlet_json(ks: &str) -> Result<String, String> {
    let ks: Vec<u32> = ks
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("not a positive integer: {s}")))
        .collect::<Result<_, _>>()?;
    starlet(&ks).map(|m| m.to_json()).map_err(|e| e.to_string())
}

pub fn decide_json(first: &str, second: &str, max_vertices: u32) -> Result<String, String> {
    let m1 = parse_system(first).map_err(|e| format!("first system: {e}"))?;
    let m2 = parse_system(second).map_err(|e| format!("second system: {e}"))?;
    let d = decide_isomorphic(&m1, &m2, &budget(max_vertices, true));
    Ok(serde_json::to_string(&d).expect("decision serializes"))
}

#[wasm_bindgen]
pub fn classify(system: &str) -> Result<String, JsError> {
    classify_json(system).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn explore_component(system: &str, max_vertices: u32, horizontal: bool, core: bool) -> Result<String, JsError> {
    explore_json(system, max_vertices, horizontal, core).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn make_starlet(ks: &str) -> Result<String, JsError> {
    starlet_json(ks).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decide(first: &str, second: &str, max_vertices: u32) -> Result<String, JsError> {
    decide_json(first, second, max_vertices).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_json() {
        let s = starlet_json("6 10").unwrap();
        let c: Value = serde_json::from_str(&classify_json(&s).unwrap()).unwrap();
        assert_eq!(c["statistics"]["u"], 2);
        let f: Value = serde_json::from_str(&explore_json(&s, 100, true, true).unwrap()).unwrap();
        assert_eq!(f["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(f["pairs"].as_array().unwrap().len(), 5);
        let top = f["vertices"][3]["representative"].to_string();
        let d: Value = serde_json::from_str(&decide_json(&s, &top, 100).unwrap()).unwrap();
        assert_eq!(d["Isomorphic"]["Path"].as_array().unwrap().len(), 2);
        assert!(starlet_json("3,3").is_err());
        assert!(classify_json("{").is_err());
    }
}
