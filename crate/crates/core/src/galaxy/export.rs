use std::fmt::Write;

use serde_json::{json, Value};

use super::{GalaxyFragment, Provenance};
use crate::classify::{basic_subsets, group_order, is_spherical, recognize};
use crate::coxsys::{
    abelianization_rank, canonical_form, irreducible_components, CoxeterMatrix, GeneratorSubset, Label,
};
use crate::moves::statistics;

fn names(m: &CoxeterMatrix, t: GeneratorSubset) -> Vec<&str> {
    t.iter().map(|i| m.name(i)).collect()
}

/// Classification data of a system: components with their types, group
/// order (`null` when infinite, a string beyond `u64`), basic subsets,
/// move statistics and abelianization rank.
pub fn system_summary(m: &CoxeterMatrix) -> Value {
    let components: Vec<Value> = irreducible_components(m)
        .into_iter()
        .map(|c| {
            let ty = recognize(m, c).ok().flatten().map(|r| r.ty.to_string());
            json!({"generators": names(m, c), "type": ty})
        })
        .collect();
    let basics: Vec<Value> = basic_subsets(m)
        .into_iter()
        .map(|b| json!({"generators": names(m, b.members), "type": b.ty.to_string()}))
        .collect();
    let order = match group_order(m) {
        None => Value::Null,
        Some(o) => u64::try_from(o).map_or_else(|_| Value::String(o.to_string()), Value::from),
    };
    json!({
        "canon": canonical_form(m).short(),
        "rank": m.rank(),
        "spherical": is_spherical(m),
        "order": order,
        "components": components,
        "basics": basics,
        "statistics": statistics(m),
        "abelianization_rank": abelianization_rank(m),
    })
}

/// `{"seed", "truncated", "vertices": [{canon, layer, representative}],
/// "edges": [...]}`; direct edges are move records, the others carry
/// `"kind": "Composite"`.
pub fn fragment_to_json(f: &GalaxyFragment) -> Value {
    let vertices: Vec<Value> = f
        .vertices
        .iter()
        .map(|v| json!({"canon": v.vertex.hex(), "layer": v.layer(), "representative": v.representative.to_json_value()}))
        .collect();
    let edges: Vec<Value> = f
        .edges
        .iter()
        .map(|e| match e.provenance {
            Provenance::Move(i) => serde_json::to_value(&f.moves[i]).expect("record serializes"),
            Provenance::Composite => json!({
                "kind": "Composite",
                "source": f.vertices[e.a].vertex.hex(),
                "target": f.vertices[e.b].vertex.hex(),
            }),
        })
        .collect();
    json!({
        "seed": f.seed.hex(),
        "truncated": f.truncated,
        "edges_complete": f.edges_complete,
        "vertices": vertices,
        "edges": edges,
    })
}

fn summary(m: &CoxeterMatrix) -> String {
    let mut parts = Vec::new();
    for i in 0..m.rank() {
        for j in i + 1..m.rank() {
            match m.get(i, j) {
                Label::Finite(2) => {}
                Label::Infinity => parts.push(format!("{}-{} ∞", m.name(i), m.name(j))),
                l => parts.push(format!("{}-{} {}", m.name(i), m.name(j), l.to_code())),
            }
        }
    }
    if parts.is_empty() {
        parts.push(m.generators().join(" "));
    }
    parts.join("\\n")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The fragment's 1-skeleton; composite edges are dotted.
pub fn fragment_to_dot(f: &GalaxyFragment) -> String {
    let mut out = String::from("graph fragment {\n  node [shape=box, fontname=\"monospace\"];\n");
    for v in &f.vertices {
        let label = format!(
            "layer {}\\n{}",
            v.layer(),
            summary(&v.representative).replace('"', "\\\"")
        );
        writeln!(out, "  \"{}\" [label=\"{}\"];", v.vertex.short(), label).unwrap();
    }
    for e in &f.edges {
        let (a, b) = (f.vertices[e.a].vertex.short(), f.vertices[e.b].vertex.short());
        match e.provenance {
            Provenance::Move(i) => writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{:?}\"];", f.moves[i].kind()).unwrap(),
            Provenance::Composite => writeln!(out, "  \"{a}\" -- \"{b}\" [style=dotted];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// A complete Coxeter graph: `∞` edges dashed, `2` edges thick and grey.
pub fn system_to_dot(m: &CoxeterMatrix) -> String {
    let mut out = String::from("graph coxeter {\n  node [shape=circle];\n");
    for i in 0..m.rank() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(m.name(i))).unwrap();
    }
    for i in 0..m.rank() {
        for j in i + 1..m.rank() {
            let style = match m.get(i, j) {
                Label::Finite(2) => "color=grey, penwidth=3".to_string(),
                Label::Infinity => "style=dashed, label=\"∞\"".to_string(),
                l => format!("label=\"{}\"", l.to_code()),
            };
            writeln!(out, "  n{i} -- n{j} [{style}];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
