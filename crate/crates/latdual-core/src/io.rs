//! File formats: canonical JSON for lattices, digraphs, and reports, and
//! DOT export for Hasse diagrams and dual digraphs. Canonical means
//! sorted object keys, pretty-printed, with a trailing newline, so output
//! is byte-stable and diffable.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::duality::DualDigraph;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::reconstruct::StablePair;
use crate::semidist::{FailureClassification, SdReport, SdWitness};
use crate::tirs::{Digraph, TirsReport};

/// Renders a JSON value canonically. `serde_json` maps iterate in sorted
/// key order, so any value built through this module serializes the same
/// way every time.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    covers: Vec<(usize, usize)>,
    labels: Vec<String>,
    n: usize,
    name: String,
}

/// Canonical JSON for a lattice: its name, size, labels, and cover pairs.
pub fn lattice_to_json(l: &Lattice) -> String {
    let file = LatticeFile {
        covers: l.covers().to_vec(),
        labels: l.labels().to_vec(),
        n: l.n(),
        name: l.name().to_string(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

/// Parses and validates lattice JSON.
pub fn lattice_from_json(text: &str) -> Result<Lattice> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        detail: e.to_string(),
    })?;
    if file.labels.len() != file.n {
        return Err(Error::Parse {
            detail: format!("n is {} but {} labels are given", file.n, file.labels.len()),
        });
    }
    Lattice::build_from_covers(&file.name, file.labels, &file.covers)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    f_min: usize,
    i_max: usize,
    id: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphFile {
    edges: Vec<(usize, usize)>,
    name: String,
    vertices: Vec<VertexFile>,
}

/// Canonical JSON for a dual digraph. Loops are implied by reflexivity
/// and omitted unless `emit_loops` is set. Each vertex records the
/// generators of its filter and ideal.
pub fn dual_digraph_to_json(name: &str, d: &DualDigraph, emit_loops: bool) -> String {
    let vertices: Vec<VertexFile> = d
        .pairs
        .iter()
        .enumerate()
        .map(|(id, p)| VertexFile {
            f_min: p.f_min,
            i_max: p.i_max,
            id,
            label: d.digraph.label(id).to_string(),
        })
        .collect();
    let edges: Vec<(usize, usize)> = d
        .digraph
        .edges()
        .into_iter()
        .filter(|&(u, v)| emit_loops || u != v)
        .collect();
    let file = DigraphFile {
        edges,
        name: name.to_string(),
        vertices,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

/// Parses digraph JSON. Every vertex gets its loop back regardless of
/// whether the file spelled loops out.
pub fn digraph_from_json(text: &str) -> Result<(String, Digraph)> {
    let file: DigraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        detail: e.to_string(),
    })?;
    for (k, v) in file.vertices.iter().enumerate() {
        if v.id != k {
            return Err(Error::Parse {
                detail: format!("vertex at position {k} has id {}", v.id),
            });
        }
    }
    let labels: Vec<String> = file.vertices.iter().map(|v| v.label.clone()).collect();
    let g = Digraph::new_reflexive(labels, &file.edges)?;
    Ok((file.name, g))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT for the Hasse diagram: cover edges drawn upward, one rank per
/// height level.
pub fn lattice_to_dot(l: &Lattice) -> String {
    let mut s = String::new();
    s.push_str("digraph hasse {\n");
    s.push_str("  rankdir=BT;\n");
    s.push_str("  node [shape=ellipse];\n");
    s.push_str("  edge [arrowhead=none];\n");
    for x in l.elements() {
        s.push_str(&format!("  v{x} [label=\"{}\"];\n", dot_escape(l.label(x))));
    }
    let heights = l.heights();
    let max_h = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max_h {
        let level: Vec<String> = l
            .elements()
            .filter(|&x| heights[x] == h)
            .map(|x| format!("v{x};"))
            .collect();
        if !level.is_empty() {
            s.push_str(&format!("  {{ rank=same; {} }}\n", level.join(" ")));
        }
    }
    for &(a, b) in l.covers() {
        s.push_str(&format!("  v{a} -> v{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// DOT for a digraph. Mutual edge pairs collapse to one double-headed
/// arrow when `collapse_mutual` is set; loops appear only with
/// `emit_loops`.
pub fn digraph_to_dot(g: &Digraph, name: &str, emit_loops: bool, collapse_mutual: bool) -> String {
    let mut s = String::new();
    s.push_str(&format!("digraph \"{}\" {{\n", dot_escape(name)));
    s.push_str("  node [shape=ellipse];\n");
    for v in g.vertices() {
        s.push_str(&format!("  v{v} [label=\"{}\"];\n", dot_escape(g.label(v))));
    }
    for u in g.vertices() {
        for v in g.out(u).iter() {
            if u == v {
                if emit_loops {
                    s.push_str(&format!("  v{u} -> v{u};\n"));
                }
                continue;
            }
            let mutual = g.has_edge(v, u);
            if collapse_mutual && mutual {
                if u < v {
                    s.push_str(&format!("  v{u} -> v{v} [dir=both];\n"));
                }
            } else {
                s.push_str(&format!("  v{u} -> v{v};\n"));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// JSON value for a stable pair: the two vertex id lists.
pub fn stable_pair_to_value(p: &StablePair) -> Value {
    json!({ "one": p.one_set.to_vec(), "zero": p.zero_set.to_vec() })
}

/// JSON value for a TiRS axiom report: one boolean per axiom plus the
/// first violating witness, if any.
pub fn tirs_report_to_value(r: &TirsReport) -> Value {
    let witness = if let Some(v) = r.missing_loop {
        json!({ "axiom": "reflexive", "vertices": [v] })
    } else if let Some((x, y)) = r.s_violation {
        json!({ "axiom": "S", "vertices": [x, y] })
    } else if let Some((x, y)) = r.r_out_violation {
        json!({ "axiom": "R", "side": "out", "vertices": [x, y] })
    } else if let Some((x, y)) = r.r_in_violation {
        json!({ "axiom": "R", "side": "in", "vertices": [x, y] })
    } else if let Some((x, y)) = r.ti_violation {
        json!({ "axiom": "Ti", "vertices": [x, y] })
    } else {
        Value::Null
    };
    json!({
        "reflexive": r.reflexive(),
        "S": r.s_holds(),
        "R": r.r_holds(),
        "Ti": r.ti_holds(),
        "witness": witness,
    })
}

/// JSON value for a semidistributivity witness.
pub fn sd_witness_to_value(w: &SdWitness) -> Value {
    match w {
        SdWitness::Triple { a, b, c } => json!({ "triple": [a, b, c] }),
        SdWitness::MdfipPair { x, y } => json!({
            "pair": [
                { "f_min": x.f_min, "i_max": x.i_max },
                { "f_min": y.f_min, "i_max": y.i_max },
            ]
        }),
        SdWitness::Embedding { pattern, map } => json!({ "map": map, "pattern": pattern }),
    }
}

/// JSON value for one semidistributivity report.
pub fn sd_report_to_value(r: &SdReport) -> Value {
    let mut v = json!({
        "method": r.method.as_str(),
        "property": r.property.as_str(),
        "verdict": r.verdict,
        "witness": r.witness.as_ref().map(sd_witness_to_value),
    });
    if let Some(extra) = &r.extra_pattern {
        v["extra_pattern"] = sd_witness_to_value(extra);
    }
    v
}

pub fn failure_classification_to_value(l: &Lattice, c: &FailureClassification) -> Value {
    let labels: Vec<&str> = c.embedding.iter().map(|&x| l.label(x)).collect();
    json!({
        "case": c.case_id,
        "embedding": c.embedding,
        "embedding_labels": labels,
        "holds": {"A": c.holds_a, "B": c.holds_b, "C": c.holds_c},
        "pattern": c.pattern,
    })
}
