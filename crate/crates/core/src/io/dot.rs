use std::fmt::Write as _;

use crate::category::{Grading, LoopFreeCategory};
use crate::morse::{EdgeKind, FlowGraph, MorseDecomposition};

const PALETTE: [&str; 10] = [
    "#8dd3c7", "#bebada", "#80b1d3", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5",
    "#ffed6f", "#fb8072",
];
pub const GRADIENT_COLOR: &str = "#ff7f00";

/// Fill color of the `i`-th basic set; past the fixed palette, hues are
/// spread by the golden ratio.
pub fn basic_set_color(i: usize) -> String {
    match PALETTE.get(i) {
        Some(c) => (*c).to_owned(),
        None => {
            let hue = ((i - PALETTE.len()) as f64 * 0.618_033_988_75 + 0.05).fract();
            format!("{hue:.3} 0.350 0.950")
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Renders the flow graph in Graphviz syntax, with nodes and edges sorted.
pub fn export_dot(
    cat: &LoopFreeCategory,
    flow: &FlowGraph,
    decomposition: &MorseDecomposition,
    grading: &Grading,
) -> String {
    let mut out = String::from("digraph flow {\n  node [shape=ellipse, style=filled, fillcolor=\"#ffffff\"];\n");
    for o in 0..cat.num_objects() {
        let id = cat.object_id(o);
        let label = format!("{id} ({})", grading.degree(o));
        let _ = write!(out, "  {} [label={}", quote(id), quote(&label));
        if let Some(i) = decomposition.basic_set_of(o) {
            let _ = write!(out, ", fillcolor={}", quote(&basic_set_color(i)));
        }
        out.push_str("];\n");
    }

    let mut edges: Vec<(String, String, String, String)> = flow
        .edges()
        .iter()
        .map(|e| {
            let from = cat.object_id(e.from).to_owned();
            let to = cat.object_id(e.to).to_owned();
            let (label, attrs) = match e.kind {
                EdgeKind::Forward(a) if decomposition.gradient_part.contains(&a) => (
                    cat.arrow(a).id.clone(),
                    format!("style=solid, color={}", quote(GRADIENT_COLOR)),
                ),
                EdgeKind::Forward(a) => (cat.arrow(a).id.clone(), "style=solid".to_owned()),
                EdgeKind::Reversed(a) => (cat.arrow(a).id.clone(), "style=dashed".to_owned()),
                EdgeKind::SelfLoop => (format!("id_{from}"), "style=solid".to_owned()),
            };
            (from, to, label, attrs)
        })
        .collect();
    edges.sort();
    for (from, to, label, attrs) in edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, {attrs}];",
            quote(&from),
            quote(&to),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
