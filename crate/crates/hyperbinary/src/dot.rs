//! Deterministic Graphviz DOT rendering of A(n).
//!
//! Nodes carry a `kind` attribute (root/sink/branch/plain) plus the
//! matching fill colour; arcs carry `kind="single"` or `kind="double"`.
//! Weight rows become same-rank groups, root row at the bottom.

use std::fmt::Write;

use crate::graph::HyperGraph;
use crate::rewrite::ArcColor;

fn node_kind(g: &HyperGraph, v: usize) -> &'static str {
    if v == g.root {
        "root"
    } else if v == g.sink {
        "sink"
    } else if g.outdegree(v) >= 2 {
        "branch"
    } else {
        "plain"
    }
}

fn fill_color(kind: &str) -> &'static str {
    match kind {
        "root" => "green",
        "sink" => "red",
        "branch" => "yellow",
        _ => "white",
    }
}

/// Renders `g` as DOT text. Output is byte-stable for a fixed input:
/// nodes appear in row-major order, arcs in (source, position) order.
pub fn to_dot(g: &HyperGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"A({})\" {{", g.n);
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle, style=filled];");
    for (i, e) in g.nodes.iter().enumerate() {
        let kind = node_kind(g, i);
        let _ = writeln!(
            out,
            "  \"{e}\" [kind=\"{kind}\", fillcolor=\"{}\"];",
            fill_color(kind)
        );
    }
    for row in &g.rows {
        let mut line = String::from("  { rank=same;");
        for &v in row {
            let _ = write!(line, " \"{}\";", g.nodes[v]);
        }
        line.push_str(" }");
        let _ = writeln!(out, "{line}");
    }
    for a in &g.arcs {
        let style = match a.color {
            ArcColor::Single => "solid",
            ArcColor::Double => "bold",
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [kind=\"{}\", style={style}];",
            g.nodes[a.source],
            g.nodes[a.target],
            a.color.token()
        );
    }
    out.push_str("}\n");
    out
}
