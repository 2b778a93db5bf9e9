//! Graphviz DOT export.
//!
//! Nodes carry pinned `pos` attributes in points for `neato -n`. Graphviz
//! puts `y` up, so the exported `y` is `height - y`; the picture then has the
//! same orientation as the image.

use std::fmt::Write as _;

use skelgraph_core::SkeletonGraph;

use crate::json::format_coord;

pub fn to_dot(graph: &SkeletonGraph) -> String {
    let mut out = String::from("graph skeleton {\n  node [shape=point];\n");
    let h = graph.height() as f64;
    for n in graph.nodes() {
        writeln!(
            out,
            "  {} [pos=\"{},{}!\"];",
            n.id,
            format_coord(n.pos.x),
            format_coord(h - n.pos.y)
        )
        .unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "  {a} -- {b};").unwrap();
    }
    out.push_str("}\n");
    out
}
