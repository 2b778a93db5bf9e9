//! Canonical JSON for skeleton graphs.
//!
//! ```text
//! {"width":W,"height":H,"nodes":[{"id":0,"x":1.0000,"y":2.5000},...],"edges":[[0,1],...]}
//! ```
//!
//! Coordinates are pixels with `y` pointing down, written with exactly four
//! fraction digits. Nodes appear in id order, each edge as `[a, b]` with
//! `a < b`, edges sorted. The text has no insignificant whitespace and ends
//! with a single newline, so equal graphs give byte-identical files.

use std::fmt::Write as _;

use serde::Deserialize;
use skelgraph_core::{GngParams, Node, Point, SkeletonGraph, TopologySignature};

use crate::ExportError;

/// Fixed four-digit decimal; negative zero prints as zero.
pub fn format_coord(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub fn to_json(graph: &SkeletonGraph) -> String {
    let mut out = String::with_capacity(64 + graph.node_count() * 40 + graph.edge_count() * 12);
    write!(
        out,
        "{{\"width\":{},\"height\":{},\"nodes\":[",
        graph.width(),
        graph.height()
    )
    .unwrap();
    for (i, n) in graph.nodes().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(
            out,
            "{{\"id\":{},\"x\":{},\"y\":{}}}",
            n.id,
            format_coord(n.pos.x),
            format_coord(n.pos.y)
        )
        .unwrap();
    }
    out.push_str("],\"edges\":[");
    for (i, (a, b)) in graph.edges().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "[{a},{b}]").unwrap();
    }
    out.push_str("]}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: u32,
    x: f64,
    y: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    width: u32,
    height: u32,
    nodes: Vec<RawNode>,
    edges: Vec<(u32, u32)>,
}

/// Parses and validates a graph document. Any key order and whitespace is
/// accepted; unknown keys are not.
pub fn from_json(bytes: &[u8]) -> Result<SkeletonGraph, ExportError> {
    let raw: RawGraph = serde_json::from_slice(bytes)?;
    let nodes = raw
        .nodes
        .into_iter()
        .map(|n| Node {
            id: n.id,
            pos: Point::new(n.x, n.y),
        })
        .collect();
    Ok(SkeletonGraph::new(raw.width, raw.height, nodes, raw.edges)?)
}

/// `{"endpoints":..,"junctions":..,"cycles":..,"components":..,"corners":..}`
pub fn signature_to_json(sig: &TopologySignature) -> String {
    serde_json::to_string(sig).expect("plain struct serializes")
}

pub fn signature_from_json(bytes: &[u8]) -> Result<TopologySignature, ExportError> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Reads a parameter manifest; absent fields take their defaults.
pub fn params_from_json(bytes: &[u8]) -> Result<GngParams, ExportError> {
    Ok(serde_json::from_slice(bytes)?)
}

pub fn params_to_json(params: &GngParams) -> String {
    serde_json::to_string_pretty(params).expect("plain struct serializes")
}
