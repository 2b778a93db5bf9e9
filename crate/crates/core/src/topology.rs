//! Topology signatures: the counts used to compare skeleton graphs.

use crate::geometry::angle_between_deg;
use crate::graph::SkeletonGraph;

/// Default acute-corner threshold in degrees.
pub const DEFAULT_CORNER_THRESHOLD: f64 = 90.0;

/// Structural summary of a skeleton graph.
///
/// * `endpoints`: nodes of degree 1
/// * `junctions`: nodes of degree 3 or more (a crossing counts once)
/// * `cycles`: cyclomatic number `E - V + components`
/// * `components`: connected components
/// * `corners`: degree-2 nodes whose two edges meet at an angle below the
///   corner threshold
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct TopologySignature {
    pub endpoints: usize,
    pub junctions: usize,
    pub cycles: usize,
    pub components: usize,
    pub corners: usize,
}

impl TopologySignature {
    pub const fn new(endpoints: usize, junctions: usize, cycles: usize, components: usize, corners: usize) -> Self {
        TopologySignature {
            endpoints,
            junctions,
            cycles,
            components,
            corners,
        }
    }

    /// Component-wise equality, optionally ignoring the corner count.
    pub fn matches(&self, other: &TopologySignature, include_corners: bool) -> bool {
        self.endpoints == other.endpoints
            && self.junctions == other.junctions
            && self.cycles == other.cycles
            && self.components == other.components
            && (!include_corners || self.corners == other.corners)
    }

    fn fields(&self) -> [usize; 5] {
        [
            self.endpoints,
            self.junctions,
            self.cycles,
            self.components,
            self.corners,
        ]
    }
}

/// Computes the signature of `graph`; `corner_threshold` is in degrees.
pub fn signature(graph: &SkeletonGraph, corner_threshold: f64) -> TopologySignature {
    let adj = graph.adjacency();
    let mut sig = TopologySignature::default();
    for (&id, nbrs) in &adj {
        match nbrs.len() {
            1 => sig.endpoints += 1,
            2 => {
                let here = graph.position(id).expect("node exists");
                let u = graph.position(nbrs[0]).expect("node exists") - here;
                let v = graph.position(nbrs[1]).expect("node exists") - here;
                if angle_between_deg(u, v) < corner_threshold {
                    sig.corners += 1;
                }
            }
            d if d >= 3 => sig.junctions += 1,
            _ => {}
        }
    }
    sig.components = graph.component_count();
    // E - V + C is never negative for a simple graph.
    sig.cycles = graph.edge_count() + sig.components - graph.node_count();
    sig
}

/// True iff all five counts agree.
pub fn same_topology(a: &TopologySignature, b: &TopologySignature) -> bool {
    a.matches(b, true)
}

/// L1 distance over the five counts.
pub fn signature_distance(a: &TopologySignature, b: &TopologySignature) -> usize {
    a.fields().iter().zip(b.fields()).map(|(&x, y)| x.abs_diff(y)).sum()
}
