//! Rewiring a learned graph with the relative neighborhood graph (RNG).
//!
//! Points `i` and `j` are relative neighbors when no third point `z` is
//! strictly closer to both of them than they are to each other:
//! there is no `z` with `d(z, i) < d(i, j)` and `d(z, j) < d(i, j)`.
//! Pairs farther apart than a cap (a fraction of the image diagonal) are
//! never connected, which keeps separate strokes apart.

use alloc::vec::Vec;

use crate::geometry::Point;
use crate::graph::SkeletonGraph;
use crate::{Error, Result};

/// How the rewired edge set relates to the input edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RewireMode {
    /// Rebuild all edges from node positions.
    #[default]
    Recompute,
    /// Keep only the input edges that the RNG also contains.
    Prune,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct RewireParams {
    /// Maximum edge length as a fraction of the image diagonal.
    pub cap_factor: f64,
    pub mode: RewireMode,
}

impl Default for RewireParams {
    fn default() -> Self {
        RewireParams {
            cap_factor: 0.15,
            mode: RewireMode::Recompute,
        }
    }
}

impl RewireParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.cap_factor > 0.0) {
            return Err(Error::InvalidParam {
                name: "cap_factor",
                reason: "must be positive",
            });
        }
        Ok(())
    }

    /// Edge-length cap for a `width` x `height` frame.
    pub fn cap(&self, width: u32, height: u32) -> f64 {
        let (w, h) = (width as f64, height as f64);
        self.cap_factor * libm::sqrt(w * w + h * h)
    }
}

/// RNG edges over `points` with pair distance at most `cap`, as index pairs
/// `(i, j)` with `i < j`, sorted. Pass `f64::INFINITY` for no cap.
pub fn relative_neighbor_edges(points: &[Point], cap: f64) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut dist = alloc::vec![0.0f64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = points[i].dist(points[j]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let d = |a: usize, b: usize| dist[a * n + b];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = d(i, j);
            if !(dij <= cap) {
                continue;
            }
            let blocked = (0..n).any(|z| z != i && z != j && d(z, i) < dij && d(z, j) < dij);
            if !blocked {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Replaces (or filters) the edges of `graph` with its capped RNG. Node ids
/// and positions are untouched.
pub fn rewire(graph: &SkeletonGraph, params: &RewireParams) -> SkeletonGraph {
    let nodes = graph.nodes();
    let points: Vec<Point> = nodes.iter().map(|n| n.pos).collect();
    let cap = params.cap(graph.width(), graph.height());
    let rng = relative_neighbor_edges(&points, cap)
        .into_iter()
        .map(|(i, j)| (nodes[i].id, nodes[j].id));
    let edges: Vec<(u32, u32)> = match params.mode {
        RewireMode::Recompute => rng.collect(),
        RewireMode::Prune => rng.filter(|&(a, b)| graph.has_edge(a, b)).collect(),
    };
    graph
        .with_edges(edges)
        .expect("edges come from existing distinct nodes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Node;
    use alloc::vec;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    fn graph(w: u32, h: u32, v: &[(f64, f64)], edges: &[(u32, u32)]) -> SkeletonGraph {
        let nodes = v
            .iter()
            .enumerate()
            .map(|(i, &p)| Node {
                id: i as u32,
                pos: p.into(),
            })
            .collect();
        SkeletonGraph::new(w, h, nodes, edges.iter().copied()).unwrap()
    }

    #[test]
    fn collinear_middle_blocks_long_pair() {
        let e = relative_neighbor_edges(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]), f64::INFINITY);
        assert_eq!(e, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn equilateral_triangle_keeps_all_edges() {
        // Apex height is the double nearest sqrt(3) from above, for which all
        // three side lengths evaluate to exactly 2.0.
        let p = pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.7320508075688774)]);
        assert_eq!((p[0].dist(p[1]), p[0].dist(p[2]), p[1].dist(p[2])), (2.0, 2.0, 2.0));
        let e = relative_neighbor_edges(&p, f64::INFINITY);
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn square_corners_ties_keep_sides() {
        // Diagonals are blocked; each side has no strictly closer third point.
        let e = relative_neighbor_edges(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), f64::INFINITY);
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn cap_excludes_distant_pair() {
        let params = RewireParams::default();
        let cap = params.cap(28, 28);
        assert!((cap - 5.939696961966999).abs() < 1e-12);
        assert!(relative_neighbor_edges(&pts(&[(0.0, 0.0), (20.0, 0.0)]), cap).is_empty());
    }

    #[test]
    fn cap_is_inclusive() {
        assert_eq!(
            relative_neighbor_edges(&pts(&[(0.0, 0.0), (3.0, 4.0)]), 5.0),
            vec![(0, 1)]
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert!(relative_neighbor_edges(&[], 1.0).is_empty());
        assert!(relative_neighbor_edges(&pts(&[(1.0, 1.0)]), 1.0).is_empty());
        let g = rewire(&graph(5, 5, &[(1.0, 1.0)], &[]), &RewireParams::default());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn obtuse_triangle_loses_longest_edge() {
        let g = graph(
            100,
            100,
            &[(0.0, 0.0), (4.0, 0.0), (2.0, 1.0)],
            &[(0, 1), (1, 2), (0, 2)],
        );
        let r = rewire(&g, &RewireParams::default());
        assert_eq!(r.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(r.nodes(), g.nodes());
    }

    #[test]
    fn prune_never_adds() {
        let g = graph(100, 100, &[(0.0, 0.0), (4.0, 0.0), (2.0, 1.0)], &[(0, 1), (0, 2)]);
        let r = rewire(
            &g,
            &RewireParams {
                mode: RewireMode::Prune,
                ..Default::default()
            },
        );
        assert_eq!(r.edges(), &[(0, 2)]);
    }

    #[test]
    fn recompute_is_idempotent() {
        let g = graph(
            50,
            50,
            &[(1.0, 1.0), (9.0, 3.0), (4.0, 7.0), (20.0, 20.0), (22.0, 18.0)],
            &[],
        );
        let params = RewireParams::default();
        let once = rewire(&g, &params);
        assert_eq!(rewire(&once, &params), once);
    }

    #[test]
    fn cap_factor_validation() {
        assert!(RewireParams {
            cap_factor: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(RewireParams {
            cap_factor: f64::INFINITY,
            ..Default::default()
        }
        .validate()
        .is_ok());
    }
}
