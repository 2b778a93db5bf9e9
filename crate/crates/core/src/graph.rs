//! The skeleton graph: node positions in image coordinates plus undirected
//! edges.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::Point;

/// A graph node. Coordinates are pixels with `y` pointing down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: u32,
    pub pos: Point,
}

/// Structural problems found while validating a [`SkeletonGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    ZeroDimension,
    DuplicateNodeId(u32),
    NonFinitePosition(u32),
    SelfLoop(u32),
    DanglingEndpoint { edge: (u32, u32), missing: u32 },
    DuplicateEdge(u32, u32),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::ZeroDimension => f.write_str("width and height must be at least 1"),
            GraphError::DuplicateNodeId(id) => write!(f, "duplicate node id {id}"),
            GraphError::NonFinitePosition(id) => write!(f, "node {id} has a non-finite position"),
            GraphError::SelfLoop(id) => write!(f, "self-loop on node {id}"),
            GraphError::DanglingEndpoint { edge, missing } => {
                write!(
                    f,
                    "dangling endpoint: edge [{}, {}] references unknown node {missing}",
                    edge.0, edge.1
                )
            }
            GraphError::DuplicateEdge(a, b) => write!(f, "duplicate edge [{a}, {b}]"),
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected simple graph over 2D node positions.
///
/// Nodes are kept sorted by id; each edge is stored as `(a, b)` with `a < b`
/// and the edge list is sorted. Two graphs with the same content therefore
/// compare equal regardless of the order they were built in.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonGraph {
    width: u32,
    height: u32,
    nodes: Vec<Node>,
    edges: Vec<(u32, u32)>,
}

impl SkeletonGraph {
    pub fn new(
        width: u32,
        height: u32,
        mut nodes: Vec<Node>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        if width == 0 || height == 0 {
            return Err(GraphError::ZeroDimension);
        }
        nodes.sort_by_key(|n| n.id);
        for pair in nodes.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(GraphError::DuplicateNodeId(pair[0].id));
            }
        }
        if let Some(n) = nodes.iter().find(|n| !(n.pos.x.is_finite() && n.pos.y.is_finite())) {
            return Err(GraphError::NonFinitePosition(n.id));
        }
        let has = |id: u32| nodes.binary_search_by_key(&id, |n| n.id).is_ok();
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for end in [a, b] {
                if !has(end) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: (a, b),
                        missing: end,
                    });
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        Ok(SkeletonGraph {
            width,
            height,
            nodes,
            edges: normalized,
        })
    }

    /// A graph with the same nodes and frame but a different edge set.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        Self::new(self.width, self.height, self.nodes.clone(), edges)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn position(&self, id: u32) -> Option<Point> {
        self.nodes
            .binary_search_by_key(&id, |n| n.id)
            .ok()
            .map(|i| self.nodes[i].pos)
    }

    /// Neighbor lists for every node (isolated nodes map to an empty list).
    pub fn adjacency(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut adj: BTreeMap<u32, Vec<u32>> = self.nodes.iter().map(|n| (n.id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).expect("validated").push(b);
            adj.get_mut(&b).expect("validated").push(a);
        }
        adj
    }

    /// Number of connected components (isolated nodes count as one each).
    pub fn component_count(&self) -> usize {
        let index: BTreeMap<u32, usize> = self.nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut components = self.nodes.len();
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, index[&a]);
            let rb = find(&mut parent, index[&b]);
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}
