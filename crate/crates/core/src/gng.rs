//! Growing neural gas over pixel samples.
//!
//! The network starts with two connected nodes at random positions and then,
//! for every sampled pixel `x`:
//!
//! * finds the nearest node `k` and the runner-up `s`,
//! * ages every edge at `k` and adds `|w_k - x|^2` to `k`'s error,
//! * moves `k` and each of its direct neighbors toward `x` by `lambda(t)`,
//! * connects `k`–`s` (or refreshes that edge to age 0),
//! * drops edges older than `a_max` and any node left without edges.
//!
//! Every `insert_interval` signals a node is inserted halfway between the
//! node with the largest accumulated error and its farthest neighbor, while
//! the node count is below `n_max` and that error exceeds `error0`. Every
//! `reset_interval` signals all errors are cleared. Training stops at
//! `t = T`, where the learning rate has decayed to zero.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;
use crate::graph::{Node, SkeletonGraph};
use crate::sample::PixelSampler;
use crate::{Error, Result};

const INIT_STREAM: u64 = 0;
const SAMPLER_STREAM: u64 = 1;

/// Training parameters.
///
/// Defaults: `lambda0 = 0.2`, `T = 80000`, `n_max = 40`, `a_max = 28`,
/// `error0 = 10.0`, both intervals 100, `neighbor_scale = 1.0`, `seed = 0`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GngParams {
    /// Initial learning coefficient.
    pub lambda0: f64,
    /// Number of training signals; the learning rate reaches zero here.
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    pub max_steps: u64,
    /// Node cap.
    pub n_max: usize,
    /// Edges whose age exceeds this are removed.
    pub a_max: u32,
    /// A node is inserted only when the largest accumulated error is above this.
    pub error0: f64,
    pub insert_interval: u64,
    pub reset_interval: u64,
    /// Multiplier on `lambda(t)` for the winner's neighbors.
    pub neighbor_scale: f64,
    pub seed: u64,
}

impl Default for GngParams {
    fn default() -> Self {
        GngParams {
            lambda0: 0.2,
            max_steps: 80_000,
            n_max: 40,
            a_max: 28,
            error0: 10.0,
            insert_interval: 100,
            reset_interval: 100,
            neighbor_scale: 1.0,
            seed: 0,
        }
    }
}

impl GngParams {
    pub fn validate(&self) -> Result<()> {
        fn bad(name: &'static str, reason: &'static str) -> Result<()> {
            Err(Error::InvalidParam { name, reason })
        }
        if !(self.lambda0 > 0.0 && self.lambda0 <= 1.0) {
            return bad("lambda0", "must lie in (0, 1]");
        }
        if self.n_max < 2 {
            return bad("n_max", "must be at least 2");
        }
        if self.a_max < 1 {
            return bad("a_max", "must be at least 1");
        }
        if !(self.error0 >= 0.0) {
            return bad("error0", "must be non-negative");
        }
        if self.insert_interval < 1 {
            return bad("insert_interval", "must be at least 1");
        }
        if self.reset_interval < 1 {
            return bad("reset_interval", "must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.neighbor_scale) {
            return bad("neighbor_scale", "must lie in [0, 1]");
        }
        Ok(())
    }
}

/// `lambda(t) = lambda0 * (1 - t / T)`. Steps past `T` use `t = T`, and a
/// zero-length schedule (`T = 0`) is already at its endpoint.
pub fn learning_rate(t: u64, params: &GngParams) -> f64 {
    if params.max_steps == 0 {
        return 0.0;
    }
    let t = t.min(params.max_steps);
    params.lambda0 * (1.0 - t as f64 / params.max_steps as f64)
}

/// Per-node training data: reference vector and accumulated squared error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    pub w: Point,
    pub error: f64,
}

/// The network during training.
#[derive(Debug, Clone, PartialEq)]
pub struct GngState {
    width: u32,
    height: u32,
    units: BTreeMap<u32, Unit>,
    /// Keyed by `(low id, high id)`; value is the edge age.
    edges: BTreeMap<(u32, u32), u32>,
    t: u64,
    next_id: u32,
}

fn key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

fn bounds_ok(width: u32, height: u32) -> Result<()> {
    if width == 0 || height == 0 {
        Err(Error::InvalidImage("width and height must be at least 1"))
    } else {
        Ok(())
    }
}

impl GngState {
    /// Two connected nodes at independent uniform positions in
    /// `[0, width) x [0, height)`, drawn from the parameter seed.
    pub fn init(params: &GngParams, width: u32, height: u32) -> Result<Self> {
        bounds_ok(width, height)?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(INIT_STREAM);
        let mut draw = || Point::new(rng.gen_range(0.0..width as f64), rng.gen_range(0.0..height as f64));
        let a = draw();
        let b = draw();
        Self::from_parts(width, height, [a, b], [(0, 1)])
    }

    /// Builds a state from explicit positions (ids `0..n` in order) and
    /// edges of age 0. Errors start at zero and `t` at 0.
    pub fn from_parts(
        width: u32,
        height: u32,
        positions: impl IntoIterator<Item = Point>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        bounds_ok(width, height)?;
        let units: BTreeMap<u32, Unit> = positions
            .into_iter()
            .enumerate()
            .map(|(i, w)| (i as u32, Unit { w, error: 0.0 }))
            .collect();
        let mut map = BTreeMap::new();
        for (a, b) in edges {
            if a == b {
                return Err(crate::GraphError::SelfLoop(a).into());
            }
            for end in [a, b] {
                if !units.contains_key(&end) {
                    return Err(crate::GraphError::DanglingEndpoint {
                        edge: (a, b),
                        missing: end,
                    }
                    .into());
                }
            }
            map.insert(key(a, b), 0);
        }
        let next_id = units.len() as u32;
        Ok(GngState {
            width,
            height,
            units,
            edges: map,
            t: 0,
            next_id,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of signals processed so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn node_count(&self) -> usize {
        self.units.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn units(&self) -> impl Iterator<Item = (u32, &Unit)> + '_ {
        self.units.iter().map(|(&id, u)| (id, u))
    }

    pub fn unit(&self, id: u32) -> Option<&Unit> {
        self.units.get(&id)
    }

    /// Edges as `((low, high), age)` in key order.
    pub fn edges(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.edges.iter().map(|(&k, &age)| (k, age))
    }

    pub fn edge_age(&self, a: u32, b: u32) -> Option<u32> {
        self.edges.get(&key(a, b)).copied()
    }

    /// Overrides a node's accumulated error. Returns `false` for unknown ids.
    pub fn set_error(&mut self, id: u32, error: f64) -> bool {
        match self.units.get_mut(&id) {
            Some(u) => {
                u.error = error;
                true
            }
            None => false,
        }
    }

    /// Overrides an edge's age. Returns `false` if the edge does not exist.
    pub fn set_edge_age(&mut self, a: u32, b: u32, age: u32) -> bool {
        match self.edges.get_mut(&key(a, b)) {
            Some(e) => {
                *e = age;
                true
            }
            None => false,
        }
    }

    /// Direct topological neighbors of `id`, ascending.
    pub fn neighbors(&self, id: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges
            .keys()
            .filter_map(|&(a, b)| match (a == id, b == id) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Nearest node `k` and second-nearest `s` to `x`; ties go to the lower id.
    pub fn nearest_two(&self, x: Point) -> Result<(u32, u32)> {
        if self.units.len() < 2 {
            return Err(Error::TooFewNodes(self.units.len()));
        }
        let mut best = (u32::MAX, f64::INFINITY);
        let mut second = (u32::MAX, f64::INFINITY);
        // Ascending id order plus strict comparisons keeps the lowest id on ties.
        for (&id, u) in &self.units {
            let d = u.w.dist_sq(x);
            if d < best.1 {
                second = best;
                best = (id, d);
            } else if d < second.1 {
                second = (id, d);
            }
        }
        Ok((best.0, second.0))
    }

    /// Processes one input signal and advances `t`. Returns the winner pair.
    pub fn train_step(&mut self, x: Point, params: &GngParams) -> Result<(u32, u32)> {
        let (k, s) = self.nearest_two(x)?;
        let lambda = learning_rate(self.t, params);

        for (&(a, b), age) in self.edges.iter_mut() {
            if a == k || b == k {
                *age += 1;
            }
        }

        let winner = self.units.get_mut(&k).expect("winner exists");
        winner.error += winner.w.dist_sq(x);
        winner.w = winner.w + (x - winner.w) * lambda;

        let neighbor_rate = params.neighbor_scale * lambda;
        for n in self.neighbors(k) {
            let u = self.units.get_mut(&n).expect("edge endpoints exist");
            u.w = u.w + (x - u.w) * neighbor_rate;
        }

        self.edges.insert(key(k, s), 0);

        let mut orphans = Vec::new();
        self.edges.retain(|&(a, b), age| {
            let keep = *age <= params.a_max;
            if !keep {
                orphans.extend([a, b]);
            }
            keep
        });
        for id in orphans {
            if !self.edges.keys().any(|&(a, b)| a == id || b == id) {
                self.units.remove(&id);
            }
        }

        self.t += 1;
        Ok((k, s))
    }

    /// Inserts a node between the highest-error node and its farthest
    /// neighbor if the cap and error threshold allow. Returns the new id.
    pub fn maybe_insert(&mut self, params: &GngParams) -> Option<u32> {
        if self.units.len() >= params.n_max {
            return None;
        }
        let (q, q_err) = self
            .units
            .iter()
            .fold(None::<(u32, f64)>, |best, (&id, u)| match best {
                Some((_, e)) if u.error <= e => best,
                _ => Some((id, u.error)),
            })?;
        if !(q_err > params.error0) {
            return None;
        }
        let wq = self.units[&q].w;
        let neighbors = self.neighbors(q);
        assert!(!neighbors.is_empty(), "node {q} is isolated");
        let mut f = neighbors[0];
        let mut f_dist = wq.dist_sq(self.units[&f].w);
        for &n in &neighbors[1..] {
            let d = wq.dist_sq(self.units[&n].w);
            if d > f_dist {
                f = n;
                f_dist = d;
            }
        }
        let r = self.next_id;
        self.next_id += 1;
        let wr = wq.midpoint(self.units[&f].w);
        self.units.insert(r, Unit { w: wr, error: 0.0 });
        self.edges.remove(&key(q, f));
        self.edges.insert(key(r, q), 0);
        self.edges.insert(key(r, f), 0);
        Some(r)
    }

    pub fn reset_errors(&mut self) {
        for u in self.units.values_mut() {
            u.error = 0.0;
        }
    }

    /// Current structure as a skeleton graph; ids are relabeled `0..n` in
    /// ascending order of the internal ids.
    pub fn to_graph(&self) -> SkeletonGraph {
        let relabel: BTreeMap<u32, u32> = self.units.keys().enumerate().map(|(i, &id)| (id, i as u32)).collect();
        let nodes = self
            .units
            .iter()
            .map(|(id, u)| Node {
                id: relabel[id],
                pos: u.w,
            })
            .collect();
        let edges = self.edges.keys().map(|(a, b)| (relabel[a], relabel[b]));
        SkeletonGraph::new(self.width, self.height, nodes, edges).expect("state is a simple graph")
    }

    pub fn positions(&self) -> Vec<Point> {
        self.units.values().map(|u| u.w).collect()
    }
}

/// Trains a network on `sampler` and returns the final graph.
pub fn train(sampler: &PixelSampler, params: &GngParams) -> Result<SkeletonGraph> {
    train_with(sampler, params, |_| {})
}

/// Like [`train`], calling `observe` once on the initial state and then after
/// every completed signal (including any insertion and reset it triggered).
pub fn train_with<F>(sampler: &PixelSampler, params: &GngParams, mut observe: F) -> Result<SkeletonGraph>
where
    F: FnMut(&GngState),
{
    params.validate()?;
    let mut state = GngState::init(params, sampler.width(), sampler.height())?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(SAMPLER_STREAM);
    observe(&state);
    while state.t < params.max_steps {
        let x = sampler.sample(&mut rng);
        state.train_step(x, params)?;
        if state.t % params.insert_interval == 0 {
            state.maybe_insert(params);
        }
        if state.t % params.reset_interval == 0 {
            state.reset_errors();
        }
        observe(&state);
    }
    Ok(state.to_graph())
}

/// Mean Euclidean distance from each point to its nearest node.
pub fn mean_quantization_distance(points: &[(u32, u32)], nodes: &[Point]) -> f64 {
    if points.is_empty() || nodes.is_empty() {
        return f64::NAN;
    }
    let total: f64 = points
        .iter()
        .map(|&(x, y)| {
            let p = Point::new(x as f64, y as f64);
            nodes.iter().map(|w| w.dist_sq(p)).fold(f64::INFINITY, f64::min)
        })
        .map(libm::sqrt)
        .sum();
    total / points.len() as f64
}
