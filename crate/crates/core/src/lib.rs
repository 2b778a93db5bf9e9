//! Skeleton graphs of character images.
//!
//! A character image is reduced to an undirected graph that follows its
//! strokes. The pipeline has three stages:
//!
//! 1. [`image`]: binarize and trim the input, optionally inject noise.
//! 2. [`gng`]: train a growing neural gas over pixels sampled from the
//!    character ([`sample`]).
//! 3. [`rewire`]: replace the learned edges with the relative neighborhood
//!    graph of the node positions, capped at a fraction of the image diagonal.
//!
//! [`topology`] then summarizes a graph by its endpoints, junctions, cycles,
//! components and acute corners.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, export and the
//! command-line front end live in the `skelgraph` crate.
#![cfg_attr(not(test), no_std)]
// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod geometry;
pub mod glyph;
pub mod gng;
pub mod graph;
pub mod image;
pub mod pipeline;
pub mod rewire;
pub mod sample;
pub mod topology;

pub use error::Error;
pub use geometry::Point;
pub use gng::{learning_rate, train, GngParams, GngState};
pub use graph::{GraphError, Node, SkeletonGraph};
pub use image::{binarize, inject_noise, trim, trim_bounds, BinaryImage, GrayImage, NoiseSpec, Polarity};
pub use rewire::{relative_neighbor_edges, rewire, RewireMode, RewireParams};
pub use sample::PixelSampler;
pub use topology::{same_topology, signature, signature_distance, TopologySignature, DEFAULT_CORNER_THRESHOLD};

/// Result alias for fallible operations of this crate.
pub type Result<T> = core::result::Result<T, Error>;
