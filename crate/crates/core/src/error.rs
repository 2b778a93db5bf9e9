use core::fmt;

use crate::graph::GraphError;

/// Errors raised by the core pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Image dimensions or buffer length are inconsistent.
    InvalidImage(&'static str),
    /// `trim` was given an image without foreground pixels.
    NothingToTrim,
    /// The sampler has no pixel with positive weight.
    NoSampleablePixels,
    /// Winner search needs at least two nodes.
    TooFewNodes(usize),
    /// A parameter violates its documented range.
    InvalidParam {
        name: &'static str,
        reason: &'static str,
    },
    InvalidGraph(GraphError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidImage(why) => write!(f, "invalid image: {why}"),
            Error::NothingToTrim => f.write_str("nothing to trim: image has no foreground pixels"),
            Error::NoSampleablePixels => f.write_str("no sampleable pixel in image"),
            Error::TooFewNodes(n) => write!(f, "need at least 2 nodes, have {n}"),
            Error::InvalidParam { name, reason } => write!(f, "invalid parameter `{name}`: {reason}"),
            Error::InvalidGraph(e) => write!(f, "invalid graph: {e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<GraphError> for Error {
    fn from(e: GraphError) -> Self {
        Error::InvalidGraph(e)
    }
}
