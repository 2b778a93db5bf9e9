use skelgraph_core::GraphError;
use thiserror::Error;

/// Errors from the image readers. Offsets are byte positions in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("byte {offset}: unsupported magic {found:?} (expected P2 or P5)")]
    UnsupportedMagic { offset: usize, found: String },
    #[error("byte {offset}: malformed header: {reason}")]
    MalformedHeader { offset: usize, reason: String },
    #[error("byte {offset}: unsupported maxval {maxval} (must be 1..=255)")]
    UnsupportedMaxval { offset: usize, maxval: u64 },
    #[error("byte {offset}: truncated payload: expected {expected} more bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: bad sample: {reason}")]
    BadSample { offset: usize, reason: String },
    #[error("byte 0: wrong IDX magic {found:#010x} (expected 0x00000803 for images)")]
    WrongMagic { found: u32 },
    #[error("image index {index} out of range (file holds {count} images)")]
    IndexOutOfRange { index: usize, count: usize },
}

/// Errors from reading graph JSON.
#[derive(Debug, Error)]
pub enum ExportError {
    #[error("schema violation: {0}")]
    Schema(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
