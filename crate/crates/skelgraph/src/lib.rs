//! File formats, export and the command-line front end for
//! [`skelgraph_core`].
//!
//! * [`pgm`] and [`idx`] read character images (PGM `P2`/`P5`, MNIST IDX).
//! * [`json`], [`dot`] and [`svg`] export skeleton graphs.
//! * [`cli`] implements the `skelgraph` binary.

pub mod cli;
pub mod dot;
mod error;
pub mod idx;
pub mod json;
pub mod pgm;
pub mod svg;

pub use error::{ExportError, FormatError};
pub use skelgraph_core as core;
