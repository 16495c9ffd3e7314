//! Coreference toolkit: a document model with split antecedents, CoNLL and
//! JSON-lines I/O, cross-lingual mention projection, exact coreference
//! metrics, mention-ranking decoding and corpus statistics.

pub mod cli;
pub mod decoder;
pub mod error;
pub mod formats;
pub mod metrics;
pub mod model;
pub mod render;
pub mod samples;
pub mod stats;
pub mod transfer;

pub use error::{Error, Result};
