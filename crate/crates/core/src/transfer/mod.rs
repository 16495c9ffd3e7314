//! Building a target-language corpus from a source corpus, a translation
//! and word alignments.

pub mod project;
pub mod sanity;
pub mod subword;

pub use project::{
    aggregate_projection_stats, project_document, project_mention, OutcomeKind, ProjectionOptions,
    ProjectionOutcome, ProjectionSummary, RateRow, RateTable,
};
pub use sanity::{check_tokens_sanity, check_translation_sanity, SanityConfig, SanityVerdict};
pub use subword::subword_to_word_map;
