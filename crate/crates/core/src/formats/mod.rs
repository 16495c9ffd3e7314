//! Readers and writers for CoNLL, canonical JSON lines, Pharaoh alignments
//! and plain token files.

pub mod alignment;
pub mod canonical;
pub mod conll;

use std::io::BufRead;

use crate::error::Result;

pub use alignment::{
    parse_alignment_line, parse_alignments, parse_alignments_str, write_alignments, AlignmentMap,
};
pub use canonical::{
    parse_canonical, parse_canonical_str, write_canonical, write_canonical_string,
};
pub use conll::{parse_conll, parse_conll_str, write_conll, write_conll_string, DroppedLinks};

/// One sentence per line, tokens separated by whitespace.
pub fn parse_token_lines<R: BufRead>(reader: R) -> Result<Vec<Vec<String>>> {
    reader
        .lines()
        .map(|line| Ok(line?.split_whitespace().map(str::to_string).collect()))
        .collect()
}
