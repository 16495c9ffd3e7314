//! Word alignments in the Pharaoh `i-j` format: one line per sentence
//! pair, 0-based source and target word indices.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlignmentMap {
    pairs: BTreeSet<(usize, usize)>,
}

impl AlignmentMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: usize, target: usize) {
        self.pairs.insert((source, target));
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Target indices aligned to `source`, ascending.
    pub fn targets_of(&self, source: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs
            .range((source, 0)..=(source, usize::MAX))
            .map(|&(_, t)| t)
    }

    /// Fails on the first pair outside `source_len` x `target_len`.
    pub fn check_bounds(&self, source_len: usize, target_len: usize) -> Result<()> {
        match self
            .pairs
            .iter()
            .find(|&&(s, t)| s >= source_len || t >= target_len)
        {
            Some(&(source_word, target_word)) => Err(Error::AlignmentOutOfBounds {
                source_word,
                target_word,
                source_len,
                target_len,
            }),
            None => Ok(()),
        }
    }
}

impl FromIterator<(usize, usize)> for AlignmentMap {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        AlignmentMap {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for AlignmentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}-{t}")?;
        }
        Ok(())
    }
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_alignment_line(text: &str, line: usize) -> Result<AlignmentMap> {
    text.split_whitespace()
        .map(|tok| {
            tok.split_once('-')
                .and_then(|(s, t)| Some((parse_index(s)?, parse_index(t)?)))
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("malformed alignment pair {tok:?}"),
                })
        })
        .collect()
}

pub fn parse_alignments<R: BufRead>(reader: R) -> Result<Vec<AlignmentMap>> {
    reader
        .lines()
        .enumerate()
        .map(|(idx, line)| parse_alignment_line(&line?, idx + 1))
        .collect()
}

pub fn parse_alignments_str(input: &str) -> Result<Vec<AlignmentMap>> {
    parse_alignments(input.as_bytes())
}

pub fn write_alignments<W: Write>(maps: &[AlignmentMap], mut out: W) -> Result<()> {
    for map in maps {
        writeln!(out, "{map}")?;
    }
    Ok(())
}
