//! Projecting mention annotations onto a translation through word
//! alignments.
//!
//! A mention is *aligned* when every one of its words is aligned and the
//! target words it reaches form one contiguous run. It is *non-aligned*
//! when none of its words reach the target at all. Anything in between is
//! *misaligned*. Only aligned mentions are carried over.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::AlignmentMap;
use crate::model::{Document, Entity, PluralLink, Span};
use crate::render::percent_1dp;
use crate::transfer::sanity::{check_tokens_sanity, SanityConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionOutcome {
    Aligned(Span),
    /// Target words reached by the mention, ascending.
    Misaligned(BTreeSet<usize>),
    NonAligned,
}

impl ProjectionOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            ProjectionOutcome::Aligned(_) => OutcomeKind::Aligned,
            ProjectionOutcome::Misaligned(_) => OutcomeKind::Misaligned,
            ProjectionOutcome::NonAligned => OutcomeKind::NonAligned,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    Aligned,
    Misaligned,
    NonAligned,
}

/// Classify one mention. `source_len` and `target_len` are the word counts
/// of the sentence pair the alignment belongs to.
pub fn project_mention(
    mention: &Span,
    alignment: &AlignmentMap,
    source_len: usize,
    target_len: usize,
) -> Result<ProjectionOutcome> {
    alignment.check_bounds(source_len, target_len)?;
    if mention.end > source_len || mention.is_empty() {
        return Err(Error::Shape {
            doc_key: String::new(),
            detail: format!("mention {mention} outside a {source_len}-word source sentence"),
        });
    }

    let mut targets = BTreeSet::new();
    let mut every_word_aligned = true;
    for word in mention.words() {
        let mut any = false;
        for t in alignment.targets_of(word) {
            targets.insert(t);
            any = true;
        }
        every_word_aligned &= any;
    }

    let (Some(&lo), Some(&hi)) = (targets.first(), targets.last()) else {
        return Ok(ProjectionOutcome::NonAligned);
    };
    let contiguous = hi - lo + 1 == targets.len();
    if every_word_aligned && contiguous {
        Ok(ProjectionOutcome::Aligned(Span::new(
            mention.sentence,
            lo,
            hi + 1,
        )))
    } else {
        Ok(ProjectionOutcome::Misaligned(targets))
    }
}

/// Outcome counts for one or more documents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionSummary {
    pub aligned: u64,
    pub misaligned: u64,
    pub non_aligned: u64,
    /// Target sentences rejected by the sanity check.
    pub sanity_failed_sentences: u64,
    /// Mentions inside those sentences; already counted as non-aligned.
    pub mentions_in_failed_sentences: u64,
    /// Target spans that ended up in more than one entity.
    pub shared_target_spans: u64,
}

impl ProjectionSummary {
    pub fn mentions(&self) -> u64 {
        self.aligned + self.misaligned + self.non_aligned
    }

    fn record(&mut self, kind: OutcomeKind) {
        match kind {
            OutcomeKind::Aligned => self.aligned += 1,
            OutcomeKind::Misaligned => self.misaligned += 1,
            OutcomeKind::NonAligned => self.non_aligned += 1,
        }
    }
}

impl AddAssign for ProjectionSummary {
    fn add_assign(&mut self, o: Self) {
        self.aligned += o.aligned;
        self.misaligned += o.misaligned;
        self.non_aligned += o.non_aligned;
        self.sanity_failed_sentences += o.sanity_failed_sentences;
        self.mentions_in_failed_sentences += o.mentions_in_failed_sentences;
        self.shared_target_spans += o.shared_target_spans;
    }
}

impl Add for ProjectionSummary {
    type Output = Self;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl std::iter::Sum for ProjectionSummary {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ProjectionOptions {
    /// Language code of the target document; the source's when `None`.
    pub target_language: Option<String>,
    /// When set, target sentences failing the check are treated as holes.
    pub sanity: Option<SanityConfig>,
}

/// Project every mention of `source` onto `target_sentences`.
///
/// Entity ids are kept; entities with no surviving mention are dropped.
/// A plural link survives when its anaphor is aligned and at least two of
/// its antecedent entities survive. Every source entity membership counts
/// once in the summary.
pub fn project_document(
    source: &Document,
    alignments: &[AlignmentMap],
    target_sentences: &[Vec<String>],
    options: &ProjectionOptions,
) -> Result<(Document, ProjectionSummary)> {
    let shape = |detail: String| Error::Shape {
        doc_key: source.doc_key.clone(),
        detail,
    };
    if target_sentences.len() != source.sentences.len() {
        return Err(shape(format!(
            "{} source sentences but {} target sentences",
            source.sentences.len(),
            target_sentences.len()
        )));
    }
    if alignments.len() != source.sentences.len() {
        return Err(shape(format!(
            "{} source sentences but {} alignment lines",
            source.sentences.len(),
            alignments.len()
        )));
    }
    for (i, map) in alignments.iter().enumerate() {
        map.check_bounds(source.sentences[i].len(), target_sentences[i].len())
            .map_err(|e| shape(format!("sentence {i}: {e}")))?;
    }

    let mut summary = ProjectionSummary::default();
    let failed: Vec<bool> = match &options.sanity {
        Some(cfg) => target_sentences
            .iter()
            .map(|t| !check_tokens_sanity(t, cfg).passed)
            .collect(),
        None => vec![false; target_sentences.len()],
    };
    summary.sanity_failed_sentences = failed.iter().filter(|&&f| f).count() as u64;

    let mut projected: BTreeMap<Span, ProjectionOutcome> = BTreeMap::new();
    let mut entities = Vec::new();
    for entity in &source.entities {
        let mut mentions = BTreeSet::new();
        for span in &entity.mentions {
            let outcome = if failed.get(span.sentence).copied().unwrap_or(false) {
                summary.mentions_in_failed_sentences += 1;
                ProjectionOutcome::NonAligned
            } else {
                let s = span.sentence;
                let source_len = source.sentences.get(s).map_or(0, Vec::len);
                if s >= source.sentences.len() || span.end > source_len {
                    return Err(shape(format!("mention {span} out of bounds")));
                }
                project_mention(span, &alignments[s], source_len, target_sentences[s].len())?
            };
            summary.record(outcome.kind());
            if let ProjectionOutcome::Aligned(target) = &outcome {
                mentions.insert(*target);
            }
            projected.insert(*span, outcome);
        }
        if !mentions.is_empty() {
            entities.push(Entity {
                id: entity.id,
                mentions,
            });
        }
    }

    let mut owners: BTreeMap<Span, usize> = BTreeMap::new();
    for e in &entities {
        for m in &e.mentions {
            *owners.entry(*m).or_default() += 1;
        }
    }
    summary.shared_target_spans = owners.values().filter(|&&n| n > 1).count() as u64;

    let surviving: BTreeSet<_> = entities.iter().map(|e| e.id).collect();
    let plural_links = source
        .plural_links
        .iter()
        .filter_map(|link| {
            let ProjectionOutcome::Aligned(anaphor) = projected.get(&link.anaphor)? else {
                return None;
            };
            let antecedent_entities: BTreeSet<_> = link
                .antecedent_entities
                .intersection(&surviving)
                .copied()
                .collect();
            (antecedent_entities.len() >= 2).then_some(PluralLink {
                anaphor: *anaphor,
                antecedent_entities,
            })
        })
        .collect();

    let target = Document {
        doc_key: source.doc_key.clone(),
        language: options
            .target_language
            .clone()
            .unwrap_or_else(|| source.language.clone()),
        sentences: target_sentences.to_vec(),
        entities,
        plural_links,
        expanded: source.expanded,
        conll_columns: None,
    };
    Ok((target, summary))
}

/// One row of an alignment-rate report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateRow {
    pub group: String,
    pub summary: ProjectionSummary,
}

impl RateRow {
    pub fn aligned_pct(&self) -> String {
        percent_1dp(self.summary.aligned, self.summary.mentions())
    }

    pub fn misaligned_pct(&self) -> String {
        percent_1dp(self.summary.misaligned, self.summary.mentions())
    }

    pub fn non_aligned_pct(&self) -> String {
        percent_1dp(self.summary.non_aligned, self.summary.mentions())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RateTable {
    /// Sorted by group key.
    pub rows: Vec<RateRow>,
    /// `None` for an empty table.
    pub total: Option<RateRow>,
}

impl RateTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("group\taligned\tmisaligned\tnon_aligned\tmentions\n");
        for row in self.rows.iter().chain(self.total.iter()) {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                row.group,
                row.aligned_pct(),
                row.misaligned_pct(),
                row.non_aligned_pct(),
                row.summary.mentions()
            ));
        }
        out
    }
}

/// Percentages of aligned, misaligned and non-aligned mentions per group
/// and overall.
pub fn aggregate_projection_stats<'a, I>(summaries: I) -> RateTable
where
    I: IntoIterator<Item = (&'a str, ProjectionSummary)>,
{
    let mut groups: BTreeMap<String, ProjectionSummary> = BTreeMap::new();
    for (group, summary) in summaries {
        *groups.entry(group.to_string()).or_default() += summary;
    }
    if groups.is_empty() {
        return RateTable::default();
    }
    let total = groups.values().copied().sum();
    RateTable {
        rows: groups
            .into_iter()
            .map(|(group, summary)| RateRow { group, summary })
            .collect(),
        total: Some(RateRow {
            group: "Total".to_string(),
            summary: total,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(usize, usize)]) -> AlignmentMap {
        pairs.iter().copied().collect()
    }

    #[test]
    fn swapped_pair_is_aligned() {
        let out = project_mention(&Span::new(0, 0, 2), &map(&[(0, 1), (1, 0)]), 3, 3).unwrap();
        assert_eq!(out, ProjectionOutcome::Aligned(Span::new(0, 0, 2)));
    }

    #[test]
    fn gap_in_target_is_misaligned() {
        let out = project_mention(&Span::new(0, 0, 2), &map(&[(0, 0), (1, 5)]), 3, 6).unwrap();
        assert_eq!(
            out,
            ProjectionOutcome::Misaligned([0, 5].into_iter().collect())
        );
    }

    #[test]
    fn no_links_is_non_aligned() {
        let out = project_mention(&Span::new(0, 2, 3), &map(&[(0, 0), (1, 1)]), 3, 3).unwrap();
        assert_eq!(out, ProjectionOutcome::NonAligned);
    }

    #[test]
    fn unaligned_middle_word_is_misaligned() {
        let out = project_mention(&Span::new(0, 0, 3), &map(&[(0, 0), (2, 1)]), 3, 3).unwrap();
        assert_eq!(
            out,
            ProjectionOutcome::Misaligned([0, 1].into_iter().collect())
        );
    }

    #[test]
    fn out_of_bounds_alignment() {
        assert!(matches!(
            project_mention(&Span::new(0, 0, 1), &map(&[(0, 4)]), 2, 3),
            Err(Error::AlignmentOutOfBounds { .. })
        ));
    }

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn entity_with_only_lost_mentions_disappears() {
        let source = Document::new("d", "eng_Latn")
            .with_sentences(&[&["Ram", "saw", "Sita", "."], &["She", "smiled", "."]])
            .with_entities(vec![
                Entity::new(0, [Span::new(0, 0, 1)]),
                Entity::new(1, [Span::new(0, 2, 3), Span::new(1, 0, 1)]),
            ]);
        let alignments = vec![map(&[(0, 0), (1, 2), (3, 3)]), map(&[(1, 1), (2, 2)])];
        let target = vec![words("राम ने देखा ।"), words("वह मुस्कुराई ।")];
        let (doc, summary) =
            project_document(&source, &alignments, &target, &ProjectionOptions::default()).unwrap();
        assert_eq!(doc.entities, vec![Entity::new(0, [Span::new(0, 0, 1)])]);
        assert_eq!(summary.non_aligned, 2);
        assert_eq!(summary.aligned, 1);
        assert_eq!(summary.mentions(), 3);
    }

    #[test]
    fn sentence_count_mismatch() {
        let source = Document::new("d", "x").with_sentences(&[&["a"]]);
        let err = project_document(&source, &[map(&[])], &[], &ProjectionOptions::default());
        assert!(matches!(err, Err(Error::Shape { .. })));
    }

    #[test]
    fn failed_sentences_are_holes() {
        let source = Document::new("d", "x")
            .with_sentences(&[&["a", "b"], &["c"]])
            .with_entities(vec![Entity::new(
                0,
                [Span::new(0, 0, 1), Span::new(1, 0, 1)],
            )]);
        let alignments = vec![map(&[(0, 0)]), map(&[(0, 0)])];
        let target = vec![words("x y"), words("!!!!!!")];
        let opts = ProjectionOptions {
            sanity: Some(SanityConfig::default()),
            ..Default::default()
        };
        let (doc, summary) = project_document(&source, &alignments, &target, &opts).unwrap();
        assert_eq!(doc.entities, vec![Entity::new(0, [Span::new(0, 0, 1)])]);
        assert_eq!(summary.sanity_failed_sentences, 1);
        assert_eq!(summary.mentions_in_failed_sentences, 1);
        assert_eq!(summary.non_aligned, 1);
    }

    #[test]
    fn rates_to_one_decimal() {
        let s = ProjectionSummary {
            aligned: 725,
            misaligned: 114,
            non_aligned: 162,
            ..Default::default()
        };
        let table = aggregate_projection_stats([("hin_Deva", s)]);
        let total = table.total.unwrap();
        assert_eq!(
            (
                total.aligned_pct(),
                total.misaligned_pct(),
                total.non_aligned_pct()
            ),
            ("72.4".to_string(), "11.4".to_string(), "16.2".to_string())
        );
    }

    #[test]
    fn empty_rates() {
        let table = aggregate_projection_stats(std::iter::empty());
        assert!(table.rows.is_empty() && table.total.is_none());
    }

    #[test]
    fn equal_groups_match_total() {
        let s = ProjectionSummary {
            aligned: 3,
            misaligned: 1,
            non_aligned: 1,
            ..Default::default()
        };
        let table = aggregate_projection_stats([("a", s), ("b", s)]);
        let total = table.total.as_ref().unwrap();
        for row in &table.rows {
            assert_eq!(row.aligned_pct(), total.aligned_pct());
            assert_eq!(row.non_aligned_pct(), total.non_aligned_pct());
        }
    }
}
