//! Corpus statistics: sentences, mentions, clusters, split antecedents,
//! singletons and documents, per group and in total.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Document;
use crate::render::{int, ratio, round_half_up};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub n_sents: u64,
    /// Unique mention spans.
    pub n_mentions: u64,
    /// Entities with at least two mentions.
    pub n_clusters_multi: u64,
    pub n_singletons: u64,
    /// Always `n_clusters_multi + n_singletons`.
    pub n_clusters_total: u64,
    /// One per plural link.
    pub n_split_antecedents: u64,
    pub n_docs: u64,
}

impl CorpusStats {
    pub fn of_document(doc: &Document) -> Self {
        let n_singletons = doc.entities.iter().filter(|e| e.len() == 1).count() as u64;
        let n_clusters_multi = doc.entities.iter().filter(|e| e.len() >= 2).count() as u64;
        CorpusStats {
            n_sents: doc.sentences.len() as u64,
            n_mentions: doc.unique_mentions().len() as u64,
            n_clusters_multi,
            n_singletons,
            n_clusters_total: n_clusters_multi + n_singletons,
            n_split_antecedents: doc.plural_links.len() as u64,
            n_docs: 1,
        }
    }

    fn cells(&self) -> [u64; 7] {
        [
            self.n_sents,
            self.n_mentions,
            self.n_clusters_multi,
            self.n_clusters_total,
            self.n_split_antecedents,
            self.n_singletons,
            self.n_docs,
        ]
    }
}

impl AddAssign for CorpusStats {
    fn add_assign(&mut self, o: Self) {
        self.n_sents += o.n_sents;
        self.n_mentions += o.n_mentions;
        self.n_clusters_multi += o.n_clusters_multi;
        self.n_singletons += o.n_singletons;
        self.n_clusters_total += o.n_clusters_total;
        self.n_split_antecedents += o.n_split_antecedents;
        self.n_docs += o.n_docs;
    }
}

impl Add for CorpusStats {
    type Output = Self;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl std::iter::Sum for CorpusStats {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

const HEADER: &str =
    "sents\tmentions\tclusters\tclusters_with_singletons\tsplit_antecedents\tsingletons\tdocs";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatsTable {
    /// Sorted by group key.
    pub rows: Vec<(String, CorpusStats)>,
    pub total: CorpusStats,
}

impl StatsTable {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("group\t{HEADER}\n");
        for (group, stats) in self
            .rows
            .iter()
            .map(|(g, s)| (g.as_str(), s))
            .chain([("Total", &self.total)])
        {
            let cells: Vec<String> = stats.cells().iter().map(u64::to_string).collect();
            out.push_str(&format!("{group}\t{}\n", cells.join("\t")));
        }
        out
    }

    pub fn to_record(&self) -> String {
        let mut s = serde_json::to_string(self).expect("stats serialize");
        s.push('\n');
        s
    }
}

/// Statistics per group (as named by `group_of`) plus the corpus total.
pub fn corpus_stats<F>(docs: &[Document], group_of: F) -> StatsTable
where
    F: Fn(&Document) -> String + Sync,
{
    let per_doc: Vec<(String, CorpusStats)> = docs
        .par_iter()
        .map(|d| (group_of(d), CorpusStats::of_document(d)))
        .collect();
    let mut groups: BTreeMap<String, CorpusStats> = BTreeMap::new();
    for (g, s) in per_doc {
        *groups.entry(g).or_default() += s;
    }
    let total = groups.values().copied().sum();
    StatsTable {
        rows: groups.into_iter().collect(),
        total,
    }
}

/// Per-language statistics broken down by named splits (train, dev, ...),
/// printed with one parenthesized tuple per column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitTable {
    pub splits: Vec<String>,
    pub rows: BTreeMap<String, Vec<CorpusStats>>,
}

impl SplitTable {
    pub fn new<'a, I>(corpora: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a [Document])>,
    {
        let mut table = SplitTable::default();
        for (split, docs) in corpora {
            let idx = table.splits.len();
            table.splits.push(split.to_string());
            let by_lang = corpus_stats(docs, |d| d.language.clone());
            for (lang, stats) in by_lang.rows {
                let row = table.rows.entry(lang).or_default();
                row.resize(idx + 1, CorpusStats::default());
                row[idx] = stats;
            }
        }
        let width = table.splits.len();
        for row in table.rows.values_mut() {
            row.resize(width, CorpusStats::default());
        }
        table
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("language\t{HEADER}\n# splits: {}\n", self.splits.join(", "));
        for (lang, stats) in &self.rows {
            let columns: Vec<String> = (0..7)
                .map(|c| {
                    let parts: Vec<String> =
                        stats.iter().map(|s| s.cells()[c].to_string()).collect();
                    format!("({})", parts.join(", "))
                })
                .collect();
            out.push_str(&format!("{lang}\t{}\n", columns.join("\t")));
        }
        out
    }
}

/// Split antecedents as a percentage of mentions.
pub fn split_antecedent_ratio(stats: &CorpusStats) -> Result<BigRational> {
    if stats.n_mentions == 0 {
        return Err(Error::Undefined(
            "split-antecedent ratio of a corpus without mentions".to_string(),
        ));
    }
    Ok(ratio(stats.n_split_antecedents, stats.n_mentions) * int(100))
}

/// [`split_antecedent_ratio`] rendered to one decimal, e.g. `"2.4"`.
pub fn split_antecedent_percent(stats: &CorpusStats) -> Result<String> {
    Ok(round_half_up(&split_antecedent_ratio(stats)?, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Entity, PluralLink, Span};

    fn totals(mentions: u64, split: u64) -> CorpusStats {
        CorpusStats {
            n_mentions: mentions,
            n_split_antecedents: split,
            ..Default::default()
        }
    }

    #[test]
    fn corpus_total_ratios() {
        let large = totals(3821540 + 472083 + 558093, 93668 + 10505 + 12944);
        assert_eq!(split_antecedent_percent(&large).unwrap(), "2.4");
        let small = totals(10512 + 1306 + 1255, 287 + 31 + 36);
        assert_eq!(split_antecedent_percent(&small).unwrap(), "2.7");
        assert_eq!(split_antecedent_percent(&totals(10, 0)).unwrap(), "0.0");
        assert!(split_antecedent_ratio(&totals(0, 0)).is_err());
    }

    #[test]
    fn empty_corpus() {
        let t = corpus_stats(&[], |d| d.language.clone());
        assert_eq!(t.total, CorpusStats::default());
        assert!(t.rows.is_empty());
    }

    #[test]
    fn one_document() {
        let (a, b, c, p) = (
            Span::new(0, 0, 1),
            Span::new(0, 1, 2),
            Span::new(1, 0, 1),
            Span::new(1, 1, 2),
        );
        // Statistics count links without validating them.
        let doc = Document::new("d", "hin_Deva")
            .with_sentences(&[&["a", "b"], &["c", "p"]])
            .with_entities(vec![Entity::new(0, [a, b]), Entity::new(1, [c])])
            .with_plural_links(vec![PluralLink::new(p, [0, 1])]);
        let s = CorpusStats::of_document(&doc);
        assert_eq!(
            (
                s.n_sents,
                s.n_mentions,
                s.n_clusters_multi,
                s.n_singletons,
                s.n_split_antecedents,
                s.n_docs
            ),
            (2, 3, 1, 1, 1, 1)
        );
        assert_eq!(s.n_clusters_total, 2);
    }

    #[test]
    fn split_table_layout() {
        let d = |key: &str, lang: &str| Document::new(key, lang).with_sentences(&[&["x"]]);
        let train = vec![d("1", "hin_Deva"), d("2", "tam_Taml")];
        let dev = vec![d("3", "hin_Deva")];
        let table = SplitTable::new([("train", train.as_slice()), ("dev", dev.as_slice())]);
        let tsv = table.to_tsv();
        assert!(tsv.contains("hin_Deva\t(1, 1)\t(0, 0)"), "{tsv}");
        assert!(tsv.contains("tam_Taml\t(1, 0)"), "{tsv}");
    }
}
