use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::json;

use super::{
    b_cubed_counts, ceaf_e_counts, lea_counts, mention_counts, muc_counts, Clusters, Counts, Prf,
};
use crate::error::{Error, Result};
use crate::model::{expand_split_antecedents, strip_singletons, Document};
use crate::render::{exact, int, truncate};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Singletons {
    #[default]
    Include,
    Exclude,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitMode {
    #[default]
    Plain,
    /// Fold split antecedents into their antecedent entities before scoring.
    Expanded,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScoreMode {
    pub singletons: Singletons,
    pub split: SplitMode,
}

impl fmt::Display for ScoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.singletons {
            Singletons::Include => "include",
            Singletons::Exclude => "exclude",
        };
        let p = match self.split {
            SplitMode::Plain => "plain",
            SplitMode::Expanded => "expanded",
        };
        write!(f, "singletons={s} split={p}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Mentions,
    Muc,
    BCubed,
    CeafE,
    Lea,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Mentions,
        Metric::Muc,
        Metric::BCubed,
        Metric::CeafE,
        Metric::Lea,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Mentions => "mentions",
            Metric::Muc => "muc",
            Metric::BCubed => "bcub",
            Metric::CeafE => "ceafe",
            Metric::Lea => "lea",
        }
    }
}

/// Pooled counts for every metric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetricCounts {
    pub mentions: Counts,
    pub muc: Counts,
    pub b_cubed: Counts,
    pub ceaf_e: Counts,
    pub lea: Counts,
}

impl MetricCounts {
    pub fn get(&self, metric: Metric) -> &Counts {
        match metric {
            Metric::Mentions => &self.mentions,
            Metric::Muc => &self.muc,
            Metric::BCubed => &self.b_cubed,
            Metric::CeafE => &self.ceaf_e,
            Metric::Lea => &self.lea,
        }
    }

    pub fn merge(mut self, o: &MetricCounts) -> Self {
        self.mentions += &o.mentions;
        self.muc += &o.muc;
        self.b_cubed += &o.b_cubed;
        self.ceaf_e += &o.ceaf_e;
        self.lea += &o.lea;
        self
    }
}

/// Arithmetic mean of the MUC, B³ and CEAF_e F1 values.
pub fn conll_f1(
    muc_f1: &BigRational,
    b_cubed_f1: &BigRational,
    ceaf_e_f1: &BigRational,
) -> BigRational {
    (muc_f1 + b_cubed_f1 + ceaf_e_f1) / int(3)
}

fn prepare(doc: &Document, mode: ScoreMode) -> Result<Document> {
    let doc = match mode.singletons {
        Singletons::Include => doc.clone(),
        Singletons::Exclude => strip_singletons(doc),
    };
    match mode.split {
        SplitMode::Expanded if !doc.expanded => expand_split_antecedents(&doc),
        _ => Ok(doc),
    }
}

/// Counts for a single key/response pair under `mode`.
pub fn score_document(
    key: &Document,
    response: &Document,
    mode: ScoreMode,
) -> Result<MetricCounts> {
    let k = Clusters::from_document(&prepare(key, mode)?);
    let r = Clusters::from_document(&prepare(response, mode)?);
    Ok(MetricCounts {
        mentions: mention_counts(&k, &r),
        muc: muc_counts(&k, &r),
        b_cubed: b_cubed_counts(&k, &r),
        ceaf_e: ceaf_e_counts(&k, &r),
        lea: lea_counts(&k, &r),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreReport {
    pub mode: ScoreMode,
    pub documents: usize,
    pub counts: MetricCounts,
    pub scores: BTreeMap<Metric, Prf>,
    pub conll_f1: BigRational,
    pub warnings: Vec<String>,
}

impl ScoreReport {
    pub fn from_counts(counts: MetricCounts, mode: ScoreMode, documents: usize) -> Self {
        let mut warnings = Vec::new();
        let mut scores = BTreeMap::new();
        for metric in Metric::ALL {
            let (prf, undefined) = counts.get(metric).finish();
            for what in undefined {
                warnings.push(format!(
                    "{} {what} undefined (0/0), reported as 0",
                    metric.name()
                ));
            }
            for (what, v) in [
                ("precision", &prf.precision),
                ("recall", &prf.recall),
                ("f1", &prf.f1),
            ] {
                if *v > BigRational::one() {
                    warnings.push(format!("{} {what} exceeds 1 ({})", metric.name(), exact(v)));
                }
            }
            scores.insert(metric, prf);
        }
        let conll = conll_f1(
            &scores[&Metric::Muc].f1,
            &scores[&Metric::BCubed].f1,
            &scores[&Metric::CeafE].f1,
        );
        if conll > BigRational::one() {
            warnings.push(format!("conll f1 exceeds 1 ({})", exact(&conll)));
        }
        ScoreReport {
            mode,
            documents,
            counts,
            scores,
            conll_f1: conll,
            warnings,
        }
    }

    pub fn get(&self, metric: Metric) -> &Prf {
        &self.scores[&metric]
    }

    pub fn exceeds_one(&self) -> bool {
        self.warnings.iter().any(|w| w.contains("exceeds 1"))
    }

    /// One row per metric in the usual table order, values truncated to two
    /// decimals. Mode and warnings ride along as `#` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# {} documents={}\n", self.mode, self.documents);
        out.push_str("metric\tprecision\trecall\tf1\n");
        for metric in Metric::ALL {
            let prf = self.get(metric);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                metric.name(),
                truncate(&prf.precision, 2),
                truncate(&prf.recall, 2),
                truncate(&prf.f1, 2)
            ));
        }
        out.push_str(&format!("conll\t\t\t{}\n", truncate(&self.conll_f1, 2)));
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        out
    }

    /// The same content as a single JSON record, with exact fractions.
    pub fn to_record(&self) -> String {
        let value = |x: &BigRational| json!({ "exact": exact(x), "value": truncate(x, 2) });
        let mut metrics = serde_json::Map::new();
        for metric in Metric::ALL {
            let prf = self.get(metric);
            metrics.insert(
                metric.name().to_string(),
                json!({
                    "precision": value(&prf.precision),
                    "recall": value(&prf.recall),
                    "f1": value(&prf.f1),
                }),
            );
        }
        let record = json!({
            "mode": {
                "singletons": match self.mode.singletons {
                    Singletons::Include => "include",
                    Singletons::Exclude => "exclude",
                },
                "split": match self.mode.split {
                    SplitMode::Plain => "plain",
                    SplitMode::Expanded => "expanded",
                },
            },
            "documents": self.documents,
            "metrics": metrics,
            "conll_f1": value(&self.conll_f1),
            "warnings": self.warnings,
        });
        let mut s = serde_json::to_string(&record).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Score a corpus, pooling counts across documents.
///
/// Responses are matched to key documents by `doc_key`. A key document
/// with no response is scored against an empty response; a response whose
/// key is missing is an error.
pub fn score_corpus(
    keys: &[Document],
    responses: &[Document],
    mode: ScoreMode,
) -> Result<ScoreReport> {
    let mut by_key: BTreeMap<&str, &Document> = BTreeMap::new();
    for d in keys {
        if by_key.insert(&d.doc_key, d).is_some() {
            return Err(Error::DocKeyMismatch(format!(
                "duplicate key document {:?}",
                d.doc_key
            )));
        }
    }
    let mut by_response: BTreeMap<&str, &Document> = BTreeMap::new();
    for d in responses {
        if by_response.insert(&d.doc_key, d).is_some() {
            return Err(Error::DocKeyMismatch(format!(
                "duplicate response document {:?}",
                d.doc_key
            )));
        }
    }
    let missing: BTreeSet<&str> = by_response
        .keys()
        .filter(|k| !by_key.contains_key(*k))
        .copied()
        .collect();
    if !missing.is_empty() {
        let list: Vec<&str> = missing.into_iter().collect();
        return Err(Error::DocKeyMismatch(format!(
            "response documents not in key: {}",
            list.join(", ")
        )));
    }

    let per_doc: Vec<MetricCounts> = keys
        .par_iter()
        .map(|key| {
            let empty;
            let response = match by_response.get(key.doc_key.as_str()) {
                Some(r) => *r,
                None => {
                    empty = Document {
                        entities: Vec::new(),
                        plural_links: Vec::new(),
                        expanded: false,
                        ..key.clone()
                    };
                    &empty
                }
            };
            score_document(key, response, mode)
        })
        .collect::<Result<_>>()?;

    let total = per_doc
        .iter()
        .fold(MetricCounts::default(), |acc, c| acc.merge(c));
    Ok(ScoreReport::from_counts(total, mode, keys.len()))
}
