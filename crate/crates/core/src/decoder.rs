//! Mention-ranking decoding over precomputed scores.
//!
//! The coreference score of a mention `i` and an earlier mention `j` is
//! `S(i, j) = s_m(i) + s_m(j) + s_a(i, j)`; the dummy antecedent ε scores
//! exactly 0. Each mention picks its best-scoring antecedent and the
//! chosen links are closed transitively into entities.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Document, Entity, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Antecedent {
    /// The dummy ε: no antecedent.
    Dummy,
    Mention(usize),
}

/// Span and pair scores for one document. Mentions are in discourse order;
/// missing pair scores are −∞.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseScores {
    mentions: Vec<Span>,
    mention_scores: Vec<f64>,
    antecedent_scores: HashMap<(usize, usize), f64>,
}

impl PairwiseScores {
    pub fn new(
        mentions: Vec<Span>,
        mention_scores: Vec<f64>,
        antecedent_scores: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        if mentions.len() != mention_scores.len() {
            return Err(Error::Scores(format!(
                "{} mentions but {} mention scores",
                mentions.len(),
                mention_scores.len()
            )));
        }
        if let Some(w) = mentions.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Scores(format!(
                "mentions out of discourse order: {} before {}",
                w[0], w[1]
            )));
        }
        if let Some(i) = mention_scores.iter().position(|s| s.is_nan()) {
            return Err(Error::Scores(format!("mention score {i} is NaN")));
        }
        let mut pairs = HashMap::new();
        for (i, j, v) in antecedent_scores {
            if i >= mentions.len() || j >= i {
                return Err(Error::BadAntecedent {
                    mention: i,
                    antecedent: j,
                });
            }
            if v.is_nan() {
                return Err(Error::Scores(format!("antecedent score ({i}, {j}) is NaN")));
            }
            if pairs.insert((i, j), v).is_some() {
                return Err(Error::Scores(format!(
                    "antecedent score ({i}, {j}) given twice"
                )));
            }
        }
        Ok(PairwiseScores {
            mentions,
            mention_scores,
            antecedent_scores: pairs,
        })
    }

    pub fn mentions(&self) -> &[Span] {
        &self.mentions
    }

    pub fn len(&self) -> usize {
        self.mentions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mentions.is_empty()
    }

    pub fn mention_score(&self, i: usize) -> f64 {
        self.mention_scores[i]
    }

    pub fn antecedent_score(&self, i: usize, j: usize) -> f64 {
        self.antecedent_scores
            .get(&(i, j))
            .copied()
            .unwrap_or(f64::NEG_INFINITY)
    }
}

/// `S(i, j)`; `S(i, ε) = 0`.
pub fn pair_score(scores: &PairwiseScores, i: usize, j: Antecedent) -> Result<f64> {
    match j {
        Antecedent::Dummy => Ok(0.0),
        Antecedent::Mention(j) if j < i && i < scores.len() => {
            Ok(scores.mention_score(i) + scores.mention_score(j) + scores.antecedent_score(i, j))
        }
        Antecedent::Mention(j) => Err(Error::BadAntecedent {
            mention: i,
            antecedent: j,
        }),
    }
}

/// Softmax of `S(i, ·)` over `{ε, 0, …, i−1}`. Index 0 is ε, index `j + 1`
/// is mention `j`. −∞ scores get probability exactly 0.
pub fn antecedent_distribution(scores: &PairwiseScores, i: usize) -> Vec<f64> {
    let raw: Vec<f64> = std::iter::once(0.0)
        .chain((0..i).map(|j| {
            scores.mention_score(i) + scores.mention_score(j) + scores.antecedent_score(i, j)
        }))
        .collect();
    // ε keeps the maximum finite.
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = raw.iter().map(|&s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// The highest-scoring antecedent of mention `i`. Ties with ε go to ε;
/// ties between mentions go to the closest one.
pub fn best_antecedent(scores: &PairwiseScores, i: usize) -> Antecedent {
    let mut best = Antecedent::Dummy;
    let mut best_score = 0.0;
    for j in (0..i).rev() {
        let s = scores.mention_score(i) + scores.mention_score(j) + scores.antecedent_score(i, j);
        if s > best_score {
            best = Antecedent::Mention(j);
            best_score = s;
        }
    }
    best
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // Keep the earlier mention as root so ids follow discourse order.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Greedy per-mention decoding into entities. Entity ids are assigned in
/// order of each entity's first mention.
pub fn decode(scores: &PairwiseScores) -> Vec<Entity> {
    let n = scores.len();
    let mut sets = DisjointSet::new(n);
    for i in 0..n {
        if let Antecedent::Mention(j) = best_antecedent(scores, i) {
            sets.union(i, j);
        }
    }
    let mut groups: BTreeMap<usize, Vec<Span>> = BTreeMap::new();
    for i in 0..n {
        let root = sets.find(i);
        groups.entry(root).or_default().push(scores.mentions[i]);
    }
    groups
        .into_values()
        .enumerate()
        .map(|(id, spans)| Entity::new(id as u64, spans))
        .collect()
}

/// On-disk score record: one JSON object per line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub doc_key: String,
    #[serde(default)]
    pub language: Option<String>,
    #[serde(default)]
    pub sentences: Option<Vec<Vec<String>>>,
    pub mentions: Vec<Span>,
    pub mention_scores: Vec<f64>,
    /// `(i, j, s_a(i, j))` with `j < i`; absent pairs are −∞.
    #[serde(default)]
    pub antecedent_scores: Vec<(usize, usize, f64)>,
}

impl ScoreRecord {
    pub fn scores(&self) -> Result<PairwiseScores> {
        PairwiseScores::new(
            self.mentions.clone(),
            self.mention_scores.clone(),
            self.antecedent_scores.iter().copied(),
        )
    }

    /// Decode into a document carrying the record's sentences, if any.
    pub fn decode_document(&self) -> Result<Document> {
        let entities = decode(&self.scores()?);
        Ok(Document {
            doc_key: self.doc_key.clone(),
            language: self.language.clone().unwrap_or_default(),
            sentences: self.sentences.clone().unwrap_or_default(),
            entities,
            plural_links: Vec::new(),
            expanded: false,
            conll_columns: None,
        })
    }
}

pub fn parse_score_records<R: std::io::BufRead>(reader: R) -> Result<Vec<ScoreRecord>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut de = serde_json::Deserializer::from_str(&line);
        let rec = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Schema {
            line: idx + 1,
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spans(n: usize) -> Vec<Span> {
        (0..n).map(|i| Span::new(0, i, i + 1)).collect()
    }

    #[test]
    fn eq1_by_hand() {
        let s = PairwiseScores::new(spans(2), vec![1.0, 1.0], [(1, 0, -1.0)]).unwrap();
        assert_eq!(pair_score(&s, 1, Antecedent::Mention(0)).unwrap(), 1.0);
        assert_eq!(pair_score(&s, 1, Antecedent::Dummy).unwrap(), 0.0);
        assert!(pair_score(&s, 0, Antecedent::Mention(0)).is_err());
        assert!(pair_score(&s, 0, Antecedent::Mention(1)).is_err());
    }

    #[test]
    fn zero_score_ties_go_to_dummy() {
        let s = PairwiseScores::new(spans(2), vec![0.0, 0.0], [(1, 0, 0.0)]).unwrap();
        assert_eq!(pair_score(&s, 1, Antecedent::Mention(0)).unwrap(), 0.0);
        assert_eq!(best_antecedent(&s, 1), Antecedent::Dummy);
        assert_eq!(antecedent_distribution(&s, 1), vec![0.5, 0.5]);
    }

    #[test]
    fn first_mention_only_has_dummy() {
        let s = PairwiseScores::new(spans(1), vec![3.0], []).unwrap();
        assert_eq!(antecedent_distribution(&s, 0), vec![1.0]);
    }

    #[test]
    fn closed_form_softmax() {
        // S(2,·) = (0, ln 2, ln 3) → (1/6, 2/6, 3/6)
        let s = PairwiseScores::new(
            spans(3),
            vec![0.0; 3],
            [(2, 0, 2f64.ln()), (2, 1, 3f64.ln())],
        )
        .unwrap();
        let p = antecedent_distribution(&s, 2);
        for (got, want) in p.iter().zip([1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]) {
            assert!((got - want).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn closest_wins_ties_between_mentions() {
        let s = PairwiseScores::new(spans(3), vec![0.0; 3], [(2, 0, 1.0), (2, 1, 1.0)]).unwrap();
        assert_eq!(best_antecedent(&s, 2), Antecedent::Mention(1));
    }

    #[test]
    fn dominated_dummy_gives_singletons() {
        let n = 4;
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j, -1e6)))
            .collect();
        let s = PairwiseScores::new(spans(n), vec![0.0; n], pairs).unwrap();
        let entities = decode(&s);
        assert_eq!(entities.len(), n);
        assert!(entities.iter().all(Entity::is_singleton));
    }

    #[test]
    fn two_mentions_link() {
        let s = PairwiseScores::new(spans(2), vec![0.5, 0.5], [(1, 0, 0.0)]).unwrap();
        assert_eq!(decode(&s), vec![Entity::new(0, spans(2))]);
    }

    #[test]
    fn three_mention_chain() {
        // S(1,0) = 1 > 0, S(2,1) = 1 > 0 > S(2,0) = -1
        let s = PairwiseScores::new(
            spans(3),
            vec![0.0; 3],
            [(1, 0, 1.0), (2, 1, 1.0), (2, 0, -1.0)],
        )
        .unwrap();
        assert_eq!(decode(&s), vec![Entity::new(0, spans(3))]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PairwiseScores::new(spans(2), vec![0.0], []).is_err());
        assert!(PairwiseScores::new(spans(2), vec![0.0; 2], [(0, 1, 0.0)]).is_err());
        assert!(PairwiseScores::new(spans(2), vec![0.0; 2], [(1, 0, f64::NAN)]).is_err());
        assert!(PairwiseScores::new(spans(2), vec![0.0; 2], [(1, 0, 1.0), (1, 0, 2.0)]).is_err());
        let mut unordered = spans(2);
        unordered.reverse();
        assert!(PairwiseScores::new(unordered, vec![0.0; 2], []).is_err());
    }

    #[test]
    fn score_record_round_trip() {
        let text = r#"{"doc_key":"d","mentions":[[0,0,1],[0,2,3]],"mention_scores":[0.5,0.5],"antecedent_scores":[[1,0,0.25]]}"#;
        let recs = parse_score_records(text.as_bytes()).unwrap();
        let doc = recs[0].decode_document().unwrap();
        assert_eq!(doc.entities.len(), 1);
        assert!(parse_score_records(r#"{"doc_key":"d"}"#.as_bytes()).is_err());
    }
}
