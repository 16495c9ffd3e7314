//! Coreference evaluation: mention detection, MUC, B³, CEAF_e, LEA and the
//! CoNLL average.
//!
//! Every metric is computed as a pair of exact rational fractions (recall
//! numerator/denominator and precision numerator/denominator). Corpus
//! scores pool those counts over documents before dividing, so the result
//! does not depend on document order or on how the work was split.
//!
//! The kernels take entities as plain sets of spans and make no assumption
//! that they are disjoint: after split-antecedent expansion a mention can
//! sit in several entities, and B³ and LEA then go above 1.

pub mod assignment;
mod bcubed;
mod ceaf;
mod lea;
mod mentions;
mod muc;
mod report;

use std::collections::{BTreeSet, HashMap};
use std::ops::{Add, AddAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::model::{Document, Span};

pub use bcubed::b_cubed_counts;
pub use ceaf::ceaf_e_counts;
pub use lea::lea_counts;
pub use mentions::mention_counts;
pub use muc::muc_counts;
pub use report::{
    conll_f1, score_corpus, score_document, Metric, MetricCounts, ScoreMode, ScoreReport,
    Singletons, SplitMode,
};

/// Entities of one side (key or response) as span sets.
#[derive(Clone, Debug, Default)]
pub struct Clusters {
    pub entities: Vec<BTreeSet<Span>>,
    index: HashMap<Span, Vec<usize>>,
}

impl Clusters {
    pub fn new(entities: Vec<BTreeSet<Span>>) -> Self {
        let mut index: HashMap<Span, Vec<usize>> = HashMap::new();
        for (i, e) in entities.iter().enumerate() {
            for m in e {
                index.entry(*m).or_default().push(i);
            }
        }
        Clusters { entities, index }
    }

    pub fn from_document(doc: &Document) -> Self {
        Self::new(
            doc.entities
                .iter()
                .filter(|e| !e.mentions.is_empty())
                .map(|e| e.mentions.clone())
                .collect(),
        )
    }

    /// Entities containing `span`.
    pub fn containing(&self, span: &Span) -> &[usize] {
        self.index.get(span).map_or(&[], Vec::as_slice)
    }

    /// `|e ∩ other_j|` for every entity `j` of `self` that meets `e`.
    pub fn overlaps(&self, e: &BTreeSet<Span>) -> HashMap<usize, usize> {
        let mut out: HashMap<usize, usize> = HashMap::new();
        for m in e {
            for &j in self.containing(m) {
                *out.entry(j).or_default() += 1;
            }
        }
        out
    }

    pub fn mentions(&self) -> BTreeSet<Span> {
        self.index.keys().copied().collect()
    }
}

/// Recall and precision as unreduced fractions, ready to be pooled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub recall_num: BigRational,
    pub recall_den: BigRational,
    pub precision_num: BigRational,
    pub precision_den: BigRational,
}

impl Default for Counts {
    fn default() -> Self {
        Counts {
            recall_num: BigRational::zero(),
            recall_den: BigRational::zero(),
            precision_num: BigRational::zero(),
            precision_den: BigRational::zero(),
        }
    }
}

impl AddAssign<&Counts> for Counts {
    fn add_assign(&mut self, o: &Counts) {
        self.recall_num += &o.recall_num;
        self.recall_den += &o.recall_den;
        self.precision_num += &o.precision_num;
        self.precision_den += &o.precision_den;
    }
}

impl Add for Counts {
    type Output = Counts;

    fn add(mut self, o: Counts) -> Counts {
        self += &o;
        self
    }
}

impl Counts {
    /// Swap the roles of key and response.
    pub fn swapped(self) -> Counts {
        Counts {
            recall_num: self.precision_num,
            recall_den: self.precision_den,
            precision_num: self.recall_num,
            precision_den: self.recall_den,
        }
    }

    /// Divide out. 0/0 becomes 0 and is reported through `undefined`.
    pub fn finish(&self) -> (Prf, Vec<&'static str>) {
        let mut undefined = Vec::new();
        let mut div = |num: &BigRational, den: &BigRational, what: &'static str| {
            if den.is_zero() {
                undefined.push(what);
                BigRational::zero()
            } else {
                num / den
            }
        };
        let precision = div(&self.precision_num, &self.precision_den, "precision");
        let recall = div(&self.recall_num, &self.recall_den, "recall");
        (Prf::new(precision, recall), undefined)
    }

    pub fn prf(&self) -> Prf {
        self.finish().0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prf {
    pub precision: BigRational,
    pub recall: BigRational,
    pub f1: BigRational,
}

impl Prf {
    pub fn new(precision: BigRational, recall: BigRational) -> Self {
        let sum = &precision + &recall;
        let f1 = if sum.is_zero() {
            BigRational::zero()
        } else {
            BigRational::from_integer(2.into()) * &precision * &recall / sum
        };
        Prf {
            precision,
            recall,
            f1,
        }
    }

    pub fn perfect() -> Self {
        Prf::new(BigRational::one(), BigRational::one())
    }
}

fn key_response(key: &Document, response: &Document) -> (Clusters, Clusters) {
    (
        Clusters::from_document(key),
        Clusters::from_document(response),
    )
}

/// Exact-span mention detection scores.
pub fn mention_detection(key: &Document, response: &Document) -> crate::Result<Prf> {
    if key.doc_key != response.doc_key {
        return Err(crate::Error::DocKeyMismatch(format!(
            "key {:?} vs response {:?}",
            key.doc_key, response.doc_key
        )));
    }
    let (k, r) = key_response(key, response);
    Ok(mention_counts(&k, &r).prf())
}

pub fn muc(key: &Document, response: &Document) -> Prf {
    let (k, r) = key_response(key, response);
    muc_counts(&k, &r).prf()
}

pub fn b_cubed(key: &Document, response: &Document) -> Prf {
    let (k, r) = key_response(key, response);
    b_cubed_counts(&k, &r).prf()
}

pub fn ceaf_e(key: &Document, response: &Document) -> Prf {
    let (k, r) = key_response(key, response);
    ceaf_e_counts(&k, &r).prf()
}

pub fn lea(key: &Document, response: &Document) -> Prf {
    let (k, r) = key_response(key, response);
    lea_counts(&k, &r).prf()
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;
    use crate::render::ratio;

    /// Clusters from letter groups, e.g. `&["abc", "de"]`. Each letter is a
    /// one-word mention at its alphabet position.
    pub fn clusters(groups: &[&str]) -> Clusters {
        Clusters::new(
            groups
                .iter()
                .map(|g| {
                    g.bytes()
                        .map(|b| {
                            let i = (b - b'a') as usize;
                            Span::new(0, i, i + 1)
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn q(n: u64, d: u64) -> BigRational {
        ratio(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::test_util::*;
    use super::*;

    #[test]
    fn f1_is_harmonic_mean_or_zero() {
        assert_eq!(Prf::new(q(1, 2), q(1, 2)).f1, q(1, 2));
        assert_eq!(Prf::new(q(2, 3), q(1, 3)).f1, q(4, 9));
        assert_eq!(Prf::new(q(0, 1), q(0, 1)).f1, q(0, 1));
    }

    #[test]
    fn zero_over_zero_is_reported() {
        let (prf, undefined) = Counts::default().finish();
        assert_eq!(prf.f1, q(0, 1));
        assert_eq!(undefined, vec!["precision", "recall"]);
    }

    #[test]
    fn precision_is_recall_with_roles_swapped() {
        let k = clusters(&["abc", "de", "f"]);
        let r = clusters(&["ab", "cdf", "e"]);
        type Kernel = fn(&Clusters, &Clusters) -> Counts;
        for f in [
            muc_counts as Kernel,
            b_cubed_counts,
            ceaf_e_counts,
            lea_counts,
            mention_counts,
        ] {
            let kr = f(&k, &r).prf();
            let rk = f(&r, &k).prf();
            assert_eq!(kr.precision, rk.recall);
            assert_eq!(kr.recall, rk.precision);
        }
    }
}
