use num_rational::BigRational;
use num_traits::Zero;

use super::assignment::max_weight_matching;
use super::{Clusters, Counts};
use crate::render::{int, ratio};

/// Entity similarity φ4: 2|k∩r| / (|k| + |r|).
pub fn phi4(common: usize, key_size: usize, response_size: usize) -> BigRational {
    let den = (key_size + response_size) as u64;
    if den == 0 {
        return BigRational::zero();
    }
    ratio(2 * common as u64, den)
}

/// Total φ4 similarity of the best one-to-one entity alignment.
pub fn best_alignment_similarity(key: &Clusters, response: &Clusters) -> BigRational {
    let weights: Vec<Vec<BigRational>> = key
        .entities
        .iter()
        .map(|k| {
            let overlaps = response.overlaps(k);
            response
                .entities
                .iter()
                .enumerate()
                .map(|(j, r)| phi4(overlaps.get(&j).copied().unwrap_or(0), k.len(), r.len()))
                .collect()
        })
        .collect();
    max_weight_matching(&weights, response.entities.len())
        .into_iter()
        .map(|(i, j)| weights[i][j].clone())
        .sum()
}

pub fn ceaf_e_counts(key: &Clusters, response: &Clusters) -> Counts {
    let similarity = best_alignment_similarity(key, response);
    Counts {
        recall_num: similarity.clone(),
        recall_den: int(key.entities.len() as u64),
        precision_num: similarity,
        precision_den: int(response.entities.len() as u64),
    }
}
