use num_rational::BigRational;
use num_traits::Zero;

use super::{Clusters, Counts};
use crate::render::{int, ratio};

/// Σ_k Σ_r |k∩r|² / |k| and Σ_k |k|.
fn recall_side(key: &Clusters, response: &Clusters) -> (BigRational, BigRational) {
    let mut num = BigRational::zero();
    let mut den = 0u64;
    for k in &key.entities {
        let size = k.len() as u64;
        den += size;
        let squares: u64 = response.overlaps(k).values().map(|&n| (n * n) as u64).sum();
        if size > 0 {
            num += ratio(squares, size);
        }
    }
    (num, int(den))
}

pub fn b_cubed_counts(key: &Clusters, response: &Clusters) -> Counts {
    let (recall_num, recall_den) = recall_side(key, response);
    let (precision_num, precision_den) = recall_side(response, key);
    Counts {
        recall_num,
        recall_den,
        precision_num,
        precision_den,
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;

    #[test]
    fn split_and_merge() {
        // (4/3 + 1/3 + 1) / 4 = 8/12
        let prf = b_cubed_counts(&clusters(&["abc", "d"]), &clusters(&["ab", "cd"])).prf();
        assert_eq!(prf.recall, q(2, 3));
        // (4/2 + 2·1/2) / 4 = 3/4
        assert_eq!(prf.precision, q(3, 4));
    }

    #[test]
    fn identity() {
        let k = clusters(&["abc", "d", "ef"]);
        assert_eq!(b_cubed_counts(&k, &k).prf().f1, q(1, 1));
    }

    #[test]
    fn overlapping_entities_exceed_one() {
        let k = clusters(&["afcd", "becd"]);
        let prf = b_cubed_counts(&k, &k).prf();
        assert_eq!(prf.recall, q(5, 4));
    }
}
