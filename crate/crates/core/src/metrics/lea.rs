use num_rational::BigRational;
use num_traits::Zero;

use super::{Clusters, Counts};
use crate::render::{int, ratio};

fn links(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Σ_k |k|·resolved(k)/links(k) and Σ_k |k|. A singleton key entity is
/// resolved exactly when the other side has that same singleton entity.
fn recall_side(key: &Clusters, response: &Clusters) -> (BigRational, BigRational) {
    let mut num = BigRational::zero();
    let mut den = 0u64;
    for k in &key.entities {
        let size = k.len();
        den += size as u64;
        if size == 1 {
            let m = k.first().expect("size 1");
            let resolved = response
                .containing(m)
                .iter()
                .any(|&j| response.entities[j].len() == 1);
            if resolved {
                num += int(1);
            }
        } else if size > 1 {
            let resolved: u64 = response.overlaps(k).values().map(|&n| links(n)).sum();
            num += int(size as u64) * ratio(resolved, links(size));
        }
    }
    (num, int(den))
}

pub fn lea_counts(key: &Clusters, response: &Clusters) -> Counts {
    let (recall_num, recall_den) = recall_side(key, response);
    let (precision_num, precision_den) = recall_side(response, key);
    Counts {
        recall_num,
        recall_den,
        precision_num,
        precision_den,
    }
}
