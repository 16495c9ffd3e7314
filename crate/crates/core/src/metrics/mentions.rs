use super::{Clusters, Counts};
use crate::render::int;

/// Exact span matches; a span counts once however many entities hold it.
pub fn mention_counts(key: &Clusters, response: &Clusters) -> Counts {
    let k = key.mentions();
    let r = response.mentions();
    let matched = k.intersection(&r).count() as u64;
    Counts {
        recall_num: int(matched),
        recall_den: int(k.len() as u64),
        precision_num: int(matched),
        precision_den: int(r.len() as u64),
    }
}
