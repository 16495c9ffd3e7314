use super::{Clusters, Counts};
use crate::render::int;

/// Σ(|k| − parts(k)) and Σ(|k| − 1) over key entities, where parts(k) is
/// the number of pieces the response cuts `k` into (unresolved mentions
/// are pieces of their own).
fn link_recall(key: &Clusters, response: &Clusters) -> (u64, u64) {
    let mut num = 0;
    let mut den = 0;
    for k in &key.entities {
        let size = k.len() as u64;
        if size < 2 {
            continue;
        }
        let touched = response.overlaps(k).len() as u64;
        let loose = k
            .iter()
            .filter(|m| response.containing(m).is_empty())
            .count() as u64;
        // Overlapping response entities can cut `k` into more pieces than
        // it has mentions; such an entity earns nothing rather than less.
        num += size.saturating_sub(touched + loose);
        den += size - 1;
    }
    (num, den)
}

pub fn muc_counts(key: &Clusters, response: &Clusters) -> Counts {
    let (rn, rd) = link_recall(key, response);
    let (pn, pd) = link_recall(response, key);
    Counts {
        recall_num: int(rn),
        recall_den: int(rd),
        precision_num: int(pn),
        precision_den: int(pd),
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;

    #[test]
    fn textbook_case() {
        let prf = muc_counts(&clusters(&["abc", "de"]), &clusters(&["ab", "cde"])).prf();
        assert_eq!((prf.precision, prf.recall), (q(2, 3), q(2, 3)));
    }

    #[test]
    fn all_singleton_response() {
        let prf = muc_counts(&clusters(&["ab"]), &clusters(&["a", "b"])).prf();
        assert_eq!(prf.recall, q(0, 1));
    }

    #[test]
    fn singletons_carry_no_links() {
        let c = muc_counts(&clusters(&["a", "b"]), &clusters(&["a", "b"]));
        assert_eq!(c.recall_den, int(0));
        assert_eq!(c.precision_den, int(0));
    }
}
