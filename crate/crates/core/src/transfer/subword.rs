//! Mapping subword tokens back to the words they came from.

use crate::formats::AlignmentMap;

/// For each subword, the index of the word it is aligned to. `alignment`
/// pairs are `(word, subword)`. A subword aligned to several words maps to
/// the lowest word index; unaligned subwords map to `None`. Pairs outside
/// the two token lists are ignored.
pub fn subword_to_word_map<W, S>(
    words: &[W],
    subwords: &[S],
    alignment: &AlignmentMap,
) -> Vec<Option<usize>> {
    let mut map = vec![None; subwords.len()];
    // Pairs iterate in ascending word order, so the first hit is the lowest.
    for &(word, sub) in alignment.pairs() {
        if word < words.len() && sub < subwords.len() && map[sub].is_none() {
            map[sub] = Some(word);
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tamil_word_split_in_two() {
        let words = ["கடுமையான", "வலிகளும்"];
        let subwords = ["கடுமைய்", "ஆன", "வலிகளும்"];
        let alignment: AlignmentMap = [(0, 0), (0, 1), (1, 2)].into_iter().collect();
        assert_eq!(
            subword_to_word_map(&words, &subwords, &alignment),
            vec![Some(0), Some(0), Some(1)]
        );
    }

    #[test]
    fn identity_segmentation() {
        let words = ["a", "b", "c"];
        let alignment: AlignmentMap = (0..3).map(|i| (i, i)).collect();
        assert_eq!(
            subword_to_word_map(&words, &words, &alignment),
            vec![Some(0), Some(1), Some(2)]
        );
    }

    #[test]
    fn unaligned_and_multiply_aligned() {
        let alignment: AlignmentMap = [(2, 0), (1, 0)].into_iter().collect();
        assert_eq!(
            subword_to_word_map(&["a", "b", "c"], &["x", "y"], &alignment),
            vec![Some(1), None]
        );
    }
}
