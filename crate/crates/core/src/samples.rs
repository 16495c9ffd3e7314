//! Small hand-built documents used by the examples and tests.

use crate::formats::AlignmentMap;
use crate::model::{Document, Entity, PluralLink, Span};

/// The six mentions of [`split_antecedent_example`], by letter.
#[derive(Clone, Copy, Debug)]
pub struct SplitExampleMentions {
    pub a: Span,
    pub b: Span,
    pub c: Span,
    pub d: Span,
    pub e: Span,
    pub f: Span,
}

pub fn split_example_mentions() -> SplitExampleMentions {
    SplitExampleMentions {
        a: Span::new(0, 0, 1),
        b: Span::new(0, 6, 7),
        c: Span::new(1, 0, 1),
        d: Span::new(2, 0, 1),
        e: Span::new(3, 4, 9),
        f: Span::new(3, 11, 16),
    }
}

/// Two politicians, then a plural "Both ... They" chain referring to the
/// pair of them.
///
/// Entities are `{a, f}`, `{b, e}` and the plural `{c, d}`, with one
/// plural link from `c` to the first two.
pub fn split_antecedent_example() -> Document {
    let m = split_example_mentions();
    Document::new("split-antecedent-example", "eng_Latn")
        .with_sentences(&[
            &[
                "Thatcher",
                "grew",
                "up",
                "in",
                "Lincolnshire",
                "whereas",
                "Gandhi",
                "was",
                "raised",
                "in",
                "Allahabad",
                ".",
            ],
            &["Both", "become", "powerful", "figures", "."],
            &["They", "locked", "horns", "in", "1983", "."],
            &[
                "The", "world", "watched", "as", "the", "Iron", "Lady", "of", "India", "stood",
                "against", "the", "Iron", "Lady", "of", "UK", ".",
            ],
        ])
        .with_entities(vec![
            Entity::new(0, [m.a, m.f]),
            Entity::new(1, [m.b, m.e]),
            Entity::new(2, [m.c, m.d]),
        ])
        .with_plural_links(vec![PluralLink::new(m.c, [0, 1])])
}

/// A source document with its translation and word alignments.
#[derive(Clone, Debug)]
pub struct ProjectionExample {
    pub source: Document,
    pub alignments: Vec<AlignmentMap>,
    pub target_sentences: Vec<Vec<String>>,
}

/// An English passage and a Hindi translation whose word order crosses the
/// English one.
///
/// Of the six mentions four are aligned, "the rabbit" is misaligned (its
/// determiner has no alignment) and "the hole" is non-aligned.
pub fn crossing_alignment_example() -> ProjectionExample {
    let source = Document::new("white-rabbit", "eng_Latn")
        .with_sentences(&[
            &[
                "suddenly", "a", "White", "Rabbit", "with", "pink", "eyes", "ran", "close", "by",
                "her", ".",
            ],
            &[
                "She", "followed", "the", "rabbit", "down", "the", "hole", ".",
            ],
        ])
        .with_entities(vec![
            Entity::new(0, [Span::new(0, 1, 7), Span::new(1, 2, 4)]),
            Entity::new(1, [Span::new(0, 5, 7)]),
            Entity::new(2, [Span::new(0, 10, 11), Span::new(1, 0, 1)]),
            Entity::new(3, [Span::new(1, 5, 7)]),
        ]);
    let target_sentences = [
        "अचानक गुलाबी आंखों वाला एक सफेद खरगोश उसके पास दौड़ पड़ा ।",
        "वह खरगोश के पीछे बिल में गई ।",
    ]
    .iter()
    .map(|s| s.split_whitespace().map(str::to_string).collect())
    .collect();
    let alignments = vec![
        [
            (0, 0),
            (1, 4),
            (2, 5),
            (3, 6),
            (4, 3),
            (5, 1),
            (6, 2),
            (7, 9),
            (7, 10),
            (8, 8),
            (9, 8),
            (10, 7),
            (11, 11),
        ]
        .into_iter()
        .collect(),
        [(0, 0), (1, 3), (1, 6), (3, 1), (4, 5), (7, 7)]
            .into_iter()
            .collect(),
    ];
    ProjectionExample {
        source,
        alignments,
        target_sentences,
    }
}
