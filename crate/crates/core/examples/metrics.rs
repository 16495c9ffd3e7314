//! Every metric on a small key/response pair, printed as exact fractions
//! and as the usual two-decimal table.
//!
//! Run with `cargo run --example metrics`.

use corefkit::metrics::{
    b_cubed, ceaf_e, lea, mention_detection, muc, score_corpus, Prf, ScoreMode, Singletons,
};
use corefkit::model::{Document, Entity, Span};
use corefkit::render::exact;

fn doc(groups: &[&[usize]]) -> Document {
    let words: Vec<String> = (0..8).map(|i| format!("w{i}")).collect();
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    Document::new("toy", "eng_Latn")
        .with_sentences(&[&words])
        .with_entities(
            groups
                .iter()
                .enumerate()
                .map(|(id, g)| Entity::new(id as u64, g.iter().map(|&w| Span::new(0, w, w + 1))))
                .collect(),
        )
}

fn show(name: &str, prf: &Prf) {
    println!(
        "{name:<9} P={:<6} R={:<6} F1={}",
        exact(&prf.precision),
        exact(&prf.recall),
        exact(&prf.f1)
    );
}

fn main() -> corefkit::Result<()> {
    let key = doc(&[&[0, 1, 2, 3, 4], &[5, 6], &[7]]);
    let response = doc(&[&[0, 1, 2, 3, 4], &[5, 6, 7]]);

    show("mentions", &mention_detection(&key, &response)?);
    show("muc", &muc(&key, &response));
    show("bcub", &b_cubed(&key, &response));
    show("ceafe", &ceaf_e(&key, &response));
    show("lea", &lea(&key, &response));

    for singletons in [Singletons::Include, Singletons::Exclude] {
        let mode = ScoreMode {
            singletons,
            ..Default::default()
        };
        println!();
        print!(
            "{}",
            score_corpus(
                std::slice::from_ref(&key),
                std::slice::from_ref(&response),
                mode
            )?
            .to_tsv()
        );
    }
    Ok(())
}
