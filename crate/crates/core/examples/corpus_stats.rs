//! Per-language corpus statistics and the split-antecedent rate.
//!
//! Run with `cargo run --example corpus_stats`.

use corefkit::model::{Document, Entity, PluralLink, Span};
use corefkit::samples::split_antecedent_example;
use corefkit::stats::{corpus_stats, split_antecedent_percent, SplitTable};

fn hindi() -> Document {
    Document::new("hi-1", "hin_Deva")
        .with_sentences(&[&["राम", "और", "सीता", "आए", "।"], &["वे", "खुश", "थे", "।"]])
        .with_entities(vec![
            Entity::new(0, [Span::new(0, 0, 1)]),
            Entity::new(1, [Span::new(0, 2, 3)]),
            Entity::new(2, [Span::new(1, 0, 1)]),
        ])
        .with_plural_links(vec![PluralLink::new(Span::new(1, 0, 1), [0, 1])])
}

fn main() -> corefkit::Result<()> {
    let train = vec![split_antecedent_example(), hindi()];
    let dev = vec![hindi()];

    let table = corpus_stats(&train, |d| d.language.clone());
    print!("{}", table.to_tsv());
    println!(
        "split antecedents: {}% of mentions",
        split_antecedent_percent(&table.total)?
    );
    println!();
    print!(
        "{}",
        SplitTable::new([("train", train.as_slice()), ("dev", dev.as_slice())]).to_tsv()
    );
    Ok(())
}
