//! Carry mention annotations from English onto a Hindi translation whose
//! word order differs, and tabulate how many mentions survive.
//!
//! Run with `cargo run --example projection`.

use corefkit::formats::write_canonical_string;
use corefkit::samples::crossing_alignment_example;
use corefkit::transfer::{
    aggregate_projection_stats, project_document, project_mention, ProjectionOptions,
};

fn main() -> corefkit::Result<()> {
    let ex = crossing_alignment_example();
    for entity in &ex.source.entities {
        for m in &entity.mentions {
            let words = &ex.source.sentences[m.sentence][m.words()];
            let alignment = &ex.alignments[m.sentence];
            let outcome = project_mention(
                m,
                alignment,
                ex.source.sentences[m.sentence].len(),
                ex.target_sentences[m.sentence].len(),
            )?;
            println!("{} {m} {:<32} {outcome:?}", entity.id, words.join(" "));
        }
    }

    let options = ProjectionOptions {
        target_language: Some("hin_Deva".into()),
        ..Default::default()
    };
    let (target, summary) =
        project_document(&ex.source, &ex.alignments, &ex.target_sentences, &options)?;
    println!();
    for entity in &target.entities {
        let words: Vec<String> = entity
            .mentions
            .iter()
            .map(|m| target.sentences[m.sentence][m.words()].join(" "))
            .collect();
        println!("{}: {}", entity.id, words.join(" | "));
    }
    println!();
    print!(
        "{}",
        aggregate_projection_stats([(target.language.as_str(), summary)]).to_tsv()
    );
    println!();
    print!("{}", write_canonical_string(&[target]));
    Ok(())
}
