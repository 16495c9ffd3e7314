//! Score the two-politicians passage against itself, first as annotated and
//! then with its split antecedent folded into both antecedent entities.
//!
//! Run with `cargo run --example split_antecedent_scoring`.

use corefkit::metrics::{score_corpus, Metric, ScoreMode, SplitMode};
use corefkit::model::{expand_split_antecedents, validate_document};
use corefkit::render::exact;
use corefkit::samples::split_antecedent_example;

fn main() -> corefkit::Result<()> {
    let doc = split_antecedent_example();
    let expanded = expand_split_antecedents(&doc)?;
    println!(
        "memberships: {} annotated, {} expanded",
        doc.membership_count(),
        expanded.membership_count()
    );
    for e in &expanded.entities {
        let spans: Vec<String> = e.mentions.iter().map(|m| m.to_string()).collect();
        println!("  {}: {}", e.id, spans.join(" "));
    }
    assert!(validate_document(&expanded).is_empty());

    let key = std::slice::from_ref(&doc);
    for split in [SplitMode::Plain, SplitMode::Expanded] {
        let mode = ScoreMode {
            split,
            ..Default::default()
        };
        let report = score_corpus(key, key, mode)?;
        println!();
        print!("{}", report.to_tsv());
        let b3 = report.get(Metric::BCubed);
        println!("# exact bcub recall {}", exact(&b3.recall));
    }
    Ok(())
}
