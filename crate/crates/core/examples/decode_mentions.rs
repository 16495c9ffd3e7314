//! Turn mention and antecedent scores into entities.
//!
//! Run with `cargo run --example decode_mentions`.

use corefkit::decoder::{antecedent_distribution, best_antecedent, decode, PairwiseScores};
use corefkit::model::Span;

fn main() -> corefkit::Result<()> {
    let mentions = vec![
        Span::new(0, 0, 2),
        Span::new(0, 5, 6),
        Span::new(1, 0, 1),
        Span::new(1, 3, 5),
    ];
    let scores = PairwiseScores::new(
        mentions,
        vec![0.5, 0.2, 0.4, -1.0],
        [
            (1, 0, 1.5),
            (2, 0, 0.3),
            (2, 1, 2.0),
            (3, 0, -2.0),
            (3, 1, -1.0),
            (3, 2, -0.5),
        ],
    )?;

    for i in 0..scores.len() {
        let probs: Vec<String> = antecedent_distribution(&scores, i)
            .iter()
            .map(|p| format!("{p:.3}"))
            .collect();
        println!(
            "mention {i}: p(eps, j<{i}) = [{}] -> {:?}",
            probs.join(", "),
            best_antecedent(&scores, i)
        );
    }
    for e in decode(&scores) {
        let spans: Vec<String> = e.mentions.iter().map(|m| m.to_string()).collect();
        println!("{}: {}", e.id, spans.join(" "));
    }
    Ok(())
}
