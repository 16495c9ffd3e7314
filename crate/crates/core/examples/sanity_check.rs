//! Flag translations that degenerated into repeated punctuation.
//!
//! Run with `cargo run --example sanity_check`.

use corefkit::transfer::{check_translation_sanity, SanityConfig};

fn main() {
    let candidates = [
        "वह खरगोश के पीछे बिल में गई ।",
        "।।।।।।।।।।।।।।।।",
        "ok !!!!!!!!!!!!!!!!!!",
        "ok !!!!!!!!!!!!!!!!!",
        "... ...",
        "",
    ];
    let defaults = SanityConfig::default();
    let strict = SanityConfig {
        repeat_fraction: 0.5,
        min_run: 3,
    };
    for text in candidates {
        let a = check_translation_sanity(text, &defaults);
        let b = check_translation_sanity(text, &strict);
        let verdict = |passed: bool| if passed { "pass" } else { "fail" };
        println!(
            "{:<5} {:<5} \"{}\"  {}",
            verdict(a.passed),
            verdict(b.passed),
            text,
            a.reason.or(b.reason).unwrap_or_default()
        );
    }
}
