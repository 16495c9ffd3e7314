//! Flags machine translations that degenerated into punctuation.

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory as Gc};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SanityConfig {
    /// Share of non-whitespace characters a single punctuation run must
    /// cover to fail the check.
    pub repeat_fraction: f64,
    /// Minimum length of that run.
    pub min_run: usize,
}

impl Default for SanityConfig {
    fn default() -> Self {
        SanityConfig {
            repeat_fraction: 0.9,
            min_run: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SanityVerdict {
    pub passed: bool,
    pub reason: Option<String>,
}

impl SanityVerdict {
    fn pass() -> Self {
        SanityVerdict {
            passed: true,
            reason: None,
        }
    }

    fn fail(reason: String) -> Self {
        SanityVerdict {
            passed: false,
            reason: Some(reason),
        }
    }
}

/// Unicode punctuation (general category P*) plus the Indic danda marks.
pub fn is_punctuation(c: char) -> bool {
    matches!(
        get_general_category(c),
        Gc::ConnectorPunctuation
            | Gc::DashPunctuation
            | Gc::OpenPunctuation
            | Gc::ClosePunctuation
            | Gc::InitialPunctuation
            | Gc::FinalPunctuation
            | Gc::OtherPunctuation
    ) || matches!(
        c,
        '\u{0964}' | '\u{0965}' | '\u{A8CE}' | '\u{A8CF}' | '\u{1C3B}'..='\u{1C3C}'
    )
}

/// A translation fails if, ignoring whitespace, it is empty, consists only
/// of punctuation, or is dominated by one long run of a single punctuation
/// character.
pub fn check_translation_sanity(text: &str, config: &SanityConfig) -> SanityVerdict {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return SanityVerdict::fail("empty".to_string());
    }
    if chars.iter().all(|&c| is_punctuation(c)) {
        return SanityVerdict::fail(format!("all {} characters are punctuation", chars.len()));
    }

    let mut best: Option<(char, usize)> = None;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let run = chars[i..].iter().take_while(|&&x| x == c).count();
        if is_punctuation(c) && best.is_none_or(|(_, n)| run > n) {
            best = Some((c, run));
        }
        i += run;
    }

    match best {
        Some((c, run))
            if run >= config.min_run
                && run as f64 / chars.len() as f64 >= config.repeat_fraction =>
        {
            SanityVerdict::fail(format!(
                "run of {run} {c:?} covers {run} of {} non-space characters",
                chars.len()
            ))
        }
        _ => SanityVerdict::pass(),
    }
}

pub fn check_tokens_sanity<S: AsRef<str>>(tokens: &[S], config: &SanityConfig) -> SanityVerdict {
    let joined: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    check_translation_sanity(&joined.join(" "), config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: &str) -> SanityVerdict {
        check_translation_sanity(s, &SanityConfig::default())
    }

    #[test]
    fn danda_only_fails() {
        let v = check("।।।।।।।।");
        assert!(!v.passed);
        assert!(v.reason.unwrap().contains("all 8"));
    }

    #[test]
    fn ordinary_sentence_passes() {
        let v = check("राम ने कल बाज़ार से ताज़ी सब्ज़ियाँ और फल ख़रीदे ।");
        assert_eq!(v, SanityVerdict::pass());
    }

    #[test]
    fn dominant_bang_run_fails() {
        // 2 letters + 18 '!' = 20 non-space characters; 18/20 = 0.9.
        let text = format!("ok {}", "!".repeat(18));
        assert!(!check(&text).passed);
        let text = format!("ok {}", "!".repeat(17));
        assert!(check(&text).passed);
    }

    #[test]
    fn short_runs_never_fail_on_fraction_alone() {
        let cfg = SanityConfig {
            repeat_fraction: 0.5,
            min_run: 5,
        };
        assert!(check_translation_sanity("a!!!!", &cfg).passed);
        assert!(!check_translation_sanity("a!!!!!", &cfg).passed);
    }

    #[test]
    fn empty_and_blank() {
        for s in ["", "   \t"] {
            let v = check(s);
            assert!(!v.passed);
            assert_eq!(v.reason.as_deref(), Some("empty"));
        }
    }

    #[test]
    fn mixed_punctuation_is_still_all_punctuation() {
        assert!(!check(". , ; ! ?").passed);
        assert!(is_punctuation('॥'));
        assert!(!is_punctuation('क'));
    }
}
