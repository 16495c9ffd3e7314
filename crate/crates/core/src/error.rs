use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {path}: {message}")]
    Schema {
        line: usize,
        path: String,
        message: String,
    },

    #[error("document {0} is already expanded")]
    AlreadyExpanded(String),

    #[error("document {doc_key}: {detail}")]
    Dangling { doc_key: String, detail: String },

    #[error("document {doc_key}: {detail}")]
    Unrepresentable { doc_key: String, detail: String },

    #[error("document {doc_key}: {detail}")]
    Shape { doc_key: String, detail: String },

    #[error("alignment pair {source_word}-{target_word} out of bounds (source has {source_len} words, target {target_len})")]
    AlignmentOutOfBounds {
        source_word: usize,
        target_word: usize,
        source_len: usize,
        target_len: usize,
    },

    #[error("invalid antecedent {antecedent} for mention {mention}: must precede it")]
    BadAntecedent { mention: usize, antecedent: usize },

    #[error("invalid scores: {0}")]
    Scores(String),

    #[error("doc_key mismatch: {0}")]
    DocKeyMismatch(String),

    #[error("{0}")]
    Undefined(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
