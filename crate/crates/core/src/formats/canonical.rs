//! Canonical line-delimited JSON documents.
//!
//! One document per line:
//!
//! ```text
//! {"doc_key":"d1","language":"hin_Deva","sentences":[["a","b"]],
//!  "entities":[{"id":0,"mentions":[[0,0,1]]}],
//!  "plural_links":[{"anaphor":[0,1,2],"antecedents":[0,1]}],"expanded":false}
//! ```
//!
//! Unlike CoNLL this carries plural links and the expanded flag, so it
//! round-trips every [`Document`] exactly.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::Document;

/// Parse one record. `line` is only used for error reporting.
pub fn parse_record(text: &str, line: usize) -> Result<Document> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Schema {
        line,
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| Error::Schema {
        line,
        path: ".".to_string(),
        message: e.to_string(),
    })?;
    Ok(doc)
}

/// Read all records; blank lines are skipped.
pub fn parse_canonical<R: BufRead>(reader: R) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        docs.push(parse_record(&line, idx + 1)?);
    }
    Ok(docs)
}

pub fn parse_canonical_str(input: &str) -> Result<Vec<Document>> {
    parse_canonical(input.as_bytes())
}

pub fn to_record(doc: &Document) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}

pub fn write_canonical<W: Write>(docs: &[Document], mut out: W) -> Result<()> {
    for doc in docs {
        writeln!(out, "{}", to_record(doc))?;
    }
    Ok(())
}

pub fn write_canonical_string(docs: &[Document]) -> String {
    let mut buf = Vec::new();
    write_canonical(docs, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::expand_split_antecedents;
    use crate::samples::split_antecedent_example;

    #[test]
    fn plural_links_survive() {
        let doc = split_antecedent_example();
        let text = write_canonical_string(std::slice::from_ref(&doc));
        assert_eq!(text.lines().count(), 1);
        assert_eq!(parse_canonical_str(&text).unwrap(), vec![doc]);
    }

    #[test]
    fn expanded_overlap_survives() {
        let doc = expand_split_antecedents(&split_antecedent_example()).unwrap();
        let text = write_canonical_string(std::slice::from_ref(&doc));
        let back = parse_canonical_str(&text).unwrap();
        assert_eq!(back, vec![doc]);
        assert_eq!(write_canonical_string(&back), text);
    }

    #[test]
    fn missing_sentences_is_named() {
        let text = "\n{\"doc_key\":\"d\",\"language\":\"x\",\"entities\":[]}\n";
        match parse_canonical_str(text).unwrap_err() {
            Error::Schema { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("sentences"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nested_schema_error_has_a_path() {
        let text = r#"{"doc_key":"d","language":"x","sentences":[],"entities":[{"id":0,"mentions":[[0,1]]}]}"#;
        match parse_canonical_str(text).unwrap_err() {
            Error::Schema { path, .. } => {
                assert!(path.starts_with("entities[0].mentions[0]"), "{path}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let text = r#"{"doc_key":"d","language":"x","sentences":[],"entities":[]} 7"#;
        assert!(matches!(
            parse_canonical_str(text),
            Err(Error::Schema { .. })
        ));
    }
}
