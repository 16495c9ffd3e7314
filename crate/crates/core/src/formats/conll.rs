//! CoNLL-2012 style coreference files.
//!
//! Documents are delimited by `#begin document <key>` and `#end document`.
//! Each row is whitespace separated; the coreference annotation is always
//! the last column and the token is the second column when the first
//! column is a word index, the fourth otherwise (the OntoNotes layout with
//! document id and part number first). A blank line ends a sentence.
//!
//! The coreference cell is `-` or a `|`-separated list of `(N`, `N)` and
//! `(N)` atoms, read left to right.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::{Document, Entity, EntityId, PluralLink, Span};

const BEGIN: &str = "#begin document";
const END: &str = "#end document";

/// Emitted when a document carries information CoNLL cannot hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DroppedLinks {
    pub doc_key: String,
    pub links: Vec<PluralLink>,
}

impl fmt::Display for DroppedLinks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "document {}: dropped {} plural link(s) not representable in CoNLL:",
            self.doc_key,
            self.links.len()
        )?;
        for link in &self.links {
            let ids: Vec<String> = link
                .antecedent_entities
                .iter()
                .map(|e| e.to_string())
                .collect();
            write!(f, " {}->{{{}}}", link.anaphor, ids.join(","))?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Open(u64),
    Close(u64),
    Single(u64),
}

fn parse_id(s: &str, line: usize, atom: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(
            line,
            format!("malformed coreference atom {atom:?}"),
        ));
    }
    s.parse()
        .map_err(|_| parse_err(line, format!("entity id out of range in {atom:?}")))
}

fn parse_cell(cell: &str, line: usize) -> Result<Vec<Atom>> {
    if cell == "-" {
        return Ok(Vec::new());
    }
    cell.split('|')
        .map(|atom| {
            if let Some(inner) = atom.strip_prefix('(') {
                if let Some(id) = inner.strip_suffix(')') {
                    Ok(Atom::Single(parse_id(id, line, atom)?))
                } else {
                    Ok(Atom::Open(parse_id(inner, line, atom)?))
                }
            } else if let Some(id) = atom.strip_suffix(')') {
                Ok(Atom::Close(parse_id(id, line, atom)?))
            } else {
                Err(parse_err(
                    line,
                    format!("malformed coreference atom {atom:?}"),
                ))
            }
        })
        .collect()
}

struct Row {
    columns: Vec<String>,
    token: String,
    line: usize,
    atoms: Vec<Atom>,
}

#[derive(Default)]
struct DocBuilder {
    key: String,
    begin_line: usize,
    width: Option<usize>,
    sentences: Vec<Vec<Row>>,
    current: Vec<Row>,
}

impl DocBuilder {
    fn push_row(&mut self, text: &str, line: usize) -> Result<()> {
        let columns: Vec<&str> = text.split_whitespace().collect();
        if columns.len() < 3 {
            return Err(parse_err(
                line,
                format!("expected at least 3 columns, found {}", columns.len()),
            ));
        }
        match self.width {
            None => self.width = Some(columns.len()),
            Some(w) if w != columns.len() => {
                return Err(parse_err(
                    line,
                    format!(
                        "expected {w} columns like the rest of the document, found {}",
                        columns.len()
                    ),
                ))
            }
            Some(_) => {}
        }
        let token_col = if columns[0].parse::<u64>().is_ok() {
            1
        } else if columns.len() >= 5 {
            3
        } else {
            return Err(parse_err(
                line,
                "first column is not a word index and the row is too short for the OntoNotes layout",
            ));
        };
        let (coref, rest) = columns.split_last().expect("non-empty");
        self.current.push(Row {
            columns: rest.iter().map(|c| c.to_string()).collect(),
            token: columns[token_col].to_string(),
            line,
            atoms: parse_cell(coref, line)?,
        });
        Ok(())
    }

    fn end_sentence(&mut self) {
        if !self.current.is_empty() {
            self.sentences.push(std::mem::take(&mut self.current));
        }
    }

    fn finish(mut self, language: &str, end_line: usize) -> Result<Document> {
        self.end_sentence();

        let mut entities: BTreeMap<u64, BTreeSet<Span>> = BTreeMap::new();
        for (s, rows) in self.sentences.iter().enumerate() {
            let mut open: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
            for (t, row) in rows.iter().enumerate() {
                for atom in &row.atoms {
                    let (id, span) = match *atom {
                        Atom::Open(id) => {
                            if let Some((_, at)) = open.insert(id, (t, row.line)) {
                                return Err(parse_err(
                                    row.line,
                                    format!(
                                        "entity {id} opened again while still open from line {at}"
                                    ),
                                ));
                            }
                            continue;
                        }
                        Atom::Close(id) => match open.remove(&id) {
                            Some((start, _)) => (id, Span::new(s, start, t + 1)),
                            None => {
                                return Err(parse_err(
                                    row.line,
                                    format!("entity {id} closed without a matching open"),
                                ))
                            }
                        },
                        Atom::Single(id) => {
                            if open.contains_key(&id) {
                                return Err(parse_err(
                                    row.line,
                                    format!("entity {id} opened again while still open"),
                                ));
                            }
                            (id, Span::new(s, t, t + 1))
                        }
                    };
                    if !entities.entry(id).or_default().insert(span) {
                        return Err(parse_err(
                            row.line,
                            format!("duplicate mention {span} of entity {id}"),
                        ));
                    }
                }
            }
            if let Some((id, (_, at))) = open.into_iter().next() {
                let last = rows.last().map_or(end_line, |r| r.line);
                return Err(parse_err(
                    at,
                    format!("entity {id} opened here is never closed before the sentence ends at line {last}"),
                ));
            }
        }

        let plain = self.sentences.iter().all(|rows| {
            rows.iter()
                .enumerate()
                .all(|(t, row)| row.columns.len() == 2 && row.columns[0] == t.to_string())
        });
        let conll_columns = (!plain).then(|| {
            self.sentences
                .iter()
                .map(|rows| rows.iter().map(|r| r.columns.clone()).collect())
                .collect()
        });

        Ok(Document {
            doc_key: self.key,
            language: language.to_string(),
            sentences: self
                .sentences
                .into_iter()
                .map(|rows| rows.into_iter().map(|r| r.token).collect())
                .collect(),
            entities: entities
                .into_iter()
                .map(|(id, mentions)| Entity {
                    id: EntityId(id),
                    mentions,
                })
                .collect(),
            plural_links: Vec::new(),
            expanded: false,
            conll_columns,
        })
    }
}

/// Read every document in a CoNLL stream. CoNLL carries no language, so
/// all documents are tagged with `language`.
pub fn parse_conll<R: BufRead>(reader: R, language: &str) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut current: Option<DocBuilder> = None;
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line?;
        let text = line.trim_end_matches(['\r', '\n']);

        if let Some(rest) = text.strip_prefix(BEGIN) {
            if let Some(open) = &current {
                return Err(parse_err(
                    line_no,
                    format!(
                        "document {:?} from line {} was never ended",
                        open.key, open.begin_line
                    ),
                ));
            }
            current = Some(DocBuilder {
                key: rest.trim().to_string(),
                begin_line: line_no,
                ..Default::default()
            });
            continue;
        }
        if text.starts_with(END) {
            let builder = current
                .take()
                .ok_or_else(|| parse_err(line_no, "#end document without #begin document"))?;
            docs.push(builder.finish(language, line_no)?);
            continue;
        }

        match current.as_mut() {
            None if text.trim().is_empty() => {}
            None => return Err(parse_err(line_no, "content outside of a document")),
            Some(b) if text.trim().is_empty() => b.end_sentence(),
            Some(_) if text.starts_with('#') => {}
            Some(b) => b.push_row(text, line_no)?,
        }
    }

    if let Some(open) = current {
        return Err(parse_err(
            last_line,
            format!(
                "document {:?} from line {} was never ended",
                open.key, open.begin_line
            ),
        ));
    }
    Ok(docs)
}

pub fn parse_conll_str(input: &str, language: &str) -> Result<Vec<Document>> {
    parse_conll(input.as_bytes(), language)
}

fn unrepresentable(doc: &Document, detail: String) -> Error {
    Error::Unrepresentable {
        doc_key: doc.doc_key.clone(),
        detail,
    }
}

fn cells(doc: &Document) -> Result<Vec<Vec<String>>> {
    // Per token: opens, singles, closes.
    type Slots = (Vec<(usize, u64)>, Vec<u64>, Vec<(usize, u64)>);
    let mut slots: Vec<Vec<Slots>> = doc
        .sentences
        .iter()
        .map(|s| vec![Default::default(); s.len()])
        .collect();

    for entity in &doc.entities {
        let mut last: Option<Span> = None;
        for span in &entity.mentions {
            if let Some(prev) = last {
                if prev.sentence == span.sentence && span.start < prev.end {
                    return Err(unrepresentable(
                        doc,
                        format!("{} has overlapping mentions {prev} and {span}", entity.id),
                    ));
                }
            }
            last = Some(*span);
            let row = slots
                .get_mut(span.sentence)
                .filter(|r| span.end <= r.len() && span.start < span.end)
                .ok_or_else(|| unrepresentable(doc, format!("span {span} out of bounds")))?;
            let id = entity.id.0;
            if span.len() == 1 {
                row[span.start].1.push(id);
            } else {
                row[span.start].0.push((span.end, id));
                row[span.end - 1].2.push((span.start, id));
            }
        }
    }

    Ok(slots
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(mut opens, mut singles, mut closes)| {
                    opens.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                    singles.sort_unstable();
                    closes.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                    let atoms: Vec<String> = opens
                        .iter()
                        .map(|(_, id)| format!("({id}"))
                        .chain(singles.iter().map(|id| format!("({id})")))
                        .chain(closes.iter().map(|(_, id)| format!("{id})")))
                        .collect();
                    if atoms.is_empty() {
                        "-".to_string()
                    } else {
                        atoms.join("|")
                    }
                })
                .collect()
        })
        .collect())
}

/// Write documents as CoNLL. Plural links cannot be expressed and are
/// dropped; one [`DroppedLinks`] record is returned per affected document.
pub fn write_conll<W: Write>(docs: &[Document], mut out: W) -> Result<Vec<DroppedLinks>> {
    let mut dropped = Vec::new();
    for doc in docs {
        if doc.expanded {
            return Err(unrepresentable(
                doc,
                "expanded documents have overlapping entities".to_string(),
            ));
        }
        if doc.doc_key.contains(['\n', '\r']) {
            return Err(unrepresentable(
                doc,
                "doc_key contains a line break".to_string(),
            ));
        }
        for (s, sentence) in doc.sentences.iter().enumerate() {
            if sentence.is_empty() {
                return Err(unrepresentable(doc, format!("sentence {s} is empty")));
            }
            if let Some(t) = sentence
                .iter()
                .position(|t| t.is_empty() || t.chars().any(char::is_whitespace))
            {
                return Err(unrepresentable(
                    doc,
                    format!("token {s}:{t} is empty or contains whitespace"),
                ));
            }
        }
        let cells = cells(doc)?;

        writeln!(out, "{BEGIN} {}", doc.doc_key)?;
        for (s, sentence) in doc.sentences.iter().enumerate() {
            for (t, token) in sentence.iter().enumerate() {
                match doc.conll_columns.as_ref().and_then(|c| c.get(s)?.get(t)) {
                    Some(columns) => writeln!(out, "{}\t{}", columns.join("\t"), cells[s][t])?,
                    None => writeln!(out, "{t}\t{token}\t{}", cells[s][t])?,
                }
            }
            writeln!(out)?;
        }
        writeln!(out, "{END}")?;

        if !doc.plural_links.is_empty() {
            dropped.push(DroppedLinks {
                doc_key: doc.doc_key.clone(),
                links: doc.plural_links.clone(),
            });
        }
    }
    Ok(dropped)
}

pub fn write_conll_string(docs: &[Document]) -> Result<(String, Vec<DroppedLinks>)> {
    let mut buf = Vec::new();
    let dropped = write_conll(docs, &mut buf)?;
    Ok((String::from_utf8(buf).expect("writer emits UTF-8"), dropped))
}
