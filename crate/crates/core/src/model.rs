//! Documents, mentions, entities and split-antecedent links.
//!
//! A [`Document`] holds pre-tokenized sentences plus the coreference
//! annotation on top of them. Mentions are sentence-local half-open word
//! spans. Entities are sets of mentions. A [`PluralLink`] marks a plural
//! anaphor ("they", "both") whose referent is the union of two or more
//! entities.
//!
//! Everything here is a plain value; the structural transforms
//! ([`expand_split_antecedents`], [`strip_singletons`]) return new
//! documents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-open word span `[start, end)` inside one sentence.
///
/// Ordering is discourse order: by sentence, then start, then end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(sentence: usize, start: usize, end: usize) -> Self {
        Span {
            sentence,
            start,
            end,
        }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Word indices covered by the span.
    pub fn words(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[{},{})", self.sentence, self.start, self.end)
    }
}

// Serialized as a compact `[sentence, start, end]` triple.
impl Serialize for Span {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.sentence, self.start, self.end].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Span {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [sentence, start, end] = <[usize; 3]>::deserialize(d)?;
        Ok(Span {
            sentence,
            start,
            end,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(pub u64);

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    pub mentions: BTreeSet<Span>,
}

impl Entity {
    pub fn new(id: u64, mentions: impl IntoIterator<Item = Span>) -> Self {
        Entity {
            id: EntityId(id),
            mentions: mentions.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mentions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mentions.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.mentions.len() == 1
    }
}

/// A plural anaphor together with the entities it jointly refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluralLink {
    pub anaphor: Span,
    #[serde(rename = "antecedents")]
    pub antecedent_entities: BTreeSet<EntityId>,
}

impl PluralLink {
    pub fn new(anaphor: Span, antecedents: impl IntoIterator<Item = u64>) -> Self {
        PluralLink {
            anaphor,
            antecedent_entities: antecedents.into_iter().map(EntityId).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_key: String,
    pub language: String,
    pub sentences: Vec<Vec<String>>,
    pub entities: Vec<Entity>,
    #[serde(default)]
    pub plural_links: Vec<PluralLink>,
    /// Set once split antecedents have been folded into their antecedent
    /// entities; entities may overlap afterwards.
    #[serde(default)]
    pub expanded: bool,
    /// Non-coreference CoNLL columns, per sentence and token, kept for
    /// round-tripping. Absent for documents that did not come from CoNLL.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conll_columns: Option<Vec<Vec<Vec<String>>>>,
}

impl Document {
    pub fn new(doc_key: impl Into<String>, language: impl Into<String>) -> Self {
        Document {
            doc_key: doc_key.into(),
            language: language.into(),
            sentences: Vec::new(),
            entities: Vec::new(),
            plural_links: Vec::new(),
            expanded: false,
            conll_columns: None,
        }
    }

    pub fn with_sentences<S: AsRef<str>>(mut self, sentences: &[&[S]]) -> Self {
        self.sentences = sentences
            .iter()
            .map(|s| s.iter().map(|t| t.as_ref().to_string()).collect())
            .collect();
        self
    }

    pub fn with_entities(mut self, entities: Vec<Entity>) -> Self {
        self.entities = entities;
        self
    }

    pub fn with_plural_links(mut self, links: Vec<PluralLink>) -> Self {
        self.plural_links = links;
        self
    }

    pub fn entity(&self, id: EntityId) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id == id)
    }

    /// First entity (in list order) containing `span`.
    pub fn entity_of(&self, span: &Span) -> Option<&Entity> {
        self.entities.iter().find(|e| e.mentions.contains(span))
    }

    /// Distinct mention spans over all entities.
    pub fn unique_mentions(&self) -> BTreeSet<Span> {
        self.entities
            .iter()
            .flat_map(|e| e.mentions.iter().copied())
            .collect()
    }

    /// Sum of entity sizes; differs from the unique mention count only when
    /// entities overlap.
    pub fn membership_count(&self) -> usize {
        self.entities.iter().map(Entity::len).sum()
    }

    /// Sort entities by id and plural links by anaphor, the order every
    /// reader produces.
    pub fn normalize(&mut self) {
        self.entities.sort_by_key(|e| e.id);
        self.plural_links.sort_by(|a, b| {
            (a.anaphor, &a.antecedent_entities).cmp(&(b.anaphor, &b.antecedent_entities))
        });
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }
}

/// One broken invariant, with enough coordinates to find it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptySpan {
        entity: EntityId,
        span: Span,
    },
    SentenceOutOfRange {
        entity: EntityId,
        span: Span,
        sentences: usize,
    },
    SpanOutOfBounds {
        entity: EntityId,
        span: Span,
        sentence_len: usize,
    },
    EmptyEntity {
        entity: EntityId,
    },
    DuplicateEntityId {
        entity: EntityId,
    },
    SharedMention {
        span: Span,
        first: EntityId,
        second: EntityId,
    },
    TooFewAntecedents {
        anaphor: Span,
        count: usize,
    },
    DanglingAntecedent {
        anaphor: Span,
        entity: EntityId,
    },
    UnannotatedAnaphor {
        anaphor: Span,
    },
    SelfAntecedent {
        anaphor: Span,
        entity: EntityId,
    },
    ColumnShapeMismatch {
        sentence: usize,
    },
}

impl Violation {
    /// Violations that an expanded document is allowed to have.
    pub fn is_permitted_overlap(&self) -> bool {
        matches!(self, Violation::SharedMention { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptySpan { entity, span } => write!(f, "{entity}: empty span {span}"),
            SentenceOutOfRange {
                entity,
                span,
                sentences,
            } => write!(
                f,
                "{entity}: span {span} references a missing sentence (document has {sentences})"
            ),
            SpanOutOfBounds {
                entity,
                span,
                sentence_len,
            } => write!(
                f,
                "{entity}: span {span} is out of bounds (sentence has {sentence_len} words)"
            ),
            EmptyEntity { entity } => write!(f, "{entity}: entity has no mentions"),
            DuplicateEntityId { entity } => write!(f, "{entity}: duplicate entity id"),
            SharedMention {
                span,
                first,
                second,
            } => write!(f, "span {span} belongs to both {first} and {second}"),
            TooFewAntecedents { anaphor, count } => write!(
                f,
                "plural link at {anaphor}: needs at least 2 antecedent entities, has {count}"
            ),
            DanglingAntecedent { anaphor, entity } => write!(
                f,
                "plural link at {anaphor}: antecedent {entity} does not exist"
            ),
            UnannotatedAnaphor { anaphor } => {
                write!(
                    f,
                    "plural link at {anaphor}: anaphor is not a mention of any entity"
                )
            }
            SelfAntecedent { anaphor, entity } => write!(
                f,
                "plural link at {anaphor}: anaphor's own entity {entity} is listed as antecedent"
            ),
            ColumnShapeMismatch { sentence } => {
                write!(
                    f,
                    "sentence {sentence}: CoNLL column rows do not match tokens"
                )
            }
        }
    }
}

/// Every invariant violation in `doc`. An empty list means the document is
/// valid.
pub fn validate_document(doc: &Document) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen_ids = BTreeSet::new();
    let mut owner: BTreeMap<Span, EntityId> = BTreeMap::new();

    for entity in &doc.entities {
        if !seen_ids.insert(entity.id) {
            out.push(Violation::DuplicateEntityId { entity: entity.id });
        }
        if entity.mentions.is_empty() {
            out.push(Violation::EmptyEntity { entity: entity.id });
        }
        for span in &entity.mentions {
            if span.is_empty() {
                out.push(Violation::EmptySpan {
                    entity: entity.id,
                    span: *span,
                });
            }
            match doc.sentences.get(span.sentence) {
                None => out.push(Violation::SentenceOutOfRange {
                    entity: entity.id,
                    span: *span,
                    sentences: doc.sentences.len(),
                }),
                Some(words) if span.end > words.len() => out.push(Violation::SpanOutOfBounds {
                    entity: entity.id,
                    span: *span,
                    sentence_len: words.len(),
                }),
                Some(_) => {}
            }
            match owner.get(span) {
                Some(first) if !doc.expanded => out.push(Violation::SharedMention {
                    span: *span,
                    first: *first,
                    second: entity.id,
                }),
                Some(_) => {}
                None => {
                    owner.insert(*span, entity.id);
                }
            }
        }
    }

    for link in &doc.plural_links {
        if link.antecedent_entities.len() < 2 {
            out.push(Violation::TooFewAntecedents {
                anaphor: link.anaphor,
                count: link.antecedent_entities.len(),
            });
        }
        for id in &link.antecedent_entities {
            if !seen_ids.contains(id) {
                out.push(Violation::DanglingAntecedent {
                    anaphor: link.anaphor,
                    entity: *id,
                });
            }
        }
        match owner.get(&link.anaphor) {
            None => out.push(Violation::UnannotatedAnaphor {
                anaphor: link.anaphor,
            }),
            Some(own) if !doc.expanded && link.antecedent_entities.contains(own) => {
                out.push(Violation::SelfAntecedent {
                    anaphor: link.anaphor,
                    entity: *own,
                })
            }
            Some(_) => {}
        }
    }

    if let Some(columns) = &doc.conll_columns {
        for (i, sentence) in doc.sentences.iter().enumerate() {
            if columns.get(i).map(Vec::len) != Some(sentence.len()) {
                out.push(Violation::ColumnShapeMismatch { sentence: i });
            }
        }
        if columns.len() != doc.sentences.len() {
            out.push(Violation::ColumnShapeMismatch {
                sentence: doc.sentences.len().min(columns.len()),
            });
        }
    }

    out
}

/// Fold every split antecedent into the entities it refers to.
///
/// For each plural link, all mentions of the entity holding the anaphor are
/// added to each antecedent entity, and that plural entity is removed.
/// Links are applied in one pass in document order using the mentions the
/// plural entities had before expansion; nothing is recursed. A plural
/// entity that is itself an antecedent of another link keeps existing so
/// that link has somewhere to land.
///
/// The plural links are consumed. Documents without plural links are
/// returned unchanged.
pub fn expand_split_antecedents(doc: &Document) -> Result<Document> {
    if doc.expanded {
        return Err(Error::AlreadyExpanded(doc.doc_key.clone()));
    }
    if doc.plural_links.is_empty() {
        return Ok(doc.clone());
    }

    let mut links = doc.plural_links.clone();
    links.sort_by_key(|l| l.anaphor);

    let index: BTreeMap<EntityId, usize> = doc
        .entities
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, i))
        .collect();
    let antecedent_ids: BTreeSet<EntityId> = links
        .iter()
        .flat_map(|l| l.antecedent_entities.iter().copied())
        .collect();

    let mut entities = doc.entities.clone();
    let mut dissolved = BTreeSet::new();
    for link in &links {
        let plural = doc
            .entity_of(&link.anaphor)
            .ok_or_else(|| Error::Dangling {
                doc_key: doc.doc_key.clone(),
                detail: format!("anaphor {} is not a mention of any entity", link.anaphor),
            })?;
        for id in &link.antecedent_entities {
            let &slot = index.get(id).ok_or_else(|| Error::Dangling {
                doc_key: doc.doc_key.clone(),
                detail: format!("plural link at {} names missing entity {id}", link.anaphor),
            })?;
            entities[slot]
                .mentions
                .extend(plural.mentions.iter().copied());
        }
        if !antecedent_ids.contains(&plural.id) {
            dissolved.insert(plural.id);
        }
    }
    entities.retain(|e| !dissolved.contains(&e.id));

    Ok(Document {
        entities,
        plural_links: Vec::new(),
        expanded: true,
        ..doc.clone()
    })
}

/// Drop single-mention entities, along with any plural-link references to
/// them. Links left with fewer than two antecedents, or whose anaphor lost
/// its entity, are removed.
pub fn strip_singletons(doc: &Document) -> Document {
    let removed: BTreeSet<EntityId> = doc
        .entities
        .iter()
        .filter(|e| e.is_singleton())
        .map(|e| e.id)
        .collect();
    let entities: Vec<Entity> = doc
        .entities
        .iter()
        .filter(|e| !removed.contains(&e.id))
        .cloned()
        .collect();
    let kept: BTreeSet<Span> = entities
        .iter()
        .flat_map(|e| e.mentions.iter().copied())
        .collect();
    let plural_links = doc
        .plural_links
        .iter()
        .filter_map(|link| {
            let antecedent_entities: BTreeSet<EntityId> = link
                .antecedent_entities
                .difference(&removed)
                .copied()
                .collect();
            (antecedent_entities.len() >= 2 && kept.contains(&link.anaphor)).then_some(PluralLink {
                anaphor: link.anaphor,
                antecedent_entities,
            })
        })
        .collect();
    Document {
        entities,
        plural_links,
        ..doc.clone()
    }
}
