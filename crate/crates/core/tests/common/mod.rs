//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work straight from the metric definitions over plain sets
//! and share no code with the library kernels.

#![allow(dead_code)]

use std::collections::BTreeSet;

use corefkit::model::{Document, Entity, PluralLink, Span};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Cluster = BTreeSet<Span>;

pub fn q(n: usize, d: usize) -> BigRational {
    BigRational::new((n as i64).into(), (d as i64).into())
}

/// A one-sentence document over `words` words whose entities are the given
/// groups of one-word mentions.
pub fn doc_from_groups(key: &str, words: usize, groups: &[Vec<usize>]) -> Document {
    let tokens: Vec<String> = (0..words).map(|i| format!("w{i}")).collect();
    let tokens: Vec<&str> = tokens.iter().map(String::as_str).collect();
    Document::new(key, "eng_Latn")
        .with_sentences(&[&tokens])
        .with_entities(
            groups
                .iter()
                .enumerate()
                .map(|(id, g)| Entity::new(id as u64, g.iter().map(|&w| Span::new(0, w, w + 1))))
                .collect(),
        )
}

/// Random disjoint entities: up to `max_mentions` one-word mentions drawn
/// from `universe` words, split into at most `max_entities` entities.
pub fn random_groups<R: Rng>(
    rng: &mut R,
    universe: usize,
    max_mentions: usize,
    max_entities: usize,
) -> Vec<Vec<usize>> {
    let n = rng.gen_range(1..=max_mentions.min(universe));
    let mut words: Vec<usize> = (0..universe).collect();
    words.shuffle(rng);
    words.truncate(n);
    let k = rng.gen_range(1..=max_entities.min(n));
    let mut groups = vec![Vec::new(); k];
    // Every entity gets one mention, the rest land anywhere.
    for (i, w) in words.into_iter().enumerate() {
        let g = if i < k { i } else { rng.gen_range(0..k) };
        groups[g].push(w);
    }
    groups
}

/// Like [`random_groups`], but with at least one entity of two or more
/// mentions, so that MUC is defined.
pub fn random_groups_linked<R: Rng>(
    rng: &mut R,
    universe: usize,
    max_mentions: usize,
    max_entities: usize,
) -> Vec<Vec<usize>> {
    loop {
        let g = random_groups(rng, universe, max_mentions, max_entities);
        if g.iter().any(|e| e.len() >= 2) {
            return g;
        }
    }
}

/// A random multi-sentence document with disjoint entities over spans of
/// varying width, optionally with plural links between entities.
pub fn random_document<R: Rng>(
    rng: &mut R,
    key: &str,
    language: &str,
    with_links: bool,
) -> Document {
    let n_sents = rng.gen_range(1..=4);
    let sentences: Vec<Vec<String>> = (0..n_sents)
        .map(|s| {
            (0..rng.gen_range(3..=10))
                .map(|w| format!("t{s}_{w}"))
                .collect()
        })
        .collect();
    let mut spans: BTreeSet<Span> = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=10) {
        let s = rng.gen_range(0..n_sents);
        let len = sentences[s].len();
        let start = rng.gen_range(0..len);
        let end = rng.gen_range(start + 1..=len.min(start + 3));
        spans.insert(Span::new(s, start, end));
    }
    let mut spans: Vec<Span> = spans.into_iter().collect();
    spans.shuffle(rng);
    let mut entities: Vec<Entity> = Vec::new();
    for span in spans {
        if entities.is_empty() || rng.gen_bool(0.4) {
            entities.push(Entity::new(entities.len() as u64 * 3 + 1, [span]));
        } else {
            let i = rng.gen_range(0..entities.len());
            entities[i].mentions.insert(span);
        }
    }
    let mut plural_links = Vec::new();
    if with_links && entities.len() >= 3 && rng.gen_bool(0.6) {
        let plural = rng.gen_range(0..entities.len());
        let anaphor = *entities[plural].mentions.iter().next().unwrap();
        let others: Vec<u64> = entities
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != plural)
            .map(|(_, e)| e.id.0)
            .collect();
        let take = rng.gen_range(2..=others.len());
        plural_links.push(PluralLink::new(anaphor, others.into_iter().take(take)));
    }
    let tokens: Vec<Vec<&str>> = sentences
        .iter()
        .map(|s| s.iter().map(String::as_str).collect())
        .collect();
    let tokens: Vec<&[&str]> = tokens.iter().map(Vec::as_slice).collect();
    Document::new(key, language)
        .with_sentences(&tokens)
        .with_entities(entities)
        .with_plural_links(plural_links)
}

pub fn clusters_of(doc: &Document) -> Vec<Cluster> {
    doc.entities.iter().map(|e| e.mentions.clone()).collect()
}

fn find<'a>(side: &'a [Cluster], m: &Span) -> Option<&'a Cluster> {
    side.iter().find(|c| c.contains(m))
}

fn ratio_or_zero(num: BigRational, den: BigRational) -> BigRational {
    if den.is_zero() {
        BigRational::zero()
    } else {
        num / den
    }
}

/// B³ recall by enumerating mentions: mean over key mentions of
/// |K_m ∩ R_m| / |K_m|.
pub fn b_cubed_recall_oracle(key: &[Cluster], response: &[Cluster]) -> BigRational {
    let mut num = BigRational::zero();
    let mut den = 0usize;
    for k in key {
        for m in k {
            den += 1;
            if let Some(r) = find(response, m) {
                num += q(k.intersection(r).count(), k.len());
            }
        }
    }
    ratio_or_zero(num, q(den, 1))
}

/// MUC recall by counting the links of a spanning tree of each key entity
/// that survive in the response: |k| minus the connected components of k
/// under response co-membership.
pub fn muc_recall_oracle(key: &[Cluster], response: &[Cluster]) -> BigRational {
    let (mut num, mut den) = (0usize, 0usize);
    for k in key {
        let members: Vec<&Span> = k.iter().collect();
        let mut parent: Vec<usize> = (0..members.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                if response
                    .iter()
                    .any(|r| r.contains(members[a]) && r.contains(members[b]))
                {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let components = (0..members.len())
            .filter(|&i| root(&mut parent, i) == i)
            .count();
        num += members.len() - components;
        den += members.len() - 1;
    }
    ratio_or_zero(q(num, 1), q(den, 1))
}

/// LEA recall by listing every link of every key entity. A singleton's
/// only link is to itself and is resolved by an identical response
/// singleton.
pub fn lea_recall_oracle(key: &[Cluster], response: &[Cluster]) -> BigRational {
    let mut num = BigRational::zero();
    let mut den = 0usize;
    for k in key {
        let members: Vec<&Span> = k.iter().collect();
        let mut links = Vec::new();
        if members.len() == 1 {
            links.push((members[0], members[0]));
        } else {
            for a in 0..members.len() {
                for b in a + 1..members.len() {
                    links.push((members[a], members[b]));
                }
            }
        }
        let resolved = links
            .iter()
            .filter(|(x, y)| {
                response.iter().any(|r| {
                    if x == y {
                        r.len() == 1 && r.contains(*x)
                    } else {
                        r.contains(*x) && r.contains(*y)
                    }
                })
            })
            .count();
        num += q(k.len() * resolved, links.len());
        den += k.len();
    }
    ratio_or_zero(num, q(den, 1))
}

pub fn phi4_oracle(k: &Cluster, r: &Cluster) -> BigRational {
    q(2 * k.intersection(r).count(), k.len() + r.len())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Best total weight of a one-to-one matching, trying every permutation
/// of the padded square grid.
pub fn brute_force_assignment(weights: &[Vec<BigRational>]) -> BigRational {
    let rows = weights.len();
    let cols = weights.first().map_or(0, Vec::len);
    let n = rows.max(cols);
    let cell = |i: usize, j: usize| {
        if i < rows && j < cols {
            weights[i][j].clone()
        } else {
            BigRational::zero()
        }
    };
    permutations(n)
        .into_iter()
        .map(|p| (0..n).map(|i| cell(i, p[i])).sum::<BigRational>())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// CEAF_e recall from the brute-force alignment.
pub fn ceaf_e_recall_oracle(key: &[Cluster], response: &[Cluster]) -> BigRational {
    let weights: Vec<Vec<BigRational>> = key
        .iter()
        .map(|k| response.iter().map(|r| phi4_oracle(k, r)).collect())
        .collect();
    ratio_or_zero(brute_force_assignment(&weights), q(key.len(), 1))
}

pub fn one() -> BigRational {
    BigRational::one()
}
