//! Test corpus of small monomial quiver algebras.
//!
//! The exhaustive part takes every quiver with at most `max_vertices`
//! vertices and `max_arrows` arrows, up to isomorphism, with every set of
//! relations of length 2 to `max_relation_len` in which no relation contains
//! another (a contained relation makes the longer one redundant). Relation
//! sets are capped in size, kept only when admissible, and deduplicated up
//! to isomorphism of the whole presentation. A seeded random supplement adds
//! larger algebras.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quiver::{parse_quiver_spec, ParseError, QuiverAlgebra, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_relation_len: usize,
    /// Largest number of relations in one presentation.
    pub max_relations: usize,
    /// Number of random admissible algebras to add.
    pub random: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_vertices: 3,
            max_arrows: 4,
            max_relation_len: 3,
            max_relations: 5,
            random: 200,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone)]
pub struct CorpusMember {
    pub id: String,
    pub source: Source,
    pub algebra: QuiverAlgebra,
}

/// One manifest entry: the member's id, origin and quiver file text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub source: Source,
    pub spec: String,
}

type Edge = (usize, usize);

/// Vertex count, arrows and relations of one generated presentation.
type Presentation = (usize, Vec<Edge>, Vec<Vec<usize>>);

/// Quivers on `n` vertices with `e` arrows, one per isomorphism class, as
/// sorted edge lists.
pub fn quivers_up_to_iso(n: usize, e: usize) -> Vec<Vec<Edge>> {
    let pairs: Vec<Edge> = (0..n).cartesian_product(0..n).collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut seen = BTreeSet::new();
    for edges in pairs.iter().copied().combinations_with_replacement(e) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m: Vec<Edge> = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
                m.sort_unstable();
                m
            })
            .min()
            .unwrap_or_default();
        seen.insert(canon);
    }
    seen.into_iter().collect()
}

fn arrow_name(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}

fn build(n: usize, edges: &[Edge], relations: Vec<Vec<usize>>) -> QuiverAlgebra {
    let vertices: Vec<VertexId> = (1..=n).map(|v| VertexId::from(v as u32)).collect();
    let arrows = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (arrow_name(i), vertices[s].clone(), vertices[t].clone()))
        .collect::<Vec<_>>();
    let bare = QuiverAlgebra::new(vertices, arrows, Vec::<Vec<String>>::new())
        .expect("generated quiver is well formed");
    bare.with_relations(relations)
        .expect("generated relations are paths")
}

/// Paths of length `2..=max_len`, as arrow index sequences in traversal
/// order, sorted by length then lexicographically.
fn candidate_paths(edges: &[Edge], max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..edges.len()).map(|a| vec![a]).collect();
    for _ in 2..=max_len {
        let mut next = Vec::new();
        for p in &layer {
            let end = edges[*p.last().unwrap()].1;
            for (b, &(s, _)) in edges.iter().enumerate() {
                if s == end {
                    let mut q = p.clone();
                    q.push(b);
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn is_subpath(short: &[usize], long: &[usize]) -> bool {
    short.len() <= long.len() && long.windows(short.len()).any(|w| w == short)
}

/// Closed paths of length 1 to 3, each listed from every starting arrow.
fn short_cycles(edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..edges.len())
        .filter(|&a| edges[a].0 == edges[a].1)
        .map(|a| vec![a])
        .collect();
    out.extend(
        candidate_paths(edges, 3)
            .into_iter()
            .filter(|p| edges[p[0]].0 == edges[*p.last().unwrap()].1),
    );
    out
}

/// Whether relation `r` occurs in some power of the closed path `c`.
fn kills_cycle(r: &[usize], c: &[usize]) -> bool {
    let copies = r.len().div_ceil(c.len()) + 1;
    let power: Vec<usize> = c.iter().copied().cycle().take(c.len() * copies).collect();
    is_subpath(r, &power)
}

/// Relation sets of at most `max` members, none inside another, that kill
/// every closed path of length at most 3 (a necessary condition for
/// admissibility). Loops can only be killed by their own powers, so a
/// branch stops once more loops remain alive than relations may be added.
fn antichains(edges: &[Edge], paths: &[Vec<usize>], max: usize) -> Vec<Vec<usize>> {
    let cycles = short_cycles(edges);
    let kills: Vec<FixedBitSet> = paths
        .iter()
        .map(|p| {
            let mut s = FixedBitSet::with_capacity(cycles.len());
            s.extend((0..cycles.len()).filter(|&c| kills_cycle(p, &cycles[c])));
            s
        })
        .collect();
    let loops: Vec<usize> = (0..cycles.len())
        .filter(|&c| cycles[c].len() == 1)
        .collect();

    struct Search<'a> {
        paths: &'a [Vec<usize>],
        kills: &'a [FixedBitSet],
        loops: &'a [usize],
        all: usize,
        max: usize,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, chosen: &mut Vec<usize>, killed: &FixedBitSet) {
            if killed.count_ones(..) == self.all {
                self.out.push(chosen.clone());
            }
            let alive_loops = self.loops.iter().filter(|&&c| !killed.contains(c)).count();
            if chosen.len() == self.max || alive_loops > self.max - chosen.len() {
                return;
            }
            for i in start..self.paths.len() {
                // paths are sorted by length, so only earlier ones can be inside
                if chosen
                    .iter()
                    .any(|&c| is_subpath(&self.paths[c], &self.paths[i]))
                {
                    continue;
                }
                let mut next = killed.clone();
                next.union_with(&self.kills[i]);
                chosen.push(i);
                self.go(i + 1, chosen, &next);
                chosen.pop();
            }
        }
    }
    let mut search = Search {
        paths,
        kills: &kills,
        loops: &loops,
        all: cycles.len(),
        max,
        out: Vec::new(),
    };
    search.go(
        0,
        &mut Vec::new(),
        &FixedBitSet::with_capacity(cycles.len()),
    );
    search.out
}

/// Smallest relabelling of a presentation over vertex permutations and
/// permutations of parallel arrows.
fn canonical_key(
    n: usize,
    edges: &[Edge],
    relations: &[Vec<usize>],
) -> (Vec<Edge>, Vec<Vec<usize>>) {
    let mut best: Option<(Vec<Edge>, Vec<Vec<usize>>)> = None;
    for sigma in (0..n).permutations(n) {
        let mapped: Vec<Edge> = edges.iter().map(|&(s, t)| (sigma[s], sigma[t])).collect();
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&a| mapped[a]);
        let sorted_edges: Vec<Edge> = order.iter().map(|&a| mapped[a]).collect();
        if best.as_ref().is_some_and(|b| sorted_edges > b.0) {
            continue;
        }
        // runs of parallel arrows may be permuted freely
        let groups: Vec<Vec<usize>> = order
            .iter()
            .copied()
            .chunk_by(|&a| mapped[a])
            .into_iter()
            .map(|(_, g)| g.collect())
            .collect();
        let choices = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
            .multi_cartesian_product();
        for choice in choices {
            let mut position = vec![0; edges.len()];
            for (new, &old) in choice.iter().flatten().enumerate() {
                position[old] = new;
            }
            let mut rels: Vec<Vec<usize>> = relations
                .iter()
                .map(|r| r.iter().map(|&a| position[a]).collect())
                .collect();
            rels.sort();
            let key = (sorted_edges.clone(), rels);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        if groups.is_empty() && best.as_ref().is_none_or(|b| sorted_edges < b.0) {
            best = Some((sorted_edges, Vec::new()));
        }
    }
    best.unwrap_or_default()
}

fn exhaustive(cfg: &CorpusConfig) -> Vec<CorpusMember> {
    let shapes: Vec<(usize, Vec<Edge>)> = (1..=cfg.max_vertices)
        .flat_map(|n| {
            (0..=cfg.max_arrows)
                .flat_map(move |e| quivers_up_to_iso(n, e).into_iter().map(move |q| (n, q)))
        })
        .collect();
    let per_shape: Vec<Vec<Presentation>> = shapes
        .par_iter()
        .map(|(n, edges)| {
            let paths = candidate_paths(edges, cfg.max_relation_len);
            let mut keys = BTreeSet::new();
            for set in antichains(edges, &paths, cfg.max_relations) {
                let rels: Vec<Vec<usize>> = set.iter().map(|&i| paths[i].clone()).collect();
                if !build(*n, edges, rels.clone()).is_admissible() {
                    continue;
                }
                keys.insert(canonical_key(*n, edges, &rels));
            }
            keys.into_iter().map(|(e, r)| (*n, e, r)).collect()
        })
        .collect();
    per_shape
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, (n, edges, rels))| CorpusMember {
            id: format!("q{i:05}"),
            source: Source::Exhaustive,
            algebra: build(n, &edges, rels),
        })
        .collect()
}

fn random_members(cfg: &CorpusConfig) -> Vec<CorpusMember> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < cfg.random && attempts < cfg.random * 1000 {
        attempts += 1;
        let n = rng.gen_range(3..=5);
        let e = rng.gen_range(n - 1..=n + 2);
        let mut edges: Vec<Edge> = (0..e)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        edges.sort_unstable();
        let paths = candidate_paths(&edges, cfg.max_relation_len);
        let k = rng.gen_range(0..=paths.len().min(4));
        let mut rels: Vec<Vec<usize>> = paths.choose_multiple(&mut rng, k).cloned().collect();
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for r in rels {
            if !kept.iter().any(|k| is_subpath(k, &r)) {
                kept.push(r);
            }
        }
        let qa = build(n, &edges, kept);
        if qa.is_admissible() {
            out.push(CorpusMember {
                id: format!("r{:04}", out.len()),
                source: Source::Random,
                algebra: qa,
            });
        }
    }
    out
}

/// The exhaustive corpus followed by the random supplement.
pub fn generate_corpus(cfg: &CorpusConfig) -> Vec<CorpusMember> {
    let mut members = exhaustive(cfg);
    members.extend(random_members(cfg));
    members
}

pub fn manifest(members: &[CorpusMember]) -> Vec<ManifestEntry> {
    members
        .iter()
        .map(|m| ManifestEntry {
            id: m.id.clone(),
            source: m.source,
            spec: m.algebra.to_spec(),
        })
        .collect()
}

pub fn write_manifest(members: &[CorpusMember]) -> String {
    serde_json::to_string_pretty(&manifest(members)).expect("manifest serializes") + "\n"
}

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("malformed manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("member {id}: {error}")]
    Spec { id: String, error: Box<ParseError> },
}

pub fn read_manifest(text: &str) -> Result<Vec<CorpusMember>, ManifestError> {
    let entries: Vec<ManifestEntry> = serde_json::from_str(text)?;
    entries
        .into_iter()
        .map(|e| {
            let algebra = parse_quiver_spec(&e.spec).map_err(|error| ManifestError::Spec {
                id: e.id.clone(),
                error: Box::new(error),
            })?;
            Ok(CorpusMember {
                id: e.id,
                source: e.source,
                algebra,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_counts_up_to_isomorphism() {
        // one vertex: e loops
        assert_eq!(quivers_up_to_iso(1, 3).len(), 1);
        // two vertices, one arrow: loop or edge
        assert_eq!(quivers_up_to_iso(2, 1).len(), 2);
        // two vertices, two arrows: two loops at one vertex, a loop at each,
        // loop with an arrow out, loop with an arrow in, parallel, 2-cycle
        assert_eq!(quivers_up_to_iso(2, 2).len(), 6);
    }

    #[test]
    fn antichain_enumeration_skips_contained_relations() {
        let edges = [(0, 0)];
        let paths = candidate_paths(&edges, 3);
        assert_eq!(paths, vec![vec![0, 0], vec![0, 0, 0]]);
        // the loop must die: {a a} or {a a a}
        assert_eq!(antichains(&edges, &paths, 3), vec![vec![0], vec![1]]);
        let cycle = [(0, 1), (1, 0)];
        let paths = candidate_paths(&cycle, 3);
        let sets = antichains(&cycle, &paths, 1);
        assert!(sets.iter().all(|s| s.len() == 1));
        assert_eq!(sets.len(), paths.len());
    }

    #[test]
    fn canonical_keys_identify_relabelled_presentations() {
        // 1 -> 2 -> 3 with relation, written with vertices swapped
        let a = canonical_key(3, &[(0, 1), (1, 2)], &[vec![0, 1]]);
        let b = canonical_key(3, &[(1, 0), (2, 1)], &[vec![1, 0]]);
        assert_eq!(a, b);
        // parallel arrows: the relation may use either
        let c = canonical_key(2, &[(0, 1), (0, 1), (1, 1)], &[vec![0, 2]]);
        let d = canonical_key(2, &[(0, 1), (0, 1), (1, 1)], &[vec![1, 2]]);
        assert_eq!(c, d);
        let e = canonical_key(2, &[(0, 1), (0, 1), (1, 1)], &[vec![0, 2], vec![1, 2]]);
        assert_ne!(c, e);
    }

    #[test]
    fn small_corpus_round_trips_through_manifest() {
        let cfg = CorpusConfig {
            max_vertices: 2,
            max_arrows: 2,
            max_relation_len: 2,
            max_relations: 2,
            random: 5,
            seed: 1,
        };
        let corpus = generate_corpus(&cfg);
        assert!(corpus.iter().all(|m| m.algebra.is_admissible()));
        assert_eq!(
            corpus.iter().filter(|m| m.source == Source::Random).count(),
            5
        );
        let back = read_manifest(&write_manifest(&corpus)).unwrap();
        assert_eq!(back.len(), corpus.len());
        for (a, b) in corpus.iter().zip(&back) {
            assert_eq!(a.algebra.to_spec(), b.algebra.to_spec());
        }
        assert_eq!(generate_corpus(&cfg).len(), corpus.len());
    }
}
