//! Quivers with monomial relations.
//!
//! A [`QuiverAlgebra`] is the presentation `kQ/I` of a path algebra modulo an
//! ideal generated by paths. Relations are stored in traversal order: the
//! first arrow of a relation is the first one applied.

mod conditions;
mod parse;
mod report;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use conditions::{ExtMatrix, VertexPathProfile};
pub use parse::{parse_quiver_spec, ParseError, ParseErrorKind};
pub use report::{Condition, ConditionReport, Witness};

/// Identifier of a vertex as written in a quiver file.
///
/// Identifiers that are plain non-negative integers compare numerically and
/// sort before symbolic names, so `2 < 10 < x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u128> {
        if self.0.is_empty() || !self.0.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        self.0.parse().ok()
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<u32> for VertexId {
    fn from(n: u32) -> Self {
        VertexId(n.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    /// Index of the source vertex.
    pub source: usize,
    /// Index of the target vertex.
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(VertexId),
    #[error("arrow `{arrow}` uses undeclared vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: VertexId },
    #[error("arrow `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error(
        "relation is not a path: `{first}` ends at `{end}` but `{second}` starts at `{start}`"
    )]
    NotComposable {
        first: String,
        end: VertexId,
        second: String,
        start: VertexId,
    },
    #[error("relation `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("relation `{0}` listed twice")]
    DuplicateRelation(String),
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(VertexId),
    #[error("{operation} requires {requirement}")]
    Precondition {
        operation: &'static str,
        requirement: &'static str,
    },
}

/// A finite quiver with a set of zero relations.
///
/// Vertices are kept in ascending identifier order and arrows in ascending
/// name order, so vertex and arrow indices are stable for a given input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverAlgebra {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    vertex_index: HashMap<VertexId, usize>,
    arrow_index: HashMap<String, usize>,
    relation_set: HashSet<Vec<usize>>,
    max_relation_len: usize,
}

impl QuiverAlgebra {
    /// Builds and validates a presentation. Relations are arrow-name paths in
    /// traversal order.
    pub fn new<V, A, R>(vertices: V, arrows: A, relations: R) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        A: IntoIterator<Item = (String, VertexId, VertexId)>,
        R: IntoIterator<Item = Vec<String>>,
    {
        let mut vertices: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuiverError::DuplicateVertex(w[0].clone()));
        }
        let vertex_index: HashMap<VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();

        let mut raw: Vec<(String, VertexId, VertexId)> = arrows.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(QuiverError::DuplicateArrow(w[0].0.clone()));
        }
        let mut arrow_list = Vec::with_capacity(raw.len());
        for (name, s, t) in raw {
            let lookup = |v: &VertexId| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownVertex {
                        arrow: name.clone(),
                        vertex: v.clone(),
                    })
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            arrow_list.push(Arrow {
                name,
                source,
                target,
            });
        }
        let arrow_index: HashMap<String, usize> = arrow_list
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), i))
            .collect();

        let mut qa = QuiverAlgebra {
            vertices,
            arrows: arrow_list,
            relations: Vec::new(),
            vertex_index,
            arrow_index,
            relation_set: HashSet::new(),
            max_relation_len: 0,
        };
        let mut rels = Vec::new();
        for names in relations {
            rels.push(qa.resolve_relation(&names)?);
        }
        qa.set_relations(rels)?;
        Ok(qa)
    }

    /// Same quiver with a different relation set (arrow indices, traversal
    /// order).
    pub fn with_relations(&self, relations: Vec<Vec<usize>>) -> Result<Self, QuiverError> {
        let mut qa = self.clone();
        qa.set_relations(relations)?;
        Ok(qa)
    }

    fn resolve_relation(&self, names: &[String]) -> Result<Vec<usize>, QuiverError> {
        names
            .iter()
            .map(|n| {
                self.arrow_index
                    .get(n)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownArrow(n.clone()))
            })
            .collect()
    }

    fn set_relations(&mut self, mut relations: Vec<Vec<usize>>) -> Result<(), QuiverError> {
        for rel in &relations {
            if rel.len() < 2 {
                return Err(QuiverError::RelationTooShort(self.path_string(rel)));
            }
            for w in rel.windows(2) {
                let (a, b) = (&self.arrows[w[0]], &self.arrows[w[1]]);
                if a.target != b.source {
                    return Err(QuiverError::NotComposable {
                        first: a.name.clone(),
                        end: self.vertices[a.target].clone(),
                        second: b.name.clone(),
                        start: self.vertices[b.source].clone(),
                    });
                }
            }
        }
        relations.sort();
        if let Some(w) = relations.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuiverError::DuplicateRelation(self.path_string(&w[0])));
        }
        self.max_relation_len = relations.iter().map(Vec::len).max().unwrap_or(0);
        self.relation_set = relations.iter().cloned().collect();
        self.relations = relations;
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_by_id(&self, id: &VertexId) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    /// Relations as arrow-index paths in traversal order, sorted.
    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn max_relation_len(&self) -> usize {
        self.max_relation_len
    }

    pub fn vertex_id(&self, v: usize) -> &VertexId {
        &self.vertices[v]
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_arrows(v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arrows(v).count()
    }

    pub fn is_relation(&self, path: &[usize]) -> bool {
        self.relation_set.contains(path)
    }

    /// Whether some relation occurs in `path` (traversal order) as a
    /// contiguous subpath.
    pub fn contains_relation(&self, path: &[usize]) -> bool {
        (1..=path.len()).any(|end| self.relation_ends_at(&path[..end]))
    }

    /// Whether some relation is a suffix of `path`.
    pub fn relation_ends_at(&self, path: &[usize]) -> bool {
        let longest = self.max_relation_len.min(path.len());
        (2..=longest).any(|len| self.relation_set.contains(&path[path.len() - len..]))
    }

    /// Whether `path` is a composable sequence of arrows in traversal order.
    pub fn is_path(&self, path: &[usize]) -> bool {
        path.windows(2)
            .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn path_names(&self, path: &[usize]) -> Vec<String> {
        path.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }

    fn path_string(&self, path: &[usize]) -> String {
        self.path_names(path).join(" ")
    }

    /// The presentation in the quiver file format accepted by
    /// [`parse_quiver_spec`].
    pub fn to_spec(&self) -> String {
        let mut out = String::new();
        let ids: Vec<&str> = self.vertices.iter().map(VertexId::as_str).collect();
        out.push_str("vertices:");
        for id in ids {
            out.push(' ');
            out.push_str(id);
        }
        out.push('\n');
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for r in &self.relations {
            out.push_str(&format!("relation {}\n", self.path_string(r)));
        }
        out
    }

    /// Vertices (indices) touched by at least one arrow, in ascending order.
    pub fn used_vertices(&self) -> BTreeSet<usize> {
        self.arrows
            .iter()
            .flat_map(|a| [a.source, a.target])
            .collect()
    }
}
