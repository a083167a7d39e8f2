//! Strings over a monomial quiver algebra and their string modules.
//!
//! A word `γ_1 γ_2 … γ_n` is written in composition order: consecutive letters
//! satisfy `s(γ_i) = e(γ_{i+1})`, with `s(a⁻¹) = e(a)` and `e(a⁻¹) = s(a)`. The
//! rightmost letter is traversed first. In text form inverse letters carry a
//! trailing `~` and trivial strings print as `e<vertex>`.

mod enumerate;
mod module;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::quiver::{QuiverAlgebra, VertexId};

pub use enumerate::{
    detect_bands, enumerate_strings, enumerate_strings_up_to, maximal_colocal_module, socle_class,
    socle_class_grid, submodule_poset, Enumeration,
};
pub use module::{Action, ModuleSummary, StringModuleData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("letters {position} and {next} do not form a walk")]
    WalkBreak { position: usize, next: usize },
    #[error("letters {position} and {next} backtrack along the same arrow")]
    Backtrack { position: usize, next: usize },
    #[error("relation `{relation}` occurs in the word")]
    ContainsRelation { relation: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("empty word; write a trivial string as e<vertex>")]
    Empty,
    #[error("strings longer than {cap} letters exist; the algebra has bands or is not admissible")]
    Unbounded { cap: usize },
    #[error("two distinct strings `{0}` and `{1}` are submodules of each other")]
    NotAntisymmetric(String, String),
    #[error("submodule relation is not transitive at `{0}` below `{1}`")]
    NotTransitive(String, String),
    #[error("{operation} requires {requirement}")]
    Precondition {
        operation: &'static str,
        requirement: &'static str,
    },
}

/// An arrow or its formal inverse.
///
/// Letters order by arrow index (arrows are indexed in name order), a direct
/// letter before the inverse of the same arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter {
            arrow,
            inverse: false,
        }
    }

    pub fn inverse_of(arrow: usize) -> Self {
        Letter {
            arrow,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn source(self, qa: &QuiverAlgebra) -> usize {
        let a = qa.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, qa: &QuiverAlgebra) -> usize {
        let a = qa.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// A string: either the trivial string `e_v` at a vertex or a nonempty
/// reduced walk avoiding relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringWord {
    letters: Vec<Letter>,
    /// Vertex of the first basis position `z_0`.
    base: usize,
}

/// Shorter words first, then letters lexicographically.
impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl StringWord {
    pub fn trivial(vertex: usize) -> Self {
        StringWord {
            letters: Vec::new(),
            base: vertex,
        }
    }

    /// Validates a nonempty letter sequence.
    pub fn new(qa: &QuiverAlgebra, letters: Vec<Letter>) -> Result<Self, StringError> {
        let Some(first) = letters.first() else {
            return Err(StringError::Empty);
        };
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[0].source(qa) != pair[1].target(qa) {
                return Err(StringError::WalkBreak {
                    position: i,
                    next: i + 1,
                });
            }
            if pair[0] == pair[1].inverted() {
                return Err(StringError::Backtrack {
                    position: i,
                    next: i + 1,
                });
            }
        }
        if let Some(rel) = first_relation(qa, &letters) {
            return Err(StringError::ContainsRelation {
                relation: qa.path_names(&rel).join(" "),
            });
        }
        Ok(StringWord {
            base: first.target(qa),
            letters,
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of letters; the module has `len() + 1` basis vectors.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `γ_n⁻¹ … γ_1⁻¹`.
    pub fn inverse(&self, qa: &QuiverAlgebra) -> Self {
        if self.is_trivial() {
            return self.clone();
        }
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverted()).collect();
        StringWord {
            base: letters[0].target(qa),
            letters,
        }
    }

    /// The smaller of the word and its inverse; `M(w) ≅ M(w⁻¹)`.
    pub fn canonical(&self, qa: &QuiverAlgebra) -> Self {
        let inv = self.inverse(qa);
        if inv.letters < self.letters {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self, qa: &QuiverAlgebra) -> bool {
        self.canonical(qa) == *self
    }

    /// Vertex `u(i)` of each basis position `z_0 … z_n`.
    pub fn positions(&self, qa: &QuiverAlgebra) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(self.base);
        out.extend(self.letters.iter().map(|l| l.source(qa)));
        out
    }

    /// Number of maximal blocks of direct or inverse letters.
    pub fn block_count(&self) -> usize {
        if self.is_trivial() {
            return 0;
        }
        1 + self
            .letters
            .windows(2)
            .filter(|w| w[0].inverse != w[1].inverse)
            .count()
    }

    pub fn to_text(&self, qa: &QuiverAlgebra) -> String {
        if self.is_trivial() {
            return format!("e{}", qa.vertex_id(self.base));
        }
        self.letters
            .iter()
            .map(|l| {
                let name = &qa.arrow(l.arrow).name;
                if l.inverse {
                    format!("{name}~")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `b~ a~ b` or `e<vertex>`. A single token `e…` naming an arrow
    /// is read as that arrow.
    pub fn parse(qa: &QuiverAlgebra, text: &str) -> Result<Self, StringError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens.as_slice() {
            if let Some(v) = single.strip_prefix('e') {
                if qa.arrow_by_name(single).is_none() {
                    return qa
                        .vertex_by_id(&VertexId::new(v))
                        .map(StringWord::trivial)
                        .ok_or_else(|| StringError::UnknownVertex(v.to_owned()));
                }
            }
        }
        let letters = tokens
            .iter()
            .map(|t| {
                let (name, inverse) = match t.strip_suffix('~') {
                    Some(n) => (n, true),
                    None => (*t, false),
                };
                qa.arrow_by_name(name)
                    .map(|arrow| Letter { arrow, inverse })
                    .ok_or_else(|| StringError::UnknownArrow(name.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        StringWord::new(qa, letters)
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<Letter>, base: usize) -> Self {
        StringWord { letters, base }
    }
}

/// Wrapper for printing a word with its quiver's arrow names.
pub struct DisplayWord<'a>(pub &'a QuiverAlgebra, pub &'a StringWord);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1.to_text(self.0))
    }
}

/// First relation found inside a direct or inverse run, as a traversal path.
///
/// A direct run `γ_i … γ_j` is the path `γ_j, …, γ_i` in traversal order; an
/// inverse run `γ_i⁻¹ … γ_j⁻¹` is the path `γ_i, …, γ_j`.
pub(crate) fn first_relation(qa: &QuiverAlgebra, letters: &[Letter]) -> Option<Vec<usize>> {
    let mut start = 0;
    while start < letters.len() {
        let inverse = letters[start].inverse;
        let end = letters[start..]
            .iter()
            .position(|l| l.inverse != inverse)
            .map_or(letters.len(), |p| start + p);
        let mut path: Vec<usize> = letters[start..end].iter().map(|l| l.arrow).collect();
        if !inverse {
            path.reverse();
        }
        for e in 2..=path.len() {
            let lo = e.saturating_sub(qa.max_relation_len());
            for s in lo..e - 1 {
                if qa.is_relation(&path[s..e]) {
                    return Some(path[s..e].to_vec());
                }
            }
        }
        start = end;
    }
    None
}
