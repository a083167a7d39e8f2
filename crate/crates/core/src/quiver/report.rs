use std::fmt;

use serde::Serialize;

use super::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Admissible,
    StringAlgebra,
    C1,
    C2,
    C3,
    Colocal,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Admissible => "admissible",
            Condition::StringAlgebra => "string algebra",
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
            Condition::Colocal => "colocal",
        })
    }
}

/// Evidence attached to a failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A closed walk (traversal order) none of whose powers contains a
    /// relation.
    RelationFreeCycle { arrows: Vec<String> },
    /// Too many arrows start at `vertex`.
    OutDegree {
        vertex: VertexId,
        arrows: Vec<String>,
    },
    /// Too many arrows end at `vertex`.
    InDegree {
        vertex: VertexId,
        arrows: Vec<String>,
    },
    /// Several arrows `γ` make `γ` then `arrow` relation-free.
    Predecessors {
        vertex: VertexId,
        arrow: String,
        predecessors: Vec<String>,
    },
    /// Several arrows `β` make `arrow` then `β` relation-free.
    Successors {
        vertex: VertexId,
        arrow: String,
        successors: Vec<String>,
    },
    /// A string-algebra axiom (1 to 4) failed with the inner witness.
    Axiom { axiom: u8, witness: Box<Witness> },
    /// A sub-check of a compound condition failed.
    Failed {
        condition: Condition,
        witness: Box<Witness>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RelationFreeCycle { arrows } => {
                write!(f, "relation-free cycle ({})", arrows.join(" "))
            }
            Witness::OutDegree { vertex, arrows } => write!(
                f,
                "{} arrows start at {vertex}: {}",
                arrows.len(),
                arrows.join(", ")
            ),
            Witness::InDegree { vertex, arrows } => write!(
                f,
                "{} arrows end at {vertex}: {}",
                arrows.len(),
                arrows.join(", ")
            ),
            Witness::Predecessors {
                vertex,
                arrow,
                predecessors,
            } => write!(
                f,
                "at {vertex}, {} relation-free predecessors of {arrow}: {}",
                predecessors.len(),
                predecessors.join(", ")
            ),
            Witness::Successors {
                vertex,
                arrow,
                successors,
            } => write!(
                f,
                "at {vertex}, {} relation-free successors of {arrow}: {}",
                successors.len(),
                successors.join(", ")
            ),
            Witness::Axiom { axiom, witness } => write!(f, "axiom {axiom}: {witness}"),
            Witness::Failed { condition, witness } => write!(f, "{condition}: {witness}"),
        }
    }
}

/// Verdict of one condition. `passed` holds exactly when `witnesses` is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl ConditionReport {
    pub fn from_witnesses(condition: Condition, witnesses: Vec<Witness>) -> Self {
        ConditionReport {
            condition,
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// `C1: pass` or `C1: fail [w1; w2]`.
impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "{}: pass", self.condition);
        }
        write!(f, "{}: fail [", self.condition)?;
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}
