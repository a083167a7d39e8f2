use std::collections::BTreeSet;

use serde::Serialize;

use super::AnalysisError;
use crate::quiver::{QuiverAlgebra, VertexId};
use crate::strings::{enumerate_strings, StringWord};

/// For a simple `S` with successor `S'`, the simples `T` with an arrow into
/// `S` that are the top of some module with socle `S'`:
/// `tau` of length exactly 3, `tau_prime` of length at least 3,
/// `tau_double_prime` of any length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauSets {
    pub simple: VertexId,
    pub successor: VertexId,
    pub tau: BTreeSet<VertexId>,
    pub tau_prime: BTreeSet<VertexId>,
    pub tau_double_prime: BTreeSet<VertexId>,
}

fn precondition(requirement: &'static str) -> AnalysisError {
    AnalysisError::Precondition {
        operation: "tau_sets",
        requirement,
    }
}

/// The three sets at vertex `s`. `tau` comes from length-2 paths; the other
/// two from the list of string modules, so the pieces are independent.
pub fn tau_sets(qa: &QuiverAlgebra, s: usize) -> Result<TauSets, AnalysisError> {
    let strings = enumerate_strings(qa)?;
    tau_sets_with(qa, s, &strings)
}

pub(crate) fn tau_sets_with(
    qa: &QuiverAlgebra,
    s: usize,
    strings: &[StringWord],
) -> Result<TauSets, AnalysisError> {
    if !qa.is_admissible() {
        return Err(precondition("an admissible algebra"));
    }
    if !qa.check_c1().passed {
        return Err(precondition("C1"));
    }
    let b = qa
        .out_arrows(s)
        .next()
        .ok_or_else(|| precondition("an arrow leaving the vertex"))?;
    let successor = qa.arrow(b).target;
    let id = |v: usize| qa.vertex_id(v).clone();

    let tau = qa
        .in_arrows(s)
        .filter(|&a| !qa.contains_relation(&[a, b]))
        .map(|a| id(qa.arrow(a).source))
        .collect();

    let feeds_s: BTreeSet<usize> = qa.in_arrows(s).map(|a| qa.arrow(a).source).collect();
    let mut tau_prime = BTreeSet::new();
    let mut tau_double_prime = BTreeSet::new();
    for w in strings {
        let m = qa.string_module(w);
        if !(m.has_simple_socle() && m.has_simple_top()) {
            continue;
        }
        let (socle, top) = (m.socle_vertices()[0], m.top_vertices()[0]);
        if socle != successor || !feeds_s.contains(&top) {
            continue;
        }
        tau_double_prime.insert(id(top));
        if m.length() >= 3 {
            tau_prime.insert(id(top));
        }
    }
    Ok(TauSets {
        simple: id(s),
        successor: id(successor),
        tau,
        tau_prime,
        tau_double_prime,
    })
}

/// One comparison: which equality was tested at which vertex, and whether
/// it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauCheck {
    pub sets: TauSets,
    pub tau_equals_prime: bool,
    /// `None` when `S = S'`, where no equality is claimed.
    pub tau_equals_double_prime: Option<bool>,
    pub nested: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub checks: Vec<TauCheck>,
}

impl TauReport {
    pub fn prime_holds(&self) -> bool {
        self.checks.iter().all(|c| c.tau_equals_prime && c.nested)
    }

    pub fn double_prime_holds(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.tau_equals_double_prime != Some(false))
    }

    pub fn passed(&self) -> bool {
        self.prime_holds() && self.double_prime_holds()
    }

    pub fn violations(&self) -> impl Iterator<Item = &TauCheck> {
        self.checks.iter().filter(|c| {
            !c.tau_equals_prime || !c.nested || c.tau_equals_double_prime == Some(false)
        })
    }
}

/// Compares the three sets at every vertex with an outgoing arrow.
pub fn verify_tau_equivalences(qa: &QuiverAlgebra) -> Result<TauReport, AnalysisError> {
    let strings = enumerate_strings(qa)?;
    let mut checks = Vec::new();
    for s in 0..qa.vertex_count() {
        if qa.out_degree(s) == 0 {
            continue;
        }
        let sets = tau_sets_with(qa, s, &strings)?;
        let nested =
            sets.tau.is_subset(&sets.tau_prime) && sets.tau_prime.is_subset(&sets.tau_double_prime);
        let distinct = sets.simple != sets.successor;
        checks.push(TauCheck {
            tau_equals_prime: sets.tau == sets.tau_prime,
            tau_equals_double_prime: distinct.then(|| sets.tau == sets.tau_double_prime),
            nested,
            sets,
        });
    }
    Ok(TauReport { checks })
}
