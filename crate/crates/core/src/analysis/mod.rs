//! End-to-end analysis of a quiver algebra: the two colocal-type decision
//! procedures, the lattice of subobject-closed subcategories computed both
//! ways, and cross-checks tying them together.

mod tau;
mod verify;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::LatticeError;
use crate::quiver::{ConditionReport, QuiverAlgebra, QuiverError, VertexId, VertexPathProfile};
use crate::strings::StringError;
use crate::young::box_count;

pub use tau::{tau_sets, verify_tau_equivalences, TauCheck, TauReport, TauSets};
pub use verify::{
    brute_force_lattice, check_string_invariants, check_union_property, structural_lattice,
    verify_main_theorem, verify_partition_m, MainTheoremResult, PartitionReport,
    StringInvariantReport, UnionReport,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(
        "internal error: conditions route says colocal = {conditions}, structural route says {structural}"
    )]
    RouteDisagreement { conditions: bool, structural: bool },
    #[error("{operation} requires {requirement}")]
    Precondition {
        operation: &'static str,
        requirement: &'static str,
    },
    #[error("lattices differ: brute force has {brute} elements, structural product {structural}")]
    NotIsomorphic { brute: String, structural: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Strings(#[from] StringError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn serialize_big_opt<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_none(),
    }
}

/// Shape `Y^{m,n}` contributed by one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorShape {
    pub vertex: VertexId,
    pub m: usize,
    pub n: usize,
}

impl FactorShape {
    pub fn label(&self) -> String {
        format!("Y^{{{},{}}}[{}]", self.m, self.n, self.vertex)
    }
}

/// Verdicts and, for colocal algebras, the lattice shape.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub admissible: ConditionReport,
    pub string_algebra: ConditionReport,
    pub c1: ConditionReport,
    pub c2: ConditionReport,
    /// Only evaluated when C1 holds.
    pub c3: Option<ConditionReport>,
    pub kronecker: bool,
    /// Admissible, C1, C2 and C3.
    pub colocal_by_conditions: bool,
    /// Admissible string algebra with out-degree at most one.
    pub structural: ConditionReport,
    pub colocal: bool,
    pub profiles: Vec<VertexPathProfile>,
    pub factors: Vec<FactorShape>,
    #[serde(serialize_with = "serialize_big_opt")]
    pub lattice_size: Option<BigUint>,
}

/// `(admissible ∧ C1 ∧ C2 ∧ C3, C3 report)`.
pub fn colocal_by_conditions(qa: &QuiverAlgebra) -> (bool, Option<ConditionReport>) {
    let c1 = qa.check_c1();
    let c3 = c1.passed.then(|| qa.check_c3().expect("C1 holds"));
    let verdict = qa.is_admissible()
        && c1.passed
        && qa.check_c2().passed
        && c3.as_ref().is_some_and(|r| r.passed);
    (verdict, c3)
}

/// Per-vertex profiles and factor shapes `Y^{k+1,l+1}`, in vertex order.
pub fn factor_shapes(
    qa: &QuiverAlgebra,
) -> Result<(Vec<VertexPathProfile>, Vec<FactorShape>), AnalysisError> {
    let profiles = (0..qa.vertex_count())
        .map(|m| qa.vertex_path_profile(m))
        .collect::<Result<Vec<_>, _>>()?;
    let shapes = profiles
        .iter()
        .map(|p| FactorShape {
            vertex: p.vertex_id.clone(),
            m: p.k + 1,
            n: p.l + 1,
        })
        .collect();
    Ok((profiles, shapes))
}

/// Runs every check. Disagreement between the two colocal procedures is an
/// error, never a report state.
pub fn analyze(qa: &QuiverAlgebra) -> Result<AnalysisReport, AnalysisError> {
    let (by_conditions, c3) = colocal_by_conditions(qa);
    let structural = qa.is_colocal_type_structural();
    if by_conditions != structural.passed {
        return Err(AnalysisError::RouteDisagreement {
            conditions: by_conditions,
            structural: structural.passed,
        });
    }
    let colocal = structural.passed;
    let (profiles, factors, lattice_size) = if colocal {
        let (profiles, factors) = factor_shapes(qa)?;
        let size = factors.iter().map(|f| box_count(f.m, f.n)).product();
        (profiles, factors, Some(size))
    } else {
        (Vec::new(), Vec::new(), None)
    };
    Ok(AnalysisReport {
        admissible: qa.check_admissible(),
        string_algebra: qa.is_string_algebra(),
        c1: qa.check_c1(),
        c2: qa.check_c2(),
        c3,
        kronecker: qa.has_kronecker_subquiver(),
        colocal_by_conditions: by_conditions,
        structural,
        colocal,
        profiles,
        factors,
        lattice_size,
    })
}

impl AnalysisReport {
    /// Plain-text rendering, one fact per line.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            self.admissible.to_string(),
            self.string_algebra.to_string(),
            self.c1.to_string(),
            self.c2.to_string(),
            match &self.c3 {
                Some(r) => r.to_string(),
                None => "C3: not evaluated (C1 fails)".to_owned(),
            },
            format!(
                "Kronecker subquiver: {}",
                if self.kronecker { "yes" } else { "no" }
            ),
            self.structural.to_string(),
        ];
        for p in &self.profiles {
            lines.push(format!(
                "vertex {}: k = {}, l = {}, path_k = ({}), path_l = ({})",
                p.vertex_id,
                p.k,
                p.l,
                p.path_k_names.join(" "),
                p.path_l_names.join(" ")
            ));
        }
        match &self.lattice_size {
            Some(size) => {
                let shapes: Vec<String> = self.factors.iter().map(FactorShape::label).collect();
                lines.push(format!("factors: {}", shapes.join(" × ")));
                lines.push(format!("colocal: yes; lattice size {size}"));
            }
            None => lines.push("colocal: no".to_owned()),
        }
        lines.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver_spec;

    #[test]
    fn small_algebras() {
        let a2 = parse_quiver_spec("vertices: 1 2\narrow a: 1 -> 2").unwrap();
        let r = analyze(&a2).unwrap();
        assert!(r.colocal);
        assert_eq!(r.lattice_size, Some(BigUint::from(6u32)));
        assert!(r.to_text().ends_with("colocal: yes; lattice size 6\n"));

        let kr = parse_quiver_spec("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2").unwrap();
        let r = analyze(&kr).unwrap();
        assert!(!r.colocal && !r.c1.passed && r.kronecker && r.c3.is_none());
        assert_eq!(r.lattice_size, None);

        let lt = parse_quiver_spec("vertices: 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a a")
            .unwrap();
        let r = analyze(&lt).unwrap();
        assert_eq!(r.lattice_size, Some(BigUint::from(20u32)));
        let shapes: Vec<(usize, usize)> = r.factors.iter().map(|f| (f.m, f.n)).collect();
        assert_eq!(shapes, [(1, 1), (3, 2)]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["lattice_size"], "20");
        assert_eq!(json["profiles"][1]["path_k"], serde_json::json!(["b", "a"]));
    }

    #[test]
    fn empty_quiver_is_colocal() {
        let empty = parse_quiver_spec("").unwrap();
        let r = analyze(&empty).unwrap();
        assert!(r.colocal);
        assert_eq!(r.lattice_size, Some(BigUint::from(1u32)));
    }
}
