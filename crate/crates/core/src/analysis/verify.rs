use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{factor_shapes, serialize_big, AnalysisError, FactorShape};
use crate::lattice::{
    are_isomorphic, downset_lattice, product, Factor, FactoredLattice, FiniteLattice, IsoWitness,
    MaterializedLattice,
};
use crate::quiver::{QuiverAlgebra, VertexId};
use crate::strings::{enumerate_strings, socle_class_grid, submodule_poset, StringWord};

fn require_colocal(qa: &QuiverAlgebra, operation: &'static str) -> Result<(), AnalysisError> {
    if qa.is_colocal_type_structural().passed {
        Ok(())
    } else {
        Err(AnalysisError::Precondition {
            operation,
            requirement: "an algebra of colocal type",
        })
    }
}

/// Down-sets of the submodule poset of the indecomposables, each element a
/// set of strings. Only sound for colocal type, where every monomorphism
/// into a direct sum lands in one summand.
pub fn brute_force_lattice(
    qa: &QuiverAlgebra,
    guard: usize,
) -> Result<MaterializedLattice, AnalysisError> {
    require_colocal(qa, "brute_force_lattice")?;
    let strings = enumerate_strings(qa)?;
    let poset = submodule_poset(qa, &strings)?;
    Ok(downset_lattice(&poset, guard)?)
}

/// `∏ Y^{k_m+1, l_m+1}` over the vertices in order, kept factored.
pub fn structural_lattice(qa: &QuiverAlgebra) -> Result<FactoredLattice, AnalysisError> {
    require_colocal(qa, "structural_lattice")?;
    let (_, shapes) = factor_shapes(qa)?;
    Ok(product(
        shapes
            .iter()
            .map(|s| Factor::young(s.label(), s.m, s.n))
            .collect(),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct MainTheoremResult {
    pub brute_size: usize,
    #[serde(serialize_with = "serialize_big")]
    pub structural_size: BigUint,
    pub factors: Vec<FactorShape>,
    /// Strings matched to cells of the Young factors.
    pub witness: IsoWitness,
}

/// Builds both lattices and demands an isomorphism between them.
pub fn verify_main_theorem(
    qa: &QuiverAlgebra,
    guard: usize,
) -> Result<MainTheoremResult, AnalysisError> {
    let brute = brute_force_lattice(qa, guard)?;
    let structural = structural_lattice(qa)?;
    let (_, factors) = factor_shapes(qa)?;
    let brute_size = brute.len();
    let structural_size = structural.size();
    let witness = are_isomorphic(
        &FiniteLattice::Materialized(brute),
        &FiniteLattice::Factored(structural),
        guard,
    )?
    .ok_or_else(|| AnalysisError::NotIsomorphic {
        brute: brute_size.to_string(),
        structural: structural_size.to_string(),
    })?;
    Ok(MainTheoremResult {
        brute_size,
        structural_size,
        factors,
        witness,
    })
}

/// The strings with socle at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleClass {
    pub vertex: VertexId,
    pub k: usize,
    pub l: usize,
    pub strings: Vec<String>,
    /// `|class| = (k+1)(l+1)`.
    pub size_matches: bool,
    /// The class is exactly the set of truncations of the maximal word.
    pub matches_grid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub classes: Vec<SocleClass>,
    /// Every string lies in some class.
    pub covering: bool,
    pub disjoint: bool,
    /// Submodules of members are members.
    pub closed: bool,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.covering
            && self.disjoint
            && self.closed
            && self
                .classes
                .iter()
                .all(|c| c.size_matches && c.matches_grid)
    }
}

/// Checks that the classes `{w : M(w) ⊆ M_m}` partition the strings and are
/// closed under submodules.
pub fn verify_partition_m(qa: &QuiverAlgebra) -> Result<PartitionReport, AnalysisError> {
    require_colocal(qa, "verify_partition_m")?;
    let strings = enumerate_strings(qa)?;
    let (profiles, _) = factor_shapes(qa)?;
    let mut owner: BTreeMap<&StringWord, Vec<usize>> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut members: Vec<BTreeSet<&StringWord>> = Vec::new();
    for p in &profiles {
        let grid = socle_class_grid(qa, p.vertex)?;
        let top = grid.last().and_then(|r| r.last()).expect("nonempty grid");
        let class: BTreeSet<&StringWord> =
            strings.iter().filter(|w| qa.is_submodule(w, top)).collect();
        let grid_set: BTreeSet<StringWord> =
            grid.iter().flatten().map(|w| w.canonical(qa)).collect();
        for &w in &class {
            owner.entry(w).or_default().push(p.vertex);
        }
        classes.push(SocleClass {
            vertex: p.vertex_id.clone(),
            k: p.k,
            l: p.l,
            strings: class.iter().map(|w| w.to_text(qa)).collect(),
            size_matches: class.len() == (p.k + 1) * (p.l + 1),
            matches_grid: class.iter().copied().cloned().collect::<BTreeSet<_>>() == grid_set,
        });
        members.push(class);
    }
    let covering = strings.iter().all(|w| owner.contains_key(w));
    let disjoint = owner.values().all(|v| v.len() == 1);
    let closed = members.iter().all(|class| {
        class.iter().all(|&w| {
            strings
                .iter()
                .filter(|u| qa.is_submodule(u, w))
                .all(|u| class.contains(u))
        })
    });
    Ok(PartitionReport {
        classes,
        covering,
        disjoint,
        closed,
    })
}

/// Socle and top counts over all string modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringInvariantReport {
    pub strings: usize,
    pub simple_socle: usize,
    pub one_block: usize,
    pub one_block_simple_top: usize,
    pub two_block: usize,
    pub two_block_top_two: usize,
    /// Words with three or more blocks (none for colocal type).
    pub longer: usize,
}

impl StringInvariantReport {
    pub fn passed(&self) -> bool {
        self.simple_socle == self.strings
            && self.one_block_simple_top == self.one_block
            && self.two_block_top_two == self.two_block
            && self.longer == 0
    }
}

pub fn check_string_invariants(qa: &QuiverAlgebra) -> Result<StringInvariantReport, AnalysisError> {
    let strings = enumerate_strings(qa)?;
    let mut r = StringInvariantReport {
        strings: strings.len(),
        simple_socle: 0,
        one_block: 0,
        one_block_simple_top: 0,
        two_block: 0,
        two_block_top_two: 0,
        longer: 0,
    };
    for w in &strings {
        let m = qa.string_module(w);
        r.simple_socle += usize::from(m.has_simple_socle());
        match w.block_count() {
            0 | 1 => {
                r.one_block += 1;
                r.one_block_simple_top += usize::from(m.has_simple_top());
            }
            2 => {
                r.two_block += 1;
                r.two_block_top_two += usize::from(m.top.len() == 2);
            }
            _ => r.longer += 1,
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub pairs: usize,
    pub failures: usize,
    pub exhaustive: bool,
}

impl UnionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks that the join found from the order alone is the union of the two
/// sets of indecomposables: on all pairs up to `exhaustive_limit` elements,
/// otherwise on `samples` seeded random pairs.
pub fn check_union_property(
    l: &MaterializedLattice,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> Result<UnionReport, AnalysisError> {
    if !l.is_set_lattice() {
        return Err(AnalysisError::Precondition {
            operation: "check_union_property",
            requirement: "a lattice of sets",
        });
    }
    let n = l.len();
    let union_is = |a: usize, b: usize, j: usize| {
        let mut u = l.element_set(a).expect("set lattice").clone();
        u.union_with(l.element_set(b).expect("set lattice"));
        *l.element_set(j).expect("set lattice") == u
    };
    if n <= exhaustive_limit {
        let table = l.order_join_table();
        let failures = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !union_is(a, b, table[a * n + b] as usize))
            .count();
        return Ok(UnionReport {
            pairs: n * n,
            failures,
            exhaustive: true,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match l.join_by_order(a, b) {
            Some(j) if union_is(a, b, j) => {}
            _ => failures += 1,
        }
    }
    Ok(UnionReport {
        pairs: samples,
        failures,
        exhaustive: false,
    })
}
