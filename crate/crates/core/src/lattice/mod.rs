//! Finite posets and lattices.
//!
//! Distributive lattices are mostly held as down-set lattices of a poset
//! (Birkhoff's representation), so meet and join are intersection and union
//! of bitsets. Products can stay factored, carrying an exact size and the
//! join-irreducible poset of each factor, which is all that isomorphism
//! testing needs.

mod checks;
mod dot;
mod iso;
mod materialized;
mod poset;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use thiserror::Error;

pub use checks::{
    birkhoff_sets, is_distributive, is_frame, is_frame_exhaustive, join_irreducible_elements,
    join_irreducibles, DistributivityWitness, FRAME_EXHAUSTIVE_LIMIT, FRAME_LIMIT, TRIPLE_LIMIT,
};
pub use dot::{hasse_lines, to_dot};
pub use iso::{are_isomorphic, induced_element_map, poset_isomorphism, IsoWitness};
pub use materialized::{
    diamond_m3, enumerate_downsets, pentagon_n5, MaterializedLattice, TABLE_LIMIT,
};
pub use poset::{FinitePoset, PosetJson};

/// Default bound on materialized lattice size.
pub const DEFAULT_MAX_SIZE: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("`{0}` and `{1}` are below each other")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive through `{0}` below `{1}`")]
    NotTransitive(String, String),
    #[error("`{a}` and `{b}` have no {operation}")]
    NotALattice {
        a: String,
        b: String,
        operation: &'static str,
    },
    #[error("lattice has {size} elements, above the limit of {guard}")]
    SizeGuard { size: String, guard: usize },
    #[error("lattice is not distributive: {0}")]
    NotDistributive(DistributivityWitness),
    #[error("no element with index {0}")]
    UnknownElement(usize),
    #[error("a lattice needs at least one element")]
    Empty,
}

fn guard_error(size: impl ToString, guard: usize) -> LatticeError {
    LatticeError::SizeGuard {
        size: size.to_string(),
        guard,
    }
}

#[derive(Debug, Clone)]
enum FactorSource {
    Lattice(MaterializedLattice),
    /// `Y^{m,n}`, built only when asked for.
    Young(usize, usize),
}

/// One factor of a product: a distributive lattice known through its
/// join-irreducible poset and exact size.
#[derive(Debug, Clone)]
pub struct Factor {
    label: String,
    join_irreducibles: FinitePoset,
    size: BigUint,
    source: FactorSource,
}

impl Factor {
    /// Wraps a materialized distributive lattice.
    pub fn from_lattice(
        label: impl Into<String>,
        lattice: MaterializedLattice,
    ) -> Result<Self, LatticeError> {
        let (join_irreducibles, _) = birkhoff_sets(&lattice)?;
        Ok(Factor {
            label: label.into(),
            join_irreducibles,
            size: BigUint::from(lattice.len()),
            source: FactorSource::Lattice(lattice),
        })
    }

    /// `Y^{m,n}` without materializing it.
    pub fn young(label: impl Into<String>, m: usize, n: usize) -> Self {
        Factor {
            label: label.into(),
            join_irreducibles: crate::young::rectangle_poset(m, n),
            size: crate::young::box_count(m, n),
            source: FactorSource::Young(m, n),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn join_irreducibles(&self) -> &FinitePoset {
        &self.join_irreducibles
    }

    /// `(m, n)` for a Young factor.
    pub fn young_shape(&self) -> Option<(usize, usize)> {
        match self.source {
            FactorSource::Young(m, n) => Some((m, n)),
            FactorSource::Lattice(_) => None,
        }
    }

    pub fn materialize(&self, guard: usize) -> Result<MaterializedLattice, LatticeError> {
        if self.size > BigUint::from(guard) {
            return Err(guard_error(&self.size, guard));
        }
        match &self.source {
            FactorSource::Lattice(l) => Ok(l.clone()),
            FactorSource::Young(m, n) => crate::young::build_young(*m, *n, guard),
        }
    }
}

/// A Cartesian product kept as its list of factors.
#[derive(Debug, Clone, Default)]
pub struct FactoredLattice {
    factors: Vec<Factor>,
}

impl FactoredLattice {
    /// The empty product is the one-element lattice.
    pub fn new(factors: Vec<Factor>) -> Self {
        FactoredLattice { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn size(&self) -> BigUint {
        self.factors.iter().map(|f| f.size.clone()).product()
    }

    /// Join-irreducibles of a product: the disjoint union of the factors'
    /// join-irreducibles, labelled `factor:element`.
    pub fn join_irreducible_poset(&self) -> FinitePoset {
        let parts: Vec<&FinitePoset> = self.factors.iter().map(|f| &f.join_irreducibles).collect();
        let labels = self
            .factors
            .iter()
            .flat_map(|f| {
                f.join_irreducibles
                    .labels()
                    .iter()
                    .map(move |l| format!("{}:{l}", f.label))
            })
            .collect();
        FinitePoset::disjoint_union(&parts).relabel(labels)
    }

    /// Componentwise meet of two tuples.
    pub fn meet(&self, a: &[usize], b: &[usize], guard: usize) -> Result<Vec<usize>, LatticeError> {
        self.componentwise(a, b, guard, |l, x, y| l.meet(x, y))
    }

    /// Componentwise join of two tuples.
    pub fn join(&self, a: &[usize], b: &[usize], guard: usize) -> Result<Vec<usize>, LatticeError> {
        self.componentwise(a, b, guard, |l, x, y| l.join(x, y))
    }

    fn componentwise(
        &self,
        a: &[usize],
        b: &[usize],
        guard: usize,
        op: impl Fn(&MaterializedLattice, usize, usize) -> Result<usize, LatticeError>,
    ) -> Result<Vec<usize>, LatticeError> {
        if a.len() != self.factors.len() || b.len() != self.factors.len() {
            return Err(LatticeError::UnknownElement(a.len().max(b.len())));
        }
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(f, (&x, &y))| op(&f.materialize(guard)?, x, y))
            .collect()
    }

    /// The product as one lattice, refused above `guard` elements. Element
    /// labels join the factor labels with `×`.
    pub fn materialize(&self, guard: usize) -> Result<MaterializedLattice, LatticeError> {
        let size = self.size();
        if size > BigUint::from(guard) {
            return Err(guard_error(size, guard));
        }
        let lattices = self
            .factors
            .iter()
            .map(|f| f.materialize(guard))
            .collect::<Result<Vec<_>, _>>()?;
        let parts: Vec<(FinitePoset, Vec<FixedBitSet>)> = lattices
            .iter()
            .map(birkhoff_sets)
            .collect::<Result<_, _>>()?;
        let base = FinitePoset::disjoint_union(&parts.iter().map(|p| &p.0).collect::<Vec<_>>());
        let total = base.len();

        let mut sets = Vec::new();
        let mut labels = Vec::new();
        let mut tuple = vec![0usize; lattices.len()];
        loop {
            let mut set = FixedBitSet::with_capacity(total);
            let mut offset = 0;
            let mut label = Vec::with_capacity(tuple.len());
            for (k, &x) in tuple.iter().enumerate() {
                set.extend(parts[k].1[x].ones().map(|j| j + offset));
                offset += parts[k].0.len();
                label.push(lattices[k].label(x));
            }
            sets.push(set);
            labels.push(if label.is_empty() {
                "()".to_owned()
            } else {
                label.join("×")
            });
            // odometer over factor indices
            let mut k = tuple.len();
            loop {
                if k == 0 {
                    let mut order: Vec<usize> = (0..sets.len()).collect();
                    order.sort_by_key(|&i| sets[i].count_ones(..));
                    let sets = order.iter().map(|&i| sets[i].clone()).collect();
                    let labels = order.iter().map(|&i| labels[i].clone()).collect();
                    return Ok(MaterializedLattice::from_downsets(base, sets, labels));
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < lattices[k].len() {
                    break;
                }
                tuple[k] = 0;
            }
        }
    }
}

/// Either form of a finite lattice.
#[derive(Debug, Clone)]
pub enum FiniteLattice {
    Materialized(MaterializedLattice),
    Factored(FactoredLattice),
}

impl FiniteLattice {
    pub fn size(&self) -> BigUint {
        match self {
            FiniteLattice::Materialized(l) => BigUint::from(l.len()),
            FiniteLattice::Factored(f) => f.size(),
        }
    }

    pub fn materialize(&self, guard: usize) -> Result<MaterializedLattice, LatticeError> {
        match self {
            FiniteLattice::Materialized(l) if l.len() <= guard => Ok(l.clone()),
            FiniteLattice::Materialized(l) => Err(guard_error(l.len(), guard)),
            FiniteLattice::Factored(f) => f.materialize(guard),
        }
    }
}

impl From<MaterializedLattice> for FiniteLattice {
    fn from(l: MaterializedLattice) -> Self {
        FiniteLattice::Materialized(l)
    }
}

impl From<FactoredLattice> for FiniteLattice {
    fn from(f: FactoredLattice) -> Self {
        FiniteLattice::Factored(f)
    }
}

/// Product of lattices, kept factored.
pub fn product(factors: Vec<Factor>) -> FactoredLattice {
    FactoredLattice::new(factors)
}

/// Down-set lattice of `p` ordered by inclusion.
pub fn downset_lattice(p: &FinitePoset, guard: usize) -> Result<MaterializedLattice, LatticeError> {
    MaterializedLattice::downsets(p, guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_factor(n: usize) -> Factor {
        let l = downset_lattice(&FinitePoset::chain(n - 1), 100).unwrap();
        Factor::from_lattice(format!("C{n}"), l).unwrap()
    }

    #[test]
    fn empty_product_has_one_element() {
        let p = product(vec![]);
        assert_eq!(p.size(), BigUint::from(1u32));
        let m = p.materialize(10).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.label(0), "()");
    }

    #[test]
    fn product_sizes() {
        let p = product(vec![chain_factor(3), chain_factor(2)]);
        assert_eq!(p.size(), BigUint::from(6u32));
        assert_eq!(p.materialize(100).unwrap().len(), 6);
        let q = product(vec![
            Factor::young("Y", 2, 2),
            chain_factor(2),
            chain_factor(2),
        ]);
        assert_eq!(q.size(), BigUint::from(24u32));
        let m = q.materialize(100).unwrap();
        assert_eq!(m.len(), 24);
        assert_eq!(m.label(0), "(0)×{}×{}");
        assert!(q.materialize(23).is_err());
    }

    #[test]
    fn componentwise_operations() {
        let p = product(vec![chain_factor(3), chain_factor(2)]);
        assert_eq!(p.join(&[1, 0], &[0, 1], 100).unwrap(), vec![1, 1]);
        assert_eq!(p.meet(&[2, 0], &[1, 1], 100).unwrap(), vec![1, 0]);
        assert!(p.meet(&[0], &[0, 0], 100).is_err());
    }

    #[test]
    fn huge_products_stay_symbolic() {
        let p = product(
            (0..40)
                .map(|i| Factor::young(format!("{i}"), 6, 6))
                .collect(),
        );
        assert_eq!(p.size(), BigUint::from(924u32).pow(40));
        assert!(matches!(
            p.materialize(DEFAULT_MAX_SIZE),
            Err(LatticeError::SizeGuard { .. })
        ));
        assert_eq!(p.join_irreducible_poset().len(), 40 * 36);
    }
}
