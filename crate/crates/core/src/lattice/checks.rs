use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{guard_error, FinitePoset, LatticeError, MaterializedLattice};

/// Largest lattice checked triple by triple for distributivity.
pub const TRIPLE_LIMIT: usize = 512;
/// Largest lattice given the restricted frame check.
pub const FRAME_LIMIT: usize = 128;
/// Largest lattice given the frame check over every subset.
pub const FRAME_EXHAUSTIVE_LIMIT: usize = 12;

/// A triple with `(a ∨ b) ∧ c ≠ (a ∧ c) ∨ (b ∧ c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributivityWitness {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl fmt::Display for DistributivityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({a} ∨ {b}) ∧ {c} ≠ ({a} ∧ {c}) ∨ ({b} ∧ {c})",
            a = self.a,
            b = self.b,
            c = self.c
        )
    }
}

/// Checks `(a ∨ b) ∧ c = (a ∧ c) ∨ (b ∧ c)` on every triple. Returns the
/// first failing triple, or `None` when distributive.
pub fn is_distributive(
    l: &MaterializedLattice,
) -> Result<Option<DistributivityWitness>, LatticeError> {
    let n = l.len();
    if n > TRIPLE_LIMIT {
        return Err(guard_error(n, TRIPLE_LIMIT));
    }
    let (meet, join) = l.op_tables();
    let at = |t: &[u32], x: usize, y: usize| t[x * n + y] as usize;
    for a in 0..n {
        for b in a..n {
            let ab = at(&join, a, b);
            for c in 0..n {
                let lhs = at(&meet, ab, c);
                let rhs = at(&join, at(&meet, a, c), at(&meet, b, c));
                if lhs != rhs {
                    return Ok(Some(DistributivityWitness {
                        a: l.label(a).to_owned(),
                        b: l.label(b).to_owned(),
                        c: l.label(c).to_owned(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The frame law `a ∧ ⋁B = ⋁ (a ∧ b)` for every `a` and every `B` of at
/// most three elements, plus `B` = everything.
///
/// In a finite lattice larger joins fold into binary ones, and the law for
/// `|B| = 2` is already distributivity, so this agrees with the full check.
pub fn is_frame(l: &MaterializedLattice) -> Result<bool, LatticeError> {
    let n = l.len();
    if n > FRAME_LIMIT {
        return Err(guard_error(n, FRAME_LIMIT));
    }
    let (meet, join) = l.op_tables();
    let m = |x: usize, y: usize| meet[x * n + y] as usize;
    let j = |x: usize, y: usize| join[x * n + y] as usize;
    let bottom = l.bottom();
    for a in 0..n {
        // B empty
        if m(a, bottom) != bottom {
            return Ok(false);
        }
        for b1 in 0..n {
            for b2 in b1..n {
                for b3 in b2..n {
                    let lhs = m(a, j(j(b1, b2), b3));
                    let rhs = j(j(m(a, b1), m(a, b2)), m(a, b3));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        let all = (0..n).fold(bottom, j);
        let spread = (0..n).fold(bottom, |acc, b| j(acc, m(a, b)));
        if m(a, all) != spread {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The frame law over every subset `B`, for lattices of at most
/// [`FRAME_EXHAUSTIVE_LIMIT`] elements.
pub fn is_frame_exhaustive(l: &MaterializedLattice) -> Result<bool, LatticeError> {
    let n = l.len();
    if n > FRAME_EXHAUSTIVE_LIMIT {
        return Err(guard_error(n, FRAME_EXHAUSTIVE_LIMIT));
    }
    let (meet, join) = l.op_tables();
    let m = |x: usize, y: usize| meet[x * n + y] as usize;
    let j = |x: usize, y: usize| join[x * n + y] as usize;
    let bottom = l.bottom();
    for a in 0..n {
        for mask in 0u32..(1 << n) {
            let members = (0..n).filter(|&b| mask & (1 << b) != 0);
            let big = members.clone().fold(bottom, j);
            let spread = members.fold(bottom, |acc, b| j(acc, m(a, b)));
            if m(a, big) != spread {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Indices of elements with exactly one lower cover, in index order.
pub fn join_irreducible_elements(l: &MaterializedLattice) -> Vec<usize> {
    (0..l.len())
        .filter(|&x| l.lower_covers(x).len() == 1)
        .collect()
}

fn require_distributive(l: &MaterializedLattice) -> Result<(), LatticeError> {
    if l.is_set_lattice() {
        return Ok(());
    }
    match is_distributive(l)? {
        None => Ok(()),
        Some(w) => Err(LatticeError::NotDistributive(w)),
    }
}

/// The poset of join-irreducible elements of a distributive lattice.
pub fn join_irreducibles(l: &MaterializedLattice) -> Result<FinitePoset, LatticeError> {
    require_distributive(l)?;
    let ji = join_irreducible_elements(l);
    let labels = ji.iter().map(|&x| l.label(x).to_owned()).collect();
    FinitePoset::from_leq(labels, |a, b| l.leq(ji[a], ji[b]))
}

/// Birkhoff's representation of a distributive lattice: its join-irreducible
/// poset and, for each element, the down-set of join-irreducibles below it.
pub fn birkhoff_sets(
    l: &MaterializedLattice,
) -> Result<(FinitePoset, Vec<FixedBitSet>), LatticeError> {
    if let (Some(base), Some(_)) = (l.base_poset(), l.element_set(0)) {
        let sets = (0..l.len())
            .map(|i| l.element_set(i).expect("in range").clone())
            .collect();
        return Ok((base.clone(), sets));
    }
    let poset = join_irreducibles(l)?;
    let ji = join_irreducible_elements(l);
    let sets = (0..l.len())
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(ji.len());
            s.extend((0..ji.len()).filter(|&k| l.leq(ji[k], x)));
            s
        })
        .collect();
    Ok((poset, sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{diamond_m3, downset_lattice, pentagon_n5};

    #[test]
    fn small_non_distributive_lattices() {
        for l in [diamond_m3(), pentagon_n5()] {
            assert!(is_distributive(&l).unwrap().is_some());
            assert!(!is_frame(&l).unwrap());
            assert!(!is_frame_exhaustive(&l).unwrap());
            assert!(matches!(
                join_irreducibles(&l),
                Err(LatticeError::NotDistributive(_))
            ));
        }
        let w = is_distributive(&diamond_m3()).unwrap().unwrap();
        assert_eq!(w.to_string(), "(a ∨ b) ∧ c ≠ (a ∧ c) ∨ (b ∧ c)");
    }

    #[test]
    fn downset_lattices_are_frames() {
        for p in [
            FinitePoset::grid(2, 2),
            FinitePoset::chain(3),
            FinitePoset::antichain(3),
        ] {
            let l = downset_lattice(&p, 100).unwrap();
            assert_eq!(is_distributive(&l).unwrap(), None);
            assert!(is_frame(&l).unwrap());
            assert!(is_frame_exhaustive(&l).unwrap());
        }
    }

    #[test]
    fn join_irreducibles_of_standard_lattices() {
        let b4 = downset_lattice(&FinitePoset::antichain(2), 10).unwrap();
        let ji = join_irreducibles(&b4).unwrap();
        assert_eq!(ji.len(), 2);
        assert!(ji.covers().is_empty());
        let c4 = downset_lattice(&FinitePoset::chain(3), 10).unwrap();
        assert_eq!(join_irreducibles(&c4).unwrap().covers().len(), 2);
        let grid = downset_lattice(&FinitePoset::grid(3, 2), 100).unwrap();
        let ji = join_irreducibles(&grid).unwrap();
        assert_eq!(ji.len(), 6);
        assert_eq!(ji.covers().len(), 7);
    }

    #[test]
    fn birkhoff_sets_of_a_table_lattice() {
        let sets = downset_lattice(&FinitePoset::grid(2, 2), 100).unwrap();
        let table =
            MaterializedLattice::from_order(sets.labels().to_vec(), |a, b| sets.leq(a, b)).unwrap();
        let (p, s) = birkhoff_sets(&table).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(s.len(), 6);
        assert_eq!(s[table.top()].count_ones(..), 4);
    }

    #[test]
    fn guards() {
        let big = downset_lattice(&FinitePoset::antichain(8), 1000).unwrap();
        assert!(is_frame(&big).is_err());
        assert!(
            is_frame_exhaustive(&downset_lattice(&FinitePoset::antichain(4), 100).unwrap())
                .is_err()
        );
    }
}
