//! Partitions in a box and the lattices `Y^{m,n}`.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::lattice::{enumerate_downsets, FinitePoset, LatticeError, MaterializedLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("box {m}×{n} has a zero side; both must be at least 1")]
    ZeroBox { m: usize, n: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A weakly decreasing sequence of positive parts. The zero partition is
/// the empty sequence and prints as `(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts into decreasing order and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition(parts)
    }

    pub fn zero() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Diagram containment.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        (0..self.0.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition(
            (1..=width)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    pub fn fits_in_box(&self, m: usize, n: usize) -> bool {
        self.0.len() <= m && self.part(0) <= n
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn componentwise(a: &Partition, b: &Partition, op: fn(usize, usize) -> usize) -> Partition {
    let len = a.0.len().max(b.0.len());
    Partition::new((0..len).map(|i| op(a.part(i), b.part(i))).collect())
}

/// Row-wise minimum: the intersection of the diagrams.
pub fn partition_meet(a: &Partition, b: &Partition) -> Partition {
    componentwise(a, b, usize::min)
}

/// Row-wise maximum: the union of the diagrams.
pub fn partition_join(a: &Partition, b: &Partition) -> Partition {
    componentwise(a, b, usize::max)
}

/// Every partition with at most `m` parts, each at most `n`, in
/// lexicographic order of parts.
pub fn partitions_in_box(m: usize, n: usize) -> Result<Vec<Partition>, YoungError> {
    if m == 0 || n == 0 {
        return Err(YoungError::ZeroBox { m, n });
    }
    fn extend(prefix: &mut Vec<usize>, rows_left: usize, cap: usize, out: &mut Vec<Partition>) {
        out.push(Partition(prefix.clone()));
        if rows_left == 0 {
            return;
        }
        for p in 1..=cap {
            prefix.push(p);
            extend(prefix, rows_left - 1, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), m, n, &mut out);
    out.sort();
    Ok(out)
}

/// `C(m+n, m)`, the number of partitions in an `m × n` box.
pub fn box_count(m: usize, n: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for i in 0..m {
        c = c * BigUint::from(n + m - i) / BigUint::from(i + 1);
    }
    c
}

/// The `m × n` grid of cells labelled by the rectangular partitions they
/// generate: these are the join-irreducibles of `Y^{m,n}`.
pub fn rectangle_poset(m: usize, n: usize) -> FinitePoset {
    let labels = (1..=m)
        .flat_map(|r| (1..=n).map(move |c| Partition(vec![c; r]).to_string()))
        .collect();
    FinitePoset::grid(m, n).relabel(labels)
}

pub(crate) fn build_young(
    m: usize,
    n: usize,
    guard: usize,
) -> Result<MaterializedLattice, LatticeError> {
    let base = rectangle_poset(m, n);
    let sets = enumerate_downsets(&base, guard)?;
    let labels = sets
        .iter()
        .map(|s| {
            // cell index r*n + c lies in row r
            let mut rows = vec![0; m];
            for cell in s.ones() {
                rows[cell / n] += 1;
            }
            Partition::new(rows).to_string()
        })
        .collect();
    Ok(MaterializedLattice::from_downsets(base, sets, labels))
}

/// `Y^{m,n}`: partitions in an `m × n` box ordered by diagram containment,
/// built as the down-sets of the cell grid.
pub fn young_box_lattice(
    m: usize,
    n: usize,
    guard: usize,
) -> Result<MaterializedLattice, YoungError> {
    if m == 0 || n == 0 {
        return Err(YoungError::ZeroBox { m, n });
    }
    Ok(build_young(m, n, guard)?)
}
