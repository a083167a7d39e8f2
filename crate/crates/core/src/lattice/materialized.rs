use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{FinitePoset, LatticeError};

/// Largest lattice held as explicit meet/join tables.
pub const TABLE_LIMIT: usize = 512;

#[derive(Debug, Clone)]
enum Repr {
    /// Explicit order with precomputed meet and join tables.
    Table {
        order: FinitePoset,
        meet: Vec<u32>,
        join: Vec<u32>,
    },
    /// Down-sets of `base`, ordered by inclusion.
    Downsets {
        base: FinitePoset,
        sets: Vec<FixedBitSet>,
        index: HashMap<FixedBitSet, usize>,
    },
}

/// A lattice with every element held in memory.
#[derive(Debug, Clone)]
pub struct MaterializedLattice {
    labels: Vec<String>,
    repr: Repr,
}

impl MaterializedLattice {
    /// Builds a lattice from an order relation, computing meets and joins
    /// and rejecting orders in which some pair lacks a meet or join.
    pub fn from_order(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n > TABLE_LIMIT {
            return Err(LatticeError::SizeGuard {
                size: n.to_string(),
                guard: TABLE_LIMIT,
            });
        }
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let order = FinitePoset::from_leq(labels.clone(), leq)?;
        let sizes: Vec<usize> = (0..n).map(|i| order.below(i).count_ones(..)).collect();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in above.iter_mut().enumerate() {
            row.extend((0..n).filter(|&j| order.leq(i, j)));
        }
        let above_sizes: Vec<usize> = above.iter().map(|r| r.count_ones(..)).collect();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut lower = order.below(a).clone();
                lower.intersect_with(order.below(b));
                let glb = lower
                    .ones()
                    .max_by_key(|&g| sizes[g])
                    .filter(|&g| order.below(g) == &lower)
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        operation: "meet",
                    })?;
                let mut upper = above[a].clone();
                upper.intersect_with(&above[b]);
                let lub = upper
                    .ones()
                    .max_by_key(|&g| above_sizes[g])
                    .filter(|&g| above[g] == upper)
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        operation: "join",
                    })?;
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        Ok(MaterializedLattice {
            labels,
            repr: Repr::Table { order, meet, join },
        })
    }

    /// Down-sets of `base` ordered by inclusion, i.e. the distributive
    /// lattice whose join-irreducibles are `base`. Elements are labelled by
    /// their maximal elements, `{}` for the empty down-set.
    pub fn downsets(base: &FinitePoset, guard: usize) -> Result<Self, LatticeError> {
        let sets = enumerate_downsets(base, guard)?;
        let labels = sets.iter().map(|s| generator_label(base, s)).collect();
        Ok(Self::from_downsets(base.clone(), sets, labels))
    }

    /// Down-sets with caller-supplied labels. `sets` must be exactly the
    /// down-sets of `base`.
    pub(crate) fn from_downsets(
        base: FinitePoset,
        sets: Vec<FixedBitSet>,
        labels: Vec<String>,
    ) -> Self {
        let index = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        MaterializedLattice {
            labels,
            repr: Repr::Downsets { base, sets, index },
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Elements are down-sets of this poset, when built that way.
    pub fn base_poset(&self) -> Option<&FinitePoset> {
        match &self.repr {
            Repr::Downsets { base, .. } => Some(base),
            Repr::Table { .. } => None,
        }
    }

    /// The down-set an element stands for, when built from a poset.
    pub fn element_set(&self, i: usize) -> Option<&FixedBitSet> {
        match &self.repr {
            Repr::Downsets { sets, .. } => sets.get(i),
            Repr::Table { .. } => None,
        }
    }

    /// Whether the lattice is distributive by construction.
    pub fn is_set_lattice(&self) -> bool {
        matches!(self.repr, Repr::Downsets { .. })
    }

    fn check(&self, i: usize) -> Result<(), LatticeError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(LatticeError::UnknownElement(i))
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.repr {
            Repr::Table { order, .. } => order.leq(a, b),
            Repr::Downsets { sets, .. } => sets[a].is_subset(&sets[b]),
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.repr {
            Repr::Table { meet, .. } => meet[a * self.len() + b] as usize,
            Repr::Downsets { sets, index, .. } => {
                let mut s = sets[a].clone();
                s.intersect_with(&sets[b]);
                index[&s]
            }
        })
    }

    pub fn join(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.repr {
            Repr::Table { join, .. } => join[a * self.len() + b] as usize,
            Repr::Downsets { sets, index, .. } => {
                let mut s = sets[a].clone();
                s.union_with(&sets[b]);
                index[&s]
            }
        })
    }

    pub fn bottom(&self) -> usize {
        if let Repr::Downsets { sets, .. } = &self.repr {
            return (0..sets.len())
                .min_by_key(|&i| sets[i].count_ones(..))
                .expect("nonempty");
        }
        (0..self.len())
            .find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
            .expect("a finite lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        if let Repr::Downsets { sets, .. } = &self.repr {
            return (0..sets.len())
                .max_by_key(|&i| sets[i].count_ones(..))
                .expect("nonempty");
        }
        (0..self.len())
            .find(|&x| (0..self.len()).all(|y| self.leq(y, x)))
            .expect("a finite lattice has a top")
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Table { order, .. } => {
                let strict: Vec<usize> = order.below(x).ones().filter(|&j| j != x).collect();
                strict
                    .iter()
                    .copied()
                    .filter(|&lo| !strict.iter().any(|&m| m != lo && order.leq(lo, m)))
                    .collect()
            }
            Repr::Downsets { sets, index, .. } => {
                // in a down-set lattice, covers remove one element
                let mut out: Vec<usize> = sets[x]
                    .ones()
                    .filter_map(|e| {
                        let mut s = sets[x].clone();
                        s.set(e, false);
                        index.get(&s).copied()
                    })
                    .collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|hi| self.lower_covers(hi).into_iter().map(move |lo| (lo, hi)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        match &self.repr {
            Repr::Downsets { sets, .. } => sets.iter().map(|s| s.count_ones(..)).collect(),
            Repr::Table { order, .. } => order.heights(),
        }
    }

    /// The whole order as a poset (for order-isomorphism tests).
    pub fn as_poset(&self) -> FinitePoset {
        match &self.repr {
            Repr::Table { order, .. } => order.clone(),
            Repr::Downsets { .. } => {
                FinitePoset::from_leq(self.labels.clone(), |a, b| self.leq(a, b))
                    .expect("inclusion is a partial order")
            }
        }
    }

    /// Meet and join as `n × n` tables of element indices.
    pub fn op_tables(&self) -> (Vec<u32>, Vec<u32>) {
        match &self.repr {
            Repr::Table { meet, join, .. } => (meet.clone(), join.clone()),
            Repr::Downsets { .. } => {
                let n = self.len();
                let mut meet = vec![0u32; n * n];
                let mut join = vec![0u32; n * n];
                for a in 0..n {
                    for b in a..n {
                        let m = self.meet(a, b).expect("in range") as u32;
                        let j = self.join(a, b).expect("in range") as u32;
                        meet[a * n + b] = m;
                        meet[b * n + a] = m;
                        join[a * n + b] = j;
                        join[b * n + a] = j;
                    }
                }
                (meet, join)
            }
        }
    }

    /// Joins of all pairs computed from the order alone, as an `n × n`
    /// table: the common upper bound whose up-set is the intersection of the
    /// two up-sets.
    pub fn order_join_table(&self) -> Vec<u32> {
        let n = self.len();
        let above: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&u| self.leq(a, u)));
                s
            })
            .collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut upper = above[a].clone();
                upper.intersect_with(&above[b]);
                let lub = upper
                    .ones()
                    .find(|&u| above[u] == upper)
                    .expect("a lattice has joins");
                table[a * n + b] = lub as u32;
                table[b * n + a] = lub as u32;
            }
        }
        table
    }

    /// The least upper bound found from the order alone: the unique common
    /// upper bound lying below all others.
    pub fn join_by_order(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&u| self.leq(a, u) && self.leq(b, u))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&u| upper.iter().all(|&v| self.leq(u, v)))
    }
}

/// All down-sets of `p`, smallest first.
///
/// Elements are visited in a linear extension; each may be added only when
/// its strict down-set is already present, so every down-set is produced
/// exactly once and no branch dead-ends.
pub fn enumerate_downsets(p: &FinitePoset, guard: usize) -> Result<Vec<FixedBitSet>, LatticeError> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (p.below(i).count_ones(..), i));
    let strict: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut s = p.below(i).clone();
            s.set(i, false);
            s
        })
        .collect();

    let mut out = Vec::new();
    let mut stack: Vec<(usize, FixedBitSet)> = vec![(0, FixedBitSet::with_capacity(n))];
    while let Some((depth, set)) = stack.pop() {
        if depth == n {
            if out.len() == guard {
                return Err(LatticeError::SizeGuard {
                    size: format!("more than {guard}"),
                    guard,
                });
            }
            out.push(set);
            continue;
        }
        let x = order[depth];
        if strict[x].is_subset(&set) {
            let mut with = set.clone();
            with.insert(x);
            stack.push((depth + 1, with));
        }
        stack.push((depth + 1, set));
    }
    out.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    Ok(out)
}

fn generator_label(base: &FinitePoset, set: &FixedBitSet) -> String {
    let mut maxima: Vec<&str> = set
        .ones()
        .filter(|&x| !set.ones().any(|y| y != x && base.leq(x, y)))
        .map(|x| base.label(x))
        .collect();
    maxima.sort_unstable();
    format!("{{{}}}", maxima.join(","))
}

/// The five-element non-distributive lattice with three atoms.
pub fn diamond_m3() -> MaterializedLattice {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    MaterializedLattice::from_order(labels, |x, y| x == y || x == 0 || y == 4).expect("M3")
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn pentagon_n5() -> MaterializedLattice {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    MaterializedLattice::from_order(labels, |x, y| {
        x == y || x == 0 || y == 4 || (x, y) == (1, 2)
    })
    .expect("N5")
}
