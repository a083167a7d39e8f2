use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::LatticeError;

/// A finite partial order stored as down-closures: `below[i]` holds every
/// `j` with `j ≤ i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    below: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds a poset from a relation, checking the partial-order axioms.
    pub fn from_leq(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in below.iter_mut().enumerate() {
            for j in 0..n {
                if leq(j, i) {
                    row.insert(j);
                }
            }
        }
        let p = FinitePoset { labels, below };
        p.validate()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of `(lower, upper)` pairs.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in below.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(LatticeError::UnknownElement(lo.max(hi)));
            }
            below[hi].insert(lo);
        }
        // Warshall over bitset rows
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let p = FinitePoset { labels, below };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let n = self.len();
        for i in 0..n {
            if !self.below[i].contains(i) {
                return Err(LatticeError::NotReflexive(self.labels[i].clone()));
            }
            for j in self.below[i].ones() {
                if j != i && self.below[j].contains(i) {
                    return Err(LatticeError::NotAntisymmetric(
                        self.labels[j].clone(),
                        self.labels[i].clone(),
                    ));
                }
                if !self.below[j].is_subset(&self.below[i]) {
                    return Err(LatticeError::NotTransitive(
                        self.labels[j].clone(),
                        self.labels[i].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq(labels, |a, b| a <= b).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq(labels, |a, b| a == b).expect("antichain")
    }

    /// The product order on `{1..rows} × {1..cols}`, labelled `r,c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let cells: Vec<(usize, usize)> = (1..=rows)
            .flat_map(|r| (1..=cols).map(move |c| (r, c)))
            .collect();
        let labels = cells.iter().map(|(r, c)| format!("{r},{c}")).collect();
        Self::from_leq(labels, |a, b| {
            cells[a].0 <= cells[b].0 && cells[a].1 <= cells[b].1
        })
        .expect("grid")
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

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    /// Cover pairs `(lower, upper)`: `lower < upper` with nothing strictly
    /// between, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for hi in 0..self.len() {
            let strict: Vec<usize> = self.below[hi].ones().filter(|&j| j != hi).collect();
            for &lo in &strict {
                let between = strict
                    .iter()
                    .any(|&m| m != lo && self.below[m].contains(lo));
                if !between {
                    out.push((lo, hi));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.below[i].count_ones(..));
        let mut h = vec![0; self.len()];
        for &i in &order {
            h[i] = self.below[i]
                .ones()
                .filter(|&j| j != i)
                .map(|j| h[j] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Connected components of the comparability graph, each sorted, in
    /// order of their smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut queue = VecDeque::from([start]);
            comp[start] = id;
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for (y, c) in comp.iter_mut().enumerate() {
                    if *c == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        *c = id;
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The induced order on `elements` (in the given order).
    pub fn subposet(&self, elements: &[usize]) -> Self {
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_leq(labels, |a, b| self.leq(elements[a], elements[b])).expect("induced order")
    }

    /// Parts placed side by side with no comparabilities between them.
    pub fn disjoint_union(parts: &[&FinitePoset]) -> Self {
        let n: usize = parts.iter().map(|p| p.len()).sum();
        let mut labels = Vec::with_capacity(n);
        let mut below = Vec::with_capacity(n);
        let mut offset = 0;
        for p in parts {
            labels.extend(p.labels.iter().cloned());
            for row in &p.below {
                let mut r = FixedBitSet::with_capacity(n);
                r.extend(row.ones().map(|j| j + offset));
                below.push(r);
            }
            offset += p.len();
        }
        FinitePoset { labels, below }
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            labels: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(lo, hi)| (self.labels[lo].clone(), self.labels[hi].clone()))
                .collect(),
        }
    }
}

/// JSON form of a poset: labels and cover pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetJson {
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
}
