use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{birkhoff_sets, is_distributive, FiniteLattice, FinitePoset, LatticeError};

/// How two lattices were matched and the matching itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// `"join-irreducibles"` for distributive lattices (Birkhoff duality),
    /// `"order"` when whole orders were compared.
    pub via: &'static str,
    /// Matched labels, left to right.
    pub pairs: Vec<(String, String)>,
    /// `map[i]` is the right-hand index matched to left-hand index `i`.
    #[serde(skip)]
    pub map: Vec<usize>,
}

/// (strictly below, strictly above, lower covers, upper covers, height)
type Signature = (usize, usize, usize, usize, usize);

fn signatures(p: &FinitePoset) -> Vec<Signature> {
    let n = p.len();
    let heights = p.heights();
    let mut lower = vec![0; n];
    let mut upper = vec![0; n];
    for (lo, hi) in p.covers() {
        upper[lo] += 1;
        lower[hi] += 1;
    }
    (0..n)
        .map(|i| {
            let below = p.below(i).count_ones(..) - 1;
            let above = (0..n).filter(|&j| j != i && p.leq(i, j)).count();
            (below, above, lower[i], upper[i], heights[i])
        })
        .collect()
}

/// An order isomorphism `p → q`, if one exists.
///
/// Components are matched first (greedily, which is sound because
/// isomorphism is an equivalence), then each pair by backtracking over
/// candidates with equal signatures, ties broken by label.
pub fn poset_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let (sp, sq) = (signatures(p), signatures(q));
    let mut multiset_p = sp.clone();
    let mut multiset_q = sq.clone();
    multiset_p.sort_unstable();
    multiset_q.sort_unstable();
    if multiset_p != multiset_q {
        return None;
    }

    let invariant = |comp: &[usize], sig: &[Signature]| {
        let mut s: Vec<Signature> = comp.iter().map(|&i| sig[i]).collect();
        s.sort_unstable();
        s
    };
    let comps_q: Vec<(Vec<usize>, Vec<Signature>)> = q
        .components()
        .into_iter()
        .map(|c| {
            let inv = invariant(&c, &sq);
            (c, inv)
        })
        .collect();
    let mut used = vec![false; comps_q.len()];
    let mut map = vec![usize::MAX; p.len()];
    'outer: for cp in p.components() {
        let inv = invariant(&cp, &sp);
        for (k, (cq, inv_q)) in comps_q.iter().enumerate() {
            if used[k] || *inv_q != inv {
                continue;
            }
            if let Some(local) = connected_isomorphism(p, &cp, &sp, q, cq, &sq) {
                used[k] = true;
                for (a, b) in cp.iter().zip(local) {
                    map[*a] = b;
                }
                continue 'outer;
            }
        }
        return None;
    }
    Some(map)
}

/// Backtracking match of component `cp` of `p` onto component `cq` of `q`;
/// returns the images of `cp` in order.
fn connected_isomorphism(
    p: &FinitePoset,
    cp: &[usize],
    sp: &[Signature],
    q: &FinitePoset,
    cq: &[usize],
    sq: &[Signature],
) -> Option<Vec<usize>> {
    // place low, rare-signature elements first so failures surface early
    let mut freq: HashMap<Signature, usize> = HashMap::new();
    for &i in cp {
        *freq.entry(sp[i]).or_default() += 1;
    }
    let mut order: Vec<usize> = cp.to_vec();
    order.sort_by(|&a, &b| {
        (sp[a].4, freq[&sp[a]], p.label(a)).cmp(&(sp[b].4, freq[&sp[b]], p.label(b)))
    });
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| {
            let mut c: Vec<usize> = cq.iter().copied().filter(|&y| sq[y] == sp[x]).collect();
            c.sort_by(|&a, &b| q.label(a).cmp(q.label(b)).then(a.cmp(&b)));
            c
        })
        .collect();

    let mut image = vec![usize::MAX; order.len()];
    let mut taken = FixedBitSet::with_capacity(q.len());
    let mut cursor = vec![0usize; order.len()];
    let mut depth = 0usize;
    loop {
        if depth == order.len() {
            let pos: HashMap<usize, usize> =
                order.iter().enumerate().map(|(k, &x)| (x, k)).collect();
            return Some(cp.iter().map(|x| image[pos[x]]).collect());
        }
        let x = order[depth];
        let mut placed = false;
        while cursor[depth] < candidates[depth].len() {
            let y = candidates[depth][cursor[depth]];
            cursor[depth] += 1;
            if taken.contains(y) {
                continue;
            }
            let consistent = (0..depth).all(|k| {
                let (x2, y2) = (order[k], image[k]);
                p.leq(x, x2) == q.leq(y, y2) && p.leq(x2, x) == q.leq(y2, y)
            });
            if consistent {
                image[depth] = y;
                taken.insert(y);
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth < order.len() {
                cursor[depth] = 0;
            }
        } else {
            if depth == 0 {
                return None;
            }
            depth -= 1;
            taken.set(image[depth], false);
            image[depth] = usize::MAX;
        }
    }
}

fn ji_poset(l: &FiniteLattice, guard: usize) -> Result<Option<FinitePoset>, LatticeError> {
    match l {
        FiniteLattice::Factored(f) => Ok(Some(f.join_irreducible_poset())),
        FiniteLattice::Materialized(m) => {
            if m.len() > guard {
                return Err(super::guard_error(m.len(), guard));
            }
            if !m.is_set_lattice() && is_distributive(m)?.is_some() {
                return Ok(None);
            }
            Ok(Some(birkhoff_sets(m)?.0))
        }
    }
}

/// Decides whether two lattices are isomorphic and returns a witness.
///
/// Distributive lattices are compared through their join-irreducible posets,
/// so factored products never need materializing. Two non-distributive
/// lattices are compared as whole orders; `guard` bounds materialized input.
pub fn are_isomorphic(
    l1: &FiniteLattice,
    l2: &FiniteLattice,
    guard: usize,
) -> Result<Option<IsoWitness>, LatticeError> {
    if l1.size() != l2.size() {
        return Ok(None);
    }
    let (p1, p2) = (ji_poset(l1, guard)?, ji_poset(l2, guard)?);
    let (p, q, via) = match (p1, p2) {
        (Some(p), Some(q)) => (p, q, "join-irreducibles"),
        (None, None) => {
            let m1 = l1.materialize(guard)?;
            let m2 = l2.materialize(guard)?;
            (m1.as_poset(), m2.as_poset(), "order")
        }
        _ => return Ok(None),
    };
    Ok(poset_isomorphism(&p, &q).map(|map| IsoWitness {
        via,
        pairs: map
            .iter()
            .enumerate()
            .map(|(i, &j)| (p.label(i).to_owned(), q.label(j).to_owned()))
            .collect(),
        map,
    }))
}

/// Extends a join-irreducible matching to the whole lattices: each element
/// goes to the join of the images of the join-irreducibles below it.
pub fn induced_element_map(
    l1: &super::MaterializedLattice,
    l2: &super::MaterializedLattice,
    ji_map: &[usize],
) -> Result<Vec<usize>, LatticeError> {
    let (_, sets1) = birkhoff_sets(l1)?;
    let (p2, sets2) = birkhoff_sets(l2)?;
    let index: HashMap<&FixedBitSet, usize> =
        sets2.iter().enumerate().map(|(i, s)| (s, i)).collect();
    sets1
        .iter()
        .map(|s| {
            let mut image = FixedBitSet::with_capacity(p2.len());
            image.extend(s.ones().map(|j| ji_map[j]));
            index
                .get(&image)
                .copied()
                .ok_or(LatticeError::UnknownElement(usize::MAX))
        })
        .collect()
}
