use std::collections::BTreeSet;

use super::{first_relation, Letter, StringError, StringWord};
use crate::lattice::{FinitePoset, LatticeError};
use crate::quiver::QuiverAlgebra;

/// Hard ceiling on the number of words visited in one enumeration.
const VISIT_LIMIT: usize = 2_000_000;

/// Canonical strings up to some length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Sorted, trivial strings first.
    pub strings: Vec<StringWord>,
    /// Whether longer strings exist.
    pub truncated: bool,
}

/// Word length beyond which a string must revisit an arrow state often
/// enough to pump, so longer strings mean bands or a non-admissible ideal.
fn length_cap(qa: &QuiverAlgebra) -> usize {
    let arrows = qa.arrows().len();
    1 + arrows * arrows * qa.max_relation_len().max(1)
}

/// Whether `x` may follow the nonempty word `w` on the right.
fn extends(qa: &QuiverAlgebra, w: &[Letter], x: Letter) -> bool {
    let last = *w.last().expect("nonempty word");
    if last.source(qa) != x.target(qa) || last == x.inverted() {
        return false;
    }
    // a new relation must sit in the last L letters
    let window = qa.max_relation_len().max(2);
    let start = (w.len() + 1).saturating_sub(window);
    let mut tail = w[start..].to_vec();
    tail.push(x);
    first_relation(qa, &tail).is_none()
}

fn all_letters(qa: &QuiverAlgebra) -> Vec<Letter> {
    (0..qa.arrows().len())
        .flat_map(|a| [Letter::direct(a), Letter::inverse_of(a)])
        .collect()
}

/// Breadth-first extension on the right, level by level. Returns the
/// canonical strings found and whether some word of length `max_len` still
/// extends.
fn walk(qa: &QuiverAlgebra, max_len: usize) -> Result<(BTreeSet<StringWord>, bool), StringError> {
    let letters = all_letters(qa);
    let mut found: BTreeSet<StringWord> = (0..qa.vertex_count()).map(StringWord::trivial).collect();
    let mut frontier: Vec<Vec<Letter>> = letters.iter().map(|&l| vec![l]).collect();
    let mut visited = 0usize;
    let mut len = 1;
    while !frontier.is_empty() {
        if len > max_len {
            return Ok((found, true));
        }
        let mut next = Vec::new();
        for w in frontier {
            visited += 1;
            if visited > VISIT_LIMIT {
                return Err(StringError::Unbounded { cap: len });
            }
            for &x in &letters {
                if extends(qa, &w, x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            let base = w[0].target(qa);
            found.insert(StringWord::from_parts_unchecked(w, base).canonical(qa));
        }
        frontier = next;
        len += 1;
    }
    Ok((found, false))
}

/// All canonical strings, trivial ones included, sorted.
///
/// Fails with [`StringError::Unbounded`] when strings exceed the pumping
/// bound, which happens exactly when there are bands or relation-free
/// cycles.
pub fn enumerate_strings(qa: &QuiverAlgebra) -> Result<Vec<StringWord>, StringError> {
    let cap = length_cap(qa);
    let (found, truncated) = walk(qa, cap)?;
    if truncated {
        return Err(StringError::Unbounded { cap });
    }
    Ok(found.into_iter().collect())
}

/// Canonical strings of at most `max_len` letters; works for any algebra.
pub fn enumerate_strings_up_to(
    qa: &QuiverAlgebra,
    max_len: usize,
) -> Result<Enumeration, StringError> {
    let (found, truncated) = walk(qa, max_len)?;
    Ok(Enumeration {
        strings: found.into_iter().collect(),
        truncated,
    })
}

/// Primitive bands of at most `max_len` letters, one per class under
/// rotation and inversion.
///
/// A band is a closed string every power of which is a string; it is
/// primitive when it is not itself a proper power.
pub fn detect_bands(qa: &QuiverAlgebra, max_len: usize) -> Result<Vec<StringWord>, StringError> {
    let letters = all_letters(qa);
    let reach = qa.max_relation_len().max(2);
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<Letter>> = letters.iter().map(|&l| vec![l]).collect();
    let mut visited = 0usize;
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for w in frontier {
            visited += 1;
            if visited > VISIT_LIMIT {
                return Err(StringError::Unbounded { cap: w.len() });
            }
            if is_band(qa, &w, reach) {
                out.insert(band_class(qa, &w));
            }
            for &x in &letters {
                if extends(qa, &w, x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    Ok(out.into_iter().collect())
}

fn is_band(qa: &QuiverAlgebra, w: &[Letter], reach: usize) -> bool {
    let n = w.len();
    if w[n - 1].source(qa) != w[0].target(qa) {
        return false;
    }
    if (1..n).any(|p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p])) {
        return false;
    }
    // enough copies that every window of length `reach` across a seam shows
    let copies = reach.div_ceil(n) + 2;
    let power: Vec<Letter> = w.iter().copied().cycle().take(n * copies).collect();
    StringWord::new(qa, power).is_ok()
}

/// Smallest representative among all rotations of `w` and of `w⁻¹`.
fn band_class(qa: &QuiverAlgebra, w: &[Letter]) -> StringWord {
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverted()).collect();
    let n = w.len();
    let best = [w.to_vec(), inv]
        .into_iter()
        .flat_map(|v| (0..n).map(move |r| [&v[r..], &v[..r]].concat()))
        .min()
        .expect("nonempty");
    let base = best[0].target(qa);
    StringWord::from_parts_unchecked(best, base)
}

fn colocal_precondition(operation: &'static str) -> StringError {
    StringError::Precondition {
        operation,
        requirement: "an algebra of colocal type",
    }
}

/// Truncations `w_ij` of the maximal word at `m`: the last `i` letters of
/// the inverse block and the first `j` letters of the direct block. Row `i`
/// runs over `j = 0..=l`.
pub fn socle_class_grid(qa: &QuiverAlgebra, m: usize) -> Result<Vec<Vec<StringWord>>, StringError> {
    let profile = qa
        .vertex_path_profile(m)
        .map_err(|_| colocal_precondition("socle_class_grid"))?;
    let (p, q) = (&profile.path_k, &profile.path_l);
    let (k, l) = (profile.k, profile.l);
    (0..=k)
        .map(|i| {
            (0..=l)
                .map(|j| {
                    let letters: Vec<Letter> = p[k - i..]
                        .iter()
                        .map(|&a| Letter::inverse_of(a))
                        .chain(q[l - j..].iter().rev().map(|&a| Letter::direct(a)))
                        .collect();
                    if letters.is_empty() {
                        Ok(StringWord::trivial(m))
                    } else {
                        StringWord::new(qa, letters)
                    }
                })
                .collect()
        })
        .collect()
}

/// The word of the maximal colocal module `M_m`: the longer maximal path
/// ending at `m` as an inverse block, followed by the other as a direct
/// block.
pub fn maximal_colocal_module(qa: &QuiverAlgebra, m: usize) -> Result<StringWord, StringError> {
    let grid = socle_class_grid(qa, m)?;
    Ok(grid
        .last()
        .and_then(|row| row.last())
        .cloned()
        .expect("grid is nonempty"))
}

/// Canonical strings whose modules embed in `M_m`, sorted.
pub fn socle_class(qa: &QuiverAlgebra, m: usize) -> Result<Vec<StringWord>, StringError> {
    let top = maximal_colocal_module(qa, m)?;
    Ok(enumerate_strings(qa)?
        .into_iter()
        .filter(|w| qa.is_submodule(w, &top))
        .collect())
}

/// Order on `strings` by submodule inclusion, labelled by string text.
pub fn submodule_poset(
    qa: &QuiverAlgebra,
    strings: &[StringWord],
) -> Result<FinitePoset, StringError> {
    let leq: Vec<Vec<bool>> = strings
        .iter()
        .map(|a| strings.iter().map(|b| qa.is_submodule(a, b)).collect())
        .collect();
    let labels = strings.iter().map(|w| w.to_text(qa)).collect();
    FinitePoset::from_leq(labels, |a, b| leq[a][b]).map_err(|e| match e {
        LatticeError::NotAntisymmetric(a, b) => StringError::NotAntisymmetric(a, b),
        LatticeError::NotTransitive(a, b) => StringError::NotTransitive(a, b),
        other => unreachable!("is_submodule is reflexive: {other}"),
    })
}
