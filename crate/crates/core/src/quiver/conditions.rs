//! Admissibility, string-algebra axioms, the conditions C1 to C3 and the
//! structural colocal criterion.
//!
//! Modules are ordinary representations: an arrow `a` acts from the space at
//! `s(a)` to the space at `e(a)`. Hence `Ext¹(S_i, S_j)` has dimension equal to
//! the number of arrows `i -> j`, C1 bounds out-degrees and C2 in-degrees.

use std::collections::HashMap;

use serde::Serialize;

use super::{Condition, ConditionReport, QuiverAlgebra, QuiverError, VertexId, Witness};

/// Dimensions of `Ext¹` between simples: entry `(i, j)` counts arrows `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtMatrix {
    pub vertices: Vec<VertexId>,
    pub entries: Vec<Vec<usize>>,
}

impl ExtMatrix {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.entries[i].iter().sum()
    }

    pub fn column_sum(&self, j: usize) -> usize {
        self.entries.iter().map(|row| row[j]).sum()
    }
}

/// The maximal relation-free paths ending at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPathProfile {
    #[serde(skip)]
    pub vertex: usize,
    #[serde(rename = "vertex")]
    pub vertex_id: VertexId,
    pub k: usize,
    pub l: usize,
    /// Arrow indices in traversal order; the last arrow ends at the vertex.
    #[serde(skip)]
    pub path_k: Vec<usize>,
    #[serde(skip)]
    pub path_l: Vec<usize>,
    #[serde(rename = "path_k")]
    pub path_k_names: Vec<String>,
    #[serde(rename = "path_l")]
    pub path_l_names: Vec<String>,
}

impl QuiverAlgebra {
    pub fn ext1_matrix(&self) -> ExtMatrix {
        let n = self.vertex_count();
        let mut entries = vec![vec![0; n]; n];
        for a in self.arrows() {
            entries[a.source][a.target] += 1;
        }
        ExtMatrix {
            vertices: self.vertices().to_vec(),
            entries,
        }
    }

    /// Admissible means every sufficiently long path contains a relation.
    pub fn check_admissible(&self) -> ConditionReport {
        let witnesses = self
            .relation_free_cycle()
            .map(|cycle| Witness::RelationFreeCycle {
                arrows: self.path_names(&cycle),
            })
            .into_iter()
            .collect();
        ConditionReport::from_witnesses(Condition::Admissible, witnesses)
    }

    pub fn is_admissible(&self) -> bool {
        self.relation_free_cycle().is_none()
    }

    /// A closed walk whose every power is relation-free, if one exists.
    ///
    /// Runs a depth-first search over the automaton whose states are the
    /// last `max(L - 1, 1)` arrows of a relation-free path (`L` the longest
    /// relation). A relation can only end at a newly appended arrow, so a
    /// suffix scan of length `L` decides each transition; the automaton has a
    /// cycle exactly when arbitrarily long relation-free paths exist.
    pub fn relation_free_cycle(&self) -> Option<Vec<usize>> {
        let window = self.max_relation_len().saturating_sub(1).max(1);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states: Vec<Vec<usize>> = Vec::new();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color: Vec<u8> = Vec::new();

        let mut intern = |s: Vec<usize>, states: &mut Vec<Vec<usize>>, color: &mut Vec<u8>| {
            *ids.entry(s.clone()).or_insert_with(|| {
                states.push(s);
                color.push(0);
                states.len() - 1
            })
        };

        for start in 0..self.arrows().len() {
            let root = intern(vec![start], &mut states, &mut color);
            if color[root] != 0 {
                continue;
            }
            // (state, successors still to visit)
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            color[root] = 1;
            let succ = self.automaton_successors(&states[root]);
            stack.push((root, succ));
            while let Some((state, pending)) = stack.last_mut() {
                let state = *state;
                let Some(arrow) = pending.pop() else {
                    color[state] = 2;
                    stack.pop();
                    continue;
                };
                let mut next = states[state].clone();
                next.push(arrow);
                let keep = next.len().saturating_sub(window);
                let next = next.split_off(keep);
                let id = intern(next, &mut states, &mut color);
                match color[id] {
                    0 => {
                        color[id] = 1;
                        let succ = self.automaton_successors(&states[id]);
                        stack.push((id, succ));
                    }
                    1 => {
                        let pos = stack.iter().position(|(s, _)| *s == id).unwrap();
                        let cycle: Vec<usize> = stack[pos..]
                            .iter()
                            .map(|(s, _)| *states[*s].last().unwrap())
                            .collect();
                        return Some(primitive_root(cycle));
                    }
                    _ => {}
                }
            }
        }
        None
    }

    fn automaton_successors(&self, state: &[usize]) -> Vec<usize> {
        let head = self.arrow(*state.last().unwrap()).target;
        let mut path = state.to_vec();
        let mut out: Vec<usize> = self
            .out_arrows(head)
            .filter(|&c| {
                path.push(c);
                let ok = !self.relation_ends_at(&path);
                path.pop();
                ok
            })
            .collect();
        // popped from the back, so visit in ascending arrow order
        out.reverse();
        out
    }

    /// Arrows `γ` with `e(γ) = s(arrow)` such that `γ` then `arrow` is not a
    /// relation.
    pub fn free_predecessors(&self, arrow: usize) -> Vec<usize> {
        self.in_arrows(self.arrow(arrow).source)
            .filter(|&g| !self.is_relation(&[g, arrow]))
            .collect()
    }

    /// Arrows `β` with `s(β) = e(arrow)` such that `arrow` then `β` is not a
    /// relation.
    pub fn free_successors(&self, arrow: usize) -> Vec<usize> {
        self.out_arrows(self.arrow(arrow).target)
            .filter(|&b| !self.is_relation(&[arrow, b]))
            .collect()
    }

    /// String-algebra axioms 1 to 4: at most two arrows start and at most two
    /// end at each vertex, and every arrow has at most one relation-free
    /// predecessor and at most one relation-free successor. Axioms 5 and 6
    /// are [`check_admissible`](Self::check_admissible).
    pub fn is_string_algebra(&self) -> ConditionReport {
        let mut witnesses = Vec::new();
        for v in 0..self.vertex_count() {
            let out: Vec<usize> = self.out_arrows(v).collect();
            if out.len() > 2 {
                witnesses.push(Witness::Axiom {
                    axiom: 1,
                    witness: Box::new(Witness::OutDegree {
                        vertex: self.vertex_id(v).clone(),
                        arrows: self.path_names(&out),
                    }),
                });
            }
        }
        for v in 0..self.vertex_count() {
            let inc: Vec<usize> = self.in_arrows(v).collect();
            if inc.len() > 2 {
                witnesses.push(Witness::Axiom {
                    axiom: 2,
                    witness: Box::new(Witness::InDegree {
                        vertex: self.vertex_id(v).clone(),
                        arrows: self.path_names(&inc),
                    }),
                });
            }
        }
        for a in 0..self.arrows().len() {
            let preds = self.free_predecessors(a);
            if preds.len() > 1 {
                witnesses.push(Witness::Axiom {
                    axiom: 3,
                    witness: Box::new(Witness::Predecessors {
                        vertex: self.vertex_id(self.arrow(a).source).clone(),
                        arrow: self.arrow(a).name.clone(),
                        predecessors: self.path_names(&preds),
                    }),
                });
            }
        }
        for a in 0..self.arrows().len() {
            let succs = self.free_successors(a);
            if succs.len() > 1 {
                witnesses.push(Witness::Axiom {
                    axiom: 4,
                    witness: Box::new(Witness::Successors {
                        vertex: self.vertex_id(self.arrow(a).target).clone(),
                        arrow: self.arrow(a).name.clone(),
                        successors: self.path_names(&succs),
                    }),
                });
            }
        }
        ConditionReport::from_witnesses(Condition::StringAlgebra, witnesses)
    }

    /// C1: for each simple `S`, the sum of `d¹(S, T)` over simples `T` is at
    /// most 1, i.e. every vertex has out-degree at most 1.
    pub fn check_c1(&self) -> ConditionReport {
        let witnesses = (0..self.vertex_count())
            .filter_map(|v| {
                let out: Vec<usize> = self.out_arrows(v).collect();
                (out.len() > 1).then(|| Witness::OutDegree {
                    vertex: self.vertex_id(v).clone(),
                    arrows: self.path_names(&out),
                })
            })
            .collect();
        ConditionReport::from_witnesses(Condition::C1, witnesses)
    }

    /// C2: every vertex has in-degree at most 2.
    pub fn check_c2(&self) -> ConditionReport {
        let witnesses = (0..self.vertex_count())
            .filter_map(|v| {
                let inc: Vec<usize> = self.in_arrows(v).collect();
                (inc.len() > 2).then(|| Witness::InDegree {
                    vertex: self.vertex_id(v).clone(),
                    arrows: self.path_names(&inc),
                })
            })
            .collect();
        ConditionReport::from_witnesses(Condition::C2, witnesses)
    }

    /// C3, evaluated where C1 holds: for each vertex `v` with its (unique)
    /// outgoing arrow `b`, at most one arrow `a` ending at `v` makes the
    /// length-two path `a` then `b` relation-free.
    pub fn check_c3(&self) -> Result<ConditionReport, QuiverError> {
        if !self.check_c1().passed {
            return Err(QuiverError::Precondition {
                operation: "check_c3",
                requirement: "C1 to hold",
            });
        }
        let mut witnesses = Vec::new();
        for v in 0..self.vertex_count() {
            for b in self.out_arrows(v) {
                let preds = self.free_predecessors(b);
                if preds.len() > 1 {
                    witnesses.push(Witness::Predecessors {
                        vertex: self.vertex_id(v).clone(),
                        arrow: self.arrow(b).name.clone(),
                        predecessors: self.path_names(&preds),
                    });
                }
            }
        }
        Ok(ConditionReport::from_witnesses(Condition::C3, witnesses))
    }

    /// Colocal type via the structural criterion: admissible string algebra
    /// in which no vertex starts more than one arrow.
    pub fn is_colocal_type_structural(&self) -> ConditionReport {
        let mut witnesses = Vec::new();
        let sub = [
            self.check_admissible(),
            self.is_string_algebra(),
            self.check_c1(),
        ];
        for report in sub {
            witnesses.extend(report.witnesses.into_iter().map(|w| Witness::Failed {
                condition: report.condition,
                witness: Box::new(w),
            }));
        }
        ConditionReport::from_witnesses(Condition::Colocal, witnesses)
    }

    /// Two arrows share source and target (two loops at one vertex count).
    pub fn has_kronecker_subquiver(&self) -> bool {
        let m = self.ext1_matrix();
        m.entries.iter().flatten().any(|&c| c >= 2)
    }

    /// The unique maximal relation-free path ending with `arrow`, found by
    /// extending backwards through relation-free predecessors.
    ///
    /// Returns `None` when some extension step is ambiguous (more than one
    /// predecessor keeps the path relation-free) or the path does not
    /// terminate within the admissibility bound.
    pub fn maximal_path_ending_with(&self, arrow: usize) -> Option<Vec<usize>> {
        let bound = self.arrows().len() * self.max_relation_len().max(1) + 1;
        let mut rev = vec![arrow];
        loop {
            if rev.len() > bound {
                return None;
            }
            let head = self.arrow(*rev.last().unwrap()).source;
            let mut candidates = self.in_arrows(head).filter(|&g| {
                let path: Vec<usize> = std::iter::once(g)
                    .chain(rev.iter().rev().copied())
                    .collect();
                !self.contains_relation(&path)
            });
            match (candidates.next(), candidates.next()) {
                (None, _) => break,
                (Some(g), None) => rev.push(g),
                (Some(_), Some(_)) => return None,
            }
        }
        rev.reverse();
        Some(rev)
    }

    /// Lengths and witnesses of the maximal relation-free paths ending at
    /// vertex `m`. Requires colocal type.
    pub fn vertex_path_profile(&self, m: usize) -> Result<VertexPathProfile, QuiverError> {
        if m >= self.vertex_count() {
            return Err(QuiverError::NoSuchVertex(VertexId::new(m.to_string())));
        }
        if !self.is_colocal_type_structural().passed {
            return Err(QuiverError::Precondition {
                operation: "vertex_path_profile",
                requirement: "an algebra of colocal type",
            });
        }
        let mut paths: Vec<Vec<usize>> = self
            .in_arrows(m)
            .map(|a| {
                self.maximal_path_ending_with(a)
                    .expect("colocal type gives unique terminating extensions")
            })
            .collect();
        paths.sort_by(|p, q| q.len().cmp(&p.len()).then_with(|| p.last().cmp(&q.last())));
        let path_k = paths.first().cloned().unwrap_or_default();
        let path_l = if paths.len() == 2 {
            paths[1].clone()
        } else {
            Vec::new()
        };
        Ok(VertexPathProfile {
            vertex: m,
            vertex_id: self.vertex_id(m).clone(),
            k: path_k.len(),
            l: path_l.len(),
            path_k_names: self.path_names(&path_k),
            path_l_names: self.path_names(&path_l),
            path_k,
            path_l,
        })
    }
}

/// Shortest word whose power is `cycle`.
fn primitive_root(cycle: Vec<usize>) -> Vec<usize> {
    let n = cycle.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| cycle[i] == cycle[i - p]))
        .map(|p| cycle[..p].to_vec())
        .unwrap_or(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver_spec;

    fn q(text: &str) -> QuiverAlgebra {
        parse_quiver_spec(text).unwrap()
    }

    const KRONECKER: &str = "vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2";
    const A2: &str = "vertices: 1 2\narrow a: 1 -> 2";
    const SOURCE_SINK: &str = "vertices: 1 2 3\narrow a: 1 -> 3\narrow b: 2 -> 3";
    const LOOP_TAIL: &str = "vertices: 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a a";

    /// Exhaustive search for a relation-free path of the given length.
    fn has_relation_free_path(qa: &QuiverAlgebra, len: usize) -> bool {
        fn go(qa: &QuiverAlgebra, path: &mut Vec<usize>, len: usize) -> bool {
            if path.len() == len {
                return true;
            }
            let candidates: Vec<usize> = match path.last() {
                None => (0..qa.arrows().len()).collect(),
                Some(&a) => qa.out_arrows(qa.arrow(a).target).collect(),
            };
            for c in candidates {
                path.push(c);
                let ok = !qa.contains_relation(path) && go(qa, path, len);
                path.pop();
                if ok {
                    return true;
                }
            }
            false
        }
        go(qa, &mut Vec::new(), len)
    }

    #[test]
    fn ext_matrix_counts_arrows() {
        let k = q(KRONECKER).ext1_matrix();
        assert_eq!(k.entries, vec![vec![0, 2], vec![0, 0]]);
        let l = q("vertices: 1\narrow a: 1 -> 1").ext1_matrix();
        assert_eq!(l.get(0, 0), 1);
        let s = q(SOURCE_SINK).ext1_matrix();
        assert_eq!((s.get(0, 2), s.get(1, 2)), (1, 1));
        assert_eq!(s.entries.iter().flatten().sum::<usize>(), 2);
        assert_eq!(s.column_sum(2), 2);
        assert_eq!(s.row_sum(0), 1);
    }

    #[test]
    fn admissibility_examples() {
        assert!(
            q("vertices: 1\narrow a: 1 -> 1\nrelation a a")
                .check_admissible()
                .passed
        );
        let free_loop = q("vertices: 1\narrow a: 1 -> 1").check_admissible();
        assert!(!free_loop.passed);
        assert_eq!(
            free_loop.witnesses,
            vec![Witness::RelationFreeCycle {
                arrows: vec!["a".into()]
            }]
        );
        let tri = q(
            "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\nrelation a b c",
        );
        assert!(tri.check_admissible().passed);
        // pumping bound: arrows * longest relation
        assert!(!has_relation_free_path(&tri, 3 * 3));
        let tri_free = tri.with_relations(vec![]).unwrap();
        let report = tri_free.check_admissible();
        assert!(!report.passed);
        let Witness::RelationFreeCycle { arrows } = &report.witnesses[0] else {
            panic!()
        };
        assert_eq!(arrows.len(), 3);
    }

    #[test]
    fn relation_free_cycle_witness_is_a_relation_free_closed_walk() {
        let qa = q("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow c: 2 -> 2\nrelation a b\nrelation c c");
        let cycle = qa
            .relation_free_cycle()
            .expect("a c b c ... is relation-free");
        let tripled: Vec<usize> = cycle
            .iter()
            .cycle()
            .take(cycle.len() * 3)
            .copied()
            .collect();
        assert!(qa.is_path(&tripled));
        let closes = qa.arrow(*cycle.last().unwrap()).target == qa.arrow(cycle[0]).source;
        assert!(closes);
        assert!(!qa.contains_relation(&tripled));
    }

    #[test]
    fn string_axiom_examples() {
        assert!(q(KRONECKER).is_string_algebra().passed);
        assert!(q(LOOP_TAIL).is_string_algebra().passed);
        let three_out = q("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\narrow c: 1 -> 2")
            .is_string_algebra();
        assert!(!three_out.passed);
        assert!(three_out
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::Axiom { axiom: 1, .. })));
    }

    #[test]
    fn c1_c2_examples() {
        let k = q(KRONECKER).check_c1();
        assert!(!k.passed);
        assert_eq!(
            k.witnesses,
            vec![Witness::OutDegree {
                vertex: "1".into(),
                arrows: vec!["a".into(), "b".into()]
            }]
        );
        let s = q(SOURCE_SINK);
        assert!(s.check_c1().passed && s.check_c2().passed);
        let three_in =
            q("vertices: 1 2 3 4\narrow a: 1 -> 4\narrow b: 2 -> 4\narrow c: 3 -> 4").check_c2();
        assert!(!three_in.passed);
    }

    #[test]
    fn c3_examples() {
        assert!(q(LOOP_TAIL).check_c3().unwrap().passed);
        let two =
            q("vertices: 1 2 3 4\narrow p: 1 -> 2\narrow g: 3 -> 2\narrow b: 2 -> 4").check_c3();
        let two = two.unwrap();
        assert!(!two.passed);
        assert_eq!(
            two.witnesses,
            vec![Witness::Predecessors {
                vertex: "2".into(),
                arrow: "b".into(),
                predecessors: vec!["g".into(), "p".into()]
            }]
        );
        assert!(q(KRONECKER).check_c3().is_err());
    }

    #[test]
    fn structural_criterion_examples() {
        assert!(q(A2).is_colocal_type_structural().passed);
        assert!(!q(KRONECKER).is_colocal_type_structural().passed);
        assert!(q(LOOP_TAIL).is_colocal_type_structural().passed);
        assert!(q("").is_colocal_type_structural().passed);
        assert!(q("vertices: 1 2 3").is_colocal_type_structural().passed);
    }

    #[test]
    fn kronecker_detection() {
        assert!(q(KRONECKER).has_kronecker_subquiver());
        assert!(!q(A2).has_kronecker_subquiver());
        assert!(q("vertices: 1\narrow a: 1 -> 1\narrow b: 1 -> 1").has_kronecker_subquiver());
    }

    #[test]
    fn profile_examples() {
        let a2 = q(A2);
        let p = a2.vertex_path_profile(1).unwrap();
        assert_eq!((p.k, p.l), (1, 0));
        assert_eq!(p.path_k_names, ["a"]);
        let p = a2.vertex_path_profile(0).unwrap();
        assert_eq!((p.k, p.l), (0, 0));

        let lt = q(LOOP_TAIL);
        let p = lt.vertex_path_profile(1).unwrap();
        assert_eq!((p.k, p.l), (2, 1));
        assert_eq!(p.path_k_names, ["b", "a"]);
        assert_eq!(p.path_l_names, ["b"]);

        assert!(q(KRONECKER).vertex_path_profile(1).is_err());
    }
}
