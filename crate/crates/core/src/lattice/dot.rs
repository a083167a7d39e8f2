use std::fmt::Write;

use super::MaterializedLattice;

/// Cover edges as `lower -> upper` lines, sorted.
pub fn hasse_lines(l: &MaterializedLattice) -> Vec<String> {
    let mut lines: Vec<String> = l
        .hasse_edges()
        .into_iter()
        .map(|(lo, hi)| format!("{} -> {}", l.label(lo), l.label(hi)))
        .collect();
    lines.sort();
    lines
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph of the Hasse diagram, edges pointing from lower to
/// upper cover, one rank per height.
pub fn to_dot(l: &MaterializedLattice, name: &str) -> String {
    let heights = l.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quoted(name)).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for h in 0..=top {
        let mut rank: Vec<&str> = (0..l.len())
            .filter(|&i| heights[i] == h)
            .map(|i| l.label(i))
            .collect();
        if rank.is_empty() {
            continue;
        }
        rank.sort_unstable();
        let names: Vec<String> = rank.iter().map(|s| quoted(s)).collect();
        writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
    }
    let mut edges: Vec<(&str, &str)> = l
        .hasse_edges()
        .into_iter()
        .map(|(lo, hi)| (l.label(lo), l.label(hi)))
        .collect();
    edges.sort_unstable();
    for (lo, hi) in edges {
        writeln!(out, "  {} -> {};", quoted(lo), quoted(hi)).unwrap();
    }
    out.push_str("}\n");
    out
}
