//! Graphviz output for Hasse diagrams.

use std::collections::BTreeMap;
use std::fmt::Write;

use heckeposet::LabeledPoset;

/// Longest-path layering: minimal elements get rank 0.
pub fn ranks(p: &LabeledPoset) -> Vec<usize> {
    let covers = p.covers();
    let mut rank = vec![0usize; p.n() + 1];
    // Covers go up, so relaxing `n` times reaches the longest paths.
    for _ in 0..p.n() {
        for &(u, v) in &covers {
            rank[v] = rank[v].max(rank[u] + 1);
        }
    }
    rank[1..].to_vec()
}

/// The Hasse diagram as a DOT digraph drawn bottom to top. Strict covers
/// `u ⋖ v` with `u > v` get `penwidth=2`.
pub fn hasse_dot(p: &LabeledPoset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for v in 1..=p.n() {
        writeln!(out, "  {v};").unwrap();
    }
    let mut layers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, r) in ranks(p).into_iter().enumerate() {
        layers.entry(r).or_default().push(k + 1);
    }
    for nodes in layers.values() {
        let ids: Vec<String> = nodes.iter().map(usize::to_string).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for (u, v) in p.covers() {
        let width = if LabeledPoset::is_strict_cover(u, v) { 2 } else { 1 };
        writeln!(out, "  {u} -> {v} [penwidth={width}];").unwrap();
    }
    out.push_str("}\n");
    out
}
