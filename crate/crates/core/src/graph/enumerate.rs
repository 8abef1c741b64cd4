//! Exhaustive generation of small graphs up to isomorphism.

use std::collections::HashSet;

use super::{canonical_key, MultiGraph};
use crate::error::{Error, Result};

/// Connected multigraphs by edge count: `levels[m]` holds every class with `m` edges.
///
/// Built by adding one edge at a time (between existing vertices, as a loop
/// when `loops` is set, or to a new pendant vertex), deduplicated by canonical key.
pub fn connected_multigraphs(max_edges: usize, loops: bool) -> Vec<Vec<MultiGraph>> {
    let mut levels = vec![vec![MultiGraph::empty(1)]];
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in levels.last().expect("nonempty") {
            let n = g.n();
            let mut push = |h: MultiGraph| {
                if seen.insert(canonical_key(&h)) {
                    next.push(h);
                }
            };
            for u in 0..n {
                for v in u..n {
                    if u == v && !loops {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v).expect("in range");
                    push(h);
                }
                let mut h = g.clone();
                let w = h.add_vertex();
                h.add_edge(u, w).expect("in range");
                push(h);
            }
        }
        levels.push(next);
    }
    levels
}

/// Loopless non-separable multigraphs with exactly `m >= 2` edges.
pub fn nonseparable_multigraphs(m: usize) -> Vec<MultiGraph> {
    if m < 2 {
        return Vec::new();
    }
    connected_multigraphs(m, false)
        .pop()
        .expect("level m")
        .into_iter()
        .filter(|g| g.is_nonseparable())
        .collect()
}

/// Loopless non-separable multigraphs with `m` edges, for `2 <= m <= 5`.
pub fn enumerate_nonseparable(m: usize) -> Result<Vec<MultiGraph>> {
    if !(2..=5).contains(&m) {
        return Err(Error::Precondition(format!("edge count {m} outside 2..=5")));
    }
    Ok(nonseparable_multigraphs(m))
}

/// Simple graphs on exactly `n` vertices, one per isomorphism class.
pub fn simple_graphs(n: usize) -> Vec<MultiGraph> {
    let mut all = vec![MultiGraph::empty(n)];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &frontier {
            let mut adj = vec![vec![false; n]; n];
            for e in g.edges() {
                adj[e.u][e.v] = true;
                adj[e.v][e.u] = true;
            }
            for (u, row) in adj.iter().enumerate() {
                for (v, &present) in row.iter().enumerate().skip(u + 1) {
                    if present {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v).expect("in range");
                    if seen.insert(canonical_key(&h)) {
                        next.push(h);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Loopless graphs with at most `max_edges` edges whose nontrivial blocks
/// each carry at least `min_block` edges: single blocks, two blocks sharing
/// a vertex, two disjoint blocks, and a single block plus an isolated vertex.
pub fn block_graphs(min_block: usize, max_edges: usize) -> Vec<MultiGraph> {
    let levels = connected_multigraphs(max_edges, false);
    let blocks: Vec<MultiGraph> = levels
        .iter()
        .skip(min_block.max(1))
        .flatten()
        .filter(|g| g.is_nonseparable())
        .cloned()
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |h: MultiGraph| {
        if seen.insert(canonical_key(&h)) {
            out.push(h.relabel_edges());
        }
    };
    for a in &blocks {
        push(a.clone());
        let mut iso = a.clone();
        iso.add_vertex();
        push(iso);
    }
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i..] {
            if a.m() + b.m() > max_edges {
                continue;
            }
            push(a.disjoint_union(b));
            for x in 0..a.n() {
                for y in 0..b.n() {
                    push(a.glue(x, b, y).expect("in range"));
                }
            }
        }
    }
    out
}
