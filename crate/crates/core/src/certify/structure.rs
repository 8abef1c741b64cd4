//! Combinatorial inputs of the block theorem: splitting edges of simple
//! 2-connected graphs, splitting elements of 2-connected matroids, and the sign
//! failures that force `gamma = 0, q < 1` or `gamma = 1, q > 1`.

use super::{anchor, parity, small_matroids, sweep, Collector, Instance, MatroidSpec, Quantity, Relation, SuiteConfig};
use crate::arith::{int, rat, Rational};
use crate::error::Result;
use crate::graph::{simple_graphs, MultiGraph};
use crate::matroid::Matroid;

const NAME: &str = "structure";

/// Number of 2-element circuits.
pub fn two_circuits(m: &Matroid) -> usize {
    let n = m.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (1u64 << i, 1u64 << j);
            if m.rank(a) == 1 && m.rank(b) == 1 && m.rank(a | b) == 1 {
                count += 1;
            }
        }
    }
    count
}

fn degree_two_vertices(g: &MultiGraph) -> usize {
    (0..g.n()).filter(|&x| g.degree(x) == 2).count()
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    col.eval(&Instance::graph(&MultiGraph::complete(4)), &int(0), &[], Quantity::SplittingEdge, Relation::Positive, "K4 has a splitting edge")?;
    let u24 = Instance::matroid(&MatroidSpec::Uniform { rank: 2, size: 4 });
    col.eval(&u24, &int(0), &[], Quantity::SplittingElement, Relation::Positive, "U24 has a splitting element")?;
    let b = &cfg.bounds;
    let graphs: Vec<MultiGraph> = (3..=b.max_vertices)
        .flat_map(simple_graphs)
        .filter(|g| g.is_2connected() && degree_two_vertices(g) <= 1)
        .collect();
    col.merge(sweep(NAME, &graphs, |_, g, c| {
        c.eval(&Instance::graph(g), &int(0), &[], Quantity::SplittingEdge, Relation::Positive, "G - e and G / e are 2-connected")
    })?);
    let mut matroids = Vec::new();
    for spec in small_matroids(b.max_elements) {
        let m = spec.build()?;
        if m.len() >= 2 && m.is_2connected()? && two_circuits(&m) + two_circuits(&m.dual()) <= 1 {
            matroids.push(spec);
        }
    }
    matroids.sort();
    matroids.dedup();
    col.merge(sweep(NAME, &matroids, |_, spec, c| {
        c.eval(&Instance::matroid(spec), &int(0), &[], Quantity::SplittingElement, Relation::Positive, "M - e and M / e are 2-connected")
    })?);
    for m in 2..=4 {
        counterexamples(&mut col, m)?;
    }
    Ok(col)
}

/// `C_3` with one edge repeated until it has `m >= 3` edges.
fn fat_triangle(m: usize) -> Result<MultiGraph> {
    let mut g = MultiGraph::cycle(3);
    for _ in 3..m {
        g.add_edge(0, 1)?;
    }
    Ok(g)
}

/// Records that `(-1)^(|V|-1+gamma) Z > 0` fails on a 2-connected graph with `m` edges.
fn failure(col: &mut Collector, g: &MultiGraph, gamma: usize, q: &Rational, v: &Rational, why: &str) -> Result<()> {
    let w: Vec<(usize, Rational)> = g.edge_ids().iter().map(|e| (e.0, v.clone())).collect();
    let s = parity(g.n() - 1 + gamma);
    col.eval(&Instance::graph(g), q, &w, Quantity::Z, Relation::signed(-s, false), why)
}

/// The constructions behind the restriction on `(gamma, q)` and on the weight set.
fn counterexamples(col: &mut Collector, m: usize) -> Result<()> {
    let bundle = MultiGraph::k2_multi(m);
    let odd_vertices = if m >= 3 { Some(fat_triangle(m)?) } else { None };
    // Z_{K2^(m)} = q [q - 1 + prod (1 + v)] with prod (1 + v) small.
    let near = rat(-7, 8);
    failure(col, &bundle, 0, &rat(3, 2), &near, "gamma = 0 fails for q > 1")?;
    failure(col, &bundle, 1, &rat(1, 2), &near, "gamma = 1 fails for q < 1")?;
    // Z(1, v) = prod (1 + v).
    let one = int(1);
    failure(col, &bundle, 0, &one, &rat(-1, 2), "q = 1 with v in [-1, 0), |V| + gamma even")?;
    if let Some(g) = &odd_vertices {
        failure(col, g, 1, &one, &rat(-1, 2), "q = 1 with v in [-1, 0), |V| + gamma even")?;
    }
    let below = rat(-3, 2);
    failure(col, &MultiGraph::cycle(m), 0, &one, &below, "q = 1 with v in (-2, -1], |E| - |V| + gamma even")?;
    if m % 2 == 1 {
        failure(col, &bundle, 1, &one, &below, "q = 1 with v in (-2, -1], |E| - |V| + gamma even")?;
    } else if let Some(g) = &odd_vertices {
        failure(col, g, 1, &one, &below, "q = 1 with v in (-2, -1], |E| - |V| + gamma even")?;
    }
    // Nonnegative weights give Z > 0 for q > 0.
    for q in [rat(1, 2), rat(3, 2)] {
        failure(col, &bundle, 0, &q, &rat(1, 2), "v >= 0 with |V| + gamma even")?;
        if let Some(g) = &odd_vertices {
            failure(col, g, 1, &q, &rat(1, 2), "v >= 0 with |V| + gamma even")?;
        }
    }
    Ok(())
}
