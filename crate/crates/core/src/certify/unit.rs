//! Zero-freeness for `0 < q < 1` with `q = 1 - r^2`, so `sqrt(1 - q) = r` is exact:
//! values, `q`-derivatives, the chromatic corollary at `q = 1`, and the matroid mirrors.

use num_traits::One;

use super::{
    anchor, assignments, graph_family, pairs, parity, rng_for, small_matroids, sweep, weight_grid, Collector, Instance,
    Quantity, Relation, SuiteConfig,
};
use crate::arith::{int, rat, Rational};
use crate::error::Result;
use crate::graph::{EdgeId, EdgeKind, MultiGraph, WeightAssignment};
use crate::matroid::{ElementKind, Matroid};
use crate::regions::RegionInterval;
use crate::tutte::{matroid_qpoly, z_over_qc};

const NAME: &str = "unit_interval";

fn qs() -> Vec<(Rational, Rational)> {
    [rat(1, 4), rat(1, 2), rat(3, 4)]
        .into_iter()
        .map(|r| (Rational::one() - &r * &r, r))
        .collect()
}

struct Grids {
    loops: Vec<Rational>,
    bridges: Vec<Rational>,
    normal: Vec<Rational>,
    /// `(-1 - r, -q)`, for the derivative statements.
    deriv: Vec<Rational>,
}

fn grids(q: &Rational, r: &Rational, rng: &mut impl rand::Rng, k: usize) -> Result<Grids> {
    Ok(Grids {
        loops: weight_grid(&RegionInterval::exact(int(-1), int(2), true, false)?, rng, k),
        bridges: weight_grid(&RegionInterval::exact(int(-3), -q.clone(), false, true)?, rng, k),
        normal: weight_grid(&RegionInterval::open(int(-1) - r, int(-1) + r)?, rng, k),
        deriv: weight_grid(&RegionInterval::open(int(-1) - r, -q.clone())?, rng, k),
    })
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    anchors(&mut col)?;
    let b = &cfg.bounds;
    let graphs = graph_family(b.max_edges, true, b.max_edges.saturating_sub(2));
    col.merge(sweep(NAME, &graphs, |i, g, c| graph_case(cfg, i as u64, g, c))?);
    let matroids = small_matroids(b.max_elements);
    col.merge(sweep(NAME, &matroids, |i, spec, c| {
        matroid_case(cfg, i as u64, &Instance::matroid(spec), &spec.build()?, c)
    })?);
    Ok(col)
}

fn anchors(col: &mut Collector) -> Result<()> {
    let q = rat(3, 4);
    // Roots of Z_{C_2} at v = -1 +- sqrt(1 - q): the normal-edge interval is sharp.
    let c2 = Instance::graph(&MultiGraph::k2_multi(2));
    col.eval(&c2, &q, &[(0, rat(-3, 2)), (1, rat(-3, 2))], Quantity::Z, Relation::Zero, "Z = 0 at v = -1 - sqrt(1-q)")?;
    col.eval(&c2, &q, &[(0, rat(-1, 2)), (1, rat(-1, 2))], Quantity::Z, Relation::Zero, "Z = 0 at v = -1 + sqrt(1-q)")?;
    // Trees: Z = q (q + v)^(n-1), so the bridge bound -q is sharp.
    let p2 = Instance::graph(&MultiGraph::path(2));
    col.eval(&p2, &q, &[(0, -q.clone()), (1, rat(-1, 2))], Quantity::Z, Relation::Zero, "Z = 0 at a bridge with v = -q")?;
    // C_4: P = (q-1)^4 + (q-1); the derivatives of P/q at q = 1 alternate in sign.
    let c4 = MultiGraph::cycle(4);
    let inst = Instance::graph(&c4);
    for l in 0..=4 {
        col.eval(
            &inst,
            &Rational::one(),
            &[],
            Quantity::ChromaticDerivativeAtOne { order: l },
            Relation::signed(parity(3 + l), false),
            "(-1)^(n-c-l) d^l (P/q^c) at q = 1 >= 0",
        )?;
    }
    Ok(())
}

fn graph_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed, stream);
    let ids = g.edge_ids();
    let inst = Instance::graph(g);
    let (n, c) = (g.n(), g.components());
    let kinds: Vec<EdgeKind> = ids.iter().map(|&e| g.classify_edge(e)).collect::<Result<_>>()?;
    let loopless = g.is_loopless();
    for (q, r) in qs() {
        let gr = grids(&q, &r, &mut rng, b.random_points)?;
        let per_edge: Vec<&[Rational]> = kinds
            .iter()
            .map(|k| match k {
                EdgeKind::Loop => &gr.loops[..],
                EdgeKind::Bridge => &gr.bridges[..],
                EdgeKind::Normal => &gr.normal[..],
            })
            .collect();
        for row in assignments(&per_edge, &mut rng, b.random_assignments) {
            let w = pairs(&ids, &row);
            col.eval(&inst, &q, &w, Quantity::Z, Relation::signed(parity(n + c), true), "(-1)^(n+c) Z > 0")?;
        }
        if loopless {
            let per_edge: Vec<&[Rational]> = ids.iter().map(|_| &gr.deriv[..]).collect();
            for row in assignments(&per_edge, &mut rng, b.random_assignments / 2) {
                let w = pairs(&ids, &row);
                let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
                let p = z_over_qc(g, &wa)?;
                for l in 0..=n - c {
                    col.check(
                        &inst,
                        &q,
                        &w,
                        Quantity::QDerivative { order: l },
                        Relation::signed(parity(n - c - l), true),
                        "(-1)^(n-c-l) d^l (Z/q^c) > 0",
                        &p.derivative(l).eval(&q),
                    );
                }
            }
        }
    }
    if loopless {
        for l in 0..=n - c + 1 {
            col.eval(
                &inst,
                &Rational::one(),
                &[],
                Quantity::ChromaticDerivativeAtOne { order: l },
                Relation::signed(parity(n - c + l), false),
                "(-1)^(n-c-l) d^l (P/q^c) at q = 1 >= 0",
            )?;
        }
        if g.m() > 0 {
            col.eval(
                &inst,
                &Rational::one(),
                &[],
                Quantity::ChromaticMultiplicityAtOne,
                Relation::Zero,
                "P has a root of multiplicity b at q = 1",
            )?;
        }
    }
    Ok(())
}

fn matroid_case(cfg: &SuiteConfig, stream: u64, inst: &Instance, m: &Matroid, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed ^ 0x3a7, stream);
    let labels = m.labels().to_vec();
    let kinds: Vec<ElementKind> = labels.iter().map(|&e| m.classify_element(e)).collect::<Result<_>>()?;
    let rank = m.full_rank();
    let loopless = !kinds.contains(&ElementKind::Loop);
    for (q, r) in qs() {
        let gr = grids(&q, &r, &mut rng, b.random_points / 2)?;
        let per: Vec<&[Rational]> = kinds
            .iter()
            .map(|k| match k {
                ElementKind::Loop => &gr.loops[..],
                ElementKind::Coloop => &gr.bridges[..],
                ElementKind::Normal => &gr.normal[..],
            })
            .collect();
        for row in assignments(&per, &mut rng, b.random_assignments / 2) {
            let w = pairs(&labels, &row);
            col.eval(inst, &q, &w, Quantity::Z, Relation::signed(parity(rank), true), "(-1)^r(M) Z~ > 0")?;
        }
        if loopless {
            let per: Vec<&[Rational]> = labels.iter().map(|_| &gr.deriv[..]).collect();
            for row in assignments(&per, &mut rng, 1) {
                let w = pairs(&labels, &row);
                let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
                let p = matroid_qpoly(m, &wa)?;
                for l in 0..=rank {
                    col.check(
                        inst,
                        &q,
                        &w,
                        Quantity::QDerivative { order: l },
                        Relation::signed(parity(rank - l), true),
                        "(-1)^(r(M)-l) d^l (q^r(M) Z~) > 0",
                        &p.derivative(l).eval(&q),
                    );
                }
            }
        }
    }
    Ok(())
}
