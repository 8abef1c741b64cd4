//! Sign alternation for `q < 0`: coefficients, values, derivatives, the matroid
//! version, and the dual regime `v >= -q/2`.

use num_traits::{One, Signed, Zero};

use super::{
    anchor, assignments, graph_family, pairs, parity, rng_for, small_matroids, sweep, weight_grid, Collector, Instance,
    Quantity, Relation, SuiteConfig,
};
use crate::arith::{int, rat, Rational};
use crate::error::Result;
use crate::graph::{EdgeId, EdgeKind, MultiGraph, WeightAssignment};
use crate::matroid::ElementKind;
use crate::regions::RegionInterval;
use crate::tutte::{coeff_partial_derivative, coeff_partial_derivative_matroid, coeffs, coeffs_matroid};

const NAME: &str = "q_negative";

fn qs() -> [Rational; 3] {
    [int(-3), int(-1), rat(-1, 2)]
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    anchors(&mut col)?;
    let b = &cfg.bounds;
    let graphs = graph_family(b.max_edges, true, b.max_edges.saturating_sub(2));
    col.merge(sweep(NAME, &graphs, |i, g, c| graph_case(cfg, i as u64, g, c))?);
    col.merge(sweep(NAME, &graphs, |i, g, c| dual_regime_case(cfg, i as u64, g, c))?);
    let matroids = small_matroids(b.max_elements);
    col.merge(sweep(NAME, &matroids, |i, spec, c| {
        matroid_case(cfg, i as u64, &Instance::matroid(spec), &spec.build()?, c)
    })?);
    Ok(col)
}

fn anchors(col: &mut Collector) -> Result<()> {
    // Triangle in the dual regime: Z = -1 + 3/2 - 3/4 - 1/8 = -3/8.
    let c3 = Instance::graph(&MultiGraph::cycle(3));
    let half = [(0, rat(1, 2)), (1, rat(1, 2)), (2, rat(1, 2))];
    col.eval(&c3, &int(-1), &half, Quantity::Z, Relation::Negative, "(-1)^c Z > 0")?;
    // K2^(m) at v = -2, m even: Z = q^2.
    for m in [2usize, 4] {
        let g = Instance::graph(&MultiGraph::k2_multi(m));
        let w: Vec<_> = (0..m).map(|i| (i, int(-2))).collect();
        col.eval(&g, &int(-1), &w, Quantity::Z, Relation::Positive, "(-1)^n Z > 0")?;
    }
    Ok(())
}

fn closed(lo: Rational, hi: Rational) -> Result<RegionInterval> {
    RegionInterval::closed(lo, hi)
}

fn graph_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed, stream);
    let ids = g.edge_ids();
    let inst = Instance::graph(g);
    let (n, c) = (g.n(), g.components());
    let edge_grid = weight_grid(&closed(int(-2), int(0))?, &mut rng, b.random_points);
    let loop_grid = weight_grid(&closed(int(-1), int(2))?, &mut rng, b.random_points);
    let grids: Vec<&[Rational]> = g
        .edges()
        .iter()
        .map(|e| if e.is_loop() { &loop_grid[..] } else { &edge_grid[..] })
        .collect();
    for row in assignments(&grids, &mut rng, b.random_assignments) {
        let w = pairs(&ids, &row);
        let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
        let loops_open = g.edges().iter().zip(&row).all(|(e, v)| !e.is_loop() || *v > int(-1));
        let strict = loops_open
            && g.edges().iter().zip(&row).all(|(e, v)| e.is_loop() || (*v > int(-2) && v.is_negative()));
        let cv = coeffs(g, &wa)?;
        for k in 1..c {
            col.check(&inst, &Rational::zero(), &w, Quantity::Coefficient { index: k }, Relation::Zero, "C^[k] = 0 for k < c", &cv.get(k));
        }
        for k in c..=n {
            let rel = Relation::signed(parity(n - k), strict);
            col.check(&inst, &Rational::zero(), &w, Quantity::Coefficient { index: k }, rel, "(-1)^(n-k) C^[k] >= 0", &cv.get(k));
        }
        let mut lp = Rational::one();
        for (e, v) in g.edges().iter().zip(&row) {
            if e.is_loop() {
                lp *= Rational::one() + v;
            }
        }
        col.check(&inst, &Rational::zero(), &w, Quantity::LoopProductDefect, Relation::Zero, "C^[n] = prod_loops (1 + v)", &(cv.get(n) - lp));
        for q in qs() {
            let mut z = Rational::zero();
            for k in (cv.lowest..=cv.highest()).rev() {
                z = z * &q + cv.get(k);
            }
            if cv.lowest > 0 {
                z *= num_traits::pow(q.clone(), cv.lowest);
            }
            let rel = if loops_open {
                Relation::signed(parity(n), true)
            } else {
                Relation::Zero
            };
            col.check(&inst, &q, &w, Quantity::Z, rel, "(-1)^n Z >= 0, strict iff every loop has v > -1", &z);
        }
        if strict {
            let first = (cv.lowest..=cv.highest()).find(|&k| !cv.get(k).is_zero()).unwrap_or(usize::MAX);
            let value = Rational::from_integer((first as i64 - c as i64).into());
            col.check(&inst, &Rational::zero(), &w, Quantity::RootMultiplicityAtZero, Relation::Zero, "root at q = 0 has multiplicity c", &value);
        }
    }
    derivative_checks(cfg, &mut rng, g, &inst, col)
}

/// Partial derivatives of the coefficients with every weight in `[-1, 0]`, which meets
/// both the spanned and the unspanned weight conditions.
fn derivative_checks(cfg: &SuiteConfig, rng: &mut impl rand::Rng, g: &MultiGraph, inst: &Instance, col: &mut Collector) -> Result<()> {
    let ids = g.edge_ids();
    let grid = weight_grid(&closed(int(-1), int(0))?, rng, 2);
    let grids: Vec<&[Rational]> = ids.iter().map(|_| &grid[..]).collect();
    let mut lists: Vec<Vec<EdgeId>> = ids.iter().map(|&e| vec![e]).collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            lists.push(vec![a, b]);
        }
    }
    if let Some(&e) = ids.first() {
        lists.push(vec![e, e]);
    }
    let n = g.n();
    for row in assignments(&grids, rng, cfg.bounds.random_assignments.min(2)) {
        let w = pairs(&ids, &row);
        let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
        for list in &lists {
            let mut uniq = list.clone();
            uniq.dedup();
            let repeated = uniq.len() < list.len();
            let gamma = if repeated { 0 } else { g.cyclomatic(list)? };
            for k in 1..=n {
                let d = coeff_partial_derivative(g, &wa, list, k)?;
                let rel = if repeated {
                    Relation::Zero
                } else {
                    Relation::signed(parity(n - k + list.len() + gamma), false)
                };
                let q = Quantity::CoefficientDerivative {
                    index: k,
                    edges: list.iter().map(|e| e.0).collect(),
                };
                col.check(inst, &Rational::zero(), &w, q, rel, "(-1)^(n-k+l+gamma) dC^[k] >= 0", &d);
            }
        }
    }
    Ok(())
}

/// `q < 0` with `v >= -q` on bridges and `v >= -q/2` elsewhere gives `(-1)^c Z >= 0`.
fn dual_regime_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed ^ 0x5eed, stream);
    let ids = g.edge_ids();
    let inst = Instance::graph(g);
    let kinds: Vec<EdgeKind> = ids.iter().map(|&e| g.classify_edge(e)).collect::<Result<_>>()?;
    let c = g.components();
    for q in qs() {
        let bridge_grid = weight_grid(&closed(-q.clone(), -q.clone() + int(2))?, &mut rng, b.random_points / 2);
        let other_grid = weight_grid(&closed(-q.clone() / int(2), -q.clone() / int(2) + int(2))?, &mut rng, b.random_points / 2);
        let grids: Vec<&[Rational]> = kinds
            .iter()
            .map(|k| if *k == EdgeKind::Bridge { &bridge_grid[..] } else { &other_grid[..] })
            .collect();
        for row in assignments(&grids, &mut rng, b.random_assignments / 2) {
            let w = pairs(&ids, &row);
            let open = kinds.iter().zip(&row).all(|(k, v)| *k != EdgeKind::Bridge || *v > -q.clone());
            let rel = if open {
                Relation::signed(parity(c), true)
            } else {
                Relation::Zero
            };
            col.eval(&inst, &q, &w, Quantity::Z, rel, "(-1)^c Z >= 0, strict iff every bridge has v > -q")?;
        }
    }
    Ok(())
}

fn matroid_case(cfg: &SuiteConfig, stream: u64, inst: &Instance, m: &crate::matroid::Matroid, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed ^ 0x3a7, stream);
    let labels = m.labels().to_vec();
    let kinds: Vec<ElementKind> = labels.iter().map(|&e| m.classify_element(e)).collect::<Result<_>>()?;
    let elem_grid = weight_grid(&closed(int(-2), int(0))?, &mut rng, b.random_points / 2);
    let loop_grid = weight_grid(&closed(int(-1), int(2))?, &mut rng, b.random_points / 2);
    let grids: Vec<&[Rational]> = kinds
        .iter()
        .map(|k| if *k == ElementKind::Loop { &loop_grid[..] } else { &elem_grid[..] })
        .collect();
    let rank = m.full_rank();
    for row in assignments(&grids, &mut rng, b.random_assignments / 2) {
        let w = pairs(&labels, &row);
        let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
        let loops_open = kinds.iter().zip(&row).all(|(k, v)| *k != ElementKind::Loop || *v > int(-1));
        let strict = loops_open
            && kinds.iter().zip(&row).all(|(k, v)| *k == ElementKind::Loop || (*v > int(-2) && v.is_negative()));
        let cv = coeffs_matroid(m, &wa)?;
        for r in 0..=rank {
            let rel = Relation::signed(parity(r), strict);
            col.check(inst, &Rational::zero(), &w, Quantity::Coefficient { index: r }, rel, "(-1)^r C~^[r] >= 0", &cv.get(r));
        }
        let mut lp = Rational::one();
        for (k, v) in kinds.iter().zip(&row) {
            if *k == ElementKind::Loop {
                lp *= Rational::one() + v;
            }
        }
        col.check(inst, &Rational::zero(), &w, Quantity::LoopProductDefect, Relation::Zero, "C~^[0] = prod_loops (1 + v)", &(cv.get(0) - lp));
        for q in qs() {
            let mut z = Rational::zero();
            let qi = Rational::one() / &q;
            for r in (0..=rank).rev() {
                z = z * &qi + cv.get(r);
            }
            let rel = if loops_open { Relation::Positive } else { Relation::Zero };
            col.check(inst, &q, &w, Quantity::Z, rel, "Z~ >= 0, strict iff every loop has v > -1", &z);
        }
    }
    // Derivatives with every weight in [-1, 0].
    let grid = weight_grid(&closed(int(-1), int(0))?, &mut rng, 1);
    let grids: Vec<&[Rational]> = labels.iter().map(|_| &grid[..]).collect();
    let mut lists: Vec<Vec<EdgeId>> = labels.iter().map(|&e| vec![e]).collect();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            lists.push(vec![a, b]);
        }
    }
    if let Some(&e) = labels.first() {
        lists.push(vec![e, e]);
    }
    for row in assignments(&grids, &mut rng, 1) {
        let w = pairs(&labels, &row);
        let wa = WeightAssignment::from_pairs(w.iter().map(|(i, v)| (EdgeId(*i), v.clone())));
        for list in &lists {
            let repeated = list.len() == 2 && list[0] == list[1];
            let rho = if repeated { 0 } else { m.rank_of(list)? };
            for r in 0..=rank {
                let d = coeff_partial_derivative_matroid(m, &wa, list, r)?;
                let rel = if repeated {
                    Relation::Zero
                } else {
                    Relation::signed(parity(r + rho), false)
                };
                let q = Quantity::CoefficientDerivative {
                    index: r,
                    edges: list.iter().map(|e| e.0).collect(),
                };
                col.check(inst, &Rational::zero(), &w, q, rel, "(-1)^(r+rho) dC~^[r] >= 0", &d);
            }
        }
    }
    Ok(())
}
