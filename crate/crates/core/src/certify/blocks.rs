//! Graphs and matroids whose blocks carry at least `m` edges, with weights in
//! `I_m` at `q = 1 - s^m` (so `(1 - q)^{1/m} = s` is exact), and in the
//! optimal cubic interval for `m = 3`.

use num_traits::One;

use super::{
    anchor, assignments, pairs, parity, rng_for, small_matroids, sweep, weight_grid, Collector, Instance, MatroidSpec,
    Quantity, Relation, SuiteConfig,
};
use crate::arith::{default_width, rat, Rational, RationalEnclosure};
use crate::error::{Error, Result};
use crate::graph::{block_graphs, MultiGraph};
use crate::matroid::Matroid;
use crate::regions::{interval_im, interval_im_cocyc, interval_im_cyc, v3_plus, RegionInterval, RegionTag};

const NAME: &str = "blocks";

fn parameters() -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    for m in 2..=4usize {
        for s in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            out.push((m, Rational::one() - num_traits::pow(s, m)));
        }
    }
    out
}

/// `(q / v3+, v3+)`.
fn cubic_interval(q: &Rational) -> Result<RegionInterval> {
    let v = v3_plus(q, &default_width())?.interval;
    Ok(RegionInterval {
        lo: RationalEnclosure::point(q.clone()).div(&v)?,
        hi: v,
        lo_open: true,
        hi_open: true,
        tag: RegionTag::Exact,
    })
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    anchors(&mut col)?;
    let b = &cfg.bounds;
    // (minimum block size, q, weight interval)
    let mut cases: Vec<(usize, Rational, RegionInterval)> = Vec::new();
    for (m, q) in parameters() {
        cases.push((m, q.clone(), interval_im(&q, m as u32, &default_width())?));
        if m == 3 {
            cases.push((3, q.clone(), cubic_interval(&q)?));
        }
    }
    let mut families = Vec::new();
    for m in 2..=4 {
        families.push(block_graphs(m, b.max_edges));
    }
    let work: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|ci| (0..families[cases[ci].0 - 2].len()).map(move |gi| (ci, gi)))
        .collect();
    col.merge(sweep(NAME, &work, |i, &(ci, gi), c| {
        let (m, q, region) = &cases[ci];
        graph_case(cfg, i as u64, &families[*m - 2][gi], q, region, c)
    })?);
    for (m, q) in parameters() {
        lemma_checks(&mut col, m, &q)?;
    }
    let matroids: Vec<(MatroidSpec, Matroid)> = small_matroids(b.max_elements)
        .into_iter()
        .map(|s| {
            let m = s.build()?;
            Ok((s, m))
        })
        .collect::<Result<_>>()?;
    let sizes: Vec<usize> = matroids
        .iter()
        .map(|(_, m)| Ok(m.connected_components()?.iter().map(|c| c.len()).min().unwrap_or(0)))
        .collect::<Result<_>>()?;
    let work: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|ci| {
            let m = cases[ci].0;
            sizes
                .iter()
                .enumerate()
                .filter(move |(_, &s)| s >= m)
                .map(move |(mi, _)| (ci, mi))
        })
        .collect();
    col.merge(sweep(NAME, &work, |i, &(ci, mi), c| {
        let (_, q, region) = &cases[ci];
        let (spec, m) = &matroids[mi];
        matroid_case(cfg, i as u64, spec, m, q, region, c)
    })?);
    u24_corners(&mut col)?;
    Ok(col)
}

fn anchors(col: &mut Collector) -> Result<()> {
    // q = 1 - (1/2)^3: K2^(3) vanishes at v = -(1 - 1/2), and C_3 at v = -q / (1 - 1/2).
    let q = rat(7, 8);
    let k = Instance::graph(&MultiGraph::k2_multi(3));
    let w: Vec<_> = (0..3).map(|i| (i, rat(-1, 2))).collect();
    col.eval(&k, &q, &w, Quantity::Z, Relation::Zero, "Z_{K2^(m)} = 0 at v = -(1 - (1-q)^(1/m))")?;
    let c = Instance::graph(&MultiGraph::cycle(3));
    let w: Vec<_> = (0..3).map(|i| (i, rat(-7, 4))).collect();
    col.eval(&c, &q, &w, Quantity::Z, Relation::Zero, "Z_{C_m} = 0 at v = -q / (1 - (1-q)^(1/m))")
}

fn graph_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, q: &Rational, region: &RegionInterval, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed, stream);
    let grid = weight_grid(region, &mut rng, b.random_points);
    let ids = g.edge_ids();
    let per: Vec<&[Rational]> = ids.iter().map(|_| &grid[..]).collect();
    let inst = Instance::graph(g);
    let sign = parity(g.n() + g.components());
    for row in assignments(&per, &mut rng, b.random_assignments) {
        col.eval(&inst, q, &pairs(&ids, &row), Quantity::Z, Relation::signed(sign, true), "(-1)^(n+c) Z > 0")?;
    }
    Ok(())
}

/// Sign and exact zeros of `K2^(k)` and `C_k` for `k = 1..=5`.
fn lemma_checks(col: &mut Collector, m: usize, q: &Rational) -> Result<()> {
    let w = default_width();
    for k in 1..=5usize {
        let uniform = |v: &Rational| -> Vec<(usize, Rational)> { (0..k).map(|i| (i, v.clone())).collect() };
        let bundle = Instance::graph(&MultiGraph::k2_multi(k));
        let cocyc = interval_im_cocyc(q, k as u32, &w)?;
        for v in cocyc.sample_points(&[rat(1, 7), rat(1, 2), rat(6, 7)]) {
            col.eval(&bundle, q, &uniform(&v), Quantity::Z, Relation::Negative, "Z_{K2^(m)} < 0")?;
        }
        let cycle = Instance::graph(&MultiGraph::cycle(k));
        let cyc = interval_im_cyc(q, k as u32, &w)?;
        for v in cyc.sample_points(&[rat(1, 7), rat(1, 2), rat(6, 7)]) {
            col.eval(&cycle, q, &uniform(&v), Quantity::Z, Relation::signed(-parity(k), true), "(-1)^m Z_{C_m} < 0")?;
        }
        if k != m {
            continue;
        }
        // The radical is exact here, so the boundary zeros are exact too.
        let (Some(lo), Some(hi)) = (cocyc.lo.exact(), cocyc.hi.exact()) else { continue };
        col.eval(&bundle, q, &uniform(hi), Quantity::Z, Relation::Zero, "Z_{K2^(m)} = 0 at v = -(1 - (1-q)^(1/m))")?;
        let (Some(clo), Some(chi)) = (cyc.lo.exact(), cyc.hi.exact()) else { continue };
        col.eval(&cycle, q, &uniform(clo), Quantity::Z, Relation::Zero, "Z_{C_m} = 0 at v = -q / (1 - (1-q)^(1/m))")?;
        if k % 2 == 0 {
            col.eval(&bundle, q, &uniform(lo), Quantity::Z, Relation::Zero, "Z_{K2^(m)} = 0 at v = -(1 + (1-q)^(1/m)), m even")?;
            col.eval(&cycle, q, &uniform(chi), Quantity::Z, Relation::Zero, "Z_{C_m} = 0 at v = -q / (1 + (1-q)^(1/m)), m even")?;
        }
    }
    Ok(())
}

fn matroid_case(
    cfg: &SuiteConfig,
    stream: u64,
    spec: &MatroidSpec,
    m: &Matroid,
    q: &Rational,
    region: &RegionInterval,
    col: &mut Collector,
) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed ^ 0x3a7, stream);
    let grid = weight_grid(region, &mut rng, b.random_points / 2);
    let labels = m.labels().to_vec();
    let per: Vec<&[Rational]> = labels.iter().map(|_| &grid[..]).collect();
    let inst = Instance::matroid(spec);
    let sign = parity(m.full_rank());
    for row in assignments(&per, &mut rng, b.random_assignments / 2) {
        col.eval(&inst, q, &pairs(&labels, &row), Quantity::Z, Relation::signed(sign, true), "(-1)^r(M) Z~ > 0")?;
    }
    Ok(())
}

/// `q^2 Z~_{U_{2,4}}` is multiaffine and symmetric, so positivity on the closed box
/// over `I_4` follows from the five corner classes.
fn u24_corners(col: &mut Collector) -> Result<()> {
    let inst = Instance::matroid(&MatroidSpec::Uniform { rank: 2, size: 4 });
    for s in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let q = Rational::one() - num_traits::pow(s, 4);
        let i4 = interval_im(&q, 4, &default_width())?;
        let (Some(lo), Some(hi)) = (i4.lo.exact().cloned(), i4.hi.exact().cloned()) else {
            return Err(Error::Precondition("I_4 endpoints should be exact at q = 1 - s^4".into()));
        };
        for plus in 0..=4 {
            let w: Vec<_> = (0..4).map(|i| (i, if i < plus { hi.clone() } else { lo.clone() })).collect();
            col.eval(&inst, &q, &w, Quantity::Z, Relation::Positive, "Z~_{U24} > 0 at the corners of I_4")?;
        }
    }
    Ok(())
}
