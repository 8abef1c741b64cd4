//! Zero-freeness for `1 < q <= 32/27`: `(-1)^(n+c+b) Z > 0` over `V_2` for loopless
//! bridgeless graphs and over `V_3` when every block has at least three edges,
//! with the matroid mirror and the exact boundary zeros at `q = 9/8`.

use super::{
    anchor, assignments, graph_family, pairs, parity, rng_for, small_matroids, sweep, weight_grid, Collector, Instance,
    MatroidSpec, Quantity, Relation, SuiteConfig,
};
use crate::arith::{default_width, rat, Rational};
use crate::error::Result;
use crate::graph::{block_graphs, MultiGraph};
use crate::matroid::Matroid;
use crate::regions::{v2_region, v3_region, RegionInterval};

const NAME: &str = "q_above_one";

fn qs() -> [Rational; 3] {
    [rat(9, 8), rat(33, 32), rat(32, 27)]
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    anchors(&mut col)?;
    let b = &cfg.bounds;
    let bridgeless: Vec<MultiGraph> = graph_family(b.max_edges, false, b.max_edges.saturating_sub(2))
        .into_iter()
        .filter(|g| g.m() > 0 && g.bridges().is_empty())
        .collect();
    let three = block_graphs(3, b.max_edges);
    let mut regions: Vec<(Rational, RegionInterval, RegionInterval)> = Vec::new();
    for q in qs() {
        let w = default_width();
        regions.push((q.clone(), v2_region(&q, &w)?, v3_region(&q, &w)?));
    }
    let work: Vec<(usize, usize, bool)> = (0..regions.len())
        .flat_map(|ri| {
            (0..bridgeless.len())
                .map(move |gi| (ri, gi, false))
                .chain((0..three.len()).map(move |gi| (ri, gi, true)))
        })
        .collect();
    col.merge(sweep(NAME, &work, |i, &(ri, gi, m3), c| {
        let (q, v2, v3) = &regions[ri];
        if m3 {
            graph_case(cfg, i as u64, &three[gi], q, v3, c)
        } else {
            graph_case(cfg, i as u64, &bridgeless[gi], q, v2, c)
        }
    })?);
    let matroids: Vec<(MatroidSpec, Matroid, usize, usize)> = small_matroids(b.max_elements)
        .into_iter()
        .map(|s| {
            let m = s.build()?;
            let comps = m.connected_components()?;
            let smallest = comps.iter().map(|c| c.len()).min().unwrap_or(0);
            Ok((s, m, comps.len(), smallest))
        })
        .collect::<Result<_>>()?;
    let work: Vec<(usize, usize, bool)> = (0..regions.len())
        .flat_map(|ri| {
            let ms = &matroids;
            (0..ms.len()).flat_map(move |mi| {
                let smallest = ms[mi].3;
                [(ri, mi, false), (ri, mi, true)]
                    .into_iter()
                    .filter(move |&(_, _, m3)| smallest >= if m3 { 3 } else { 2 })
            })
        })
        .collect();
    col.merge(sweep(NAME, &work, |i, &(ri, mi, m3), c| {
        let (q, v2, v3) = &regions[ri];
        let (spec, m, b, _) = &matroids[mi];
        matroid_case(cfg, i as u64, spec, m, *b, q, if m3 { v3 } else { v2 }, c)
    })?);
    Ok(col)
}

fn anchors(col: &mut Collector) -> Result<()> {
    let q = rat(9, 8);
    // (1 + v1)(1 + v2) = (-1/2)(1/4) = 1 - q.
    let k2 = Instance::graph(&MultiGraph::k2_multi(2));
    col.eval(&k2, &q, &[(0, rat(-3, 2)), (1, rat(-3, 4))], Quantity::Z, Relation::Zero, "Z = 0 at the V_2 boundary")?;
    // (1 + v)^3 - 1 = -9/8 = -q.
    let k3 = Instance::graph(&MultiGraph::k2_multi(3));
    let w: Vec<_> = (0..3).map(|i| (i, rat(-3, 2))).collect();
    col.eval(&k3, &q, &w, Quantity::Z, Relation::Zero, "Z = 0 at the V_3 boundary")
}

fn graph_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, q: &Rational, region: &RegionInterval, col: &mut Collector) -> Result<()> {
    let b = &cfg.bounds;
    let mut rng = rng_for(cfg.seed, stream);
    let grid = weight_grid(region, &mut rng, b.random_points);
    let ids = g.edge_ids();
    let per: Vec<&[Rational]> = ids.iter().map(|_| &grid[..]).collect();
    let inst = Instance::graph(g);
    let blocks = g.blocks().nontrivial_count();
    let sign = parity(g.n() + g.components() + blocks);
    for row in assignments(&per, &mut rng, b.random_assignments) {
        col.eval(&inst, q, &pairs(&ids, &row), Quantity::Z, Relation::signed(sign, true), "(-1)^(n+c+b) Z > 0")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn matroid_case(
    cfg: &SuiteConfig,
    stream: u64,
    spec: &MatroidSpec,
    m: &Matroid,
    components: usize,
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
    let sign = parity(m.full_rank() + components);
    for row in assignments(&per, &mut rng, b.random_assignments / 2) {
        col.eval(&inst, q, &pairs(&labels, &row), Quantity::Z, Relation::signed(sign, true), "(-1)^(r(M)+b) Z~ > 0")?;
    }
    Ok(())
}
