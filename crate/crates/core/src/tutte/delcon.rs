//! Deletion-contraction with structural reductions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, UniPoly};
use crate::error::Result;
use crate::graph::{EdgeId, MultiGraph, WeightAssignment};
use crate::weights::par;

/// How often each rule fired during one evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub loops: usize,
    pub bridges: usize,
    pub block_splits: usize,
    pub parallel: usize,
    pub series: usize,
    pub branches: usize,
}

struct Eval<'a> {
    q: &'a Rational,
    trace: ReductionTrace,
}

impl Eval<'_> {
    fn z(&mut self, g: &MultiGraph, w: &WeightAssignment) -> Result<Rational> {
        let q = self.q;
        if g.m() == 0 {
            return Ok(num_traits::pow(q.clone(), g.n()));
        }
        if let Some(&e) = g.loops().first() {
            self.trace.loops += 1;
            let v = w.get(e)?;
            return Ok((Rational::one() + v) * self.z(&g.delete(e)?, w)?);
        }
        if let Some(&e) = g.bridges().iter().next() {
            self.trace.bridges += 1;
            let v = w.get(e)?;
            return Ok((q + v) * self.z(&g.contract(e)?, w)?);
        }
        // From here on q != 0 (handled by the caller) and every edge lies in a block with >= 2 edges.
        let d = g.blocks();
        let with_edges: Vec<_> = d.blocks.iter().filter(|b| !b.edges.is_empty()).collect();
        if with_edges.len() > 1 {
            self.trace.block_splits += 1;
            let mut acc = num_traits::pow(q.clone(), g.n());
            for b in with_edges {
                let h = g.block_subgraph(b);
                let zb = self.z(&h, w)?;
                acc = acc * zb / num_traits::pow(q.clone(), h.n());
            }
            return Ok(acc);
        }
        if let Some((e1, e2)) = g.find_parallel_pair() {
            self.trace.parallel += 1;
            let mut w2 = w.clone();
            w2.set(e1, par(w.get(e1)?, w.get(e2)?));
            w2.remove(e2);
            return self.z(&g.delete(e2)?, &w2);
        }
        if let Some((e1, e2)) = g.find_series_pair_wide() {
            let (v1, v2) = (w.get(e1)?, w.get(e2)?);
            let pre = q + v1 + v2;
            if !pre.is_zero() {
                self.trace.series += 1;
                let mut w2 = w.clone();
                w2.set(e1, v1 * v2 / &pre);
                w2.remove(e2);
                return Ok(pre * self.z(&g.contract(e2)?, &w2)?);
            }
        }
        self.trace.branches += 1;
        let e = branch_edge(g);
        let v = w.get(e)?.clone();
        let del = self.z(&g.delete(e)?, w)?;
        let con = self.z(&g.contract(e)?, w)?;
        Ok(del + v * con)
    }
}

/// Lowest-id normal edge at the lowest-numbered vertex of maximum degree.
fn branch_edge(g: &MultiGraph) -> EdgeId {
    let bridges = g.bridges();
    let normal = |id: EdgeId| {
        let e = g.edge(id).expect("edge exists");
        !e.is_loop() && !bridges.contains(&id)
    };
    let mut best: Option<(usize, usize)> = None;
    for x in 0..g.n() {
        let has_normal = g.edges().iter().any(|e| (e.u == x || e.v == x) && normal(e.id));
        if has_normal {
            let d = g.degree(x);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, x));
            }
        }
    }
    let (_, x) = best.expect("a normal edge exists");
    g.edges()
        .iter()
        .filter(|e| (e.u == x || e.v == x) && normal(e.id))
        .map(|e| e.id)
        .min()
        .expect("a normal edge at x")
}

/// `Z_G(q, v)` by reductions: loops, bridges, block factorisation, parallel
/// and wide-sense series reduction, then branching.
pub fn z_delcon_traced(g: &MultiGraph, q: &Rational, w: &WeightAssignment) -> Result<(Rational, ReductionTrace)> {
    for id in g.edge_ids() {
        w.get(id)?;
    }
    if q.is_zero() {
        // Every term carries q^{k(A)} with k(A) >= 1 once a vertex exists.
        let v = if g.n() == 0 { Rational::one() } else { Rational::zero() };
        return Ok((v, ReductionTrace::default()));
    }
    let mut ev = Eval {
        q,
        trace: ReductionTrace::default(),
    };
    let z = ev.z(g, w)?;
    Ok((z, ev.trace))
}

pub fn z_delcon(g: &MultiGraph, q: &Rational, w: &WeightAssignment) -> Result<Rational> {
    Ok(z_delcon_traced(g, q, w)?.0)
}

/// `Z_G` as a polynomial in `q` by deletion-contraction, with parallel merging only.
pub fn qpoly_delcon(g: &MultiGraph, w: &WeightAssignment) -> Result<UniPoly> {
    if g.m() == 0 {
        return Ok(UniPoly::monomial(Rational::one(), g.n()));
    }
    if let Some(&e) = g.loops().first() {
        let v = w.get(e)?;
        return Ok(qpoly_delcon(&g.delete(e)?, w)?.scale(&(Rational::one() + v)));
    }
    if let Some(&e) = g.bridges().iter().next() {
        let lin = UniPoly::new(vec![w.get(e)?.clone(), Rational::one()]);
        return Ok(&lin * &qpoly_delcon(&g.contract(e)?, w)?);
    }
    if let Some((e1, e2)) = g.find_parallel_pair() {
        let mut w2 = w.clone();
        w2.set(e1, par(w.get(e1)?, w.get(e2)?));
        w2.remove(e2);
        return qpoly_delcon(&g.delete(e2)?, &w2);
    }
    let e = g.edges()[0].id;
    let v = w.get(e)?;
    let del = qpoly_delcon(&g.delete(e)?, w)?;
    let con = qpoly_delcon(&g.contract(e)?, w)?;
    Ok(&del + &con.scale(v))
}
