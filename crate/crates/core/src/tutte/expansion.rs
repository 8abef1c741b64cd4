//! Subset expansions for graphs and matroids.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, WeightAssignment};
use crate::matroid::Matroid;

pub const MAX_EXPANSION_EDGES: usize = 24;
pub const MAX_MATROID_EXPANSION: usize = 20;

/// `table[k][j]` = sum over subsets with `k(A) = k` and `|A| = j` of the scaled
/// weight products; true weights are `numerators / denom`.
pub(crate) struct ScaledTable {
    pub table: Vec<Vec<BigInt>>,
    pub denom: BigInt,
}

impl ScaledTable {
    /// Unscaled coefficient of `q^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        let mut acc = Rational::zero();
        let mut scale = BigInt::one();
        for t in &self.table[k] {
            if !t.is_zero() {
                acc += Rational::new(t.clone(), scale.clone());
            }
            scale *= &self.denom;
        }
        acc
    }
}

/// Common denominator and integer numerators of `ws`.
pub(crate) fn scale_weights(ws: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for w in ws {
        d = num_integer::lcm(d, w.denom().clone());
    }
    let nums = ws.iter().map(|w| w.numer() * (&d / w.denom())).collect();
    (nums, d)
}

// Union-find without path compression so unions can be undone.
struct RollbackUf {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
    history: Vec<usize>,
}

impl RollbackUf {
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(usize::MAX);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.count -= 1;
        self.history.push(rb);
    }

    fn undo(&mut self) {
        let rb = self.history.pop().expect("balanced undo");
        if rb == usize::MAX {
            return;
        }
        let ra = self.parent[rb];
        self.size[ra] -= self.size[rb];
        self.parent[rb] = rb;
        self.count += 1;
    }
}

struct Walk<'a> {
    ends: &'a [(usize, usize)],
    nums: &'a [BigInt],
    uf: RollbackUf,
    table: Vec<Vec<BigInt>>,
}

impl Walk<'_> {
    fn go(&mut self, i: usize, prod: &BigInt, size: usize) {
        if i == self.ends.len() {
            self.table[self.uf.count][size] += prod;
            return;
        }
        self.go(i + 1, prod, size);
        if !self.nums[i].is_zero() {
            let (u, v) = self.ends[i];
            self.uf.union(u, v);
            let p = prod * &self.nums[i];
            self.go(i + 1, &p, size + 1);
            self.uf.undo();
        }
    }
}

pub(crate) fn graph_table(g: &MultiGraph, ws: &[Rational]) -> Result<ScaledTable> {
    if g.m() > MAX_EXPANSION_EDGES {
        return Err(Error::TooLarge {
            what: "edge count for subset expansion",
            got: g.m(),
            limit: MAX_EXPANSION_EDGES,
        });
    }
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let (nums, denom) = scale_weights(ws);
    let n = g.n();
    let mut w = Walk {
        ends: &ends,
        nums: &nums,
        uf: RollbackUf {
            parent: (0..n).collect(),
            size: vec![1; n],
            count: n,
            history: Vec::new(),
        },
        table: vec![vec![BigInt::zero(); g.m() + 1]; n + 1],
    };
    w.go(0, &BigInt::one(), 0);
    Ok(ScaledTable { table: w.table, denom })
}

/// Coefficients `C^[k]` for `k = 0..=n` by direct subset expansion.
pub fn graph_coefficients(g: &MultiGraph, w: &WeightAssignment) -> Result<Vec<Rational>> {
    let ws = w.aligned(&g.edge_ids())?;
    let t = graph_table(g, &ws)?;
    Ok((0..=g.n()).map(|k| t.coeff(k)).collect())
}

/// `Z_G(q, v)` by summing over all `2^|E|` spanning subgraphs.
pub fn z_expansion(g: &MultiGraph, q: &Rational, w: &WeightAssignment) -> Result<Rational> {
    let c = graph_coefficients(g, w)?;
    Ok(horner(&c, q))
}

pub(crate) fn horner(c: &[Rational], q: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * q + a)
}

/// `C~^[r]` for `r = 0..=r(E)`: sums of weight products over subsets of rank `r`.
pub fn matroid_coefficients(m: &Matroid, w: &WeightAssignment) -> Result<Vec<Rational>> {
    if m.len() > MAX_MATROID_EXPANSION {
        return Err(Error::TooLarge {
            what: "ground set for subset expansion",
            got: m.len(),
            limit: MAX_MATROID_EXPANSION,
        });
    }
    let ws = w.aligned(m.labels())?;
    let (nums, denom) = scale_weights(&ws);
    let ranks = m.rank_table()?;
    let n = m.len();
    let rk = m.full_rank();
    let mut table = vec![vec![BigInt::zero(); n + 1]; rk + 1];
    // prods[mask] built from the mask without its top bit.
    let mut prods: Vec<BigInt> = Vec::with_capacity(1 << n);
    prods.push(BigInt::one());
    for num in &nums {
        let half = prods.len();
        for mask in 0..half {
            let p = &prods[mask] * num;
            prods.push(p);
        }
    }
    for (mask, p) in prods.iter().enumerate() {
        if !p.is_zero() {
            table[ranks[mask]][mask.count_ones() as usize] += p;
        }
    }
    let t = ScaledTable { table, denom };
    Ok((0..=rk).map(|r| t.coeff(r)).collect())
}

/// `Z~_M(q, v) = sum_A q^{-r(A)} prod v_e`; requires `q != 0`.
pub fn z_matroid_expansion(m: &Matroid, q: &Rational, w: &WeightAssignment) -> Result<Rational> {
    if q.is_zero() {
        return Err(Error::Precondition("matroid partition function needs q != 0".into()));
    }
    let c = matroid_coefficients(m, w)?;
    Ok(horner(&c, &q.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn single_edge_and_loop() {
        let k2 = MultiGraph::path(1);
        let w = WeightAssignment::for_graph(&k2, &rat(1, 3));
        assert_eq!(z_expansion(&k2, &int(2), &w).unwrap(), int(4) + rat(2, 3));
        let c1 = MultiGraph::cycle(1);
        let w = WeightAssignment::for_graph(&c1, &int(5));
        assert_eq!(z_expansion(&c1, &int(7), &w).unwrap(), int(42));
    }

    #[test]
    fn triangle_at_negative_q() {
        // C3 at q = -1, v = 1/2: q^3 + 3 q^2 v + 3 q v^2 + q v^3.
        let g = MultiGraph::cycle(3);
        let w = WeightAssignment::for_graph(&g, &rat(1, 2));
        assert_eq!(z_expansion(&g, &int(-1), &w).unwrap(), rat(-3, 8));
    }

    #[test]
    fn graphic_matroid_matches_graph_form() {
        let g = MultiGraph::complete(4);
        let mut w = WeightAssignment::new();
        for (i, id) in g.edge_ids().into_iter().enumerate() {
            w.set(id, rat(i as i64 - 2, 3));
        }
        let m = Matroid::graphic(&g).unwrap();
        let q = rat(5, 7);
        let zt = z_matroid_expansion(&m, &q, &w).unwrap();
        let z = z_expansion(&g, &q, &w).unwrap();
        assert_eq!(z, zt * num_traits::pow(q, 4));
        assert!(z_matroid_expansion(&m, &int(0), &w).is_err());
    }
}
