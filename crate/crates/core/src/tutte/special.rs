//! Potts colouring sums, coefficient vectors, specialisations and identities.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expansion::{graph_coefficients, graph_table, matroid_coefficients, scale_weights, z_matroid_expansion};
use crate::arith::{pow_i, BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, WeightAssignment};
use crate::matroid::Matroid;

pub const MAX_POTTS_Q: u32 = 5;
pub const MAX_POTTS_VERTICES: usize = 10;

/// `sum over colourings sigma: V -> [q] of prod_e (1 + v_e delta(sigma_x, sigma_y))`.
pub fn z_potts_coloring(g: &MultiGraph, q: u32, w: &WeightAssignment) -> Result<Rational> {
    if q > MAX_POTTS_Q {
        return Err(Error::TooLarge {
            what: "Potts spin count",
            got: q as usize,
            limit: MAX_POTTS_Q as usize,
        });
    }
    if g.n() > MAX_POTTS_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for colouring sum",
            got: g.n(),
            limit: MAX_POTTS_VERTICES,
        });
    }
    let ws = w.aligned(&g.edge_ids())?;
    let one_plus: Vec<Rational> = ws.iter().map(|v| Rational::one() + v).collect();
    let (nums, denom) = scale_weights(&one_plus);
    let n = g.n();
    if n == 0 {
        return Ok(Rational::one());
    }
    if q == 0 {
        return Ok(Rational::zero());
    }
    // by_mono[j]: scaled sum over colourings with j monochromatic edges.
    let mut by_mono = vec![BigInt::zero(); g.m() + 1];
    let mut sigma = vec![0u32; n];
    loop {
        let mut prod = BigInt::one();
        let mut mono = 0;
        for (e, a) in g.edges().iter().zip(&nums) {
            if sigma[e.u] == sigma[e.v] {
                prod *= a;
                mono += 1;
            }
        }
        by_mono[mono] += prod;
        let mut i = 0;
        loop {
            if i == n {
                let mut acc = Rational::zero();
                let mut scale = BigInt::one();
                for t in &by_mono {
                    acc += Rational::new(t.clone(), scale.clone());
                    scale *= &denom;
                }
                return Ok(acc);
            }
            sigma[i] += 1;
            if sigma[i] < q {
                break;
            }
            sigma[i] = 0;
            i += 1;
        }
    }
}

/// Coefficients of a partition function by connectivity or rank, with the index range made explicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffVector {
    /// Index of the first entry (components `k` or rank `r`).
    pub lowest: usize,
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub values: Vec<Rational>,
}

impl CoeffVector {
    pub fn get(&self, k: usize) -> Rational {
        k.checked_sub(self.lowest)
            .and_then(|i| self.values.get(i).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn highest(&self) -> usize {
        self.lowest + self.values.len().saturating_sub(1)
    }
}

/// `C_G^[k]` for `k = 1..=n` (or `k = 0` alone on the empty graph).
pub fn coeffs(g: &MultiGraph, w: &WeightAssignment) -> Result<CoeffVector> {
    let c = graph_coefficients(g, w)?;
    if g.n() == 0 {
        return Ok(CoeffVector { lowest: 0, values: c });
    }
    Ok(CoeffVector {
        lowest: 1,
        values: c[1..].to_vec(),
    })
}

/// `C~_M^[r]` for `r = 0..=r(E)`.
pub fn coeffs_matroid(m: &Matroid, w: &WeightAssignment) -> Result<CoeffVector> {
    Ok(CoeffVector {
        lowest: 0,
        values: matroid_coefficients(m, w)?,
    })
}

/// `d^l C_G^[k] / dv_{e_1} ... dv_{e_l}`: the coefficient `C^[k]` of `G / {e_1, ..., e_l}`,
/// or zero when an edge repeats (the function is multiaffine).
pub fn coeff_partial_derivative(g: &MultiGraph, w: &WeightAssignment, edges: &[EdgeId], k: usize) -> Result<Rational> {
    let mut sorted = edges.to_vec();
    sorted.sort();
    let len = sorted.len();
    sorted.dedup();
    if sorted.len() < len {
        return Ok(Rational::zero());
    }
    let mut h = g.clone();
    let mut w2 = w.clone();
    for &e in edges {
        h = h.contract_or_delete(e)?;
        w2.remove(e);
    }
    Ok(graph_coefficients(&h, &w2)?.get(k).cloned().unwrap_or_else(Rational::zero))
}

/// Matroid analogue: `d^l C~^[r] / dv_S` as the sum over `A` containing `S` with `r(A) = r`.
pub fn coeff_partial_derivative_matroid(
    m: &Matroid,
    w: &WeightAssignment,
    elems: &[EdgeId],
    r: usize,
) -> Result<Rational> {
    let mut sorted = elems.to_vec();
    sorted.sort();
    let len = sorted.len();
    sorted.dedup();
    if sorted.len() < len {
        return Ok(Rational::zero());
    }
    let s = m.mask_of(elems)?;
    let ws = w.aligned(m.labels())?;
    let mut acc = Rational::zero();
    for mask in 0..=m.full_mask() {
        if mask & s != s || m.rank(mask) != r {
            continue;
        }
        let mut p = Rational::one();
        for (i, v) in ws.iter().enumerate() {
            if (mask & !s) >> i & 1 == 1 {
                p *= v;
            }
        }
        acc += p;
    }
    Ok(acc)
}

/// `Z_G(q, v)` as a polynomial in `q` for fixed weights.
pub fn z_as_qpoly(g: &MultiGraph, w: &WeightAssignment) -> Result<UniPoly> {
    Ok(UniPoly::new(graph_coefficients(g, w)?))
}

/// `Z_G / q^{c(G)}` as a polynomial in `q`.
pub fn z_over_qc(g: &MultiGraph, w: &WeightAssignment) -> Result<UniPoly> {
    let c = g.components();
    let z = z_as_qpoly(g, w)?;
    z.div_exact(&UniPoly::monomial(Rational::one(), c))
}

/// `q^{r(M)} Z~_M` as a polynomial in `q`: coefficient of `q^{r(M) - r}` is `C~^[r]`.
pub fn matroid_qpoly(m: &Matroid, w: &WeightAssignment) -> Result<UniPoly> {
    let mut c = matroid_coefficients(m, w)?;
    c.reverse();
    Ok(UniPoly::new(c))
}

/// `Z_G(q, v)` with a common weight `v`, as a polynomial in both.
pub fn z_bivariate(g: &MultiGraph) -> Result<BiPoly> {
    let ones = vec![Rational::one(); g.m()];
    let t = graph_table(g, &ones)?;
    let mut z = BiPoly::zero();
    for (k, row) in t.table.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                z.add_term(Rational::from_integer(c.clone()), k, j);
            }
        }
    }
    Ok(z)
}

/// Chromatic polynomial `P_G(q) = Z_G(q, -1)`.
pub fn chromatic(g: &MultiGraph) -> Result<UniPoly> {
    Ok(z_bivariate(g)?.at_v(&-Rational::one()))
}

/// Flow polynomial `F_G(q) = q^{-|V|} (-1)^{|E|} Z_G(q, -q)`.
pub fn flow(g: &MultiGraph) -> Result<UniPoly> {
    let z = z_bivariate(g)?.substitute_v(&UniPoly::new(vec![Rational::zero(), -Rational::one()]));
    let f = z.div_exact(&UniPoly::monomial(Rational::one(), g.n()))?;
    Ok(if g.m() % 2 == 1 { -&f } else { f })
}

/// `T_G(x, y) = (x-1)^{-k(E)} (y-1)^{-|V|} Z_G((x-1)(y-1), y-1)`, as a polynomial in `(x, y)`
/// stored with `x` in the first slot.
pub fn tutte_xy(g: &MultiGraph) -> Result<BiPoly> {
    let z = z_bivariate(g)?;
    let ke = g.components();
    let n = g.n();
    let mut shifted = BiPoly::zero();
    for (&(k, j), c) in z.terms() {
        // Exponents are k(A) - k(E) >= 0 and |A| + k(A) - |V| >= 0.
        shifted.add_term(c.clone(), k - ke, j + k - n);
    }
    let xm1 = &BiPoly::q() - &BiPoly::constant(Rational::one());
    let ym1 = &BiPoly::v() - &BiPoly::constant(Rational::one());
    Ok(shifted.compose(&xm1, &ym1))
}

/// Both sides of `Z~_{M*}(q, v) = q^{r(E)} prod(v_e / q) Z~_M(q, q / v)`.
pub fn duality_sides(m: &Matroid, q: &Rational, w: &WeightAssignment) -> Result<(Rational, Rational)> {
    if q.is_zero() {
        return Err(Error::Precondition("duality needs q != 0".into()));
    }
    let lhs = z_matroid_expansion(&m.dual(), q, w)?;
    let mut prod = Rational::one();
    let mut dual_w = WeightAssignment::new();
    for &e in m.labels() {
        let v = w.get(e)?;
        if v.is_zero() {
            return Err(Error::Precondition("duality needs nonzero weights".into()));
        }
        prod *= v / q;
        dual_w.set(e, q / v);
    }
    let rhs = pow_i(q, m.full_rank() as i64)? * prod * z_matroid_expansion(m, q, &dual_w)?;
    Ok((lhs, rhs))
}

pub fn duality_identity_check(m: &Matroid, q: &Rational, w: &WeightAssignment) -> Result<bool> {
    let (l, r) = duality_sides(m, q, w)?;
    Ok(l == r)
}

/// `Z~_{U_{2,4}} = [prod(1 + v_i) + (q - 1) sum v_i + (q^2 - 1)] / q^2`.
pub fn u24_closed_form(q: &Rational, v: &[Rational; 4]) -> Result<Rational> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let one = Rational::one();
    let prod = v.iter().fold(one.clone(), |acc, x| acc * (&one + x));
    let sum: Rational = v.iter().sum();
    Ok((prod + (q - &one) * sum + (q * q - one)) / (q * q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::tutte::z_expansion;

    #[test]
    fn triangle_specialisations() {
        let k3 = MultiGraph::complete(3);
        assert_eq!(chromatic(&k3).unwrap(), UniPoly::from_ints(&[0, 2, -3, 1]));
        assert_eq!(flow(&k3).unwrap(), UniPoly::from_ints(&[-1, 1]));
        let t = tutte_xy(&k3).unwrap();
        // x^2 + x + y
        assert_eq!(t.coeff(2, 0), int(1));
        assert_eq!(t.coeff(1, 0), int(1));
        assert_eq!(t.coeff(0, 1), int(1));
        assert_eq!(t.terms().count(), 3);
    }

    #[test]
    fn potts_sum_matches_expansion() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (0, 1), (2, 2)]).unwrap();
        let mut w = WeightAssignment::new();
        for (i, id) in g.edge_ids().into_iter().enumerate() {
            w.set(id, rat(2 * i as i64 - 3, 4));
        }
        for q in 1..=4 {
            assert_eq!(
                z_potts_coloring(&g, q, &w).unwrap(),
                z_expansion(&g, &int(q as i64), &w).unwrap()
            );
        }
        assert!(z_potts_coloring(&g, 6, &w).is_err());
    }

    #[test]
    fn u24_matches_expansion() {
        let m = Matroid::uniform(2, 4).unwrap();
        let v = [rat(-1, 2), rat(1, 3), int(2), rat(-5, 4)];
        let w = WeightAssignment::from_pairs(m.labels().iter().copied().zip(v.iter().cloned()));
        let q = rat(3, 7);
        assert_eq!(u24_closed_form(&q, &v).unwrap(), z_matroid_expansion(&m, &q, &w).unwrap());
    }

    #[test]
    fn coefficient_derivative_is_contraction() {
        let g = MultiGraph::complete(4);
        let w = WeightAssignment::for_graph(&g, &rat(-1, 2));
        let d = coeff_partial_derivative(&g, &w, &[EdgeId(0), EdgeId(0)], 1).unwrap();
        assert_eq!(d, int(0));
        // Mixed finite difference of the multiaffine coefficient in v_0 and v_5.
        let at = |a: i64, b: i64| {
            let mut w2 = w.clone();
            w2.set(EdgeId(0), int(a));
            w2.set(EdgeId(5), int(b));
            coeffs(&g, &w2).unwrap().get(2)
        };
        let fd = at(1, 1) - at(1, 0) - at(0, 1) + at(0, 0);
        assert_eq!(coeff_partial_derivative(&g, &w, &[EdgeId(0), EdgeId(5)], 2).unwrap(), fd);
    }
}
