//! Zero-free intervals with certified rational endpoint enclosures.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arith::{binomial, int, parity_sign, rat, sign, Rational, RationalEnclosure, UniPoly};
use crate::error::{Error, Result};
use crate::graph::{nonseparable_multigraphs, WeightAssignment};
use crate::roots::{isolate_roots, isolate_roots_in, nth_root_enclosure, refine_root, RootEnclosure};
use crate::tutte::z_expansion;
use crate::weights::{interval_par_image, interval_ser_image};

/// Records how an interval was built so it can be rebuilt at a finer width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionTag {
    Im {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
        m: u32,
    },
    ImCocyc {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
        m: u32,
    },
    ImCyc {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
        m: u32,
    },
    Diamond {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
    },
    V2 {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
    },
    V3 {
        #[serde(with = "crate::arith::serde_rational")]
        q: Rational,
    },
    Exact,
    Image,
}

/// An interval whose endpoints are known through enclosures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionInterval {
    pub lo: RationalEnclosure,
    pub hi: RationalEnclosure,
    pub lo_open: bool,
    pub hi_open: bool,
    pub tag: RegionTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Outside,
    Undecided,
}

impl From<Option<bool>> for Membership {
    fn from(x: Option<bool>) -> Self {
        match x {
            Some(true) => Membership::Inside,
            Some(false) => Membership::Outside,
            None => Membership::Undecided,
        }
    }
}

impl RegionInterval {
    /// An interval with exact rational endpoints.
    pub fn exact(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedEnclosure {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RegionInterval {
            lo: RationalEnclosure::point(lo),
            hi: RationalEnclosure::point(hi),
            lo_open,
            hi_open,
            tag: RegionTag::Exact,
        })
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::exact(lo, hi, true, true)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::exact(lo, hi, false, false)
    }

    /// `Some(true)` when `v` is certainly inside, `Some(false)` when certainly outside.
    pub fn contains_value(&self, v: &Rational) -> Option<bool> {
        let above_lo = side(v, &self.lo, self.lo_open, true)?;
        let below_hi = side(v, &self.hi, self.hi_open, false)?;
        Some(above_lo && below_hi)
    }

    /// Decides `other ⊆ self` when the enclosures allow it.
    pub fn contains_interval(&self, o: &RegionInterval) -> Option<bool> {
        let lo_ok = end_inside(&o.lo, o.lo_open, &self.lo, self.lo_open, true)?;
        let hi_ok = end_inside(&o.hi, o.hi_open, &self.hi, self.hi_open, false)?;
        Some(lo_ok && hi_ok)
    }

    /// The same interval with endpoint enclosures of width at most `width` where possible.
    pub fn refine(&self, width: &Rational) -> Result<RegionInterval> {
        match &self.tag {
            RegionTag::Im { q, m } => interval_im(q, *m, width),
            RegionTag::ImCocyc { q, m } => interval_im_cocyc(q, *m, width),
            RegionTag::ImCyc { q, m } => interval_im_cyc(q, *m, width),
            RegionTag::Diamond { q } => diamond_interval(q, width),
            RegionTag::V2 { q } => v2_region(q, width),
            RegionTag::V3 { q } => v3_region(q, width),
            RegionTag::Exact | RegionTag::Image => Ok(self.clone()),
        }
    }

    /// Rational points certainly in the interval: exact closed endpoints, and
    /// `L + t (U - L)` for each `t` in `fractions` (each in `(0, 1)`), where
    /// `[L, U]` is the part certainly inside.
    pub fn sample_points(&self, fractions: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::new();
        if !self.lo_open {
            if let Some(x) = self.lo.exact() {
                out.push(x.clone());
            }
        }
        let l = self.lo.hi.clone();
        let u = self.hi.lo.clone();
        if l < u {
            for t in fractions {
                out.push(&l + t * (&u - &l));
            }
        }
        if !self.hi_open {
            if let Some(x) = self.hi.exact() {
                if out.last() != Some(x) {
                    out.push(x.clone());
                }
            }
        }
        out
    }
}

// Is v on the inner side of an endpoint? `lower` selects which side.
fn side(v: &Rational, end: &RationalEnclosure, open: bool, lower: bool) -> Option<bool> {
    if let Some(e) = end.exact() {
        return Some(match (v.cmp(e), lower) {
            (std::cmp::Ordering::Equal, _) => !open,
            (std::cmp::Ordering::Greater, true) | (std::cmp::Ordering::Less, false) => true,
            _ => false,
        });
    }
    if lower {
        if *v > end.hi {
            Some(true)
        } else if *v < end.lo {
            Some(false)
        } else {
            None
        }
    } else if *v < end.lo {
        Some(true)
    } else if *v > end.hi {
        Some(false)
    } else {
        None
    }
}

// Does the endpoint `inner` (of the candidate subset) sit inside the bound `outer`?
fn end_inside(
    inner: &RationalEnclosure,
    inner_open: bool,
    outer: &RationalEnclosure,
    outer_open: bool,
    lower: bool,
) -> Option<bool> {
    if let (Some(i), Some(o)) = (inner.exact(), outer.exact()) {
        return Some(match (i.cmp(o), lower) {
            (std::cmp::Ordering::Equal, _) => inner_open || !outer_open,
            (std::cmp::Ordering::Greater, true) | (std::cmp::Ordering::Less, false) => true,
            _ => false,
        });
    }
    let (strictly_in, strictly_out) = if lower {
        (inner.lo > outer.hi, inner.hi < outer.lo)
    } else {
        (inner.hi < outer.lo, inner.lo > outer.hi)
    };
    if strictly_in {
        Some(true)
    } else if strictly_out {
        Some(false)
    } else {
        None
    }
}

impl fmt::Display for RegionInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            self.lo,
            self.hi,
            if self.hi_open { ")" } else { "]" }
        )
    }
}

fn check_unit_q(q: &Rational) -> Result<()> {
    if !q.is_positive() || *q >= Rational::one() {
        return Err(Error::Precondition(format!("q = {q} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    Ok(())
}

/// `(1 - q)^{1/m}`.
fn unit_root(q: &Rational, m: u32, width: &Rational) -> Result<RationalEnclosure> {
    nth_root_enclosure(&(Rational::one() - q), m, width)
}

fn neg_q_over(q: &Rational, d: &RationalEnclosure) -> Result<RationalEnclosure> {
    RationalEnclosure::point(-q.clone()).div(d)
}

/// `I_m = (-(1 + r), -q / (1 + r))` with `r = (1 - q)^{1/m}`, for `0 < q < 1`.
pub fn interval_im(q: &Rational, m: u32, width: &Rational) -> Result<RegionInterval> {
    check_unit_q(q)?;
    check_m(m)?;
    let r = unit_root(q, m, width)?;
    let one_plus = r.add_scalar(&Rational::one());
    Ok(RegionInterval {
        lo: one_plus.neg(),
        hi: neg_q_over(q, &one_plus)?,
        lo_open: true,
        hi_open: true,
        tag: RegionTag::Im { q: q.clone(), m },
    })
}

/// `(-(1 + r), -(1 - r))`.
pub fn interval_im_cocyc(q: &Rational, m: u32, width: &Rational) -> Result<RegionInterval> {
    check_unit_q(q)?;
    check_m(m)?;
    let r = unit_root(q, m, width)?;
    Ok(RegionInterval {
        lo: r.add_scalar(&Rational::one()).neg(),
        hi: r.neg().add_scalar(&Rational::one()).neg(),
        lo_open: true,
        hi_open: true,
        tag: RegionTag::ImCocyc { q: q.clone(), m },
    })
}

/// `(-q / (1 - r), -q / (1 + r))`.
pub fn interval_im_cyc(q: &Rational, m: u32, width: &Rational) -> Result<RegionInterval> {
    check_unit_q(q)?;
    check_m(m)?;
    let r = unit_root(q, m, width)?;
    Ok(RegionInterval {
        lo: neg_q_over(q, &r.neg().add_scalar(&Rational::one()))?,
        hi: neg_q_over(q, &r.add_scalar(&Rational::one()))?,
        lo_open: true,
        hi_open: true,
        tag: RegionTag::ImCyc { q: q.clone(), m },
    })
}

/// Upper endpoint of `I_m`: `-q / (1 + (1 - q)^{1/m})`.
pub fn vm_plus(q: &Rational, m: u32, width: &Rational) -> Result<RationalEnclosure> {
    Ok(interval_im(q, m, width)?.hi)
}

/// `v^3 + 3q v^2 + (q^2 + 2q) v + q^2`.
pub fn v3_cubic(q: &Rational) -> UniPoly {
    UniPoly::new(vec![q * q, q * q + int(2) * q, int(3) * q, Rational::one()])
}

/// The unique real root of [`v3_cubic`], which lies in `(-q, -q/2)` for `0 < q < 1`.
pub fn v3_plus(q: &Rational, width: &Rational) -> Result<RootEnclosure> {
    check_unit_q(q)?;
    let p = v3_cubic(q);
    let all = isolate_roots(&p)?;
    if all.len() != 1 || !all[0].is_simple() {
        return Err(Error::Precondition(format!("cubic has {} real roots at q = {q}", all.len())));
    }
    let r = refine_root(&all[0], width)?;
    let (lo, hi) = (-q.clone(), -q.clone() / int(2));
    if r.interval.lo <= lo || r.interval.hi >= hi {
        return Err(Error::Precondition("root left (-q, -q/2)".into()));
    }
    Ok(r)
}

/// `v^3 - 2qv - q^2`, whose middle root is the repelling fixed point of the diamond map.
pub fn diamond_cubic(q: &Rational) -> UniPoly {
    UniPoly::new(vec![-(q * q), -(int(2) * q), int(0), Rational::one()])
}

pub fn check_diamond_q(q: &Rational) -> Result<()> {
    if !q.is_positive() || *q > rat(32, 27) {
        return Err(Error::Precondition(format!("q = {q} must lie in (0, 32/27]")));
    }
    Ok(())
}

/// `v_diamond^+(q)`: the root of the diamond cubic in `[-3q/4, -q/2)`.
pub fn diamond_plus(q: &Rational, width: &Rational) -> Result<RationalEnclosure> {
    check_diamond_q(q)?;
    let p = diamond_cubic(q);
    let lo = -(int(3) * q) / int(4);
    let hi = -q.clone() / int(2);
    if p.eval(&lo).is_zero() {
        return Ok(RationalEnclosure::point(lo));
    }
    let rs = isolate_roots_in(&p, &lo, &hi)?;
    if rs.len() != 1 {
        return Err(Error::Precondition(format!("expected one root in [-3q/4, -q/2), found {}", rs.len())));
    }
    Ok(refine_root(&rs[0], width)?.interval)
}

/// `v_diamond^-(q) = q / v_diamond^+(q)`.
pub fn diamond_minus(q: &Rational, width: &Rational) -> Result<RationalEnclosure> {
    let vp = diamond_plus(q, width)?;
    let m = RationalEnclosure::point(q.clone()).div(&vp)?;
    if m.width() <= *width || vp.is_point() {
        return Ok(m);
    }
    // q / v stretches widths by at most q / v^2 <= 16 / (9q) on [-3q/4, -q/2].
    let finer = width * q * int(9) / int(16);
    RationalEnclosure::point(q.clone()).div(&diamond_plus(q, &finer)?)
}

/// All real roots of the diamond cubic, refined.
pub fn diamond_cubic_roots(q: &Rational, width: &Rational) -> Result<Vec<RootEnclosure>> {
    isolate_roots(&diamond_cubic(q))?
        .iter()
        .map(|r| refine_root(r, width))
        .collect()
}

/// Closed interval `[v_diamond^-, v_diamond^+]`.
pub fn diamond_interval(q: &Rational, width: &Rational) -> Result<RegionInterval> {
    Ok(RegionInterval {
        lo: diamond_minus(q, width)?,
        hi: diamond_plus(q, width)?,
        lo_open: false,
        hi_open: false,
        tag: RegionTag::Diamond { q: q.clone() },
    })
}

/// Partial sums of the power series of `(v_diamond^+, v_diamond^-)` through `q^{terms}` corrections.
pub fn diamond_series(q: &Rational, terms: usize) -> (Rational, Rational) {
    let mut plus = -q.clone() / int(2);
    let mut minus = int(-2);
    let mut qm = Rational::one();
    for m in 1..=terms as u64 {
        qm *= q;
        let eight_m = num_traits::pow(Rational::from_integer(8.into()), m as usize);
        let cp = Rational::from_integer(binomial(3 * m, m - 1)) / (Rational::from_integer((2 * m).into()) * &eight_m);
        plus -= cp * &qm * q;
        let cm = Rational::from_integer(binomial(3 * m - 2, m - 1)) * int(2) / (Rational::from_integer(m.into()) * &eight_m);
        minus += cm * &qm;
    }
    (plus, minus)
}

fn check_above_one(q: &Rational) -> Result<()> {
    if *q <= Rational::one() || *q > rat(32, 27) {
        return Err(Error::Precondition(format!("q = {q} must lie in (1, 32/27]")));
    }
    Ok(())
}

/// `V_2(q)`: `(-q - sqrt(q^2 - q), -q + sqrt(q^2 - q))` for `q <= 9/8`, else the diamond interval.
pub fn v2_region(q: &Rational, width: &Rational) -> Result<RegionInterval> {
    check_above_one(q)?;
    if *q > rat(9, 8) {
        return Ok(RegionInterval {
            tag: RegionTag::V2 { q: q.clone() },
            ..diamond_interval(q, width)?
        });
    }
    let s = nth_root_enclosure(&(q * q - q), 2, width)?;
    Ok(RegionInterval {
        lo: s.neg().add_scalar(&-q.clone()),
        hi: s.add_scalar(&-q.clone()),
        lo_open: true,
        hi_open: true,
        tag: RegionTag::V2 { q: q.clone() },
    })
}

/// `V_3(q)`: `(q/u, u)` with `u = -1 + t - t^2`, `t = (q - 1)^{1/3}`, for `q <= 9/8`; else the diamond interval.
pub fn v3_region(q: &Rational, width: &Rational) -> Result<RegionInterval> {
    check_above_one(q)?;
    if *q > rat(9, 8) {
        return Ok(RegionInterval {
            tag: RegionTag::V3 { q: q.clone() },
            ..diamond_interval(q, width)?
        });
    }
    // u is increasing in t on [0, 1/2]; q/u has slope at most q / u^2 <= 2 there.
    let t = nth_root_enclosure(&(q - Rational::one()), 3, &(width / int(4)))?;
    let u_at = |t: &Rational| -Rational::one() + t - t * t;
    let u = RationalEnclosure {
        lo: u_at(&t.lo),
        hi: u_at(&t.hi),
    };
    Ok(RegionInterval {
        lo: RationalEnclosure::point(q.clone()).div(&u)?,
        hi: u,
        lo_open: true,
        hi_open: true,
        tag: RegionTag::V3 { q: q.clone() },
    })
}

/// Decides membership of `v`, rebuilding the region at finer widths when undecided.
pub fn refine_until_decided(v: &Rational, r: &RegionInterval, rounds: usize) -> Result<Membership> {
    let mut cur = r.clone();
    let mut width = cur.lo.width().max(cur.hi.width());
    for _ in 0..=rounds {
        if let Some(b) = cur.contains_value(v) {
            return Ok(Some(b).into());
        }
        if width.is_zero() {
            break;
        }
        width /= int(1 << 16);
        cur = cur.refine(&width)?;
    }
    Ok(Membership::Undecided)
}

/// Outcome of an exact containment or sign check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(String),
    Undecided(String),
}

/// Sampling cannot prove a hypothesis on a continuum; it can only refute it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum Falsification {
    Falsified {
        graph: String,
        weights: Vec<String>,
        value: String,
    },
    Unfalsified {
        cases: usize,
    },
}

/// Status of each of the four hypotheses of the inductive zero-free criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// `V ⊆ (-2, -q/2)`.
    pub a: Verdict,
    /// `V || V ⊆ V`.
    pub b: Verdict,
    /// `V >< V ⊆ V`.
    pub c: Verdict,
    /// Sign condition on every non-separable graph with `m` edges.
    pub d: Falsification,
}

fn containment_verdict(outer: &RegionInterval, inner: Result<RegionInterval>, what: &str) -> Verdict {
    match inner {
        Err(e) => Verdict::Fails(format!("{what}: {e}")),
        Ok(i) => match outer.contains_interval(&i) {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails(format!("{what} image {i} not inside {outer}")),
            None => Verdict::Undecided(format!("{what} image {i} against {outer}")),
        },
    }
}

/// Checks hypotheses (a)-(c) exactly and samples (d) over every loopless
/// non-separable graph with `m` edges, weights drawn from `samples` points of `V`.
pub fn check_hypotheses(v: &RegionInterval, q: &Rational, m: usize, gamma: u32, samples: usize) -> Result<HypothesisReport> {
    let strip = RegionInterval::open(int(-2), -q.clone() / int(2))?;
    let a = match strip.contains_interval(v) {
        Some(true) => Verdict::Holds,
        Some(false) => Verdict::Fails(format!("{v} not inside {strip}")),
        None => Verdict::Undecided(format!("{v} against {strip}")),
    };
    let b = containment_verdict(v, interval_par_image(v, v), "parallel");
    let c = containment_verdict(v, interval_ser_image(q, v, v), "series");
    let fractions: Vec<Rational> = (1..=samples).map(|i| rat(i as i64, samples as i64 + 1)).collect();
    let points = v.sample_points(&fractions);
    let mut cases = 0;
    for g in nonseparable_multigraphs(m) {
        let ids = g.edge_ids();
        let expected = parity_sign(g.n() as i64 - 1 + gamma as i64);
        let mut idx = vec![0usize; ids.len()];
        loop {
            let w = WeightAssignment::from_pairs(ids.iter().zip(&idx).map(|(&e, &i)| (e, points[i].clone())));
            let z = z_expansion(&g, q, &w)?;
            cases += 1;
            if sign(&z) != expected {
                return Ok(HypothesisReport {
                    a,
                    b,
                    c,
                    d: Falsification::Falsified {
                        graph: crate::io::format_graph(&g, None),
                        weights: idx.iter().map(|&i| points[i].to_string()).collect(),
                        value: z.to_string(),
                    },
                });
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < points.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(HypothesisReport {
        a,
        b,
        c,
        d: Falsification::Unfalsified { cases },
    })
}

/// Condition (c) of the self-dual closure criterion: `q <= 32/27` and
/// `max(v^(3), -q) <= v+ <= v^(2)`. `None` when enclosures cannot decide.
pub fn selfdual_closure_condition(q: &Rational, v_plus: &Rational, width: &Rational) -> Result<Option<bool>> {
    if *q > rat(32, 27) {
        return Ok(Some(false));
    }
    let roots = diamond_cubic_roots(q, width)?;
    // Roots ascending; a double root at q = 32/27 appears once with multiplicity two.
    let (v3, v2) = match roots.as_slice() {
        [a, b, _] => (a.interval.clone(), b.interval.clone()),
        [a, _] if a.multiplicity == 2 => (a.interval.clone(), a.interval.clone()),
        _ => return Err(Error::Precondition(format!("diamond cubic at q = {q} has {} real roots", roots.len()))),
    };
    let lower = if *q <= Rational::one() {
        RationalEnclosure::point(-q.clone())
    } else {
        v3
    };
    let ge_lower = if let Some(l) = lower.exact() {
        Some(v_plus >= l)
    } else if *v_plus > lower.hi {
        Some(true)
    } else if *v_plus < lower.lo {
        Some(false)
    } else {
        None
    };
    let le_upper = if let Some(u) = v2.exact() {
        Some(v_plus <= u)
    } else if *v_plus < v2.lo {
        Some(true)
    } else if *v_plus > v2.hi {
        Some(false)
    } else {
        None
    };
    Ok(match (ge_lower, le_upper) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    })
}

fn enclosure_center(e: &RationalEnclosure) -> Rational {
    e.midpoint()
}

/// One CSV row per grid point; columns that do not apply to `q` are left empty.
pub fn regions_csv(grid: &[Rational], width: &Rational) -> Result<String> {
    let mut out = String::from(
        "q,-q/2,-3q/4,v_diamond_plus_lo,v_diamond_plus_hi,v_diamond_minus_lo,v_diamond_minus_hi,\
         v2_plus,v3_plus_lo,v3_plus_hi,v4_plus,V2_lo,V2_hi,V3_lo,V3_hi\n",
    );
    for q in grid {
        let mut row: Vec<String> = vec![q.to_string(), (-q.clone() / int(2)).to_string(), (-(int(3) * q) / int(4)).to_string()];
        let diamond = q.is_positive() && *q <= rat(32, 27);
        if diamond {
            let p = diamond_plus(q, width)?;
            let m = diamond_minus(q, width)?;
            row.extend([p.lo, p.hi, m.lo, m.hi].iter().map(|x| x.to_string()));
        } else {
            row.extend(std::iter::repeat_n(String::new(), 4));
        }
        if q.is_positive() && *q < Rational::one() {
            let v3 = v3_plus(q, width)?;
            row.push(enclosure_center(&vm_plus(q, 2, width)?).to_string());
            row.push(v3.interval.lo.to_string());
            row.push(v3.interval.hi.to_string());
            row.push(enclosure_center(&vm_plus(q, 4, width)?).to_string());
        } else {
            row.extend(std::iter::repeat_n(String::new(), 4));
        }
        if *q > Rational::one() && *q <= rat(32, 27) {
            for r in [v2_region(q, width)?, v3_region(q, width)?] {
                row.push(enclosure_center(&r.lo).to_string());
                row.push(enclosure_center(&r.hi).to_string());
            }
        } else {
            row.extend(std::iter::repeat_n(String::new(), 4));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}
