//! Parallel, series and duality maps on edge weights, the diamond map, and interval images.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arith::{Rational, RationalEnclosure};
use crate::error::{Error, Result};
use crate::regions::{diamond_plus, RegionInterval, RegionTag};

/// A weight on the real line extended by `+inf` (the image of a pole of the series map).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtendedWeight {
    Finite(#[serde(with = "crate::arith::serde_rational")] Rational),
    PosInfinity,
}

impl ExtendedWeight {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedWeight::Finite(v) => Some(v),
            ExtendedWeight::PosInfinity => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            ExtendedWeight::Finite(v) => !v.is_negative(),
            ExtendedWeight::PosInfinity => true,
        }
    }
}

impl fmt::Display for ExtendedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedWeight::Finite(v) => write!(f, "{v}"),
            ExtendedWeight::PosInfinity => write!(f, "+inf"),
        }
    }
}

/// `v1 || v2 = (1 + v1)(1 + v2) - 1`.
pub fn par(v1: &Rational, v2: &Rational) -> Rational {
    v1 + v2 + v1 * v2
}

/// `v1 >< v2 = v1 v2 / (q + v1 + v2)`; a pole maps to `+inf`, and `0/0` is an error.
pub fn ser(q: &Rational, v1: &Rational, v2: &Rational) -> Result<ExtendedWeight> {
    let num = v1 * v2;
    let den = q + v1 + v2;
    if den.is_zero() {
        if num.is_zero() {
            return Err(Error::Indeterminate("series map"));
        }
        return Ok(ExtendedWeight::PosInfinity);
    }
    Ok(ExtendedWeight::Finite(num / den))
}

/// `v* = q / v`.
pub fn dualw(q: &Rational, v: &Rational) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(q / v)
}

/// `(v >< v) || (v >< v) = v^2 (v^2 + 4v + 2q) / (q + 2v)^2`, with `-q/2` and `+inf` mapped to `+inf`.
pub fn diamond_map(q: &Rational, v: &ExtendedWeight) -> Result<ExtendedWeight> {
    let v = match v {
        ExtendedWeight::PosInfinity => return Ok(ExtendedWeight::PosInfinity),
        ExtendedWeight::Finite(v) => v,
    };
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let den = q + &two * v;
    let num = v * v * (v * v + &four * v + &two * q);
    if den.is_zero() {
        if num.is_zero() {
            return Err(Error::Indeterminate("diamond map"));
        }
        return Ok(ExtendedWeight::PosInfinity);
    }
    Ok(ExtendedWeight::Finite(num / (&den * &den)))
}

pub fn diamond_iterate(q: &Rational, v: &ExtendedWeight, k: usize) -> Result<ExtendedWeight> {
    let mut x = v.clone();
    for _ in 0..k {
        x = diamond_map(q, &x)?;
    }
    Ok(x)
}

/// The least `k <= cap` with `Diamond^k(v) >= 0` (counting `+inf`), if any.
pub fn first_nonnegative_iterate(q: &Rational, v: &ExtendedWeight, cap: usize) -> Result<Option<usize>> {
    let mut x = v.clone();
    for k in 0..=cap {
        if x.is_nonnegative() {
            return Ok(Some(k));
        }
        if k < cap {
            x = diamond_map(q, &x)?;
        }
    }
    Ok(None)
}

/// `d Diamond / dv = 4v (v^3 + (q+2) v^2 + 3qv + q^2) / (q + 2v)^3`.
pub fn diamond_derivative(q: &Rational, v: &Rational) -> Result<Rational> {
    let two = Rational::from_integer(2.into());
    let den = q + &two * v;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let three = Rational::from_integer(3.into());
    let inner = v * v * v + (q + &two) * v * v + three * q * v + q * q;
    Ok(Rational::from_integer(4.into()) * v * inner / (&den * &den * &den))
}

fn diamond_derivative_enclosure(q: &Rational, v: &RationalEnclosure) -> Result<RationalEnclosure> {
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());
    let v2 = v.mul(v);
    let inner = v2
        .mul(v)
        .add(&v2.scale(&(q + &two)))
        .add(&v.scale(&(three * q)))
        .add_scalar(&(q * q));
    let den = v.scale(&two).add_scalar(q);
    let den3 = den.mul(&den).mul(&den);
    v.scale(&Rational::from_integer(4.into())).mul(&inner).div(&den3)
}

/// Enclosure of the multiplier `Diamond'(v+)` at the repelling fixed point `v+(q)`, `0 < q <= 32/27`.
pub fn diamond_multiplier_enclosure(q: &Rational, width: &Rational) -> Result<RationalEnclosure> {
    let mut w = width.clone();
    for _ in 0..64 {
        let vp = diamond_plus(q, &w)?;
        if let Some(x) = vp.exact() {
            return Ok(RationalEnclosure::point(diamond_derivative(q, x)?));
        }
        let e = diamond_derivative_enclosure(q, &vp)?;
        if e.width() <= *width {
            return Ok(e);
        }
        w /= Rational::from_integer(16.into());
    }
    Err(Error::NotConverged(64))
}

/// Whether an extreme corner value is attained inside the (possibly open) box.
fn corner_attained(a_open: bool, b_open: bool, a_end: &RationalEnclosure, b_end: &RationalEnclosure) -> bool {
    let minus_one = RationalEnclosure::point(-Rational::one());
    // Along an open coordinate the bilinear map is constant only when the other factor (1 + x) vanishes.
    (!a_open || *b_end == minus_one) && (!b_open || *a_end == minus_one)
}

/// `{a || b : a in A, b in B}`. Endpoint openness is reported only when certain;
/// undecided cases are reported closed, which only enlarges the image.
pub fn interval_par_image(a: &RegionInterval, b: &RegionInterval) -> Result<RegionInterval> {
    let ends_a = [(&a.lo, a.lo_open), (&a.hi, a.hi_open)];
    let ends_b = [(&b.lo, b.lo_open), (&b.hi, b.hi_open)];
    let mut corners = Vec::new();
    for (ea, oa) in ends_a {
        for (eb, ob) in ends_b {
            let val = ea.add_scalar(&Rational::one()).mul(&eb.add_scalar(&Rational::one())).add_scalar(&-Rational::one());
            corners.push((val, corner_attained(oa, ob, ea, eb)));
        }
    }
    let lo = RationalEnclosure {
        lo: corners.iter().map(|c| c.0.lo.clone()).min().expect("four corners"),
        hi: corners.iter().map(|c| c.0.hi.clone()).min().expect("four corners"),
    };
    let hi = RationalEnclosure {
        lo: corners.iter().map(|c| c.0.lo.clone()).max().expect("four corners"),
        hi: corners.iter().map(|c| c.0.hi.clone()).max().expect("four corners"),
    };
    let open_at = |target: &RationalEnclosure| {
        let Some(t) = target.exact() else { return false };
        let candidates: Vec<_> = corners.iter().filter(|c| c.0.contains(t)).collect();
        candidates.iter().all(|c| c.0.is_point() && !c.1)
    };
    Ok(RegionInterval {
        lo_open: open_at(&lo),
        hi_open: open_at(&hi),
        lo,
        hi,
        tag: RegionTag::Image,
    })
}

/// `{v -> q/v}` applied to an interval that avoids zero.
fn dual_interval(q: &Rational, a: &RegionInterval) -> Result<RegionInterval> {
    let whole = a.lo.hull(&a.hi);
    if whole.contains(&Rational::zero()) {
        return Err(Error::Precondition("interval meets zero; the duality map is unbounded".into()));
    }
    let qe = RationalEnclosure::point(q.clone());
    let (lo, hi, lo_open, hi_open) = if q.is_positive() {
        (qe.div(&a.hi)?, qe.div(&a.lo)?, a.hi_open, a.lo_open)
    } else {
        (qe.div(&a.lo)?, qe.div(&a.hi)?, a.lo_open, a.hi_open)
    };
    Ok(RegionInterval {
        lo,
        hi,
        lo_open,
        hi_open,
        tag: RegionTag::Image,
    })
}

/// `{a >< b : a in A, b in B}` via `a >< b = q / ((q/a) || (q/b))`; errors when the
/// series map has a pole over the box.
pub fn interval_ser_image(q: &Rational, a: &RegionInterval, b: &RegionInterval) -> Result<RegionInterval> {
    if q.is_zero() {
        return Err(Error::Precondition("series image needs q != 0".into()));
    }
    let p = interval_par_image(&dual_interval(q, a)?, &dual_interval(q, b)?)?;
    let whole = p.lo.hull(&p.hi);
    if whole.contains(&Rational::zero()) {
        return Err(Error::Precondition("series map has a pole over the interval".into()));
    }
    dual_interval(q, &p)
}
