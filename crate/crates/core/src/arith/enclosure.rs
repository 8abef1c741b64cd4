//! Closed rational intervals known to contain a real number, refined by sign bisection.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::rational::{simplest_between, Rational};
use crate::error::{Error, Result};

/// Cap on bisection steps for a single refinement request.
pub const MAX_BISECTIONS: usize = 20_000;

/// `[lo, hi]` with `lo <= hi`; a point when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalEnclosure {
    #[serde(with = "crate::arith::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub hi: Rational,
}

impl RationalEnclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedEnclosure {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RationalEnclosure { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalEnclosure { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when the enclosure has collapsed.
    pub fn exact(&self) -> Option<&Rational> {
        self.is_point().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, o: &RationalEnclosure) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Certainly below `o`: every point of `self` is `< o`'s every point.
    pub fn certainly_lt(&self, o: &RationalEnclosure) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_le(&self, o: &RationalEnclosure) -> bool {
        self.hi <= o.lo
    }

    pub fn neg(&self) -> Self {
        RationalEnclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalEnclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn add_scalar(&self, c: &Rational) -> Self {
        RationalEnclosure {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        RationalEnclosure { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul(&RationalEnclosure::point(c.clone()))
    }

    /// Reciprocal; errors when zero lies in the enclosure.
    pub fn recip(&self) -> Result<Self> {
        if self.contains(&Rational::zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalEnclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Convex hull of two enclosures.
    pub fn hull(&self, o: &Self) -> Self {
        RationalEnclosure {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Sign when decided: all points share it.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Halves `e` by the sign of `pred` until its width is at most `width`.
///
/// `pred` must change sign across `e`. An exact zero met at an endpoint, a
/// midpoint, or the simplest rational of the current interval collapses the
/// enclosure to that point. When both ends share a sign, the midpoint is
/// probed once before the request is rejected.
pub fn enclosure_refine<F>(e: &RationalEnclosure, width: &Rational, pred: F) -> Result<RationalEnclosure>
where
    F: Fn(&Rational) -> i8,
{
    if e.is_point() {
        return Ok(e.clone());
    }
    let (mut lo, mut hi) = (e.lo.clone(), e.hi.clone());
    let slo = pred(&lo);
    if slo == 0 {
        return Ok(RationalEnclosure::point(lo));
    }
    let shi = pred(&hi);
    if shi == 0 {
        return Ok(RationalEnclosure::point(hi));
    }
    if slo == shi {
        let mid = e.midpoint();
        if pred(&mid) == 0 {
            return Ok(RationalEnclosure::point(mid));
        }
        return Err(Error::NoSignChange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let two = Rational::from_integer(2.into());
    for step in 0..MAX_BISECTIONS {
        if &hi - &lo <= *width {
            return Ok(RationalEnclosure { lo, hi });
        }
        // Probing the simplest rational catches small-denominator roots exactly.
        if step % 4 == 0 {
            let s = simplest_between(&lo, &hi);
            if pred(&s) == 0 {
                return Ok(RationalEnclosure::point(s));
            }
        }
        let mid = (&lo + &hi) / &two;
        let sm = pred(&mid);
        if sm == 0 {
            return Ok(RationalEnclosure::point(mid));
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NotConverged(MAX_BISECTIONS))
}

/// `2^-k` as a rational.
pub fn dyadic_width(k: u32) -> Rational {
    Rational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(2), k as usize))
}

/// Default refinement width, `2^-40`.
pub fn default_width() -> Rational {
    dyadic_width(40)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, UniPoly};

    #[test]
    fn sqrt_two_is_enclosed() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let e = RationalEnclosure::new(int(1), int(2)).unwrap();
        let r = enclosure_refine(&e, &dyadic_width(20), |x| p.sign_at(x)).unwrap();
        assert!(r.width() <= dyadic_width(20));
        assert!(&r.lo * &r.lo < int(2) && int(2) < &r.hi * &r.hi);
    }

    #[test]
    fn same_sign_ends_are_rejected() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        let e = RationalEnclosure::new(int(-1), int(3)).unwrap();
        assert!(matches!(
            enclosure_refine(&e, &dyadic_width(10), |x| p.sign_at(x)),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn diamond_cubic_double_root_collapses() {
        // v^3 - 2qv - q^2 at q = 32/27 has -8/9 as a double root.
        let q = rat(32, 27);
        let p = UniPoly::new(vec![-(&q * &q), -(int(2) * &q), int(0), int(1)]);
        let c = rat(-8, 9);
        let e = RationalEnclosure::new(&c - rat(1, 10), &c + rat(1, 10)).unwrap();
        let r = enclosure_refine(&e, &int(0), |x| p.sign_at(x)).unwrap();
        assert_eq!(r.exact(), Some(&c));
    }

    #[test]
    fn inverted_enclosure_is_an_error() {
        assert!(RationalEnclosure::new(int(1), int(0)).is_err());
    }

    #[test]
    fn interval_arithmetic_contains_pointwise_results() {
        let a = RationalEnclosure::new(rat(-3, 2), rat(-1, 2)).unwrap();
        let b = RationalEnclosure::new(rat(1, 3), rat(2, 3)).unwrap();
        let m = a.mul(&b);
        assert_eq!(m, RationalEnclosure::new(rat(-1, 1), rat(-1, 6)).unwrap());
        assert!(a.div(&b).unwrap().contains(&(rat(-1, 1) / rat(1, 2))));
        assert!(b.sub(&a).recip().is_ok());
        assert!(RationalEnclosure::new(rat(-1, 1), rat(1, 1)).unwrap().recip().is_err());
    }
}
