//! Exact rationals backed by `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let fail = |reason: &str| Error::ParseRational {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    if t.is_empty() {
        return Err(fail("empty input"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| fail("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| fail("bad denominator"))?;
        if q.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(fail("bad decimal"));
        }
        let mut num: BigInt = digits.parse().map_err(|_| fail("bad decimal"))?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let p: BigInt = t.parse().map_err(|_| fail("bad integer"))?;
    Ok(Rational::from_integer(p))
}

/// `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `x^k` for signed `k`; errors on `0^k` with `k < 0`.
pub fn pow_i(x: &Rational, k: i64) -> Result<Rational> {
    if k >= 0 {
        Ok(num_traits::pow(x.clone(), k as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(num_traits::pow(x.recip(), (-k) as usize))
    }
}

pub fn sign(x: &Rational) -> i8 {
    match x.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `(-1)^k` as a small integer.
pub fn parity_sign(k: i64) -> i8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Exact `n`-th root when `x` is the `n`-th power of a rational.
pub fn exact_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = x.numer();
    let den = x.denom();
    let rn = num.abs().nth_root(n);
    let rd = den.nth_root(n);
    if num_traits::pow(rn.clone(), n as usize) != num.abs() || num_traits::pow(rd.clone(), n as usize) != *den {
        return None;
    }
    let r = Rational::new(rn, rd);
    Some(if num.is_negative() { -r } else { r })
}

/// The rational with smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi.clone(), &-lo.clone())
    } else {
        Rational::zero()
    }
}

// Stern-Brocot descent via continued fractions; requires 0 < lo <= hi.
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + Rational::one();
    }
    // Both share the integer part; recurse on reciprocals of the fractional parts.
    let a = lo - &fl;
    let b = hi - &fl;
    if b.is_zero() {
        return fl;
    }
    fl + simplest_positive(&b.recip(), &a.recip()).recip()
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7/4", "22/7", "-1"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nth_roots_detect_perfect_powers() {
        assert_eq!(exact_nth_root(&rat(1, 4096), 3), Some(rat(1, 16)));
        assert_eq!(exact_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(exact_nth_root(&rat(2, 1), 2), None);
        assert_eq!(exact_nth_root(&rat(-4, 1), 2), None);
    }

    #[test]
    fn simplest_rational_picks_smallest_denominator() {
        assert_eq!(simplest_between(&rat(-27, 32), &rat(-9, 16)), rat(-2, 3));
        assert_eq!(simplest_between(&rat(7, 10), &rat(8, 10)), rat(3, 4));
        assert_eq!(simplest_between(&rat(-1, 3), &rat(1, 2)), rat(0, 1));
        assert_eq!(simplest_between(&rat(5, 2), &rat(5, 2)), rat(5, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 1), BigInt::from(6));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
