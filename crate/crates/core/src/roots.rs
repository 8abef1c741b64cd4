//! Real root isolation by Sturm sequences and refinement by bisection.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{enclosure_refine, exact_nth_root, simplest_between, Rational, RationalEnclosure, UniPoly};
use crate::error::{Error, Result};

/// One real root: `poly` is the squarefree factor carrying it, and when the
/// enclosure is not a point, `poly` has opposite nonzero signs at its ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(skip)]
    pub poly: UniPoly,
    pub interval: RationalEnclosure,
    pub multiplicity: usize,
}

impl RootEnclosure {
    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.interval.exact()
    }
}

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative(1)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            return seq;
        }
        seq.push(-&r);
    }
}

fn variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct roots of a squarefree `p` in `(a, b]`.
pub fn count_roots(seq: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    variations(seq, a).saturating_sub(variations(seq, b))
}

/// A bound strictly above the absolute value of every root.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| (c / &lead).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::from_integer(2.into())
}

/// Largest bit length of the scaled leading coefficient for which the rational root search runs.
const MAX_RATIONAL_ROOT_BITS: u64 = 4096;

/// The rational root of `f` in `(a, b)` when there is one, given a single sign change there.
///
/// A rational root `n/d` of the integer polynomial `c f` has `d | L`, its leading
/// coefficient. Once the bracket is narrower than `1/L` it holds at most one
/// multiple of `1/L`, and that is the only candidate.
fn rational_root_in(f: &UniPoly, a: &Rational, b: &Rational) -> Option<Rational> {
    let den = f.coeffs().iter().fold(num_bigint::BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let lead = (f.leading() * Rational::from_integer(den)).to_integer().abs();
    if lead.bits() > MAX_RATIONAL_ROOT_BITS {
        return None;
    }
    let step = Rational::new(num_bigint::BigInt::one(), lead.clone());
    let (mut lo, mut hi) = (a.clone(), b.clone());
    let s_lo = f.sign_at(&lo);
    let two = Rational::from_integer(2.into());
    while &hi - &lo >= step {
        let mid = (&lo + &hi) / &two;
        match f.sign_at(&mid) {
            0 => return Some(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    let k = (&lo * Rational::from_integer(lead.clone())).ceil();
    let candidate = k / Rational::from_integer(lead);
    (candidate <= hi && f.sign_at(&candidate) == 0).then_some(candidate)
}

/// Roots of the squarefree `f` in the closed interval `[lo, hi]`.
fn isolate_squarefree(f: &UniPoly, lo: &Rational, hi: &Rational, mult: usize) -> Vec<RootEnclosure> {
    let seq = sturm_sequence(f);
    let mut out = Vec::new();
    let point = |x: Rational| RootEnclosure {
        poly: f.clone(),
        interval: RationalEnclosure::point(x),
        multiplicity: mult,
    };
    if f.degree() == Some(1) {
        let x = -f.coeff(0) / f.coeff(1);
        if *lo <= x && x <= *hi {
            out.push(point(x));
        }
        return out;
    }
    if f.sign_at(lo) == 0 {
        out.push(point(lo.clone()));
    }
    // The flag records that `b` is a root already reported.
    let mut work = vec![(lo.clone(), hi.clone(), false)];
    let two = Rational::from_integer(2.into());
    while let Some((a, b, b_reported)) = work.pop() {
        let mut c = count_roots(&seq, &a, &b);
        let b_root = f.sign_at(&b) == 0;
        if b_root {
            if !b_reported {
                out.push(point(b.clone()));
            }
            c -= 1;
        }
        if c == 0 {
            continue;
        }
        if c == 1 && !b_root && f.sign_at(&a) != 0 {
            let s = simplest_between(&a, &b);
            if f.sign_at(&s) == 0 {
                out.push(point(s));
            } else if let Some(r) = rational_root_in(f, &a, &b) {
                out.push(point(r));
            } else {
                out.push(RootEnclosure {
                    poly: f.clone(),
                    interval: RationalEnclosure { lo: a, hi: b },
                    multiplicity: mult,
                });
            }
            continue;
        }
        let mid = (&a + &b) / &two;
        work.push((a, mid.clone(), false));
        work.push((mid, b, b_root));
    }
    out
}

/// All real roots of `p`, ordered, each with its multiplicity.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::Precondition("the zero polynomial has no isolated roots".into()));
    }
    let b = cauchy_bound(p);
    isolate_roots_in(p, &-b.clone(), &b)
}

/// Real roots of `p` in the closed interval `[lo, hi]`.
pub fn isolate_roots_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::Precondition("the zero polynomial has no isolated roots".into()));
    }
    if lo > hi {
        return Err(Error::InvertedEnclosure {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let mut out = Vec::new();
    for (i, f) in p.squarefree_decomposition().iter().enumerate() {
        if f.degree().unwrap_or(0) > 0 {
            out.extend(isolate_squarefree(f, lo, hi, i + 1));
        }
    }
    out.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
    Ok(out)
}

/// Narrows a root enclosure to width at most `width`.
pub fn refine_root(r: &RootEnclosure, width: &Rational) -> Result<RootEnclosure> {
    let poly = r.poly.clone();
    let interval = enclosure_refine(&r.interval, width, |x| poly.sign_at(x))?;
    Ok(RootEnclosure {
        poly,
        interval,
        multiplicity: r.multiplicity,
    })
}

/// Enclosure of the real `n`-th root of `x`, exact when `x` is a perfect `n`-th power.
pub fn nth_root_enclosure(x: &Rational, n: u32, width: &Rational) -> Result<RationalEnclosure> {
    if n == 0 {
        return Err(Error::Precondition("zeroth root".into()));
    }
    if x.is_negative() {
        if n.is_multiple_of(2) {
            return Err(Error::Precondition("even root of a negative number".into()));
        }
        return Ok(nth_root_enclosure(&-x.clone(), n, width)?.neg());
    }
    if let Some(r) = exact_nth_root(x, n) {
        return Ok(RationalEnclosure::point(r));
    }
    let hi = if *x > Rational::one() { x.clone() } else { Rational::one() };
    let start = RationalEnclosure::new(Rational::zero(), hi)?;
    let nn = n as usize;
    enclosure_refine(&start, width, |t| {
        let d = num_traits::pow(t.clone(), nn) - x;
        if d.is_zero() {
            0
        } else if d.is_positive() {
            1
        } else {
            -1
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{dyadic_width, int, rat};

    #[test]
    fn diamond_cubic_at_the_critical_parameter() {
        // v^3 - (64/27) v - 1024/729 = (v + 8/9)^2 (v - 16/9)
        let p = UniPoly::new(vec![rat(-1024, 729), rat(-64, 27), int(0), int(1)]);
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact(), Some(&rat(-8, 9)));
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[1].exact(), Some(&rat(16, 9)));
        assert!(p.eval(&rat(-4, 3)) != int(0));
    }

    #[test]
    fn irrational_roots_refine() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let r = refine_root(&roots[1], &dyadic_width(40)).unwrap();
        assert!(r.interval.width() <= dyadic_width(40));
        assert!(r.interval.lo > rat(14142, 10000) && r.interval.hi < rat(14143, 10000));
    }

    #[test]
    fn nth_roots() {
        assert_eq!(nth_root_enclosure(&rat(1, 8), 3, &dyadic_width(30)).unwrap().exact(), Some(&rat(1, 2)));
        let e = nth_root_enclosure(&int(2), 2, &dyadic_width(30)).unwrap();
        assert!(&e.lo * &e.lo <= int(2) && int(2) <= &e.hi * &e.hi);
        assert_eq!(nth_root_enclosure(&rat(-27, 8), 3, &dyadic_width(10)).unwrap().exact(), Some(&rat(-3, 2)));
        assert!(nth_root_enclosure(&int(-1), 2, &dyadic_width(10)).is_err());
    }

    #[test]
    fn closed_window_includes_endpoint_roots() {
        let p = UniPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x
        let r = isolate_roots_in(&p, &int(-1), &int(0)).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].exact(), Some(&int(-1)));
        assert_eq!(r[1].exact(), Some(&int(0)));
    }
}
