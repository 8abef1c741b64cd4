//! Sparse bivariate polynomials in `(q, v)` and rational-function identity checks.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::UniPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Map from exponent pair `(i, j)` of `q^i v^j` to a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, i: usize, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn q() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Rational, i: usize, j: usize) {
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Largest exponents of `q` and `v` that occur.
    pub fn degrees(&self) -> (usize, usize) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }

    pub fn eval(&self, q: &Rational, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * num_traits::pow(q.clone(), i) * num_traits::pow(v.clone(), j);
        }
        acc
    }

    /// Substitutes `q := a(q, v)` and `v := b(q, v)`.
    pub fn compose(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let (dq, dv) = self.degrees();
        let apow = powers(a, dq);
        let bpow = powers(b, dv);
        let mut acc = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = &(&apow[i] * &bpow[j]) * &BiPoly::constant(c.clone());
            acc = &acc + &t;
        }
        acc
    }

    /// Univariate polynomial in `q` after substituting `v := p(q)`.
    pub fn substitute_v(&self, p: &UniPoly) -> UniPoly {
        let (_, dv) = self.degrees();
        let mut ppow = vec![UniPoly::constant(Rational::one())];
        for k in 1..=dv {
            ppow.push(&ppow[k - 1] * p);
        }
        let mut acc = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = &ppow[j] * &UniPoly::monomial(c.clone(), i);
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients of `v^j` for fixed `v`, as a polynomial in `q`.
    pub fn at_v(&self, v: &Rational) -> UniPoly {
        self.substitute_v(&UniPoly::constant(v.clone()))
    }

    /// Dense matrix `m[i][j]` of coefficients of `q^i v^j`.
    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        if self.is_zero() {
            return Vec::new();
        }
        let (dq, dv) = self.degrees();
        let mut m = vec![vec![Rational::zero(); dv + 1]; dq + 1];
        for (&(i, j), c) in &self.terms {
            m[i][j] = c.clone();
        }
        m
    }
}

fn powers(p: &BiPoly, k: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::constant(Rational::one())];
    for i in 1..=k {
        out.push(&out[i - 1] * p);
    }
    out
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &(-o)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }
}

/// Decides `ln/ld == rn/rd` as rational functions by cross-multiplication.
pub fn ratfunc_identity_check(ln: &BiPoly, ld: &BiPoly, rn: &BiPoly, rd: &BiPoly) -> Result<bool> {
    if ld.is_zero() || rd.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((ln * rd) == (rn * ld))
}
