//! Exact arithmetic: rationals, polynomials and rational enclosures.

mod bipoly;
mod enclosure;
mod poly;
mod rational;

pub use bipoly::{ratfunc_identity_check, BiPoly};
pub use enclosure::{default_width, dyadic_width, enclosure_refine, RationalEnclosure, MAX_BISECTIONS};
pub use poly::UniPoly;
pub use rational::{
    binomial, exact_nth_root, fmt_rational, int, parity_sign, parse_rational, pow_i, rat, sign, simplest_between, to_f64,
    Rational,
};

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod serde_rational_vec {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
