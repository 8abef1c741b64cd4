//! Exploratory search for both signs of `Z_G(q, v)` on 2-connected graphs, in the
//! five regions of the `(q, v)` plane where no sign control is known. Findings are
//! reported, never asserted.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{dyadic_width, int, rat, sign, to_f64, Rational};
use crate::error::{Error, Result};
use crate::graph::{connected_multigraphs, MultiGraph, WeightAssignment};
use crate::io::format_graph;
use crate::regions::{diamond_minus, diamond_plus};
use crate::tutte::z_delcon;

/// Largest edge count the hunt enumerates.
pub const MAX_HUNT_EDGES: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HuntRegion {
    /// `q < 0`, `v < -2`.
    A,
    /// `q < 0`, `0 < v < -q/2`.
    B,
    /// `0 < q <= 32/27`, `q != 1`, `v < v-`.
    C,
    /// `0 < q <= 32/27`, `q != 1`, `v+ < v < 0`.
    D,
    /// `q > 32/27`, `v < 0`.
    E,
}

impl FromStr for HuntRegion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(HuntRegion::A),
            "b" => Ok(HuntRegion::B),
            "c" => Ok(HuntRegion::C),
            "d" => Ok(HuntRegion::D),
            "e" => Ok(HuntRegion::E),
            _ => Err(Error::Precondition(format!("unknown region `{s}`; expected one of a, b, c, d, e"))),
        }
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.into()))
    }
}

/// Fails with the region test that `(q, v)` does not pass.
pub fn region_check(region: HuntRegion, q: &Rational, v: &Rational) -> Result<()> {
    let critical = rat(32, 27);
    match region {
        HuntRegion::A => {
            require(q.is_negative(), "region a needs q < 0")?;
            require(*v < int(-2), "region a needs v < -2")
        }
        HuntRegion::B => {
            require(q.is_negative(), "region b needs q < 0")?;
            require(v.is_positive() && *v < -q.clone() / int(2), "region b needs 0 < v < -q/2")
        }
        HuntRegion::C | HuntRegion::D => {
            let name = if region == HuntRegion::C { "c" } else { "d" };
            require(
                q.is_positive() && *q <= critical && !q.is_one(),
                &format!("region {name} needs 0 < q <= 32/27 and q != 1"),
            )?;
            // Fine enough to separate any rational v from the irrational endpoint.
            let width = dyadic_width(200);
            if region == HuntRegion::C {
                let m = diamond_minus(q, &width)?;
                require(*v < m.lo, &format!("region c needs v < v-(q) = {}", to_f64(&m.midpoint())))
            } else {
                let p = diamond_plus(q, &width)?;
                require(*v > p.hi && v.is_negative(), &format!("region d needs v+(q) = {} < v < 0", to_f64(&p.midpoint())))
            }
        }
        HuntRegion::E => {
            require(*q > critical, "region e needs q > 32/27")?;
            require(v.is_negative(), "region e needs v < 0")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub series_parallel: bool,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntReport {
    pub region: HuntRegion,
    #[serde(with = "crate::arith::serde_rational")]
    pub q: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub v: Rational,
    pub max_edges: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub both_signs: bool,
    /// `(n, m)` pairs at which both signs occur.
    pub both_signs_at: Vec<(usize, usize)>,
    pub findings: Vec<Finding>,
}

/// Signs of `Z_G(q, v)` over 2-connected loopless graphs with at most `max_edges`
/// edges, series-parallel graphs first.
pub fn hunt(region: HuntRegion, q: &Rational, v: &Rational, max_edges: usize) -> Result<HuntReport> {
    region_check(region, q, v)?;
    if max_edges > MAX_HUNT_EDGES {
        return Err(Error::TooLarge {
            what: "hunt edge count",
            got: max_edges,
            limit: MAX_HUNT_EDGES,
        });
    }
    let mut graphs: Vec<(bool, MultiGraph)> = connected_multigraphs(max_edges, false)
        .into_iter()
        .flatten()
        .filter(|g| g.is_2connected())
        .map(|g| (g.is_series_parallel(), g))
        .collect();
    graphs.sort_by_key(|(sp, g)| (!sp, g.m(), g.n()));
    let mut findings = Vec::new();
    let mut signs: BTreeMap<(usize, usize), (bool, bool)> = BTreeMap::new();
    for (sp, g) in graphs {
        let value = z_delcon(&g, q, &WeightAssignment::for_graph(&g, v))?;
        let s = sign(&value);
        let entry = signs.entry((g.n(), g.m())).or_default();
        entry.0 |= s > 0;
        entry.1 |= s < 0;
        findings.push(Finding {
            graph: format_graph(&g, None),
            n: g.n(),
            m: g.m(),
            series_parallel: sp,
            value,
            sign: s,
        });
    }
    let count = |t: i8| findings.iter().filter(|f| f.sign == t).count();
    let (positive, negative, zero) = (count(1), count(-1), count(0));
    Ok(HuntReport {
        region,
        q: q.clone(),
        v: v.clone(),
        max_edges,
        positive,
        negative,
        zero,
        both_signs: positive > 0 && negative > 0,
        both_signs_at: signs.into_iter().filter(|(_, (p, n))| *p && *n).map(|(k, _)| k).collect(),
        findings,
    })
}
