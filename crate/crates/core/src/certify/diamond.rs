//! The diamond operation: the weight identity and its `v = -q/2` limit, the fixed
//! point identities and closure of the diamond interval, the behaviour of iterates,
//! and eventual positivity on iterated diamonds.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{anchor, graph_family, rng_for, sweep, Collector, Instance, Quantity, Relation, SuiteConfig};
use crate::arith::{default_width, int, rat, simplest_between, Rational};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::regions::{diamond_minus, diamond_plus};
use crate::weights::{first_nonnegative_iterate, par, ExtendedWeight};

const NAME: &str = "diamond";

/// Iterations allowed before an orbit must have become nonnegative.
const ESCAPE_CAP: usize = 12;

/// Rationals `q = (1 - s^2)(1 + s)` with `s` in `(1/3, 1)` make `v+ = s^2 - 1` exact.
pub fn exact_diamond_parameters() -> Vec<(Rational, Rational)> {
    [rat(1, 3), rat(2, 5), rat(1, 2), rat(3, 5), rat(2, 3), rat(3, 4), rat(4, 5), rat(5, 6), rat(7, 8), rat(9, 10)]
        .into_iter()
        .map(|s| {
            let q = (Rational::one() - &s * &s) * (Rational::one() + &s);
            (q, &s * &s - Rational::one())
        })
        .collect()
}

pub(super) fn suite(cfg: &SuiteConfig) -> Result<Collector> {
    let mut col = anchor(NAME, cfg);
    anchors(&mut col)?;
    let b = &cfg.bounds;
    let base = graph_family(b.diamond_base_edges, true, 0);
    let base: Vec<MultiGraph> = base.into_iter().filter(|g| g.m() > 0).collect();
    col.merge(sweep(NAME, &base, |i, g, c| identity_case(cfg, i as u64, g, c))?);
    fixed_points(&mut col)?;
    iterates(&mut col)?;
    let small: Vec<MultiGraph> = base.into_iter().filter(|g| g.m() <= 2).collect();
    col.merge(sweep(NAME, &small, |_, g, c| chains(g, c))?);
    Ok(col)
}

fn anchors(col: &mut Collector) -> Result<()> {
    let k2 = Instance::graph(&MultiGraph::path(1));
    // 82 on both sides: Z_{D(K2)}(2, 1) = 16 Z_{K2}(2, 9/16).
    col.eval(&k2, &int(2), &[(0, int(1))], Quantity::DiamondIdentity, Relation::Zero, "Z_D(G)(q,v) = (q+2v)^(2|E|) Z_G(q, D(v))")?;
    col.eval(&k2, &int(2), &[(0, int(-1))], Quantity::DiamondLimit, Relation::Zero, "Z_D(G)(q,-q/2) = q^k(G) (q/2)^(4|E|)")?;
    let q = rat(32, 27);
    let vp = [(0, rat(-8, 9))];
    col.eval(&Instance::Scalar, &q, &vp, Quantity::SeriesSelfMinusDual, Relation::Zero, "v+ >< v+ = v-")?;
    col.eval(&Instance::Scalar, &q, &vp, Quantity::ParallelDualMinusSelf, Relation::Zero, "v- || v- = v+")
}

fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo * 64..=hi * 64), rng.gen_range(1..=64))
}

fn identity_case(cfg: &SuiteConfig, stream: u64, g: &MultiGraph, col: &mut Collector) -> Result<()> {
    let mut rng = rng_for(cfg.seed, stream);
    let inst = Instance::graph(g);
    let ids = g.edge_ids();
    let two = int(2);
    let mut done = 0;
    while done < cfg.bounds.diamond_samples {
        let q = random_rational(&mut rng, -2, 3);
        let uniform = rng.gen_bool(0.5);
        let v0 = random_rational(&mut rng, -3, 3);
        let w: Vec<(usize, Rational)> = ids
            .iter()
            .map(|e| (e.0, if uniform { v0.clone() } else { random_rational(&mut rng, -3, 3) }))
            .collect();
        if w.iter().any(|(_, v)| (&q + &two * v).is_zero()) {
            continue;
        }
        col.eval(&inst, &q, &w, Quantity::DiamondIdentity, Relation::Zero, "Z_D(G)(q,v) = prod (q+2v_e)^2 Z_G(q, D(v))")?;
        done += 1;
    }
    for _ in 0..5 {
        let q = random_rational(&mut rng, -2, 3);
        let w = [(ids[0].0, -q.clone() / &two)];
        col.eval(&inst, &q, &w, Quantity::DiamondLimit, Relation::Zero, "Z_D(G)(q,-q/2) = q^k(G) (q/2)^(4|E|)")?;
    }
    Ok(())
}

/// Fixed-point identities and closure of `I_diamond`, exact on the rational family.
fn fixed_points(col: &mut Collector) -> Result<()> {
    for (q, vp) in exact_diamond_parameters() {
        let w = [(0, vp.clone())];
        col.eval(&Instance::Scalar, &q, &w, Quantity::SeriesSelfMinusDual, Relation::Zero, "v+ >< v+ = v-")?;
        col.eval(&Instance::Scalar, &q, &w, Quantity::ParallelDualMinusSelf, Relation::Zero, "v- || v- = v+")?;
        for parallel in [true, false] {
            col.eval(
                &Instance::Scalar,
                &q,
                &w,
                Quantity::DiamondClosure { parallel },
                Relation::Positive,
                "I_diamond is closed under parallel and series connection",
            )?;
        }
    }
    Ok(())
}

/// Points strictly between `a` and `b` with small denominators.
fn simple_points(a: &Rational, b: &Rational, fractions: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = fractions
        .iter()
        .map(|t| {
            let x = a + t * (b - a);
            let eps = (b - a).abs() / int(64);
            simplest_between(&(&x - &eps), &(&x + &eps))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn fractions() -> Vec<Rational> {
    vec![rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4)]
}

fn iterate_qs() -> Vec<Rational> {
    let mut qs: Vec<Rational> = exact_diamond_parameters().into_iter().map(|p| p.0).collect();
    qs.extend([rat(1, 10), rat(1, 2), int(1), rat(5, 4), rat(3, 2), int(2), int(3)]);
    qs
}

/// `Diamond_q(v) > v` above the repelling fixed point, eventual nonnegativity,
/// positivity for `v > 0`, and `Diamond_q(v) >= -q` for `q >= 1`.
fn iterates(col: &mut Collector) -> Result<()> {
    let s = Instance::Scalar;
    for q in iterate_qs() {
        for v in [rat(1, 3), int(1), int(5)] {
            col.eval(&s, &q, &[(0, v)], Quantity::DiamondIterate { k: 3 }, Relation::Positive, "D^k(v) > 0 for v > 0")?;
        }
        let negatives = if q <= rat(32, 27) {
            let vp = diamond_plus(&q, &default_width())?;
            simple_points(&vp.hi, &Rational::zero(), &fractions())
        } else {
            simple_points(&int(-4), &Rational::zero(), &fractions())
        };
        for v in negatives {
            let w = [(0, v)];
            col.eval(&s, &q, &w, Quantity::DiamondStep, Relation::Positive, "D(v) > v")?;
            col.eval(&s, &q, &w, Quantity::FirstNonnegative { cap: ESCAPE_CAP }, Relation::Positive, "D^k(v) >= 0 eventually")?;
        }
        if q >= int(1) {
            for v in [int(-3), int(-1), rat(-2, 3), rat(-1, 2), int(0), int(2)] {
                let rel = if q == int(1) && v == int(-1) { Relation::Zero } else { Relation::Positive };
                col.eval(&s, &q, &[(0, v)], Quantity::DiamondPlusQ, rel, "D(v) >= -q, equality only at (1, -1)")?;
            }
        }
    }
    Ok(())
}

/// Eventual positivity of `Z` on `D^k(G)` (and on `D^k(G)` with doubled edges below `v-`).
fn chains(g: &MultiGraph, col: &mut Collector) -> Result<()> {
    let inst = Instance::graph(g);
    let id = g.edge_ids()[0].0;
    for q in iterate_qs() {
        let mut starts: Vec<(Rational, bool)> = Vec::new();
        if q <= rat(32, 27) {
            let w = default_width();
            let vp = diamond_plus(&q, &w)?;
            let vm = diamond_minus(&q, &w)?;
            starts.extend(simple_points(&vp.hi, &int(0), &fractions()).into_iter().map(|v| (v, false)));
            starts.extend([int(1)].into_iter().map(|v| (v, false)));
            starts.extend(simple_points(&(&vm.lo - int(2)), &vm.lo, &fractions()).into_iter().map(|v| (v, true)));
        } else {
            starts.extend([int(-5), int(-2), int(-1), rat(-1, 2), -q.clone() / int(2), rat(1, 4)].into_iter().map(|v| (v, false)));
        }
        for (v, doubled) in starts {
            let x = if doubled { par(&v, &v) } else { v.clone() };
            let k0 = first_nonnegative_iterate(&q, &ExtendedWeight::Finite(x), ESCAPE_CAP)?
                .ok_or_else(|| Error::Precondition(format!("orbit of {v} at q = {q} did not escape")))?;
            for depth in k0..k0 + 3 {
                col.eval(
                    &inst,
                    &q,
                    &[(id, v.clone())],
                    Quantity::DiamondChain { depth, doubled },
                    Relation::Positive,
                    "Z > 0 on iterated diamonds for large k",
                )?;
            }
        }
    }
    Ok(())
}
