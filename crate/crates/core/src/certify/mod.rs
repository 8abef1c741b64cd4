//! Executable sign-theorem suites: every claim is instantiated exactly on
//! enumerated graphs and matroids, and every failure is recorded with a
//! witness that can be re-evaluated independently.

mod above_one;
mod blocks;
mod diamond;
mod negative;
mod structure;
mod unit;

pub use diamond::exact_diamond_parameters;
pub use structure::two_circuits;

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rat, sign, Rational};
use crate::error::{Error, Result};
use crate::graph::{connected_multigraphs, EdgeId, MultiGraph, WeightAssignment};
use crate::io::{format_graph, parse_graph};
use crate::matroid::Matroid;
use crate::regions::{diamond_interval, RegionInterval};
use crate::tutte::{
    chromatic, coeff_partial_derivative, coeff_partial_derivative_matroid, coeffs, coeffs_matroid, matroid_qpoly,
    z_as_qpoly, z_delcon, z_expansion, z_matroid_expansion, z_over_qc,
};
use crate::weights::{diamond_map, first_nonnegative_iterate, interval_par_image, interval_ser_image, par, ser, ExtendedWeight};

pub const SUITES: [&str; 6] = ["q_negative", "unit_interval", "blocks", "diamond", "q_above_one", "structure"];

/// Size limits for the sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub preset: String,
    /// Edges in enumerated graphs.
    pub max_edges: usize,
    /// Vertices in the simple graphs of the splitting-edge check.
    pub max_vertices: usize,
    /// Elements in enumerated matroids.
    pub max_elements: usize,
    /// Seeded random points per weight interval, on top of endpoints and midpoint.
    pub random_points: usize,
    /// Mixed per-edge assignments per instance, on top of the uniform ones.
    pub random_assignments: usize,
    /// Edges in the base graphs of the diamond identity.
    pub diamond_base_edges: usize,
    /// Random `(q, v)` points per base graph for the diamond identity.
    pub diamond_samples: usize,
}

impl SuiteBounds {
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(SuiteBounds {
                preset: name.into(),
                max_edges: 7,
                max_vertices: 7,
                max_elements: 6,
                random_points: 8,
                random_assignments: 8,
                diamond_base_edges: 4,
                diamond_samples: 50,
            }),
            "quick" => Ok(SuiteBounds {
                preset: name.into(),
                max_edges: 5,
                max_vertices: 6,
                max_elements: 5,
                random_points: 3,
                random_assignments: 3,
                diamond_base_edges: 2,
                diamond_samples: 8,
            }),
            _ => Err(Error::Precondition(format!("unknown bounds preset `{name}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub bounds: SuiteBounds,
    /// Negative control: flips the expected relation of the suite's first check.
    pub poison: bool,
}

impl SuiteConfig {
    pub fn new(seed: u64, bounds: SuiteBounds) -> Self {
        SuiteConfig {
            seed,
            bounds,
            poison: false,
        }
    }
}

/// A matroid by construction, so witnesses can be rebuilt.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform { rank: usize, size: usize },
    Graphic { graph: String },
    Dual { of: Box<MatroidSpec> },
    DirectSum { left: Box<MatroidSpec>, right: Box<MatroidSpec> },
}

impl MatroidSpec {
    pub fn graphic(g: &MultiGraph) -> Self {
        MatroidSpec::Graphic {
            graph: format_graph(g, None),
        }
    }

    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform { rank, size } => Matroid::uniform(*rank, *size),
            MatroidSpec::Graphic { graph } => Matroid::graphic(&parse_graph(graph)?.0),
            MatroidSpec::Dual { of } => Ok(of.build()?.dual()),
            MatroidSpec::DirectSum { left, right } => left.build()?.direct_sum(&right.build()?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Graph { graph: String },
    Matroid { matroid: MatroidSpec },
    /// Claims about weight maps alone; weights hold the scalar arguments.
    Scalar,
}

impl Instance {
    pub fn graph(g: &MultiGraph) -> Self {
        Instance::Graph {
            graph: format_graph(g, None),
        }
    }

    pub fn matroid(spec: &MatroidSpec) -> Self {
        Instance::Matroid { matroid: spec.clone() }
    }
}

/// What was computed. Graph quantities use `Z_G` and `C^[k]`; matroid ones `Z~_M` and `C~^[r]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    Z,
    Coefficient { index: usize },
    /// Top graph coefficient (or bottom matroid one) minus the product of `1 + v` over loops.
    LoopProductDefect,
    CoefficientDerivative { index: usize, edges: Vec<usize> },
    /// `d^l/dq^l` of `Z_G / q^c` (graphs) or of `q^{r(M)} Z~_M` (matroids).
    QDerivative { order: usize },
    /// `d^l/dq^l (P_G / q^c)` at `q = 1`.
    ChromaticDerivativeAtOne { order: usize },
    /// Multiplicity of the root `q = 0` of `Z_G` minus `c`.
    RootMultiplicityAtZero,
    /// Multiplicity of the root `q = 1` of `P_G` minus the number of nontrivial blocks.
    ChromaticMultiplicityAtOne,
    /// `Z_{D(G)}(q, v) - prod (q + 2v_e)^2 Z_G(q, Diamond_q(v))`.
    DiamondIdentity,
    /// `Z_{D(G)}(q, -q/2) - q^{k(G)} (q/2)^{4|E|}`.
    DiamondLimit,
    /// Sign of `Z` on the `depth`-fold diamond of `G` at a common weight, by the identity chain.
    DiamondChain { depth: usize, doubled: bool },
    SplittingEdge,
    SplittingElement,
    /// `(v >< v) - q/v`.
    SeriesSelfMinusDual,
    /// `((q/v) || (q/v)) - v`.
    ParallelDualMinusSelf,
    /// `Diamond_q(v) - v`.
    DiamondStep,
    /// `Diamond_q(v) + q`.
    DiamondPlusQ,
    /// `Diamond_q^k(v)`; `+inf` counts as 1.
    DiamondIterate { k: usize },
    /// 1 when some iterate up to `cap` is nonnegative, else 0.
    FirstNonnegative { cap: usize },
    /// 1 when the closed diamond interval is certified closed under the map, -1 when not, 0 undecided.
    DiamondClosure { parallel: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Positive,
    Negative,
    NonNegative,
    NonPositive,
    Zero,
    NonZero,
}

impl Relation {
    /// `s * x > 0` when `strict`, else `s * x >= 0`.
    pub fn signed(s: i8, strict: bool) -> Self {
        match (s > 0, strict) {
            (true, true) => Relation::Positive,
            (true, false) => Relation::NonNegative,
            (false, true) => Relation::Negative,
            (false, false) => Relation::NonPositive,
        }
    }

    pub fn holds(&self, x: &Rational) -> bool {
        match self {
            Relation::Positive => x.is_positive(),
            Relation::Negative => x.is_negative(),
            Relation::NonNegative => !x.is_negative(),
            Relation::NonPositive => !x.is_positive(),
            Relation::Zero => x.is_zero(),
            Relation::NonZero => !x.is_zero(),
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            Relation::Positive => Relation::NonPositive,
            Relation::Negative => Relation::NonNegative,
            Relation::NonNegative => Relation::Negative,
            Relation::NonPositive => Relation::Positive,
            Relation::Zero => Relation::NonZero,
            Relation::NonZero => Relation::Zero,
        }
    }
}

/// A failed check with everything needed to recompute it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub suite: String,
    pub instance: Instance,
    pub q: String,
    pub weights: Vec<(usize, String)>,
    pub quantity: Quantity,
    pub relation: Relation,
    pub expected: String,
    pub computed: String,
}

impl Violation {
    /// Recomputes the quantity; true when it reproduces the recorded value and still fails.
    pub fn reverify(&self) -> Result<bool> {
        let q = parse_rational(&self.q)?;
        let w = self
            .weights
            .iter()
            .map(|(i, s)| Ok((*i, parse_rational(s)?)))
            .collect::<Result<Vec<_>>>()?;
        let value = evaluate_quantity(&self.instance, &q, &w, &self.quantity)?;
        Ok(value.to_string() == self.computed && !self.relation.holds(&value))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub violations: Vec<Violation>,
    pub seed: u64,
    pub bounds: SuiteBounds,
    /// Wall-clock seconds; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

impl SuiteReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn weight_map(pairs: &[(usize, Rational)]) -> WeightAssignment {
    WeightAssignment::from_pairs(pairs.iter().map(|(i, v)| (EdgeId(*i), v.clone())))
}

fn first_weight(pairs: &[(usize, Rational)]) -> Result<&Rational> {
    pairs
        .first()
        .map(|p| &p.1)
        .ok_or_else(|| Error::Precondition("scalar check needs one weight".into()))
}

fn finite(x: ExtendedWeight) -> Rational {
    match x {
        ExtendedWeight::Finite(v) => v,
        ExtendedWeight::PosInfinity => Rational::one(),
    }
}

fn bool_value(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Weights on `D(G)`: edge `i` of `G` (in id order) becomes ids `4i..4i+3`.
fn diamond_weights(g: &MultiGraph, w: &WeightAssignment) -> Result<WeightAssignment> {
    let mut out = WeightAssignment::new();
    for (i, e) in g.edges().iter().enumerate() {
        let v = w.get(e.id)?;
        for j in 0..4 {
            out.set(EdgeId(4 * i + j), v.clone());
        }
    }
    Ok(out)
}

// Small diamond graphs go through the subset expansion; larger ones through reductions.
fn z_either(g: &MultiGraph, q: &Rational, w: &WeightAssignment) -> Result<Rational> {
    if g.m() <= 12 {
        z_expansion(g, q, w)
    } else {
        z_delcon(g, q, w)
    }
}

/// Sign of `Z_{D^depth(G)}(q, v)` from `Z_{D(H)}(q, v) = (q + 2v)^{2|E(H)|} Z_H(q, Diamond_q(v))`.
pub fn diamond_chain_sign(g: &MultiGraph, q: &Rational, v: &Rational, depth: usize) -> Result<i8> {
    let mut x = v.clone();
    let two = Rational::from_integer(2.into());
    for _ in 0..depth {
        if (q + &two * &x).is_zero() {
            // Z_{D(H)}(q, -q/2) = q^{k(H)} (q/2)^{4|E(H)|}, and k(H) = k(G).
            let s = sign(q);
            return Ok(if g.components().is_multiple_of(2) { s * s } else { s });
        }
        x = finite(diamond_map(q, &ExtendedWeight::Finite(x))?);
    }
    Ok(sign(&z_expansion(g, q, &WeightAssignment::for_graph(g, &x))?))
}

/// Evaluates a recorded quantity from scratch.
pub fn evaluate_quantity(instance: &Instance, q: &Rational, weights: &[(usize, Rational)], quantity: &Quantity) -> Result<Rational> {
    match instance {
        Instance::Graph { graph } => {
            let g = parse_graph(graph)?.0;
            graph_quantity(&g, q, &weight_map(weights), quantity)
        }
        Instance::Matroid { matroid } => {
            let m = matroid.build()?;
            matroid_quantity(&m, q, &weight_map(weights), quantity)
        }
        Instance::Scalar => scalar_quantity(q, first_weight(weights)?, quantity),
    }
}

fn graph_quantity(g: &MultiGraph, q: &Rational, w: &WeightAssignment, quantity: &Quantity) -> Result<Rational> {
    let c = g.components();
    match quantity {
        Quantity::Z => z_expansion(g, q, w),
        Quantity::Coefficient { index } => Ok(coeffs(g, w)?.get(*index)),
        Quantity::LoopProductDefect => {
            let mut p = Rational::one();
            for e in g.loops() {
                p *= Rational::one() + w.get(e)?;
            }
            Ok(coeffs(g, w)?.get(g.n()) - p)
        }
        Quantity::CoefficientDerivative { index, edges } => {
            let ids: Vec<EdgeId> = edges.iter().map(|&e| EdgeId(e)).collect();
            coeff_partial_derivative(g, w, &ids, *index)
        }
        Quantity::QDerivative { order } => Ok(z_over_qc(g, w)?.derivative(*order).eval(q)),
        Quantity::ChromaticDerivativeAtOne { order } => {
            let p = chromatic(g)?.div_exact(&crate::arith::UniPoly::monomial(Rational::one(), c))?;
            Ok(p.derivative(*order).eval(&Rational::one()))
        }
        Quantity::RootMultiplicityAtZero => {
            let m = z_as_qpoly(g, w)?.root_multiplicity(&Rational::zero());
            Ok(Rational::from_integer((m as i64 - c as i64).into()))
        }
        Quantity::ChromaticMultiplicityAtOne => {
            let m = chromatic(g)?.root_multiplicity(&Rational::one());
            let b = g.blocks().nontrivial_count();
            Ok(Rational::from_integer((m as i64 - b as i64).into()))
        }
        Quantity::DiamondIdentity => {
            let d = g.diamond_expand();
            let lhs = z_either(&d, q, &diamond_weights(g, w)?)?;
            let mut factor = Rational::one();
            let mut image = WeightAssignment::new();
            for e in g.edges() {
                let v = w.get(e.id)?;
                let t = q + Rational::from_integer(2.into()) * v;
                factor *= &t * &t;
                match diamond_map(q, &ExtendedWeight::Finite(v.clone()))? {
                    ExtendedWeight::Finite(x) => image.set(e.id, x),
                    ExtendedWeight::PosInfinity => {
                        return Err(Error::Precondition("identity needs q + 2v != 0 on every edge".into()))
                    }
                }
            }
            Ok(lhs - factor * z_expansion(g, q, &image)?)
        }
        Quantity::DiamondLimit => {
            let d = g.diamond_expand();
            let v = -q.clone() / Rational::from_integer(2.into());
            let lhs = z_either(&d, q, &WeightAssignment::for_graph(&d, &v))?;
            let rhs = num_traits::pow(q.clone(), c) * num_traits::pow(q / Rational::from_integer(2.into()), 4 * g.m());
            Ok(lhs - rhs)
        }
        Quantity::DiamondChain { depth, doubled } => {
            let v0 = w
                .iter()
                .next()
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Precondition("chain needs a weight".into()))?;
            let v = if *doubled { par(&v0, &v0) } else { v0 };
            Ok(Rational::from_integer(diamond_chain_sign(g, q, &v, *depth)?.into()))
        }
        Quantity::SplittingEdge => Ok(bool_value(g.splitting_edge().is_some())),
        _ => Err(Error::Precondition(format!("{quantity:?} is not a graph quantity"))),
    }
}

fn matroid_quantity(m: &Matroid, q: &Rational, w: &WeightAssignment, quantity: &Quantity) -> Result<Rational> {
    match quantity {
        Quantity::Z => z_matroid_expansion(m, q, w),
        Quantity::Coefficient { index } => Ok(coeffs_matroid(m, w)?.get(*index)),
        Quantity::LoopProductDefect => {
            let mut p = Rational::one();
            for &e in m.labels() {
                if m.classify_element(e)? == crate::matroid::ElementKind::Loop {
                    p *= Rational::one() + w.get(e)?;
                }
            }
            Ok(coeffs_matroid(m, w)?.get(0) - p)
        }
        Quantity::CoefficientDerivative { index, edges } => {
            let ids: Vec<EdgeId> = edges.iter().map(|&e| EdgeId(e)).collect();
            coeff_partial_derivative_matroid(m, w, &ids, *index)
        }
        Quantity::QDerivative { order } => Ok(matroid_qpoly(m, w)?.derivative(*order).eval(q)),
        Quantity::SplittingElement => Ok(bool_value(!m.splitting_elements()?.is_empty())),
        _ => Err(Error::Precondition(format!("{quantity:?} is not a matroid quantity"))),
    }
}

fn scalar_quantity(q: &Rational, v: &Rational, quantity: &Quantity) -> Result<Rational> {
    match quantity {
        Quantity::SeriesSelfMinusDual => Ok(finite(ser(q, v, v)?) - q / v),
        Quantity::ParallelDualMinusSelf => {
            let d = q / v;
            Ok(par(&d, &d) - v)
        }
        Quantity::DiamondStep => Ok(finite(diamond_map(q, &ExtendedWeight::Finite(v.clone()))?) - v),
        Quantity::DiamondPlusQ => Ok(finite(diamond_map(q, &ExtendedWeight::Finite(v.clone()))?) + q),
        Quantity::DiamondIterate { k } => Ok(finite(crate::weights::diamond_iterate(q, &ExtendedWeight::Finite(v.clone()), *k)?)),
        Quantity::FirstNonnegative { cap } => {
            Ok(bool_value(first_nonnegative_iterate(q, &ExtendedWeight::Finite(v.clone()), *cap)?.is_some()))
        }
        Quantity::DiamondClosure { parallel } => {
            let d = diamond_interval(q, &crate::arith::default_width())?;
            let image = if *parallel {
                interval_par_image(&d, &d)
            } else {
                interval_ser_image(q, &d, &d)
            };
            let verdict = match image {
                Ok(i) => d.contains_interval(&i),
                Err(_) => Some(false),
            };
            Ok(Rational::from_integer(
                match verdict {
                    Some(true) => 1,
                    Some(false) => -1,
                    None => 0,
                }
                .into(),
            ))
        }
        _ => Err(Error::Precondition(format!("{quantity:?} is not a scalar quantity"))),
    }
}

/// Accumulates cases and violations for one slice of a suite.
pub(crate) struct Collector {
    suite: &'static str,
    cases: usize,
    violations: Vec<Violation>,
    poison: bool,
}

impl Collector {
    fn new(suite: &'static str) -> Self {
        Collector {
            suite,
            cases: 0,
            violations: Vec::new(),
            poison: false,
        }
    }

    /// Records a check whose value was computed by the caller.
    #[allow(clippy::too_many_arguments)]
    fn check(
        &mut self,
        instance: &Instance,
        q: &Rational,
        weights: &[(usize, Rational)],
        quantity: Quantity,
        relation: Relation,
        expected: &str,
        value: &Rational,
    ) {
        self.cases += 1;
        let relation = if std::mem::take(&mut self.poison) {
            relation.negated()
        } else {
            relation
        };
        if !relation.holds(value) {
            self.violations.push(Violation {
                suite: self.suite.into(),
                instance: instance.clone(),
                q: q.to_string(),
                weights: weights.iter().map(|(i, v)| (*i, v.to_string())).collect(),
                quantity,
                relation,
                expected: expected.into(),
                computed: value.to_string(),
            });
        }
    }

    /// Evaluates through [`evaluate_quantity`] and records.
    fn eval(
        &mut self,
        instance: &Instance,
        q: &Rational,
        weights: &[(usize, Rational)],
        quantity: Quantity,
        relation: Relation,
        expected: &str,
    ) -> Result<()> {
        let value = evaluate_quantity(instance, q, weights, &quantity)?;
        self.check(instance, q, weights, quantity, relation, expected, &value);
        Ok(())
    }

    fn merge(&mut self, o: Collector) {
        self.cases += o.cases;
        self.violations.extend(o.violations);
    }
}

/// Runs `f` on every item in parallel; results merge in item order.
fn sweep<T, F>(suite: &'static str, items: &[T], f: F) -> Result<Collector>
where
    T: Sync,
    F: Fn(usize, &T, &mut Collector) -> Result<()> + Sync,
{
    let parts = items
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut c = Collector::new(suite);
            f(i, x, &mut c)?;
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Collector::new(suite);
    for p in parts {
        out.merge(p);
    }
    Ok(out)
}

/// A reproducible generator for one work item.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Exact endpoints of closed ends, the midpoint, and `random` seeded interior points.
pub fn weight_grid(r: &RegionInterval, rng: &mut impl Rng, random: usize) -> Vec<Rational> {
    let mut fr = vec![rat(1, 2)];
    for _ in 0..random {
        fr.push(rat(rng.gen_range(1..4096), 4096));
    }
    let mut pts = r.sample_points(&fr);
    pts.sort();
    pts.dedup();
    pts
}

/// Weight rows for elements with the given per-element grids: one row per
/// grid index (cycling short grids), then `extra` rows mixed at random.
fn assignments(grids: &[&[Rational]], rng: &mut impl Rng, extra: usize) -> Vec<Vec<Rational>> {
    let len = grids.iter().map(|g| g.len()).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> = (0..len.max(1))
        .map(|i| grids.iter().map(|g| g[i % g.len()].clone()).collect())
        .collect();
    for _ in 0..extra {
        rows.push(grids.iter().map(|g| g[rng.gen_range(0..g.len())].clone()).collect());
    }
    rows.sort();
    rows.dedup();
    rows
}

fn pairs(ids: &[EdgeId], row: &[Rational]) -> Vec<(usize, Rational)> {
    ids.iter().zip(row).map(|(e, v)| (e.0, v.clone())).collect()
}

/// Connected graphs by edge count up to `max_edges`, plus a copy with an isolated
/// vertex added for those with at most `iso_edges` edges.
fn graph_family(max_edges: usize, loops: bool, iso_edges: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for (m, level) in connected_multigraphs(max_edges, loops).into_iter().enumerate() {
        for g in level {
            if m <= iso_edges {
                let mut h = g.clone();
                h.add_vertex();
                out.push(h);
            }
            out.push(g);
        }
    }
    out
}

/// Matroids reachable from the constructors with at most `max` elements:
/// uniform, graphic, cographic, and direct sums of small pieces.
pub fn small_matroids(max: usize) -> Vec<MatroidSpec> {
    let mut out = Vec::new();
    for n in 1..=max {
        for r in 0..=n {
            out.push(MatroidSpec::Uniform { rank: r, size: n });
        }
    }
    for level in connected_multigraphs(max, true).into_iter().skip(1) {
        for g in level {
            let s = MatroidSpec::graphic(&g);
            out.push(MatroidSpec::Dual { of: Box::new(s.clone()) });
            out.push(s);
        }
    }
    let mut pieces: Vec<(usize, MatroidSpec)> = Vec::new();
    for n in 1..=3 {
        for r in 0..=n {
            pieces.push((n, MatroidSpec::Uniform { rank: r, size: n }));
        }
    }
    for (m, level) in connected_multigraphs(3, false).into_iter().enumerate().skip(2) {
        for g in level {
            pieces.push((m, MatroidSpec::graphic(&g)));
        }
    }
    for (i, (a, x)) in pieces.iter().enumerate() {
        for (b, y) in &pieces[i..] {
            if a + b <= max {
                out.push(MatroidSpec::DirectSum {
                    left: Box::new(x.clone()),
                    right: Box::new(y.clone()),
                });
            }
        }
    }
    out
}

/// Runs one suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut col = match name {
        "q_negative" => negative::suite(cfg)?,
        "unit_interval" => unit::suite(cfg)?,
        "blocks" => blocks::suite(cfg)?,
        "diamond" => diamond::suite(cfg)?,
        "q_above_one" => above_one::suite(cfg)?,
        "structure" => structure::suite(cfg)?,
        _ => return Err(Error::Precondition(format!("unknown suite `{name}`; known: {}", SUITES.join(", ")))),
    };
    col.violations.sort();
    Ok(SuiteReport {
        suite: name.into(),
        cases: col.cases,
        violations: col.violations,
        seed: cfg.seed,
        bounds: cfg.bounds.clone(),
        elapsed: start.elapsed().as_secs_f64(),
    })
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

/// An anchor collector carries the poison flag, so the negative control hits a fixed check.
fn anchor(suite: &'static str, cfg: &SuiteConfig) -> Collector {
    let mut c = Collector::new(suite);
    c.poison = cfg.poison;
    c
}

fn parity(k: usize) -> i8 {
    crate::arith::parity_sign(k as i64)
}
