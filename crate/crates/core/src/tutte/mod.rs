//! Evaluation of the multivariate Tutte polynomial by several independent routes.

mod delcon;
mod expansion;
mod special;

pub use delcon::{qpoly_delcon, z_delcon, z_delcon_traced, ReductionTrace};
pub use expansion::{
    graph_coefficients, matroid_coefficients, z_expansion, z_matroid_expansion, MAX_EXPANSION_EDGES,
    MAX_MATROID_EXPANSION,
};
pub use special::{
    chromatic, coeff_partial_derivative, coeff_partial_derivative_matroid, coeffs, coeffs_matroid,
    duality_identity_check, duality_sides, flow, matroid_qpoly, tutte_xy, u24_closed_form, z_as_qpoly, z_bivariate,
    z_over_qc, z_potts_coloring, CoeffVector, MAX_POTTS_Q, MAX_POTTS_VERTICES,
};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, WeightAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Expansion,
    Delcon,
    Coloring,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expansion" => Ok(Route::Expansion),
            "delcon" => Ok(Route::Delcon),
            "coloring" => Ok(Route::Coloring),
            _ => Err(Error::Precondition(format!("unknown route `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalResult {
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
    pub route: Route,
    pub trace: Option<ReductionTrace>,
}

/// Evaluates `Z_G(q, v)` along the chosen route.
pub fn evaluate(g: &MultiGraph, q: &Rational, w: &WeightAssignment, route: Route) -> Result<EvalResult> {
    match route {
        Route::Expansion => Ok(EvalResult {
            value: z_expansion(g, q, w)?,
            route,
            trace: None,
        }),
        Route::Delcon => {
            let (value, trace) = z_delcon_traced(g, q, w)?;
            Ok(EvalResult {
                value,
                route,
                trace: Some(trace),
            })
        }
        Route::Coloring => {
            let spins = (q.is_integer() && *q >= Rational::from_integer(0.into()))
                .then(|| q.to_integer().to_u32())
                .flatten()
                .ok_or_else(|| Error::Precondition("colouring route needs a nonnegative integer q".into()))?;
            Ok(EvalResult {
                value: z_potts_coloring(g, spins, w)?,
                route,
                trace: None,
            })
        }
    }
}

/// One evaluation, as written by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub graph_hash: String,
    #[serde(with = "crate::arith::serde_rational")]
    pub q: Rational,
    pub weights: Vec<(usize, String)>,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
    pub route: Route,
    pub n: usize,
    pub c: usize,
    pub b: usize,
}
