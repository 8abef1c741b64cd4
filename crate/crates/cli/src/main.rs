//! `zerofree`: exact evaluation of multivariate Tutte polynomials, weight maps,
//! zero-free region curves and the certification suites, from the command line.
//!
//! Output is JSON (CSV for `regions`) on stdout. Exit status 0 on success, 1 when
//! a check fails (`certify` violations, `eval` route disagreement), 2 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use zerofree::arith::{default_width, parse_rational, Rational};
use zerofree::certify::{run_suite, SuiteBounds, SuiteConfig, SUITES};
use zerofree::error::{Error, Result};
use zerofree::graph::{EdgeId, MultiGraph, WeightAssignment};
use zerofree::hunt::{hunt, HuntRegion};
use zerofree::io::{format_graph, read_graph, read_matroid};
use zerofree::regions::regions_csv;
use zerofree::tutte::{chromatic, coeffs, evaluate, flow, tutte_xy, EvalRecord, Route};
use zerofree::weights::{diamond_iterate, diamond_map, dualw, par, ser, ExtendedWeight};

#[derive(Parser)]
#[command(name = "zerofree", version, about = "Exact multivariate Tutte polynomials and zero-free regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z_G(q, v) along one or all routes.
    Eval(EvalArgs),
    /// Print a polynomial specialization, coefficients lowest degree first.
    Poly(PolyArgs),
    /// CSV of the region curves over a q-grid.
    Regions(RegionsArgs),
    /// Apply a weight map to rational inputs.
    Map(MapArgs),
    /// Run certification suites; exit 0 iff no violations.
    Certify(CertifyArgs),
    /// Look for both signs of Z_G(q, v) where no sign control is known.
    Hunt(HuntArgs),
    /// Block decomposition of a graph.
    Blocks(BlocksArgs),
    /// Rank, dual and connectivity queries on a matroid file.
    Matroid(MatroidArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Expansion,
    Delcon,
    Coloring,
    All,
}

#[derive(Args)]
struct EvalArgs {
    graph: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Common weight for every edge; otherwise weights come from the file.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    route: RouteArg,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["chromatic", "flow", "tutte", "coeffs"])))]
struct PolyArgs {
    graph: PathBuf,
    #[arg(long)]
    chromatic: bool,
    #[arg(long)]
    flow: bool,
    #[arg(long)]
    tutte: bool,
    /// The coefficients C^[k] of q^k at fixed weights.
    #[arg(long)]
    coeffs: bool,
    #[arg(long, allow_hyphen_values = true, requires = "coeffs")]
    v: Option<String>,
}

#[derive(Args)]
struct RegionsArgs {
    /// start stop step
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "STEP"], allow_hyphen_values = true)]
    q_grid: Vec<String>,
    /// Enclosure width for irrational curve points.
    #[arg(long)]
    width: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Par,
    Ser,
    Dual,
    Diamond,
}

#[derive(Args)]
struct MapArgs {
    #[arg(value_enum)]
    kind: MapKind,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v1: String,
    #[arg(long, allow_hyphen_values = true)]
    v2: Option<String>,
    /// Iterate the diamond map this many times.
    #[arg(long, default_value_t = 1)]
    iterate: usize,
}

#[derive(Args)]
struct CertifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `default` or `quick`.
    #[arg(long, default_value = "default")]
    bounds: String,
    /// Negative control: flip the expected sign of each suite's first check.
    #[arg(long)]
    poison: bool,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long)]
    region: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, default_value_t = 6)]
    max_edges: usize,
}

#[derive(Args)]
struct BlocksArgs {
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatroidQuery {
    Rank,
    Dual,
    Connectivity,
}

#[derive(Args)]
struct MatroidArgs {
    file: PathBuf,
    #[arg(value_enum)]
    query: MatroidQuery,
    /// Element ids for `rank`, comma separated; the whole ground set when absent.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s)
}

fn graph_hash(g: &MultiGraph) -> String {
    let digest = Sha256::digest(format_graph(g, None).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn ext(x: &ExtendedWeight) -> String {
    match x {
        ExtendedWeight::Finite(v) => v.to_string(),
        ExtendedWeight::PosInfinity => "inf".into(),
    }
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn emit(text: &str) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")));
}

fn load_weighted(path: &Path, v: Option<&String>) -> Result<(MultiGraph, WeightAssignment)> {
    let (g, mut w) = read_graph(path)?;
    if let Some(v) = v {
        w = WeightAssignment::for_graph(&g, &rational(v)?);
    }
    w.aligned(&g.edge_ids())?;
    Ok((g, w))
}

fn cmd_eval(a: &EvalArgs) -> Result<ExitCode> {
    let (g, w) = load_weighted(&a.graph, a.v.as_ref())?;
    let q = rational(&a.q)?;
    let routes = match a.route {
        RouteArg::Expansion => vec![Route::Expansion],
        RouteArg::Delcon => vec![Route::Delcon],
        RouteArg::Coloring => vec![Route::Coloring],
        RouteArg::All => vec![Route::Expansion, Route::Delcon, Route::Coloring],
    };
    let all = routes.len() > 1;
    let (n, c, b) = g.blocks().counts();
    let hash = graph_hash(&g);
    let weights: Vec<(usize, String)> = w.iter().map(|(e, x)| (e.0, x.to_string())).collect();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for route in routes {
        match evaluate(&g, &q, &w, route) {
            Ok(r) => records.push(EvalRecord {
                graph_hash: hash.clone(),
                q: q.clone(),
                weights: weights.clone(),
                value: r.value,
                route,
                n,
                c,
                b,
            }),
            // With every route requested, a route outside its limits is skipped, not fatal.
            Err(e @ (Error::TooLarge { .. } | Error::Precondition(_))) if all => {
                skipped.push(json!({ "route": route, "reason": e.to_string() }));
            }
            Err(e) => return Err(e),
        }
    }
    if records.is_empty() {
        return Err(Error::Precondition("no route could evaluate this input".into()));
    }
    let agree = records.windows(2).all(|p| p[0].value == p[1].value);
    print_json(&json!({
        "value": records[0].value.to_string(),
        "agree": agree,
        "records": records,
        "skipped": skipped,
    }));
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_poly(a: &PolyArgs) -> Result<ExitCode> {
    let (g, w) = read_graph(&a.graph)?;
    let out = if a.chromatic {
        json!({ "kind": "chromatic", "variable": "q", "coefficients": strings(chromatic(&g)?.coeffs()) })
    } else if a.flow {
        json!({ "kind": "flow", "variable": "q", "coefficients": strings(flow(&g)?.coeffs()) })
    } else if a.tutte {
        let rows: Vec<Vec<String>> = tutte_xy(&g)?.to_matrix().iter().map(|r| strings(r)).collect();
        json!({ "kind": "tutte", "layout": "coefficients[i][j] of x^i y^j", "coefficients": rows })
    } else {
        let w = match &a.v {
            Some(v) => WeightAssignment::for_graph(&g, &rational(v)?),
            None => w,
        };
        let cv = coeffs(&g, &w)?;
        json!({ "kind": "coeffs", "variable": "q", "lowest": cv.lowest, "coefficients": strings(&cv.values) })
    };
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

fn cmd_regions(a: &RegionsArgs) -> Result<ExitCode> {
    let [start, stop, step] = match a.q_grid.as_slice() {
        [x, y, z] => [rational(x)?, rational(y)?, rational(z)?],
        _ => [rational("1/32")?, rational("32/27")?, rational("1/32")?],
    };
    if step <= Rational::from_integer(0.into()) {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let mut grid = Vec::new();
    let mut q = start;
    while q <= stop {
        grid.push(q.clone());
        q += &step;
    }
    let width = match &a.width {
        Some(w) => rational(w)?,
        None => default_width(),
    };
    emit(&regions_csv(&grid, &width)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_map(a: &MapArgs) -> Result<ExitCode> {
    let need_q = || -> Result<Rational> {
        rational(a.q.as_deref().ok_or_else(|| Error::Precondition("this map needs --q".into()))?)
    };
    let need_v2 = || -> Result<Rational> {
        rational(a.v2.as_deref().ok_or_else(|| Error::Precondition("this map needs --v2".into()))?)
    };
    let v1 = rational(&a.v1)?;
    let (name, value) = match a.kind {
        MapKind::Par => ("par", par(&v1, &need_v2()?).to_string()),
        MapKind::Ser => ("ser", ext(&ser(&need_q()?, &v1, &need_v2()?)?)),
        MapKind::Dual => ("dual", dualw(&need_q()?, &v1)?.to_string()),
        MapKind::Diamond => {
            let q = need_q()?;
            let x = ExtendedWeight::Finite(v1.clone());
            let y = if a.iterate == 1 { diamond_map(&q, &x)? } else { diamond_iterate(&q, &x, a.iterate)? };
            ("diamond", ext(&y))
        }
    };
    print_json(&json!({ "map": name, "q": a.q, "v1": a.v1, "v2": a.v2, "iterate": a.iterate, "value": value }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(a: &CertifyArgs) -> Result<ExitCode> {
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(Error::Precondition(format!("unknown suite `{}`; known: all, {}", a.suite, SUITES.join(", "))));
    };
    let mut cfg = SuiteConfig::new(a.seed, SuiteBounds::preset(&a.bounds)?);
    cfg.poison = a.poison;
    let mut reports = Vec::new();
    for name in names {
        let r = run_suite(name, &cfg)?;
        eprintln!(
            "{name}: {} cases, {} violations, {:.1}s",
            r.cases,
            r.violations.len(),
            r.elapsed
        );
        reports.push(r);
    }
    let clean = reports.iter().all(|r| r.is_clean());
    print_json(&serde_json::to_value(&reports).expect("reports serialize"));
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_hunt(a: &HuntArgs) -> Result<ExitCode> {
    let region: HuntRegion = a.region.parse()?;
    let r = hunt(region, &rational(&a.q)?, &rational(&a.v)?, a.max_edges)?;
    print_json(&serde_json::to_value(&r).expect("report serializes"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_blocks(a: &BlocksArgs) -> Result<ExitCode> {
    let (g, _) = read_graph(&a.graph)?;
    let d = g.blocks();
    let (n, c, b) = d.counts();
    let bridges: Vec<usize> = g.bridges().iter().map(|e| e.0).collect();
    let loops: Vec<usize> = g.loops().iter().map(|e| e.0).collect();
    print_json(&json!({
        "graph_hash": graph_hash(&g),
        "n": n,
        "c": c,
        "b": b,
        "two_connected": g.is_2connected(),
        "series_parallel": g.is_series_parallel(),
        "bridges": bridges,
        "loops": loops,
        "blocks": d.blocks,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_matroid(a: &MatroidArgs) -> Result<ExitCode> {
    let (m, _) = read_matroid(&a.file)?;
    let labels: Vec<usize> = m.labels().iter().map(|e| e.0).collect();
    let out = match a.query {
        MatroidQuery::Rank => {
            let set: Vec<EdgeId> = match &a.set {
                Some(s) => s.iter().map(|&e| EdgeId(e)).collect(),
                None => m.labels().to_vec(),
            };
            let ids: Vec<usize> = set.iter().map(|e| e.0).collect();
            json!({ "elements": labels, "set": ids, "rank": m.rank_of(&set)?, "full_rank": m.full_rank() })
        }
        MatroidQuery::Dual => {
            let d = m.dual();
            let bases: Vec<Vec<usize>> = bases(&d);
            json!({ "elements": labels, "rank": d.full_rank(), "bases": bases })
        }
        MatroidQuery::Connectivity => {
            let comps: Vec<Vec<usize>> = m
                .connected_components()?
                .iter()
                .map(|c| c.iter().map(|e| e.0).collect())
                .collect();
            let split: Vec<usize> = if m.len() >= 2 && m.is_2connected()? {
                m.splitting_elements()?.iter().map(|e| e.0).collect()
            } else {
                Vec::new()
            };
            json!({
                "elements": labels,
                "two_connected": m.is_2connected()?,
                "components": comps,
                "splitting_elements": split,
            })
        }
    };
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

/// Bases as sorted label lists, in mask order.
fn bases(m: &zerofree::matroid::Matroid) -> Vec<Vec<usize>> {
    let r = m.full_rank();
    (0..=m.full_mask())
        .filter(|&s| s.count_ones() as usize == r && m.rank(s) == r)
        .map(|s| (0..m.len()).filter(|i| s >> i & 1 == 1).map(|i| m.labels()[i].0).collect())
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Poly(a) => cmd_poly(a),
        Command::Regions(a) => cmd_regions(a),
        Command::Map(a) => cmd_map(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Hunt(a) => cmd_hunt(a),
        Command::Blocks(a) => cmd_blocks(a),
        Command::Matroid(a) => cmd_matroid(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
