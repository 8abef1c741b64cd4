//! Line-oriented text formats for graphs and matroids.
//!
//! Graphs: `graph <n>` then `edge <id> <u> <v> [<weight>]`.
//! Matroids: one of `uniform <r> <n>`, `graphic <file>`, `dual <file>`,
//! `directsum <file> <file>`, then `w <id> <weight>` lines. Blank lines and
//! `#` comments are ignored in both.

use std::path::{Path, PathBuf};

use crate::arith::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, WeightAssignment};
use crate::matroid::Matroid;

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn parse_weight(line: usize, tok: &str) -> Result<Rational> {
    parse_rational(tok).map_err(|e| parse_err(line, e.to_string()))
}

/// Parses a graph; weights given on edge lines are returned alongside it.
pub fn parse_graph(text: &str) -> Result<(MultiGraph, WeightAssignment)> {
    let mut g: Option<MultiGraph> = None;
    let mut w = WeightAssignment::new();
    for (line, toks) in records(text) {
        match toks.as_slice() {
            ["graph", n] => {
                if g.is_some() {
                    return Err(parse_err(line, "second `graph` header"));
                }
                g = Some(MultiGraph::empty(parse_usize(line, n, "vertex count")?));
            }
            ["edge", id, u, v, rest @ ..] if rest.len() <= 1 => {
                let g = g.as_mut().ok_or_else(|| parse_err(line, "`edge` before `graph` header"))?;
                let id = EdgeId(parse_usize(line, id, "edge id")?);
                let (u, v) = (parse_usize(line, u, "vertex")?, parse_usize(line, v, "vertex")?);
                g.add_edge_with_id(id, u, v).map_err(|e| parse_err(line, e.to_string()))?;
                if let [wt] = rest {
                    w.set(id, parse_weight(line, wt)?);
                }
            }
            _ => return Err(parse_err(line, format!("unrecognised record `{}`", toks.join(" ")))),
        }
    }
    let g = g.ok_or_else(|| parse_err(0, "missing `graph` header"))?;
    Ok((g, w))
}

/// Writes a graph, with weights on the edges that have one.
pub fn format_graph(g: &MultiGraph, w: Option<&WeightAssignment>) -> String {
    let mut out = format!("graph {}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {}", e.id.0, e.u, e.v));
        if let Some(x) = w.and_then(|w| w.get(e.id).ok()) {
            out.push(' ');
            out.push_str(&fmt_rational(x));
        }
        out.push('\n');
    }
    out
}

pub fn read_graph(path: &Path) -> Result<(MultiGraph, WeightAssignment)> {
    parse_graph(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses a matroid description; file references resolve against `base`.
pub fn parse_matroid(text: &str, base: &Path) -> Result<(Matroid, WeightAssignment)> {
    let mut m: Option<Matroid> = None;
    let mut w = WeightAssignment::new();
    let resolve = |f: &str| -> PathBuf { base.join(f) };
    for (line, toks) in records(text) {
        let set = |m: &mut Option<Matroid>, x: Matroid| {
            if m.is_some() {
                return Err(parse_err(line, "second matroid constructor"));
            }
            *m = Some(x);
            Ok(())
        };
        let wrap = |e: Error| parse_err(line, e.to_string());
        match toks.as_slice() {
            ["uniform", r, n] => {
                let x = Matroid::uniform(parse_usize(line, r, "rank")?, parse_usize(line, n, "size")?).map_err(wrap)?;
                set(&mut m, x)?;
            }
            ["graphic", f] => {
                let (g, gw) = read_graph(&resolve(f)).map_err(wrap)?;
                for (id, x) in gw.iter() {
                    w.set(*id, x.clone());
                }
                set(&mut m, Matroid::graphic(&g).map_err(wrap)?)?;
            }
            ["dual", f] => {
                let (x, _) = read_matroid(&resolve(f)).map_err(wrap)?;
                set(&mut m, x.dual())?;
            }
            ["directsum", f1, f2] => {
                let (a, _) = read_matroid(&resolve(f1)).map_err(wrap)?;
                let (b, _) = read_matroid(&resolve(f2)).map_err(wrap)?;
                set(&mut m, a.direct_sum(&b).map_err(wrap)?)?;
            }
            ["w", id, x] => {
                w.set(EdgeId(parse_usize(line, id, "element id")?), parse_weight(line, x)?);
            }
            _ => return Err(parse_err(line, format!("unrecognised record `{}`", toks.join(" ")))),
        }
    }
    let m = m.ok_or_else(|| parse_err(0, "missing matroid constructor"))?;
    for (id, _) in w.iter() {
        m.position(*id)?;
    }
    Ok((m, w))
}

pub fn read_matroid(path: &Path) -> Result<(Matroid, WeightAssignment)> {
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_matroid(&read(path)?, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn graph_round_trip_keeps_ids_and_weights() {
        let text = "# triangle\ngraph 3\nedge 4 0 1 -1/2\nedge 7 1 2\n\nedge 9 2 0 3  # tail\n";
        let (g, w) = parse_graph(text).unwrap();
        assert_eq!(g.edge_ids(), vec![EdgeId(4), EdgeId(7), EdgeId(9)]);
        assert_eq!(w.get(EdgeId(4)).unwrap(), &rat(-1, 2));
        let again = format_graph(&g, Some(&w));
        let (g2, w2) = parse_graph(&again).unwrap();
        assert_eq!(g, g2);
        assert_eq!(w, w2);
    }

    #[test]
    fn graph_errors_name_the_line() {
        match parse_graph("graph 2\nedge 0 0 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph("edge 0 0 1\n").is_err());
        assert!(parse_graph("graph 2\nedge 0 0 1\nedge 0 1 0\n").is_err());
    }

    #[test]
    fn uniform_matroid_with_weights() {
        let (m, w) = parse_matroid("uniform 2 4\nw 0 1/3\nw 3 -2\n", Path::new(".")).unwrap();
        assert_eq!((m.len(), m.full_rank()), (4, 2));
        assert_eq!(w.len(), 2);
        assert!(parse_matroid("uniform 2 4\nw 9 1\n", Path::new(".")).is_err());
    }
}
