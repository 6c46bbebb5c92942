//! The `kgraph v1` text format.
//!
//! ```text
//! kgraph v1
//! k: 2
//! vertices: v
//! edge e color=1 from=v to=v
//! edge f color=2 from=v to=v
//! square e f ~ f e
//! ```
//!
//! `from` is the source and `to` the range of an edge. `square e f ~ f' e'`
//! declares `ef = f'e'` with `color(e) < color(f)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kgraph::{GraphError, KGraph, KGraphBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn load_kgraph(text: &str) -> Result<KGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    match lines.next() {
        Some((_, l)) if l.trim() == "kgraph v1" => {}
        Some((n, l)) => {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(err(n, col, "expected header `kgraph v1`"));
        }
        None => return Err(err(1, 1, "empty input")),
    }

    let mut builder: Option<KGraphBuilder> = None;
    let mut saw_vertices = false;
    for (n, line) in lines {
        let toks = tokens(line);
        let (col, head) = toks[0];
        let graph_err = |e: GraphError, c: usize| err(n, c, e.to_string());
        match head {
            "k:" => {
                if builder.is_some() {
                    return Err(err(n, col, "duplicate `k:` line"));
                }
                let [_, (c, value)] = toks[..] else {
                    return Err(err(n, col, "expected `k: <int>`"));
                };
                let k: usize = value.parse().map_err(|_| err(n, c, "rank must be a positive integer"))?;
                if k == 0 {
                    return Err(err(n, c, "rank must be a positive integer"));
                }
                builder = Some(KGraphBuilder::new(k));
            }
            "vertices:" => {
                let b = builder.as_mut().ok_or_else(|| err(n, col, "`k:` must come first"))?;
                for &(c, v) in &toks[1..] {
                    if !is_ident(v) {
                        return Err(err(n, c, format!("invalid identifier `{v}`")));
                    }
                    b.vertex(v).map_err(|e| graph_err(e, c))?;
                }
                saw_vertices = true;
            }
            "edge" => {
                let b = builder.as_mut().ok_or_else(|| err(n, col, "`k:` must come first"))?;
                if toks.len() != 5 {
                    return Err(err(n, col, "expected `edge <id> color=<c> from=<v> to=<v>`"));
                }
                let (c_id, id) = toks[1];
                if !is_ident(id) {
                    return Err(err(n, c_id, format!("invalid identifier `{id}`")));
                }
                let field = |i: usize, key: &str| -> Result<(usize, &str), ParseError> {
                    let (c, t) = toks[i];
                    t.strip_prefix(key)
                        .and_then(|r| r.strip_prefix('='))
                        .map(|v| (c, v))
                        .ok_or_else(|| err(n, c, format!("expected `{key}=...`")))
                };
                let (cc, color) = field(2, "color")?;
                let color: usize = color.parse().map_err(|_| err(n, cc, "color must be an integer"))?;
                let (cs, from) = field(3, "from")?;
                let (cr, to) = field(4, "to")?;
                b.edge(id, color, from, to).map_err(|e| {
                    let c = match &e {
                        GraphError::UnknownVertex(v) if v == from => cs,
                        GraphError::UnknownVertex(_) => cr,
                        GraphError::ColorOutOfRange { .. } => cc,
                        _ => c_id,
                    };
                    graph_err(e, c)
                })?;
            }
            "square" => {
                let b = builder.as_mut().ok_or_else(|| err(n, col, "`k:` must come first"))?;
                if toks.len() != 6 || toks[3].1 != "~" {
                    return Err(err(n, col, "expected `square <e> <f> ~ <f'> <e'>`"));
                }
                let (e, f, fp, ep) = (toks[1].1, toks[2].1, toks[4].1, toks[5].1);
                b.square(e, f, fp, ep).map_err(|ge| {
                    let c = match &ge {
                        GraphError::UnknownEdge(x) => toks
                            .iter()
                            .skip(1)
                            .find(|(_, t)| t == x)
                            .map(|(c, _)| *c)
                            .unwrap_or(col),
                        _ => col,
                    };
                    graph_err(ge, c)
                })?;
            }
            other => return Err(err(n, col, format!("unexpected `{other}`"))),
        }
    }
    let b = builder.ok_or_else(|| err(1, 1, "missing `k:` line"))?;
    if !saw_vertices {
        return Err(err(1, 1, "missing `vertices:` line"));
    }
    b.build().map_err(|e| err(1, 1, e.to_string()))
}

/// Serializes a graph back into `kgraph v1` text.
pub fn write_kgraph(g: &KGraph) -> String {
    let mut out = String::from("kgraph v1\n");
    let _ = writeln!(out, "k: {}", g.rank());
    let names: Vec<&str> = g.vertex_ids().map(|v| g.vertex_name(v)).collect();
    let _ = writeln!(out, "vertices: {}", names.join(" "));
    for e in g.edges() {
        let _ = writeln!(
            out,
            "edge {} color={} from={} to={}",
            e.name,
            e.color + 1,
            g.vertex_name(e.source),
            g.vertex_name(e.range)
        );
    }
    for s in g.squares() {
        let nm = |e| g.edge(e).name.as_str();
        let _ = writeln!(out, "square {} {} ~ {} {}", nm(s.e), nm(s.f), nm(s.f_prime), nm(s.e_prime));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const E2: &str = "kgraph v1\nk: 1\nvertices: v\nedge a color=1 from=v to=v\nedge b color=1 from=v to=v\n";
    const T2: &str = "kgraph v1\n# torus\nk: 2\nvertices: v\nedge e color=1 from=v to=v\nedge f color=2 from=v to=v\nsquare e f ~ f e\n";

    #[test]
    fn loads_e2() {
        let g = load_kgraph(E2).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn loads_t2_square() {
        let g = load_kgraph(T2).unwrap();
        let (e, f) = (g.edge_by_name("e").unwrap(), g.edge_by_name("f").unwrap());
        assert_eq!(g.square_forward(e, f), Some((f, e)));
    }

    #[test]
    fn unknown_edge_in_square() {
        let text = T2.replace("square e f ~ f e", "square e g ~ f e");
        let e = load_kgraph(&text).unwrap_err();
        assert!(e.message.contains("unknown edge"), "{e}");
        assert_eq!((e.line, e.column), (7, 10));
    }

    #[test]
    fn syntax_and_duplicates() {
        let e = load_kgraph("kgraph v2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = load_kgraph("kgraph v1\nk: 1\nvertices: v v\n").unwrap_err();
        assert!(e.message.contains("duplicate identifier"));
        assert_eq!((e.line, e.column), (3, 13));
        let e = load_kgraph("kgraph v1\nk: 1\nvertices: v\nedge a color=1 from=v to=w\n").unwrap_err();
        assert!(e.message.contains("unknown vertex"));
        assert_eq!(e.column, 23);
        let e = load_kgraph("kgraph v1\nk: 1\nvertices: v\nedge a colour=1 from=v to=v\n").unwrap_err();
        assert_eq!(e.column, 8);
    }

    #[test]
    fn write_round_trip() {
        let g = load_kgraph(T2).unwrap();
        let again = load_kgraph(&write_kgraph(&g)).unwrap();
        assert_eq!(write_kgraph(&again), write_kgraph(&g));
    }
}
