//! Checks that a presentation really defines a locally convex k-graph.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::kgraph::{EdgeId, KGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A composable pair `ef` (color(e) < color(f)) has no square.
    MissingSquare { e: String, f: String },
    /// Some `f'e'` is hit by several squares, or by none.
    NonBijectiveSquare { f_prime: String, e_prime: String, preimages: usize },
    /// Two rewriting orders of a three-colored path disagree.
    HexagonFailure { path: Vec<String>, first: Vec<String>, second: Vec<String> },
    /// `r(lambda)` receives color `j` but `s(lambda)` does not.
    NotLocallyConvex { edge: String, color: usize },
    /// An edge mentions a vertex that does not exist.
    DanglingEdge { edge: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingSquare { e, f: ff } => write!(f, "missing-square: ({e}, {ff})"),
            Violation::NonBijectiveSquare { f_prime, e_prime, preimages } => write!(
                f,
                "non-bijective-square: ({f_prime}, {e_prime}) has {preimages} preimages"
            ),
            Violation::HexagonFailure { path, first, second } => write!(
                f,
                "hexagon-failure: {} rewrites to {} and {}",
                path.join("."),
                first.join("."),
                second.join(".")
            ),
            Violation::NotLocallyConvex { edge, color } => {
                write!(f, "not-locally-convex: edge {edge}, color {color}")
            }
            Violation::DanglingEdge { edge } => write!(f, "dangling-edge: {edge}"),
        }
    }
}

pub fn validate(g: &KGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let n = g.vertex_count();
    let name = |e: EdgeId| g.edge(e).name.clone();

    let dangling: Vec<EdgeId> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.source.0 >= n || e.range.0 >= n)
        .map(|(i, _)| EdgeId(i))
        .collect();
    for e in &dangling {
        violations.push(Violation::DanglingEdge { edge: name(*e) });
    }
    if !dangling.is_empty() {
        return ValidationReport { violations };
    }

    let edge_ids: Vec<EdgeId> = (0..g.edges().len()).map(EdgeId).collect();

    // completeness: every composable ef with color(e) < color(f) has a square
    for &e in &edge_ids {
        for &f in &edge_ids {
            let (ee, ff) = (g.edge(e), g.edge(f));
            if ee.color < ff.color && ee.source == ff.range && g.square_forward(e, f).is_none() {
                violations.push(Violation::MissingSquare { e: name(e), f: name(f) });
            }
        }
    }

    // bijectivity: every composable f'e' with color(f') > color(e') is hit exactly once
    for &fp in &edge_ids {
        for &ep in &edge_ids {
            let (ff, ee) = (g.edge(fp), g.edge(ep));
            if ff.color > ee.color && ff.source == ee.range {
                let hits = g.square_preimages(fp, ep).len();
                if hits != 1 {
                    violations.push(Violation::NonBijectiveSquare {
                        f_prime: name(fp),
                        e_prime: name(ep),
                        preimages: hits,
                    });
                }
            }
        }
    }

    if g.rank() >= 3 {
        check_hexagons(g, &edge_ids, &mut violations);
    }

    // local convexity
    for &e in &edge_ids {
        let edge = g.edge(e);
        for j in 0..g.rank() {
            if j != edge.color
                && !g.edges_into(edge.range, j).is_empty()
                && g.edges_into(edge.source, j).is_empty()
            {
                violations.push(Violation::NotLocallyConvex { edge: name(e), color: j + 1 });
            }
        }
    }

    ValidationReport { violations }
}

fn check_hexagons(g: &KGraph, edge_ids: &[EdgeId], violations: &mut Vec<Violation>) {
    let mut reported = HashSet::new();
    for &a in edge_ids {
        for &b in edge_ids {
            let (ea, eb) = (g.edge(a), g.edge(b));
            if ea.color >= eb.color || ea.source != eb.range {
                continue;
            }
            for &c in edge_ids {
                let ec = g.edge(c);
                if eb.color >= ec.color || eb.source != ec.range {
                    continue;
                }
                let Some((first, second)) = hexagon_routes(g, a, b, c) else {
                    continue;
                };
                if first != second && reported.insert((a, b, c)) {
                    let names = |s: &[EdgeId]| s.iter().map(|e| g.edge(*e).name.clone()).collect();
                    violations.push(Violation::HexagonFailure {
                        path: names(&[a, b, c]),
                        first: names(&first),
                        second: names(&second),
                    });
                }
            }
        }
    }
}

/// Both ways of reversing the color order of `abc` (colors increasing);
/// `None` when some needed square is missing.
pub(crate) fn hexagon_routes(
    g: &KGraph,
    a: EdgeId,
    b: EdgeId,
    c: EdgeId,
) -> Option<([EdgeId; 3], [EdgeId; 3])> {
    let sw = |x: EdgeId, y: EdgeId| g.swap(x, y).ok();
    // swap (1,2), (2,3), (1,2)
    let (b1, a1) = sw(a, b)?;
    let (c1, a2) = sw(a1, c)?;
    let (c2, b2) = sw(b1, c1)?;
    let first = [c2, b2, a2];
    // swap (2,3), (1,2), (2,3)
    let (c3, b3) = sw(b, c)?;
    let (c4, a3) = sw(a, c3)?;
    let (b4, a4) = sw(a3, b3)?;
    let second = [c4, b4, a4];
    Some((first, second))
}
