//! Path enumeration, minimal common extensions, and generalized cycles.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::degree::Degree;
use crate::kgraph::{EdgeId, KGraph, Path, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `v Lambda^n`
    Exact,
    /// `v Lambda^{<=n}`
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathQuery {
    pub vertex: VertexId,
    pub degree: Degree,
    pub mode: Mode,
}

/// Duplicate-free, ordered result of a path query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Path>,
    pub query: Option<PathQuery>,
}

impl PathSet {
    fn from_paths(mut paths: Vec<Path>, query: Option<PathQuery>) -> Self {
        paths.sort();
        paths.dedup();
        PathSet { paths, query }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.paths.binary_search(p).is_ok()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexId),
    #[error("({0}, {1}) is not a pair of distinct paths with common range and source")]
    NotACyclePair(String, String),
}

/// `v Lambda^n`: paths with range `v` and degree `n`, built color by color.
pub fn exact_paths(g: &KGraph, v: VertexId, n: &Degree) -> Vec<Path> {
    let mut frontier = vec![(v, Vec::<EdgeId>::new())];
    for color in 0..g.rank() {
        for _ in 0..n.get(color) {
            let mut next = Vec::new();
            for (src, seq) in &frontier {
                for &e in g.edges_into(*src, color) {
                    let mut s = seq.clone();
                    s.push(e);
                    next.push((g.edge(e).source, s));
                }
            }
            frontier = next;
        }
    }
    let mut out: Vec<Path> = frontier
        .into_iter()
        .map(|(src, seq)| Path::from_canonical(v, src, seq, n.clone()))
        .collect();
    out.sort();
    out
}

/// Whether `p` lies in `Lambda^{<=n}`.
pub fn is_boundary_truncation(g: &KGraph, p: &Path, n: &Degree) -> bool {
    p.degree().le(n)
        && (0..g.rank()).all(|i| p.degree().get(i) == n.get(i) || g.edges_into(p.source(), i).is_empty())
}

/// `v Lambda^{<=n}`.
pub fn boundary_paths(g: &KGraph, v: VertexId, n: &Degree) -> Vec<Path> {
    let mut out: Vec<Path> = n
        .below()
        .iter()
        .flat_map(|m| exact_paths(g, v, m))
        .filter(|p| is_boundary_truncation(g, p, n))
        .collect();
    out.sort();
    out
}

pub fn enumerate_paths(g: &KGraph, v: VertexId, n: &Degree, mode: Mode) -> Result<PathSet, CombinatoricsError> {
    if v.0 >= g.vertex_count() {
        return Err(CombinatoricsError::UnknownVertex(v));
    }
    let paths = match mode {
        Mode::Exact => exact_paths(g, v, n),
        Mode::Boundary => boundary_paths(g, v, n),
    };
    Ok(PathSet::from_paths(
        paths,
        Some(PathQuery {
            vertex: v,
            degree: n.clone(),
            mode,
        }),
    ))
}

/// Every path of total degree at most `max_total`, in canonical order.
pub fn paths_up_to(g: &KGraph, max_total: u32) -> Vec<Path> {
    let mut out = Vec::new();
    for v in g.vertex_ids() {
        let mut layer = vec![g.vertex_path(v)];
        out.push(g.vertex_path(v));
        for _ in 0..max_total {
            let mut next = Vec::new();
            for p in &layer {
                // only append colors >= the last color to stay canonical
                let last = p.edges().last().map(|e| g.edge(*e).color).unwrap_or(0);
                for c in last..g.rank() {
                    for &e in g.edges_into(p.source(), c) {
                        let mut seq = p.edges().to_vec();
                        seq.push(e);
                        let mut d = p.degree().clone();
                        d.increment(c);
                        next.push(Path::from_canonical(p.range(), g.edge(e).source, seq, d));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
    }
    out.sort();
    out
}

/// `{p alpha : alpha in s(p) Lambda^n}`.
pub fn extensions(g: &KGraph, p: &Path, n: &Degree) -> Vec<Path> {
    exact_paths(g, p.source(), n)
        .iter()
        .map(|a| g.compose(p, a).expect("extension is composable"))
        .collect()
}

/// Minimal common extensions: paths of degree `d(mu) v d(nu)` that extend
/// both `mu` and `nu`.
pub fn mce(g: &KGraph, mu: &Path, nu: &Path) -> PathSet {
    if mu.range() != nu.range() {
        return PathSet::from_paths(Vec::new(), None);
    }
    let top = mu.degree().join(nu.degree());
    let grow = top.checked_sub(mu.degree()).expect("join dominates");
    let found = extensions(g, mu, &grow)
        .into_iter()
        .filter(|lam| {
            g.factorize(lam, nu.degree())
                .map(|(head, _)| &head == nu)
                .unwrap_or(false)
        })
        .collect();
    PathSet::from_paths(found, None)
}

/// Pairs `(alpha, beta)` with `mu alpha = nu beta` ranging over `MCE(mu, nu)`.
pub fn mce_factors(g: &KGraph, mu: &Path, nu: &Path) -> Vec<(Path, Path)> {
    mce(g, mu, nu)
        .paths
        .iter()
        .map(|lam| {
            let (_, alpha) = g.factorize(lam, mu.degree()).expect("extends mu");
            let (_, beta) = g.factorize(lam, nu.degree()).expect("extends nu");
            (alpha, beta)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCycle {
    pub mu: Path,
    pub nu: Path,
    pub entrance: Option<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCheck {
    pub holds: bool,
    /// Extensions `tau` with `MCE(mu tau, nu)` empty.
    pub failing: Vec<Path>,
}

fn check_cycle_pair(g: &KGraph, mu: &Path, nu: &Path) -> Result<(), CombinatoricsError> {
    if mu == nu || mu.source() != nu.source() || mu.range() != nu.range() {
        return Err(CombinatoricsError::NotACyclePair(g.path_name(mu), g.path_name(nu)));
    }
    Ok(())
}

/// Tests `Z(mu) ⊆ Z(nu)` through `MCE(mu tau, nu) != ∅` for all
/// `tau in s(mu) Lambda^{<=n0}` with `n0 = (d(mu) v d(nu)) - d(mu)`.
pub fn is_generalized_cycle(g: &KGraph, mu: &Path, nu: &Path) -> Result<CycleCheck, CombinatoricsError> {
    check_cycle_pair(g, mu, nu)?;
    Ok(cycle_check_unchecked(g, mu, nu))
}

fn cycle_check_unchecked(g: &KGraph, mu: &Path, nu: &Path) -> CycleCheck {
    let n0 = mu
        .degree()
        .join(nu.degree())
        .checked_sub(mu.degree())
        .expect("join dominates");
    let failing: Vec<Path> = boundary_paths(g, mu.source(), &n0)
        .into_iter()
        .filter(|tau| {
            let ext = g.compose(mu, tau).expect("composable");
            mce(g, &ext, nu).is_empty()
        })
        .collect();
    CycleCheck {
        holds: failing.is_empty(),
        failing,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    NotFoundUpTo(u32),
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            Search::NotFoundUpTo(_) => None,
        }
    }
}

/// Searches `tau in s(nu) Lambda` of total degree at most `depth` with
/// `MCE(mu, nu tau) = ∅`, in degree-lexicographic order.
pub fn find_entrance(g: &KGraph, mu: &Path, nu: &Path, depth: u32) -> Search<Path> {
    let box_ = Degree::uniform(g.rank(), depth);
    for m in box_.below().into_iter().filter(|m| m.total() <= depth) {
        for tau in exact_paths(g, nu.source(), &m) {
            let ext = g.compose(nu, &tau).expect("composable");
            if mce(g, mu, &ext).is_empty() {
                return Search::Found(tau);
            }
        }
    }
    Search::NotFoundUpTo(depth)
}

/// Vertices `w` with `v Lambda w != ∅`, each with a shortest connecting
/// path `gamma in v Lambda w`, in breadth-first order.
pub fn reaching_vertices(g: &KGraph, v: VertexId) -> Vec<(VertexId, Path)> {
    let mut seen: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    seen.insert(v, Vec::new());
    let mut order = vec![v];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for c in 0..g.rank() {
            for &e in g.edges_into(u, c) {
                let w = g.edge(e).source;
                if !seen.contains_key(&w) {
                    let mut seq = seen[&u].clone();
                    seq.push(e);
                    seen.insert(w, seq);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    order
        .into_iter()
        .map(|w| {
            let seq = &seen[&w];
            let p = if seq.is_empty() {
                g.vertex_path(w)
            } else {
                g.path_from_edges(seq).expect("walk is composable")
            };
            (w, p)
        })
        .collect()
}

/// Vertices `u` reachable forward from `v`, i.e. `u Lambda v != ∅`,
/// each with a shortest path in `u Lambda v`.
pub fn reached_vertices(g: &KGraph, v: VertexId) -> Vec<(VertexId, Path)> {
    let mut prev: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    prev.insert(v, Vec::new());
    let mut order = vec![v];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for (i, e) in g.edges().iter().enumerate() {
            if e.source == u && !prev.contains_key(&e.range) {
                let mut seq = vec![EdgeId(i)];
                seq.extend_from_slice(&prev[&u]);
                prev.insert(e.range, seq);
                order.push(e.range);
                queue.push_back(e.range);
            }
        }
    }
    order
        .into_iter()
        .map(|u| {
            let seq = &prev[&u];
            let p = if seq.is_empty() {
                g.vertex_path(u)
            } else {
                g.path_from_edges(seq).expect("walk is composable")
            };
            (u, p)
        })
        .collect()
}

/// Candidate cycle pairs `(mu, nu)`, both of total degree at most `depth`,
/// `nu` not a vertex, ordered by combined length then lexicographically.
fn cycle_candidates(all: &[Path], keep: impl Fn(&Path) -> bool) -> Vec<(&Path, &Path)> {
    let mut by_ends: HashMap<(VertexId, VertexId), Vec<&Path>> = HashMap::new();
    for p in all.iter().filter(|p| keep(p)) {
        by_ends.entry((p.range(), p.source())).or_default().push(p);
    }
    let mut pairs = Vec::new();
    for group in by_ends.values() {
        for &mu in group {
            for &nu in group {
                if mu != nu && !nu.is_vertex() {
                    pairs.push((mu, nu));
                }
            }
        }
    }
    pairs.sort_by(|a, b| {
        (a.0.len() + a.1.len())
            .cmp(&(b.0.len() + b.1.len()))
            .then_with(|| a.0.cmp(b.0))
            .then_with(|| a.1.cmp(b.1))
    });
    pairs
}

/// Outcome of a bounded search for generalized cycles with an entrance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSearch<T> {
    Found(T),
    NotFoundUpTo {
        depth: u32,
        /// Generalized cycles met during the search that had no entrance
        /// within the depth budget.
        without_entrance: Vec<(Path, Path)>,
    },
}

/// First generalized cycle with an entrance among candidates accepted by `keep`.
pub fn first_cycle_with_entrance(
    g: &KGraph,
    all: &[Path],
    keep: impl Fn(&Path) -> bool,
    depth: u32,
    without_entrance: &mut Vec<(Path, Path)>,
) -> Option<GeneralizedCycle> {
    for (mu, nu) in cycle_candidates(all, keep) {
        // Z(mu) ⊆ Z(nu) forces mu and nu to have a common extension
        if mce(g, mu, nu).is_empty() {
            continue;
        }
        if !cycle_check_unchecked(g, mu, nu).holds {
            continue;
        }
        match find_entrance(g, mu, nu, depth) {
            Search::Found(tau) => {
                return Some(GeneralizedCycle {
                    mu: mu.clone(),
                    nu: nu.clone(),
                    entrance: Some(tau),
                })
            }
            Search::NotFoundUpTo(_) => {
                if without_entrance.len() < 8 {
                    without_entrance.push((mu.clone(), nu.clone()));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachingCycle {
    pub cycle: GeneralizedCycle,
    /// `gamma in v Lambda s(mu)`.
    pub connector: Path,
}

/// Searches for a generalized cycle with an entrance whose common source
/// reaches `v`, trying sources in breadth-first order from `v`.
pub fn find_reaching_gen_cycle(g: &KGraph, v: VertexId, depth: u32) -> CycleSearch<ReachingCycle> {
    let all = paths_up_to(g, depth);
    let mut without = Vec::new();
    for (w, gamma) in reaching_vertices(g, v) {
        if let Some(cycle) = first_cycle_with_entrance(g, &all, |p| p.source() == w, depth, &mut without) {
            return CycleSearch::Found(ReachingCycle { cycle, connector: gamma });
        }
    }
    CycleSearch::NotFoundUpTo {
        depth,
        without_entrance: without,
    }
}

/// Vertex set of `Lambda^0_{>=v} = {w : v Lambda w != ∅}`.
pub fn reaching_set(g: &KGraph, v: VertexId) -> BTreeSet<VertexId> {
    reaching_vertices(g, v).into_iter().map(|(w, _)| w).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn p(g: &KGraph, s: &str) -> Path {
        g.parse_path(s).unwrap()
    }

    #[test]
    fn e2_paths_of_length_two() {
        let g = corpus::e_n(2);
        let set = enumerate_paths(&g, VertexId(0), &Degree::uniform(1, 2), Mode::Exact).unwrap();
        let names: Vec<String> = set.paths.iter().map(|q| g.path_name(q)).collect();
        assert_eq!(names, ["a.a", "a.b", "b.a", "b.b"]);
    }

    #[test]
    fn boundary_at_a_source_is_the_vertex() {
        let g = corpus::single_edge();
        let w = g.vertex_by_name("w").unwrap();
        let set = enumerate_paths(&g, w, &Degree::unit(1, 0), Mode::Boundary).unwrap();
        assert_eq!(set.paths, vec![g.vertex_path(w)]);
        assert!(enumerate_paths(&g, VertexId(9), &Degree::zero(1), Mode::Exact).is_err());
    }

    #[test]
    fn mce_examples() {
        let t2 = corpus::t2();
        let m = mce(&t2, &p(&t2, "e"), &p(&t2, "f"));
        assert_eq!(m.paths, vec![p(&t2, "e.f")]);
        let e2 = corpus::e_n(2);
        assert!(mce(&e2, &p(&e2, "a"), &p(&e2, "b")).is_empty());
        assert_eq!(mce(&e2, &p(&e2, "a"), &p(&e2, "a.b")).paths, vec![p(&e2, "a.b")]);
    }

    #[test]
    fn generalized_cycle_examples() {
        let e1 = corpus::e_n(1);
        assert!(is_generalized_cycle(&e1, &p(&e1, "a.a"), &p(&e1, "a")).unwrap().holds);
        let e2 = corpus::e_n(2);
        assert!(is_generalized_cycle(&e2, &p(&e2, "a.a"), &p(&e2, "a")).unwrap().holds);
        let check = is_generalized_cycle(&e2, &p(&e2, "a.b"), &p(&e2, "b.a")).unwrap();
        assert!(!check.holds);
        assert_eq!(check.failing, vec![p(&e2, "v")]);
        assert!(is_generalized_cycle(&e2, &p(&e2, "a"), &p(&e2, "a")).is_err());
    }

    #[test]
    fn entrance_examples() {
        let e1 = corpus::e_n(1);
        for d in 0..6 {
            assert_eq!(find_entrance(&e1, &p(&e1, "a.a"), &p(&e1, "a"), d), Search::NotFoundUpTo(d));
        }
        let e2 = corpus::e_n(2);
        assert_eq!(find_entrance(&e2, &p(&e2, "a.a"), &p(&e2, "a"), 3), Search::Found(p(&e2, "b")));
        let t2 = corpus::t2();
        assert!(is_generalized_cycle(&t2, &p(&t2, "e.f"), &p(&t2, "v")).unwrap().holds);
        assert_eq!(find_entrance(&t2, &p(&t2, "e.f"), &p(&t2, "v"), 4), Search::NotFoundUpTo(4));
    }

    #[test]
    fn reaching_cycle_examples() {
        let e2 = corpus::e_n(2);
        let CycleSearch::Found(found) = find_reaching_gen_cycle(&e2, VertexId(0), 4) else {
            panic!("E_2 has a cycle with an entrance");
        };
        assert_eq!(found.cycle.mu, p(&e2, "a.a"));
        assert_eq!(found.cycle.nu, p(&e2, "a"));
        assert_eq!(found.cycle.entrance, Some(p(&e2, "b")));
        assert!(found.connector.is_vertex());

        let omega = corpus::omega(2, &[1, 1]);
        for v in omega.vertex_ids() {
            assert!(matches!(find_reaching_gen_cycle(&omega, v, 4), CycleSearch::NotFoundUpTo { .. }));
        }

        let t2 = corpus::t2();
        match find_reaching_gen_cycle(&t2, VertexId(0), 3) {
            CycleSearch::NotFoundUpTo { without_entrance, .. } => assert!(!without_entrance.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
