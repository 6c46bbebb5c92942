//! Finite k-graph presentations: colored 1-skeleton plus factorization squares.
//!
//! A path is stored as its canonical edge sequence, where all color-1 edges
//! come first, then color-2 edges, and so on. Composition concatenates and
//! re-sorts the colors by applying squares; factorization at an arbitrary
//! degree re-sorts into the shape `m` followed by `d - m` and cuts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::degree::Degree;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// 0-based color; the text format uses 1-based colors.
    pub color: usize,
    pub source: VertexId,
    pub range: VertexId,
}

/// A factorization square `ef = f'e'` with `color(e) < color(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub e: EdgeId,
    pub f: EdgeId,
    pub f_prime: EdgeId,
    pub e_prime: EdgeId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("color {color} out of range 1..={rank}")]
    ColorOutOfRange { color: usize, rank: usize },
    #[error("malformed square {0}: {1}")]
    MalformedSquare(String, String),
    #[error("duplicate square for pair ({0}, {1})")]
    DuplicateSquare(String, String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("paths are not composable: s(p) = {0} but r(q) = {1}")]
    NotComposable(String, String),
    #[error("degree {m} is not below {d}")]
    DegreeOutOfRange { m: Degree, d: Degree },
    #[error("no square rewrites the pair ({0}, {1})")]
    MissingSquare(String, String),
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("empty path reference")]
    Empty,
}

#[derive(Clone, Debug)]
pub struct KGraph {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    forward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    backward: HashMap<(EdgeId, EdgeId), Vec<(EdgeId, EdgeId)>>,
    // in_edges[v][c] = edges of color c with range v, i.e. v Lambda^{e_c}
    in_edges: Vec<Vec<Vec<EdgeId>>>,
    names: HashMap<String, Ident>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ident {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// Incremental construction with referential checks.
#[derive(Default)]
pub struct KGraphBuilder {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    names: HashMap<String, Ident>,
}

impl KGraphBuilder {
    pub fn new(rank: usize) -> Self {
        KGraphBuilder {
            rank,
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.names.contains_key(name) {
            return Err(GraphError::DuplicateIdentifier(name.to_string()));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(name.to_string());
        self.names.insert(name.to_string(), Ident::Vertex(id));
        Ok(id)
    }

    fn lookup_vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(GraphError::UnknownVertex(name.to_string())),
        }
    }

    fn lookup_edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        match self.names.get(name) {
            Some(Ident::Edge(e)) => Ok(*e),
            _ => Err(GraphError::UnknownEdge(name.to_string())),
        }
    }

    /// Adds an edge with 1-based `color`, from `source` to `range`.
    pub fn edge(
        &mut self,
        name: &str,
        color: usize,
        source: &str,
        range: &str,
    ) -> Result<EdgeId, GraphError> {
        if color == 0 || color > self.rank {
            return Err(GraphError::ColorOutOfRange {
                color,
                rank: self.rank,
            });
        }
        let source = self.lookup_vertex(source)?;
        let range = self.lookup_vertex(range)?;
        if self.names.contains_key(name) {
            return Err(GraphError::DuplicateIdentifier(name.to_string()));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge {
            name: name.to_string(),
            color: color - 1,
            source,
            range,
        });
        self.names.insert(name.to_string(), Ident::Edge(id));
        Ok(id)
    }

    /// Adds the square `e f ~ f' e'`, i.e. `ef = f'e'`.
    pub fn square(&mut self, e: &str, f: &str, f_prime: &str, e_prime: &str) -> Result<(), GraphError> {
        let ids = [
            self.lookup_edge(e)?,
            self.lookup_edge(f)?,
            self.lookup_edge(f_prime)?,
            self.lookup_edge(e_prime)?,
        ];
        let [ee, ff, fp, ep] = ids.map(|i| self.edges[i.0].clone());
        let label = format!("{e} {f} ~ {f_prime} {e_prime}");
        let bad = |why: &str| Err(GraphError::MalformedSquare(label.clone(), why.to_string()));
        if ee.color >= ff.color {
            return bad("color(e) must be smaller than color(f)");
        }
        if fp.color != ff.color || ep.color != ee.color {
            return bad("colors of f' e' must match f e");
        }
        if ee.source != ff.range {
            return bad("s(e) != r(f)");
        }
        if fp.source != ep.range {
            return bad("s(f') != r(e')");
        }
        if fp.range != ee.range || ep.source != ff.source {
            return bad("the two sides have different endpoints");
        }
        if self.squares.iter().any(|s| s.e == ids[0] && s.f == ids[1]) {
            return Err(GraphError::DuplicateSquare(e.to_string(), f.to_string()));
        }
        self.squares.push(Square {
            e: ids[0],
            f: ids[1],
            f_prime: ids[2],
            e_prime: ids[3],
        });
        Ok(())
    }

    pub fn build(self) -> Result<KGraph, GraphError> {
        if self.rank == 0 {
            return Err(GraphError::ZeroRank);
        }
        Ok(KGraph::assemble(
            self.rank,
            self.vertices,
            self.edges,
            self.squares,
        ))
    }
}

impl KGraph {
    /// Assembles a graph without referential checks; edges pointing at
    /// missing vertices surface as `DanglingEdge` in [`crate::validate`].
    pub fn from_raw(rank: usize, vertices: Vec<String>, edges: Vec<Edge>, squares: Vec<Square>) -> Self {
        KGraph::assemble(rank, vertices, edges, squares)
    }

    fn assemble(rank: usize, vertices: Vec<String>, edges: Vec<Edge>, squares: Vec<Square>) -> Self {
        let mut forward = HashMap::new();
        let mut backward: HashMap<(EdgeId, EdgeId), Vec<(EdgeId, EdgeId)>> = HashMap::new();
        for s in &squares {
            forward.insert((s.e, s.f), (s.f_prime, s.e_prime));
            backward
                .entry((s.f_prime, s.e_prime))
                .or_default()
                .push((s.e, s.f));
        }
        let mut in_edges = vec![vec![Vec::new(); rank]; vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if let Some(slot) = in_edges.get_mut(e.range.0) {
                slot[e.color].push(EdgeId(i));
            }
        }
        let mut names = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            names.insert(v.clone(), Ident::Vertex(VertexId(i)));
        }
        for (i, e) in edges.iter().enumerate() {
            names.insert(e.name.clone(), Ident::Edge(EdgeId(i)));
        }
        KGraph {
            rank,
            vertices,
            edges,
            squares,
            forward,
            backward,
            in_edges,
            names,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        match self.names.get(name) {
            Some(Ident::Edge(e)) => Some(*e),
            _ => None,
        }
    }

    pub fn ident(&self, name: &str) -> Option<Ident> {
        self.names.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// `v Lambda^{e_c}`: edges of color `c` whose range is `v`.
    pub fn edges_into(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.in_edges[v.0][color]
    }

    /// Whether `v` receives any edge at all, i.e. `v Lambda != {v}`.
    pub fn receives_edges(&self, v: VertexId) -> bool {
        self.in_edges[v.0].iter().any(|c| !c.is_empty())
    }

    pub(crate) fn square_forward(&self, e: EdgeId, f: EdgeId) -> Option<(EdgeId, EdgeId)> {
        self.forward.get(&(e, f)).copied()
    }

    pub(crate) fn square_preimages(&self, f_prime: EdgeId, e_prime: EdgeId) -> &[(EdgeId, EdgeId)] {
        self.backward
            .get(&(f_prime, e_prime))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    // -- paths ----------------------------------------------------------

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            range: v,
            source: v,
            edges: Vec::new(),
            degree: Degree::zero(self.rank),
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path {
            range: edge.range,
            source: edge.source,
            edges: vec![e],
            degree: Degree::unit(self.rank, edge.color),
        }
    }

    /// Builds the path `e_1 e_2 ... e_n` (requires `s(e_i) = r(e_{i+1})`)
    /// and brings it into canonical color order.
    pub fn path_from_edges(&self, seq: &[EdgeId]) -> Result<Path, PathError> {
        let Some(first) = seq.first() else {
            return Err(PathError::Empty);
        };
        for w in seq.windows(2) {
            let (a, b) = (self.edge(w[0]), self.edge(w[1]));
            if a.source != b.range {
                return Err(PathError::NotComposable(
                    self.vertex_name(a.source).to_string(),
                    self.vertex_name(b.range).to_string(),
                ));
            }
        }
        let mut degree = Degree::zero(self.rank);
        for e in seq {
            degree.increment(self.edge(*e).color);
        }
        let mut colors: Vec<usize> = seq.iter().map(|e| self.edge(*e).color).collect();
        colors.sort_unstable();
        let edges = self.reorder(seq, &colors)?;
        Ok(Path {
            range: self.edge(*first).range,
            source: self.edge(*seq.last().unwrap()).source,
            edges,
            degree,
        })
    }

    /// Parses `vertex` or `edge.edge....` (left factor first).
    pub fn parse_path(&self, text: &str) -> Result<Path, PathError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PathError::Empty);
        }
        let parts: Vec<&str> = text.split('.').map(str::trim).collect();
        if parts.len() == 1 {
            if let Some(Ident::Vertex(v)) = self.ident(parts[0]) {
                return Ok(self.vertex_path(v));
            }
        }
        let seq = parts
            .iter()
            .map(|p| {
                self.edge_by_name(p)
                    .ok_or_else(|| PathError::Unknown(p.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.path_from_edges(&seq)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.range).to_string()
        } else {
            p.edges
                .iter()
                .map(|e| self.edge(*e).name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// `pq`, defined when `s(p) = r(q)`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, PathError> {
        if p.source != q.range {
            return Err(PathError::NotComposable(
                self.vertex_name(p.source).to_string(),
                self.vertex_name(q.range).to_string(),
            ));
        }
        if q.edges.is_empty() {
            return Ok(p.clone());
        }
        if p.edges.is_empty() {
            return Ok(q.clone());
        }
        let mut seq = p.edges.clone();
        seq.extend_from_slice(&q.edges);
        let mut colors: Vec<usize> = seq.iter().map(|e| self.edge(*e).color).collect();
        colors.sort_unstable();
        let edges = self.reorder(&seq, &colors)?;
        Ok(Path {
            range: p.range,
            source: q.source,
            edges,
            degree: p.degree.add(&q.degree),
        })
    }

    /// The unique factorization `p = p(0, m) p(m, d(p))`.
    pub fn factorize(&self, p: &Path, m: &Degree) -> Result<(Path, Path), PathError> {
        let rest = p.degree.checked_sub(m).ok_or_else(|| PathError::DegreeOutOfRange {
            m: m.clone(),
            d: p.degree.clone(),
        })?;
        let mut target = Vec::with_capacity(p.edges.len());
        for (c, &n) in m.coords().iter().enumerate() {
            target.extend(std::iter::repeat_n(c, n as usize));
        }
        let split = target.len();
        for (c, &n) in rest.coords().iter().enumerate() {
            target.extend(std::iter::repeat_n(c, n as usize));
        }
        let seq = self.reorder(&p.edges, &target)?;
        let (head, tail) = seq.split_at(split);
        let mid = if head.is_empty() {
            p.range
        } else {
            self.edge(*head.last().unwrap()).source
        };
        let first = Path {
            range: p.range,
            source: mid,
            edges: head.to_vec(),
            degree: m.clone(),
        };
        // the tail of a shape-sorted sequence is already color sorted
        let second = Path {
            range: mid,
            source: p.source,
            edges: tail.to_vec(),
            degree: rest,
        };
        Ok((first, second))
    }

    /// `p(m, n)` for `m <= n <= d(p)`.
    pub fn segment(&self, p: &Path, m: &Degree, n: &Degree) -> Result<Path, PathError> {
        let (head, _) = self.factorize(p, n)?;
        let (_, mid) = self.factorize(&head, m)?;
        Ok(mid)
    }

    /// Rewrites an edge sequence into one whose color word is `target`
    /// (a permutation of the current colors) by adjacent square swaps.
    pub(crate) fn reorder(&self, seq: &[EdgeId], target: &[usize]) -> Result<Vec<EdgeId>, PathError> {
        debug_assert_eq!(seq.len(), target.len());
        let mut slots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &c) in target.iter().enumerate() {
            slots.entry(c).or_default().push(pos);
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut rank: Vec<usize> = Vec::with_capacity(seq.len());
        for e in seq {
            let c = self.edge(*e).color;
            let k = seen.entry(c).or_insert(0);
            rank.push(slots[&c][*k]);
            *k += 1;
        }
        let mut out = seq.to_vec();
        let n = out.len();
        for pass in 0..n {
            let mut swapped = false;
            for j in 0..n.saturating_sub(1 + pass) {
                if rank[j] > rank[j + 1] {
                    let (x, y) = self.swap(out[j], out[j + 1])?;
                    out[j] = x;
                    out[j + 1] = y;
                    rank.swap(j, j + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        Ok(out)
    }

    /// Applies the square relating the pair `xy` (different colors) and
    /// returns the pair in the opposite color order.
    pub(crate) fn swap(&self, x: EdgeId, y: EdgeId) -> Result<(EdgeId, EdgeId), PathError> {
        let missing = || {
            PathError::MissingSquare(self.edge(x).name.clone(), self.edge(y).name.clone())
        };
        if self.edge(x).color < self.edge(y).color {
            self.square_forward(x, y).ok_or_else(missing)
        } else {
            match self.square_preimages(x, y) {
                [only] => Ok(*only),
                _ => Err(missing()),
            }
        }
    }
}

/// A morphism of the k-graph in canonical color order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    edges: Vec<EdgeId>,
    degree: Degree,
}

impl Path {
    /// Caller guarantees `edges` is composable and color sorted.
    pub(crate) fn from_canonical(range: VertexId, source: VertexId, edges: Vec<EdgeId>, degree: Degree) -> Path {
        Path {
            range,
            source,
            edges,
            degree,
        }
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.range.cmp(&other.range))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "v{}", self.range.0)
        } else {
            let parts: Vec<String> = self.edges.iter().map(|e| format!("e{}", e.0)).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> KGraph {
        let mut b = KGraphBuilder::new(2);
        b.vertex("v").unwrap();
        b.edge("e", 1, "v", "v").unwrap();
        b.edge("f", 2, "v", "v").unwrap();
        b.square("e", "f", "f", "e").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn compose_canonicalizes_color_order() {
        let g = t2();
        let e = g.parse_path("e").unwrap();
        let f = g.parse_path("f").unwrap();
        let fe = g.compose(&f, &e).unwrap();
        assert_eq!(g.path_name(&fe), "e.f");
        assert_eq!(fe, g.compose(&e, &f).unwrap());
        assert_eq!(fe.degree(), &Degree::from_vec(vec![1, 1]));
    }

    #[test]
    fn identity_composition() {
        let g = t2();
        let v = g.vertex_path(VertexId(0));
        let p = g.parse_path("e.f.f").unwrap();
        assert_eq!(g.compose(&v, &p).unwrap(), p);
        assert_eq!(g.compose(&p, &v).unwrap(), p);
    }

    #[test]
    fn factorize_in_t2() {
        let g = t2();
        let ef = g.parse_path("e.f").unwrap();
        let (a, b) = g.factorize(&ef, &Degree::from_vec(vec![0, 1])).unwrap();
        assert_eq!(g.path_name(&a), "f");
        assert_eq!(g.path_name(&b), "e");
        let (a, b) = g.factorize(&ef, &Degree::zero(2)).unwrap();
        assert!(a.is_vertex());
        assert_eq!(b, ef);
        let (a, b) = g.factorize(&ef, ef.degree()).unwrap();
        assert_eq!(a, ef);
        assert!(b.is_vertex());
        assert!(g.factorize(&ef, &Degree::from_vec(vec![2, 0])).is_err());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = KGraphBuilder::new(2);
        b.vertex("v").unwrap();
        assert!(matches!(b.vertex("v"), Err(GraphError::DuplicateIdentifier(_))));
        assert!(matches!(b.edge("e", 3, "v", "v"), Err(GraphError::ColorOutOfRange { .. })));
        assert!(matches!(b.edge("e", 1, "v", "w"), Err(GraphError::UnknownVertex(_))));
        b.edge("e", 1, "v", "v").unwrap();
        assert!(matches!(b.square("e", "g", "g", "e"), Err(GraphError::UnknownEdge(_))));
    }

    #[test]
    fn non_composable() {
        let mut b = KGraphBuilder::new(1);
        b.vertex("v").unwrap();
        b.vertex("w").unwrap();
        b.edge("x", 1, "w", "v").unwrap();
        let g = b.build().unwrap();
        let x = g.parse_path("x").unwrap();
        assert!(matches!(g.compose(&x, &x), Err(PathError::NotComposable(..))));
        assert!(g.parse_path("x.x").is_err());
    }
}
