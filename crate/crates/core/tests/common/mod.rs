//! Definition-level oracles shared by the integration tests. They only use
//! edge tables and path composition, never the library's enumerators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kp_core::{Degree, EdgeId, KGraph, Path, VertexId};

fn edges_with_range(g: &KGraph, v: VertexId, color: usize) -> Vec<EdgeId> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.range == v && e.color == color)
        .map(|(i, _)| EdgeId(i))
        .collect()
}

fn grow(g: &KGraph, bound: &Degree, seq: &mut Vec<EdgeId>, at: VertexId, color: usize, out: &mut Vec<Path>, start: VertexId) {
    if color == g.rank() {
        out.push(if seq.is_empty() {
            g.vertex_path(start)
        } else {
            g.path_from_edges(seq).expect("color-sorted walk is a path")
        });
        return;
    }
    grow(g, bound, seq, at, color + 1, out, start);
    let used = seq.iter().filter(|e| g.edge(**e).color == color).count() as u32;
    if used < bound.get(color) {
        for e in edges_with_range(g, at, color) {
            seq.push(e);
            grow(g, bound, seq, g.edge(e).source, color, out, start);
            seq.pop();
        }
    }
}

/// Every path with range `v` and degree `<= bound`, built as color-sorted
/// edge walks; each path has exactly one such walk.
pub fn paths_in_box(g: &KGraph, v: VertexId, bound: &Degree) -> Vec<Path> {
    let mut out = Vec::new();
    grow(g, bound, &mut Vec::new(), v, 0, &mut out, v);
    out
}

pub fn paths_of_degree(g: &KGraph, v: VertexId, n: &Degree) -> Vec<Path> {
    paths_in_box(g, v, n).into_iter().filter(|p| p.degree() == n).collect()
}

pub fn all_paths_in_box(g: &KGraph, bound: &Degree) -> Vec<Path> {
    g.vertex_ids().flat_map(|v| paths_in_box(g, v, bound)).collect()
}

/// `MCE(mu, nu)` as the set of common extensions of degree `d(mu) v d(nu)`.
pub fn mce_oracle(g: &KGraph, mu: &Path, nu: &Path) -> BTreeSet<Path> {
    if mu.range() != nu.range() {
        return BTreeSet::new();
    }
    let n = mu.degree().join(nu.degree());
    let extend = |p: &Path| -> BTreeSet<Path> {
        let rest = n.checked_sub(p.degree()).expect("join dominates");
        paths_of_degree(g, p.source(), &rest)
            .iter()
            .map(|t| g.compose(p, t).expect("composable"))
            .collect()
    };
    extend(mu).intersection(&extend(nu)).cloned().collect()
}

/// `v Lambda^{<=n}` straight from the definition.
pub fn boundary_oracle(g: &KGraph, v: VertexId, n: &Degree) -> BTreeSet<Path> {
    paths_in_box(g, v, n)
        .into_iter()
        .filter(|l| {
            (0..g.rank()).all(|i| l.degree().get(i) == n.get(i) || edges_with_range(g, l.source(), i).is_empty())
        })
        .collect()
}

/// Every nonzero degree with coordinates `<= c`.
pub fn degrees_up_to(k: usize, c: u32) -> Vec<Degree> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=c).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Degree::from_vec).collect()
}

pub fn hereditary_oracle(g: &KGraph, h: &BTreeSet<VertexId>) -> bool {
    g.edges().iter().all(|e| !h.contains(&e.range) || h.contains(&e.source))
}

/// Saturation over every `n <= (2, ..., 2)`.
pub fn saturated_oracle(g: &KGraph, h: &BTreeSet<VertexId>) -> bool {
    let ns = degrees_up_to(g.rank(), 2);
    g.vertex_ids().filter(|v| !h.contains(v)).all(|v| {
        ns.iter().all(|n| {
            !boundary_oracle(g, v, n)
                .iter()
                .all(|l| h.contains(&l.source()))
        })
    })
}

/// Saturated hereditary sets by filtering all subsets.
pub fn sat_her_oracle(g: &KGraph) -> BTreeSet<BTreeSet<VertexId>> {
    let n = g.vertex_count();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(VertexId).collect::<BTreeSet<_>>())
        .filter(|h| hereditary_oracle(g, h) && saturated_oracle(g, h))
        .collect()
}
