//! Saturated hereditary vertex sets, their lattice, and quotient graphs.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::kgraph::{KGraph, KGraphBuilder, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexId),
    #[error("vertex set is not saturated and hereditary")]
    NotSaturatedHereditary,
}

/// A saturated hereditary subset `H` of the vertices; indexes the ideal `I_H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SatHerSet(BTreeSet<VertexId>);

impl SatHerSet {
    /// Accepts `set` only if it is already saturated and hereditary.
    pub fn try_from_vertices(g: &KGraph, set: BTreeSet<VertexId>) -> Result<SatHerSet, IdealError> {
        if let Some(v) = set.iter().find(|v| v.0 >= g.vertex_count()) {
            return Err(IdealError::UnknownVertex(*v));
        }
        if !is_sat_her(g, &set) {
            return Err(IdealError::NotSaturatedHereditary);
        }
        Ok(SatHerSet(set))
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self, g: &KGraph) -> Vec<String> {
        self.0.iter().map(|v| g.vertex_name(*v).to_string()).collect()
    }
}

pub fn is_hereditary(g: &KGraph, set: &BTreeSet<VertexId>) -> bool {
    g.edges()
        .iter()
        .all(|e| !set.contains(&e.range) || set.contains(&e.source))
}

/// Saturation tested on the generators `n = e_i` only; together with
/// heredity this is equivalent to the condition for all `n`.
fn saturation_adds(g: &KGraph, set: &BTreeSet<VertexId>) -> Vec<VertexId> {
    g.vertex_ids()
        .filter(|v| !set.contains(v))
        .filter(|&v| {
            (0..g.rank()).any(|c| {
                let edges = g.edges_into(v, c);
                !edges.is_empty() && edges.iter().all(|e| set.contains(&g.edge(*e).source))
            })
        })
        .collect()
}

pub fn is_sat_her(g: &KGraph, set: &BTreeSet<VertexId>) -> bool {
    is_hereditary(g, set) && saturation_adds(g, set).is_empty()
}

/// Smallest saturated hereditary set containing `seed`.
pub fn sat_her_closure(g: &KGraph, seed: &BTreeSet<VertexId>) -> Result<SatHerSet, IdealError> {
    if let Some(v) = seed.iter().find(|v| v.0 >= g.vertex_count()) {
        return Err(IdealError::UnknownVertex(*v));
    }
    let mut set = seed.clone();
    loop {
        // hereditary pass
        let mut grew = true;
        while grew {
            grew = false;
            for e in g.edges() {
                if set.contains(&e.range) && set.insert(e.source) {
                    grew = true;
                }
            }
        }
        let adds = saturation_adds(g, &set);
        if adds.is_empty() {
            return Ok(SatHerSet(set));
        }
        set.extend(adds);
    }
}

/// All saturated hereditary sets with their Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLattice {
    pub sets: Vec<SatHerSet>,
    /// `(i, j)` when `sets[i]` is covered by `sets[j]`.
    pub covers: Vec<(usize, usize)>,
}

impl IdealLattice {
    pub fn contains(&self, set: &SatHerSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }
}

/// Every saturated hereditary set is the join of the closures of its
/// singletons, so the lattice is the join-closure of those closures.
pub fn enumerate_sat_her(g: &KGraph) -> IdealLattice {
    let generators: Vec<SatHerSet> = g
        .vertex_ids()
        .map(|v| sat_her_closure(g, &BTreeSet::from([v])).expect("known vertex"))
        .collect();
    let mut found: BTreeSet<SatHerSet> = BTreeSet::new();
    found.insert(SatHerSet(BTreeSet::new()));
    let mut frontier: Vec<SatHerSet> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for gen in &generators {
                if gen.0.is_subset(&h.0) {
                    continue;
                }
                let union: BTreeSet<VertexId> = h.0.union(&gen.0).copied().collect();
                let joined = sat_her_closure(g, &union).expect("known vertices");
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut sets: Vec<SatHerSet> = found.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut covers = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i == j || !a.0.is_subset(&b.0) || a == b {
                continue;
            }
            let between = sets
                .iter()
                .any(|c| c != a && c != b && a.0.is_subset(&c.0) && c.0.is_subset(&b.0));
            if !between {
                covers.push((i, j));
            }
        }
    }
    // keep `sets` sorted for binary search while preserving the cover indices
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..sets.len()).collect();
        idx.sort_by(|&x, &y| sets[x].cmp(&sets[y]));
        idx
    };
    let mut position = vec![0; sets.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let sorted: Vec<SatHerSet> = order.iter().map(|&i| sets[i].clone()).collect();
    let covers = covers.into_iter().map(|(a, b)| (position[a], position[b])).collect();
    IdealLattice { sets: sorted, covers }
}

/// The quotient graph `Lambda \ Lambda H` on the vertices outside `H`.
pub fn quotient(g: &KGraph, h: &SatHerSet) -> Result<KGraph, IdealError> {
    if let Some(v) = h.0.iter().find(|v| v.0 >= g.vertex_count()) {
        return Err(IdealError::UnknownVertex(*v));
    }
    if !is_sat_her(g, &h.0) {
        return Err(IdealError::NotSaturatedHereditary);
    }
    let mut b = KGraphBuilder::new(g.rank());
    for v in g.vertex_ids().filter(|v| !h.contains(*v)) {
        b.vertex(g.vertex_name(v)).expect("names are unique");
    }
    let kept = |e: crate::kgraph::EdgeId| {
        let edge = g.edge(e);
        !h.contains(edge.source) && !h.contains(edge.range)
    };
    for (i, e) in g.edges().iter().enumerate() {
        if kept(crate::kgraph::EdgeId(i)) {
            b.edge(&e.name, e.color + 1, g.vertex_name(e.source), g.vertex_name(e.range))
                .expect("endpoints survive");
        }
    }
    for s in g.squares() {
        if [s.e, s.f, s.f_prime, s.e_prime].into_iter().all(kept) {
            let nm = |e| g.edge(e).name.as_str();
            b.square(nm(s.e), nm(s.f), nm(s.f_prime), nm(s.e_prime))
                .expect("restricted square is well formed");
        }
    }
    Ok(b.build().expect("rank is positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(g: &KGraph, names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|n| g.vertex_by_name(n).unwrap()).collect()
    }

    #[test]
    fn single_edge_closures() {
        let g = corpus::single_edge();
        assert_eq!(sat_her_closure(&g, &set(&g, &["v"])).unwrap().names(&g), ["v", "w"]);
        assert_eq!(sat_her_closure(&g, &set(&g, &["w"])).unwrap().names(&g), ["v", "w"]);
        assert!(sat_her_closure(&g, &BTreeSet::new()).unwrap().is_empty());
        assert!(sat_her_closure(&g, &BTreeSet::from([VertexId(7)])).is_err());
    }

    #[test]
    fn small_lattices() {
        let e2 = corpus::e_n(2);
        assert_eq!(enumerate_sat_her(&e2).sets.len(), 2);
        let g = corpus::single_edge();
        let lattice = enumerate_sat_her(&g);
        let names: Vec<Vec<String>> = lattice.sets.iter().map(|s| s.names(&g)).collect();
        assert_eq!(names, vec![vec![], vec!["v".to_string(), "w".to_string()]]);
        assert_eq!(lattice.covers, vec![(0, 1)]);
    }

    #[test]
    fn quotient_extremes() {
        let g = corpus::single_edge();
        let empty = SatHerSet(BTreeSet::new());
        let q = quotient(&g, &empty).unwrap();
        assert_eq!(crate::write_kgraph(&q), crate::write_kgraph(&g));
        let full = sat_her_closure(&g, &set(&g, &["v"])).unwrap();
        let q = quotient(&g, &full).unwrap();
        assert_eq!(q.vertex_count(), 0);
        assert!(q.edges().is_empty());
        let bad = SatHerSet(set(&g, &["v"]));
        assert_eq!(quotient(&g, &bad).unwrap_err(), IdealError::NotSaturatedHereditary);
    }
}
