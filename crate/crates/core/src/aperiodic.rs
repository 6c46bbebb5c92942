//! Aperiodicity: at each vertex `v`, is there a boundary path `x` with
//! `alpha x != beta x` for all `alpha != beta` in `Lambda v`?
//!
//! Writing `alpha = gamma alpha'` and `beta = gamma beta'` with
//! `d(alpha') ∧ d(beta') = 0`, only such reduced pairs need separating.
//! For one reduced pair, "no `x` separates it" is decided exactly by a
//! finite automaton whose states are the tails `(u, w)` of degrees
//! `(d(alpha'), d(beta'))` that the comparison carries along `x`. A pair
//! that no `x` separates proves periodicity. Aperiodicity itself is only
//! semi-decided: a truncated `x` is searched that separates every reduced
//! pair up to the depth budget.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree::Degree;
use crate::ideals::{enumerate_sat_her, quotient, SatHerSet};
use crate::kgraph::{KGraph, Path, VertexId};
use crate::paths::paths_up_to;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AperiodicityVerdict {
    /// One separating truncated boundary path per vertex.
    Aperiodic { evidence: Vec<(VertexId, Path)>, depth: u32 },
    /// `alpha x = beta x` for every boundary path `x` at `vertex`; the
    /// comparison automaton closed after `states` states.
    Periodic {
        vertex: VertexId,
        alpha: Path,
        beta: Path,
        states: usize,
    },
    Unknown { depth: u32, unresolved: Vec<VertexId> },
}

impl AperiodicityVerdict {
    pub fn is_aperiodic(&self) -> bool {
        matches!(self, AperiodicityVerdict::Aperiodic { .. })
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, AperiodicityVerdict::Periodic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            AperiodicityVerdict::Aperiodic { .. } => "aperiodic",
            AperiodicityVerdict::Periodic { .. } => "periodic",
            AperiodicityVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Candidate boundary paths tried per vertex.
const ATTEMPTS: usize = 64;

/// Truncation lengths tried, as multiples of `depth + 1`.
const LENGTHS: u32 = 3;

/// Reduced pairs `(alpha, beta)` at `v`, `alpha > beta`, with
/// `d(alpha) ∧ d(beta) = 0`, common range, combined total degree `<= depth`.
pub fn reduced_pairs(g: &KGraph, v: VertexId, depth: u32) -> Vec<(Path, Path)> {
    let at_v: Vec<Path> = paths_up_to(g, depth).into_iter().filter(|p| p.source() == v).collect();
    let mut pairs = Vec::new();
    for alpha in &at_v {
        for beta in &at_v {
            if beta >= alpha || alpha.range() != beta.range() {
                continue;
            }
            if !alpha.degree().meet(beta.degree()).is_zero() {
                continue;
            }
            if alpha.degree().total() + beta.degree().total() > depth {
                continue;
            }
            pairs.push((alpha.clone(), beta.clone()));
        }
    }
    pairs.sort_by(|a, b| {
        (a.0.degree().total() + a.1.degree().total())
            .cmp(&(b.0.degree().total() + b.1.degree().total()))
            .then_with(|| a.cmp(b))
    });
    pairs
}

/// `Some(states)` when no boundary path separates the reduced pair,
/// `None` when some extension does.
pub fn never_separated(g: &KGraph, alpha: &Path, beta: &Path) -> Option<usize> {
    if alpha.range() != beta.range() || alpha.source() != beta.source() || alpha == beta {
        return None;
    }
    let differing: Vec<usize> = (0..g.rank())
        .filter(|&i| alpha.degree().get(i) != beta.degree().get(i))
        .collect();
    let mut seen: HashSet<(Path, Path)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((alpha.clone(), beta.clone()));
    queue.push_back((alpha.clone(), beta.clone()));
    while let Some((u, w)) = queue.pop_front() {
        let s = u.source();
        // a boundary path stopping in a differing color changes degrees
        if differing.iter().any(|&i| g.edges_into(s, i).is_empty()) {
            return None;
        }
        for i in 0..g.rank() {
            let step = Degree::unit(g.rank(), i);
            for &z in g.edges_into(s, i) {
                let z = g.edge_path(z);
                let uz = g.compose(&u, &z).expect("s(u) = r(z)");
                let wz = g.compose(&w, &z).expect("s(w) = r(z)");
                let (hu, tu) = g.factorize(&uz, &step).expect("degree fits");
                let (hw, tw) = g.factorize(&wz, &step).expect("degree fits");
                if hu != hw {
                    return None;
                }
                if seen.insert((tu.clone(), tw.clone())) {
                    queue.push_back((tu, tw));
                }
            }
        }
    }
    Some(seen.len())
}

/// A random boundary path in `v Lambda^{<=bound}`.
pub fn random_boundary_path(g: &KGraph, v: VertexId, bound: &Degree, rng: &mut impl Rng) -> Path {
    let mut x = g.vertex_path(v);
    loop {
        let open: Vec<usize> = (0..g.rank())
            .filter(|&i| x.degree().get(i) < bound.get(i) && !g.edges_into(x.source(), i).is_empty())
            .collect();
        if open.is_empty() {
            return x;
        }
        let color = open[rng.gen_range(0..open.len())];
        let choices = g.edges_into(x.source(), color);
        let e = choices[rng.gen_range(0..choices.len())];
        x = g.compose(&x, &g.edge_path(e)).expect("extends at the source");
    }
}

/// Whether the truncation `x in v Lambda^{<=bound}` already forces
/// `alpha x' != beta x'` for every boundary path `x'` extending `x`.
pub fn separates(g: &KGraph, x: &Path, bound: &Degree, alpha: &Path, beta: &Path) -> bool {
    let ax = g.compose(alpha, x).expect("s(alpha) = r(x)");
    let bx = g.compose(beta, x).expect("s(beta) = r(x)");
    let (pa, _) = g.factorize(&ax, x.degree()).expect("degree fits");
    let (pb, _) = g.factorize(&bx, x.degree()).expect("degree fits");
    if alpha.range() != beta.range() || pa != pb {
        return true;
    }
    (0..g.rank()).any(|i| alpha.degree().get(i) != beta.degree().get(i) && x.degree().get(i) < bound.get(i))
}

/// Semi-decision with a depth budget; see the module docs.
pub fn aperiodicity_check(g: &KGraph, depth: u32) -> AperiodicityVerdict {
    let pairs: Vec<(VertexId, Vec<(Path, Path)>)> =
        g.vertex_ids().map(|v| (v, reduced_pairs(g, v, depth))).collect();
    for (v, list) in &pairs {
        for (alpha, beta) in list {
            if let Some(states) = never_separated(g, alpha, beta) {
                return AperiodicityVerdict::Periodic {
                    vertex: *v,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    states,
                };
            }
        }
    }
    let mut evidence = Vec::new();
    let mut unresolved = Vec::new();
    for (v, list) in &pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(v.0 as u64);
        // a pair of total degree t needs x to run past t before it can differ
        let found = (1..=LENGTHS).find_map(|scale| {
            let bound = Degree::uniform(g.rank(), scale * (depth + 1));
            (0..ATTEMPTS)
                .map(|_| random_boundary_path(g, *v, &bound, &mut rng))
                .find(|x| list.iter().all(|(a, b)| separates(g, x, &bound, a, b)))
        });
        match found {
            Some(x) => evidence.push((*v, x)),
            None => unresolved.push(*v),
        }
    }
    if unresolved.is_empty() {
        AperiodicityVerdict::Aperiodic { evidence, depth }
    } else {
        AperiodicityVerdict::Unknown { depth, unresolved }
    }
}

/// Aperiodicity of one quotient `Lambda \ Lambda H`.
#[derive(Clone, Debug)]
pub struct QuotientVerdict {
    pub ideal: SatHerSet,
    pub quotient: KGraph,
    pub verdict: AperiodicityVerdict,
}

/// Runs [`aperiodicity_check`] on the quotient by every saturated
/// hereditary set; strong aperiodicity asks all of them to be aperiodic.
pub fn strong_aperiodicity_sweep(g: &KGraph, depth: u32) -> Vec<QuotientVerdict> {
    enumerate_sat_her(g)
        .sets
        .into_iter()
        .map(|h| {
            let quotient = quotient(g, &h).expect("lattice members are saturated hereditary");
            let verdict = aperiodicity_check(&quotient, depth);
            QuotientVerdict {
                ideal: h,
                quotient,
                verdict,
            }
        })
        .collect()
}

/// `"aperiodic"` if every quotient is, `"periodic"` if some quotient is
/// periodic, `"unknown"` otherwise.
pub fn sweep_label(sweep: &[QuotientVerdict]) -> &'static str {
    if sweep.iter().all(|q| q.verdict.is_aperiodic()) {
        "aperiodic"
    } else if sweep.iter().any(|q| q.verdict.is_periodic()) {
        "periodic"
    } else {
        "unknown"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn torus_is_periodic() {
        let g = corpus::t2();
        let verdict = aperiodicity_check(&g, 4);
        let AperiodicityVerdict::Periodic { alpha, beta, .. } = &verdict else {
            panic!("{verdict:?}");
        };
        assert!(never_separated(&g, alpha, beta).is_some());
        let ef = g.parse_path("e.f").unwrap();
        assert!(never_separated(&g, &ef, &g.vertex_path(VertexId(0))).is_some());
    }

    #[test]
    fn single_loop_is_periodic() {
        let g = corpus::e_n(1);
        let verdict = aperiodicity_check(&g, 3);
        let AperiodicityVerdict::Periodic { alpha, beta, .. } = verdict else {
            panic!("expected periodic");
        };
        assert_eq!(g.path_name(&alpha), "a");
        assert!(beta.is_vertex());
    }

    #[test]
    fn cuntz_and_omega_are_aperiodic() {
        for g in [corpus::e_n(2), corpus::omega(2, &[1, 1]), corpus::single_edge()] {
            let verdict = aperiodicity_check(&g, 4);
            assert!(verdict.is_aperiodic(), "{verdict:?}");
        }
        let g = corpus::e_n(2);
        let a = g.parse_path("a").unwrap();
        assert_eq!(never_separated(&g, &a, &g.vertex_path(VertexId(0))), None);
    }

    #[test]
    fn sweeps() {
        let e2 = aperiodicity_sweep_labels(&corpus::e_n(2));
        assert_eq!(e2, ["aperiodic", "aperiodic"]);
        let sweep = strong_aperiodicity_sweep(&corpus::t2(), 4);
        assert!(sweep[0].ideal.is_empty() && sweep[0].verdict.is_periodic());
        assert_eq!(sweep_label(&sweep), "periodic");
        let empty = crate::KGraphBuilder::new(1).build().unwrap();
        assert_eq!(sweep_label(&strong_aperiodicity_sweep(&empty, 4)), "aperiodic");
    }

    fn aperiodicity_sweep_labels(g: &KGraph) -> Vec<&'static str> {
        strong_aperiodicity_sweep(g, 4).iter().map(|q| q.verdict.label()).collect()
    }

    #[test]
    fn empty_graph_is_vacuously_aperiodic() {
        let g = crate::KGraphBuilder::new(2).build().unwrap();
        assert!(aperiodicity_check(&g, 3).is_aperiodic());
    }
}
