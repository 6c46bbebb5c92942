//! Named example graphs and seeded random generators.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kgraph::{EdgeId, KGraph, KGraphBuilder};
use crate::validate::validate;

const LOOP_NAMES: [&str; 6] = ["a", "b", "c", "d", "g", "h"];

/// One vertex `v` with `n` loops `a, b, ...` (the Cuntz graph).
pub fn e_n(n: usize) -> KGraph {
    let mut b = KGraphBuilder::new(1);
    b.vertex("v").unwrap();
    for name in &LOOP_NAMES[..n] {
        b.edge(name, 1, "v", "v").unwrap();
    }
    b.build().unwrap()
}

/// One vertex, one loop per color, all squares trivial.
pub fn torus(k: usize) -> KGraph {
    let names = ["e", "f", "g"];
    let mut b = KGraphBuilder::new(k);
    b.vertex("v").unwrap();
    for (i, name) in names[..k].iter().enumerate() {
        b.edge(name, i + 1, "v", "v").unwrap();
    }
    for i in 0..k {
        for j in i + 1..k {
            b.square(names[i], names[j], names[j], names[i]).unwrap();
        }
    }
    b.build().unwrap()
}

pub fn t2() -> KGraph {
    torus(2)
}

/// The 1-graph with a single edge from `w` to `v`.
pub fn single_edge() -> KGraph {
    let mut b = KGraphBuilder::new(1);
    b.vertex("v").unwrap();
    b.vertex("w").unwrap();
    b.edge("x", 1, "w", "v").unwrap();
    b.build().unwrap()
}

fn omega_vertex(p: &[u32]) -> String {
    let digits: String = p.iter().map(|c| c.to_string()).collect();
    format!("v{digits}")
}

/// `Omega_{k,m}`: objects `p <= m`, morphisms `(p, q)` with `p <= q <= m`.
pub fn omega(k: usize, m: &[u32]) -> KGraph {
    assert_eq!(m.len(), k);
    let points: Vec<Vec<u32>> = crate::degree::Degree::from_vec(m.to_vec())
        .below()
        .into_iter()
        .map(|d| d.coords().to_vec())
        .collect();
    let mut b = KGraphBuilder::new(k);
    for p in &points {
        b.vertex(&omega_vertex(p)).unwrap();
    }
    let edge_name = |p: &[u32], i: usize| format!("x{}_{}", i + 1, &omega_vertex(p)[1..]);
    let step = |p: &[u32], i: usize| {
        let mut q = p.to_vec();
        q[i] += 1;
        q
    };
    for p in &points {
        for i in 0..k {
            let q = step(p, i);
            if q[i] <= m[i] {
                b.edge(&edge_name(p, i), i + 1, &omega_vertex(&q), &omega_vertex(p)).unwrap();
            }
        }
    }
    for p in &points {
        for i in 0..k {
            for j in i + 1..k {
                let pi = step(p, i);
                let pj = step(p, j);
                if pi[i] <= m[i] && pj[j] <= m[j] {
                    b.square(&edge_name(p, i), &edge_name(&pi, j), &edge_name(p, j), &edge_name(&pj, i))
                        .unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

/// Cartesian product: colors of `h` come after those of `g`.
pub fn product(g: &KGraph, h: &KGraph) -> KGraph {
    let k = g.rank() + h.rank();
    let vname = |a: usize, b: usize| format!("{}_{}", g.vertex_name(crate::kgraph::VertexId(a)), h.vertex_name(crate::kgraph::VertexId(b)));
    let mut b = KGraphBuilder::new(k);
    for a in 0..g.vertex_count() {
        for c in 0..h.vertex_count() {
            b.vertex(&vname(a, c)).unwrap();
        }
    }
    let left = |e: EdgeId, w: usize| format!("{}_{}", g.edge(e).name, h.vertex_name(crate::kgraph::VertexId(w)));
    let right = |v: usize, f: EdgeId| format!("{}_{}", g.vertex_name(crate::kgraph::VertexId(v)), h.edge(f).name);
    for (i, e) in g.edges().iter().enumerate() {
        for w in 0..h.vertex_count() {
            b.edge(&left(EdgeId(i), w), e.color + 1, &vname(e.source.0, w), &vname(e.range.0, w))
                .unwrap();
        }
    }
    for (j, f) in h.edges().iter().enumerate() {
        for v in 0..g.vertex_count() {
            b.edge(&right(v, EdgeId(j)), g.rank() + f.color + 1, &vname(v, f.source.0), &vname(v, f.range.0))
                .unwrap();
        }
    }
    for s in g.squares() {
        for w in 0..h.vertex_count() {
            b.square(&left(s.e, w), &left(s.f, w), &left(s.f_prime, w), &left(s.e_prime, w)).unwrap();
        }
    }
    for s in h.squares() {
        for v in 0..g.vertex_count() {
            b.square(&right(v, s.e), &right(v, s.f), &right(v, s.f_prime), &right(v, s.e_prime)).unwrap();
        }
    }
    // (e, r(f)) (s(e), f) = (r(e), f) (e, s(f))
    for (i, e) in g.edges().iter().enumerate() {
        for (j, f) in h.edges().iter().enumerate() {
            let (ei, fj) = (EdgeId(i), EdgeId(j));
            b.square(
                &left(ei, f.range.0),
                &right(e.source.0, fj),
                &right(e.range.0, fj),
                &left(ei, f.source.0),
            )
            .unwrap();
        }
    }
    b.build().unwrap()
}

/// A 1-graph from `(source, range)` pairs over vertices `v0, v1, ...`.
pub fn one_graph(vertices: usize, edges: &[(usize, usize)]) -> KGraph {
    let mut b = KGraphBuilder::new(1);
    for i in 0..vertices {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for (n, (s, r)) in edges.iter().enumerate() {
        b.edge(&format!("x{n}"), 1, &format!("v{s}"), &format!("v{r}")).unwrap();
    }
    b.build().unwrap()
}

/// A random 2-graph: random colored skeleton plus random square bijections
/// between `ef` and `f'e'` pairs sharing endpoints. Retries until the
/// result validates.
pub fn random_two_graph(seed: u64, vertices: usize, edges_per_color: usize) -> KGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut ends = Vec::new();
        for color in 0..2 {
            for _ in 0..edges_per_color {
                ends.push((color, rng.gen_range(0..vertices), rng.gen_range(0..vertices)));
            }
        }
        // (range of first, source of second) -> pairs in each color order
        let mut up: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        let mut down: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (i, &(ci, si, ri)) in ends.iter().enumerate() {
            for (j, &(cj, sj, rj)) in ends.iter().enumerate() {
                if si != rj {
                    continue;
                }
                match (ci, cj) {
                    (0, 1) => up.entry((ri, sj)).or_default().push((i, j)),
                    (1, 0) => down.entry((ri, sj)).or_default().push((i, j)),
                    _ => {}
                }
            }
        }
        let balanced = up.keys().chain(down.keys()).all(|k| {
            up.get(k).map_or(0, Vec::len) == down.get(k).map_or(0, Vec::len)
        });
        if !balanced {
            continue;
        }
        let mut b = KGraphBuilder::new(2);
        for v in 0..vertices {
            b.vertex(&format!("v{v}")).unwrap();
        }
        let name = |i: usize| {
            let (c, _, _) = ends[i];
            format!("{}{}", if c == 0 { "e" } else { "f" }, i)
        };
        for (i, &(c, s, r)) in ends.iter().enumerate() {
            b.edge(&name(i), c + 1, &format!("v{s}"), &format!("v{r}")).unwrap();
        }
        for (key, pairs) in &up {
            let mut targets = down[key].clone();
            targets.shuffle(&mut rng);
            for (&(e, f), &(fp, ep)) in pairs.iter().zip(&targets) {
                b.square(&name(e), &name(f), &name(fp), &name(ep)).unwrap();
            }
        }
        let g = b.build().unwrap();
        if validate(&g).is_valid() {
            return g;
        }
    }
    panic!("no valid random 2-graph for seed {seed}");
}

/// A named corpus of small valid k-graphs with `k ∈ {1, 2, 3}`, at most
/// six vertices and twelve edges.
pub fn standard_corpus() -> Vec<(String, KGraph)> {
    let mut out: Vec<(String, KGraph)> = vec![
        ("E_1".into(), e_n(1)),
        ("E_2".into(), e_n(2)),
        ("E_3".into(), e_n(3)),
        ("T_2".into(), t2()),
        ("T_3".into(), torus(3)),
        ("Omega_2_11".into(), omega(2, &[1, 1])),
        ("Omega_1_2".into(), omega(1, &[2])),
        ("Omega_3_110".into(), omega(3, &[1, 1, 0])),
        ("single_edge".into(), single_edge()),
        // loop at v0 with an exit to v1, loop at v1
        ("dumbbell".into(), one_graph(2, &[(0, 0), (1, 0), (1, 1)])),
        // 3-cycle v0 <- v1 <- v2 <- v0 plus a second loop at v0
        ("triangle_entry".into(), one_graph(3, &[(1, 0), (2, 1), (0, 2), (0, 0)])),
        // v0 has a loop and receives from v1, which has two loops
        ("fed_loop".into(), one_graph(2, &[(0, 0), (1, 0), (1, 1), (1, 1)])),
        // sink-free chain into a Cuntz vertex
        ("chain_to_e2".into(), one_graph(3, &[(1, 0), (2, 1), (2, 2), (2, 2)])),
        ("E_2xE_1".into(), product(&e_n(2), &e_n(1))),
        ("E_2xE_2".into(), product(&e_n(2), &e_n(2))),
        ("edge_x_E_1".into(), product(&one_graph(2, &[(1, 0), (1, 1)]), &e_n(1))),
        ("E_2xE_1xE_1".into(), product(&product(&e_n(2), &e_n(1)), &e_n(1))),
    ];
    for (seed, verts, per) in [(1u64, 1usize, 2usize), (2, 1, 3), (3, 2, 2), (4, 2, 3), (5, 3, 3)] {
        out.push((format!("random2_s{seed}"), random_two_graph(seed, verts, per)));
    }
    out.push(("random2_s1xE_1".into(), product(&random_two_graph(1, 1, 2), &e_n(1))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_small() {
        let corpus = standard_corpus();
        assert!(corpus.len() >= 20);
        for (name, g) in &corpus {
            let report = validate(g);
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
            assert!(g.vertex_count() <= 6, "{name}");
            assert!(g.edges().len() <= 12, "{name}");
            assert!((1..=3).contains(&g.rank()), "{name}");
        }
        for k in 1..=3 {
            assert!(corpus.iter().any(|(_, g)| g.rank() == k));
        }
    }

    #[test]
    fn random_graphs_are_deterministic() {
        let a = crate::format::write_kgraph(&random_two_graph(3, 2, 2));
        let b = crate::format::write_kgraph(&random_two_graph(3, 2, 2));
        assert_eq!(a, b);
    }
}
