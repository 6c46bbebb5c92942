mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kp_core::algebra::{KPElement, Kp};
use kp_core::corpus;
use kp_core::expr::{format_element, parse_element};
use kp_core::field::Field;
use kp_core::ideals::sat_her_closure;
use kp_core::witness::{cylinder_properly_infinite, direct_vertex_witness, verify_certificate};
use kp_core::{Degree, KGraph, Path, VertexId};

struct Fixture {
    graph: KGraph,
    paths: Vec<Path>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        corpus::standard_corpus()
            .into_iter()
            .map(|(_, graph)| {
                let paths = common::all_paths_in_box(&graph, &Degree::uniform(graph.rank(), 2));
                Fixture { graph, paths }
            })
            .collect()
    })
}

fn field(prime: bool) -> Field {
    if prime {
        Field::prime(101).unwrap()
    } else {
        Field::Rational
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, paths: &'a [Path]) -> &'a Path {
    &paths[rng.gen_range(0..paths.len())]
}

fn random_element(kp: &Kp<'_>, rng: &mut ChaCha8Rng, paths: &[Path]) -> KPElement {
    let mut out = kp.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let lambda = pick(rng, paths);
        let same: Vec<Path> = paths.iter().filter(|p| p.source() == lambda.source()).cloned().collect();
        let mu = pick(rng, &same);
        let c = kp.field().int(rng.gen_range(-4..=4));
        out = out.add(&kp.term_with(c, lambda, mu).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closure_is_a_closure_operator(gi in 0usize..23, a in any::<u32>(), b in any::<u32>()) {
        let g = &fixtures()[gi % fixtures().len()].graph;
        let n = g.vertex_count();
        let set = |mask: u32| -> BTreeSet<VertexId> { (0..n).filter(|i| mask >> i & 1 == 1).map(VertexId).collect() };
        let (sa, sb) = (set(a), set(a | b));
        let ca = sat_her_closure(g, &sa).unwrap();
        let cb = sat_her_closure(g, &sb).unwrap();
        prop_assert!(sa.is_subset(ca.vertices()));
        prop_assert!(ca.vertices().is_subset(cb.vertices()));
        prop_assert_eq!(sat_her_closure(g, ca.vertices()).unwrap(), ca.clone());
        prop_assert!(common::hereditary_oracle(g, ca.vertices()));
        prop_assert!(common::saturated_oracle(g, ca.vertices()));
    }

    #[test]
    fn factorization_round_trips(gi in 0usize..23, seed in any::<u64>()) {
        let f = &fixtures()[gi % fixtures().len()];
        let g = &f.graph;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = pick(&mut rng, &f.paths);
        let m = Degree::from_vec((0..g.rank()).map(|i| rng.gen_range(0..=p.degree().get(i))).collect());
        let (head, tail) = g.factorize(p, &m).unwrap();
        prop_assert_eq!(head.degree(), &m);
        prop_assert_eq!(&g.compose(&head, &tail).unwrap(), p);
    }

    #[test]
    fn ring_axioms(gi in 0usize..23, seed in any::<u64>(), prime in any::<bool>()) {
        let f = &fixtures()[gi % fixtures().len()];
        let kp = Kp::new(&f.graph, field(prime));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (
            random_element(&kp, &mut rng, &f.paths),
            random_element(&kp, &mut rng, &f.paths),
            random_element(&kp, &mut rng, &f.paths),
        );
        prop_assert!(kp.equals(&kp.mul(&kp.mul(&a, &b), &c), &kp.mul(&a, &kp.mul(&b, &c))));
        prop_assert!(kp.equals(&kp.mul(&a, &b.add(&c)), &kp.mul(&a, &b).add(&kp.mul(&a, &c))));
        prop_assert!(kp.equals(&kp.mul(&a.add(&b), &c), &kp.mul(&a, &c).add(&kp.mul(&b, &c))));
        prop_assert!(kp.is_zero(&a.sub(&a)));
        prop_assert!(kp.equals(&a, &kp.normal_form(&a)));
        let unit = kp.local_unit([&a]);
        prop_assert!(kp.equals(&kp.mul(&unit, &a), &a) && kp.equals(&kp.mul(&a, &unit), &a));
    }

    #[test]
    fn expressions_round_trip(gi in 0usize..23, seed in any::<u64>(), prime in any::<bool>()) {
        let f = &fixtures()[gi % fixtures().len()];
        let kp = Kp::new(&f.graph, field(prime));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&kp, &mut rng, &f.paths);
        prop_assert_eq!(parse_element(&kp, &format_element(&kp, &a)).unwrap(), a);
    }

    #[test]
    fn cylinder_transport_is_sound(gi in 0usize..23, seed in any::<u64>(), prime in any::<bool>()) {
        let f = &fixtures()[gi % fixtures().len()];
        let kp = Kp::new(&f.graph, field(prime));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = pick(&mut rng, &f.paths);
        if let Some(base) = direct_vertex_witness(&kp, lambda.source(), 3) {
            let cert = cylinder_properly_infinite(&kp, lambda, &base).unwrap();
            prop_assert!(verify_certificate(&kp, &cert).is_ok());
            prop_assert!(kp.equals(&cert.target, &kp.projection(lambda)));
        }
    }
}
