//! The boundary-path groupoid seen through its cylinder bisections
//! `Z(lambda * mu) = {(lambda x, d(lambda) - d(mu), mu x)}`.
//!
//! This backend shares no arithmetic with [`crate::algebra`]: products of
//! bisections match extensions pairwise instead of factorizing, and
//! equality evaluates functions cell by cell on a common refinement.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::{KPElement, Kp};
use crate::degree::{Degree, Shift};
use crate::field::{Field, Scalar};
use crate::kgraph::{KGraph, Path, VertexId};
use crate::paths::{boundary_paths, exact_paths, first_cycle_with_entrance, paths_up_to, reaching_vertices, Search};

/// `Z(range * source)`; requires `s(range) = s(source)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylinderBisection {
    pub range: Path,
    pub source: Path,
}

impl CylinderBisection {
    pub fn new(range: Path, source: Path) -> Option<Self> {
        (range.source() == source.source()).then_some(CylinderBisection { range, source })
    }

    pub fn unit(lambda: Path) -> Self {
        CylinderBisection {
            range: lambda.clone(),
            source: lambda,
        }
    }

    pub fn shift(&self) -> Shift {
        self.range.degree().shift_from(self.source.degree())
    }

    pub fn invert(&self) -> Self {
        CylinderBisection {
            range: self.source.clone(),
            source: self.range.clone(),
        }
    }
}

/// A combination of indicator functions `1_B` of cylinder bisections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergElement {
    field: Field,
    terms: BTreeMap<CylinderBisection, Scalar>,
}

impl SteinbergElement {
    pub fn zero(field: Field) -> Self {
        SteinbergElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<CylinderBisection, Scalar> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, b: CylinderBisection, c: Scalar) {
        let sum = match self.terms.get(&b) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, sum);
        }
    }

    pub fn add(&self, other: &SteinbergElement) -> SteinbergElement {
        assert_eq!(self.field, other.field, "mixed fields");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.push(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SteinbergElement {
        let mut out = SteinbergElement::zero(self.field);
        for (b, d) in &self.terms {
            out.push(b.clone(), d.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &SteinbergElement) -> SteinbergElement {
        self.add(&other.scale(&self.field.int(-1)))
    }
}

/// Evidence that `Z(kappa)` contains the range of a strictly contracting
/// bisection `B = Z(nu * mu)` with `Z(mu) ⊊ Z(nu) ⊆ Z(kappa)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub bisection: CylinderBisection,
    /// `nu tau` escapes `Z(mu)`.
    pub entrance: Path,
}

#[derive(Clone, Copy)]
pub struct Steinberg<'g> {
    graph: &'g KGraph,
    field: Field,
}

impl<'g> Steinberg<'g> {
    pub fn new(graph: &'g KGraph, field: Field) -> Self {
        Steinberg { graph, field }
    }

    pub fn indicator(&self, b: CylinderBisection) -> SteinbergElement {
        let mut out = SteinbergElement::zero(self.field);
        out.push(b, self.field.one());
        out
    }

    /// `BC` for `B = Z(lambda * mu)`, `C = Z(nu * rho)`: one bisection
    /// `Z(lambda alpha * rho beta)` for each way `mu alpha = nu beta` at
    /// degree `d(mu) v d(nu)`.
    pub fn compose_bisections(&self, b: &CylinderBisection, c: &CylinderBisection) -> Vec<CylinderBisection> {
        let g = self.graph;
        let (lambda, mu, nu, rho) = (&b.range, &b.source, &c.range, &c.source);
        if mu.range() != nu.range() {
            return Vec::new();
        }
        let top = mu.degree().join(nu.degree());
        let left_grow = top.checked_sub(mu.degree()).expect("join dominates");
        let right_grow = top.checked_sub(nu.degree()).expect("join dominates");
        let mut left: HashMap<Path, Path> = HashMap::new();
        for alpha in exact_paths(g, mu.source(), &left_grow) {
            left.insert(g.compose(mu, &alpha).expect("composable"), alpha);
        }
        let mut out: Vec<CylinderBisection> = exact_paths(g, nu.source(), &right_grow)
            .into_iter()
            .filter_map(|beta| {
                let joint = g.compose(nu, &beta).expect("composable");
                left.get(&joint).map(|alpha| CylinderBisection {
                    range: g.compose(lambda, alpha).expect("composable"),
                    source: g.compose(rho, &beta).expect("composable"),
                })
            })
            .collect();
        out.sort();
        out
    }

    pub fn convolve(&self, f: &SteinbergElement, h: &SteinbergElement) -> SteinbergElement {
        assert_eq!(f.field, h.field, "mixed fields");
        let mut out = SteinbergElement::zero(f.field);
        for (b, c) in &f.terms {
            for (d, e) in &h.terms {
                let ce = c.mul(e);
                for piece in self.compose_bisections(b, d) {
                    out.push(piece, ce.clone());
                }
            }
        }
        out
    }

    fn contains_cell(&self, b: &CylinderBisection, cell: &CylinderBisection) -> bool {
        let g = self.graph;
        if !b.range.degree().le(cell.range.degree()) || !b.source.degree().le(cell.source.degree()) {
            return false;
        }
        let (Ok((head, tail)), Ok((head2, tail2))) = (
            g.factorize(&cell.range, b.range.degree()),
            g.factorize(&cell.source, b.source.degree()),
        ) else {
            return false;
        };
        head == b.range && head2 == b.source && tail == tail2
    }

    /// Refines each shift class into disjoint cells `Z(alpha * beta)` with
    /// `alpha` a boundary path at the class's joined degree, and records
    /// the value of the function on every cell.
    pub fn normalize(&self, f: &SteinbergElement) -> SteinbergElement {
        let g = self.graph;
        let mut classes: BTreeMap<Shift, Vec<(&CylinderBisection, &Scalar)>> = BTreeMap::new();
        for (b, c) in &f.terms {
            classes.entry(b.shift()).or_default().push((b, c));
        }
        let mut out = SteinbergElement::zero(f.field);
        for members in classes.values() {
            let top = members
                .iter()
                .fold(Degree::zero(g.rank()), |m, (b, _)| m.join(b.range.degree()));
            let mut cells: BTreeSet<CylinderBisection> = BTreeSet::new();
            for (b, _) in members {
                let grow = top.checked_sub(b.range.degree()).expect("join dominates");
                for tau in boundary_paths(g, b.range.source(), &grow) {
                    cells.insert(CylinderBisection {
                        range: g.compose(&b.range, &tau).expect("composable"),
                        source: g.compose(&b.source, &tau).expect("composable"),
                    });
                }
            }
            for cell in cells {
                let value = members
                    .iter()
                    .filter(|(b, _)| self.contains_cell(b, &cell))
                    .fold(f.field.zero(), |acc, (_, c)| acc.add(c));
                if !value.is_zero() {
                    out.terms.insert(cell, value);
                }
            }
        }
        out
    }

    pub fn equals(&self, f: &SteinbergElement, h: &SteinbergElement) -> bool {
        self.normalize(&f.sub(h)).is_empty()
    }

    /// `s_lambda s_mu* -> 1_{Z(lambda * mu)}`.
    pub fn to_steinberg(&self, a: &KPElement) -> SteinbergElement {
        let mut out = SteinbergElement::zero(a.field());
        for ((lambda, mu), c) in a.terms() {
            out.push(
                CylinderBisection {
                    range: lambda.clone(),
                    source: mu.clone(),
                },
                c.clone(),
            );
        }
        out
    }

    pub fn from_steinberg(&self, f: &SteinbergElement) -> KPElement {
        let kp = Kp::new(self.graph, f.field);
        let parts: Vec<KPElement> = f
            .terms
            .iter()
            .map(|(b, c)| kp.term_with(c.clone(), &b.range, &b.source).expect("bisection sources agree"))
            .collect();
        kp.sum(&parts)
    }

    /// Searches for `B = Z(nu * mu)` with `Z(mu) ⊊ Z(nu) ⊆ Z(kappa)`,
    /// built from a generalized cycle with an entrance at a vertex that
    /// `s(kappa)` reaches, prefixed by `kappa` and a connecting path.
    pub fn locally_contracting_on(&self, kappa: &Path, depth: u32) -> Search<Contraction> {
        let g = self.graph;
        let all = paths_up_to(g, depth);
        let mut skipped = Vec::new();
        for (u, gamma) in reaching_vertices(g, kappa.source()) {
            let Some(cycle) = first_cycle_with_entrance(g, &all, |p| p.range() == u, depth, &mut skipped) else {
                continue;
            };
            let prefix = g.compose(kappa, &gamma).expect("gamma starts at s(kappa)");
            let nu = g.compose(&prefix, &cycle.nu).expect("r(nu) = s(gamma)");
            let mu = g.compose(&prefix, &cycle.mu).expect("r(mu) = s(gamma)");
            return Search::Found(Contraction {
                bisection: CylinderBisection { range: nu, source: mu },
                entrance: cycle.entrance.expect("search returns cycles with entrances"),
            });
        }
        Search::NotFoundUpTo(depth)
    }

    pub fn unit_cylinder(&self, v: VertexId) -> CylinderBisection {
        CylinderBisection::unit(self.graph.vertex_path(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::paths::mce;

    fn bis(g: &KGraph, l: &str, m: &str) -> CylinderBisection {
        CylinderBisection::new(g.parse_path(l).unwrap(), g.parse_path(m).unwrap()).unwrap()
    }

    #[test]
    fn e2_compositions() {
        let g = corpus::e_n(2);
        let st = Steinberg::new(&g, Field::Rational);
        let aa = bis(&g, "a", "a");
        assert_eq!(st.compose_bisections(&aa, &aa), vec![aa.clone()]);
        assert_eq!(st.compose_bisections(&bis(&g, "a", "b"), &bis(&g, "b", "a")), vec![aa.clone()]);
        assert!(st.compose_bisections(&aa, &bis(&g, "b", "b")).is_empty());
    }

    #[test]
    fn inverse_law() {
        let g = corpus::random_two_graph(3, 2, 2);
        let st = Steinberg::new(&g, Field::Rational);
        for l in paths_up_to(&g, 2) {
            for m in paths_up_to(&g, 2).into_iter().filter(|m| m.source() == l.source()) {
                let b = CylinderBisection::new(l.clone(), m).unwrap();
                assert_eq!(st.compose_bisections(&b, &b.invert()), vec![CylinderBisection::unit(l.clone())]);
            }
        }
    }

    #[test]
    fn unit_cylinder_partition() {
        let g = corpus::e_n(2);
        let st = Steinberg::new(&g, Field::Rational);
        let v = st.indicator(st.unit_cylinder(VertexId(0)));
        let split = st.indicator(bis(&g, "a", "a")).add(&st.indicator(bis(&g, "b", "b")));
        assert!(st.equals(&v, &split));
        assert!(st.equals(&st.convolve(&v, &v), &v));
        assert!(!st.equals(&v, &st.indicator(bis(&g, "a", "a"))));
    }

    /// Definition-level composition of groupoid triples, truncated: every
    /// boundary truncation `y` lying in `s(B) ∩ r(C)` yields the product
    /// triple, which must lie in exactly one claimed cylinder, and every
    /// claimed cylinder must contain some product triple.
    #[test]
    fn compose_matches_triple_composition() {
        for (name, g) in corpus::standard_corpus() {
            if g.rank() > 2 {
                continue;
            }
            let st = Steinberg::new(&g, Field::Rational);
            let paths = paths_up_to(&g, 2);
            for mu in &paths {
                let lambda = &g.vertex_path(mu.source());
                {
                    for nu in paths.iter().filter(|n| n.range() == mu.range()) {
                        let rho = g.vertex_path(nu.source());
                        let b = CylinderBisection::new(lambda.clone(), mu.clone()).unwrap();
                        let c = CylinderBisection::new(nu.clone(), rho.clone()).unwrap();
                        let claimed = st.compose_bisections(&b, &c);
                        let top = mu.degree().join(nu.degree()).add(&Degree::uniform(g.rank(), 1));
                        let mut hit = vec![false; claimed.len()];
                        for y in boundary_paths(&g, mu.range(), &top) {
                            let in_mu = g.factorize(&y, mu.degree()).ok().filter(|(h, _)| h == mu);
                            let in_nu = g.factorize(&y, nu.degree()).ok().filter(|(h, _)| h == nu);
                            let (Some((_, w)), Some((_, w2))) = (in_mu, in_nu) else {
                                continue;
                            };
                            let x = g.compose(lambda, &w).unwrap();
                            let z = g.compose(&rho, &w2).unwrap();
                            let owners: Vec<usize> = claimed
                                .iter()
                                .enumerate()
                                .filter(|(_, cl)| {
                                    matches!(g.factorize(&x, cl.range.degree()), Ok((h, t))
                                        if h == cl.range
                                            && g.compose(&cl.source, &t).ok().as_ref() == Some(&z))
                                })
                                .map(|(i, _)| i)
                                .collect();
                            assert_eq!(owners.len(), 1, "{name}: {lambda:?} {mu:?} {nu:?}");
                            hit[owners[0]] = true;
                        }
                        assert!(hit.iter().all(|h| *h), "{name}: unused cylinder");
                        assert_eq!(claimed.len(), mce(&g, mu, nu).len());
                    }
                }
            }
        }
    }

    #[test]
    fn kp_round_trip() {
        let g = corpus::t2();
        let kp = Kp::new(&g, Field::Rational);
        let st = Steinberg::new(&g, Field::Rational);
        let x = crate::expr::parse_element(&kp, "e f^* + 2*v - e.f^*").unwrap();
        assert_eq!(st.from_steinberg(&st.to_steinberg(&x)), x);
    }

    #[test]
    fn contraction_examples() {
        let g = corpus::e_n(2);
        let st = Steinberg::new(&g, Field::Rational);
        let found = st.locally_contracting_on(&g.vertex_path(VertexId(0)), 4).found().unwrap();
        assert_eq!(found.bisection, bis(&g, "a", "a.a"));
        let e1 = corpus::e_n(1);
        let st1 = Steinberg::new(&e1, Field::Rational);
        assert_eq!(st1.locally_contracting_on(&e1.vertex_path(VertexId(0)), 4), Search::NotFoundUpTo(4));
        let om = corpus::omega(2, &[1, 1]);
        let sto = Steinberg::new(&om, Field::Rational);
        for v in om.vertex_ids() {
            assert!(sto.locally_contracting_on(&om.vertex_path(v), 4).found().is_none());
        }
    }
}
