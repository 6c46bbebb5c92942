//! Exact arithmetic in the Kumjian-Pask algebra `KP_K(Lambda)`.
//!
//! An element is a finite combination of spanning terms `s_lambda s_mu*`
//! with `s(lambda) = s(mu)`. Products of spanning terms use minimal common
//! extensions:
//!
//! ```text
//! (s_l s_m*)(s_n s_r*) = sum over m a = n b in MCE(m, n) of s_{l a} s_{(r b)*}
//! ```
//!
//! Equality is decided by expanding each graded component with the
//! boundary relation `s_v = sum_{t in v Lambda^{<=n}} s_t s_t*` until all
//! terms of that component share one `lambda`-degree.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::degree::{Degree, Shift};
use crate::field::{Field, Scalar};
use crate::kgraph::{KGraph, Path, VertexId};
use crate::paths::{boundary_paths, mce_factors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements over different fields ({0} and {1})")]
    FieldMismatch(Field, Field),
    #[error("s({0}) differs from s({1})")]
    SourceMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A spanning term `s_lambda s_mu*`, stored as `(lambda, mu)`.
pub type Key = (Path, Path);

/// A finite combination of spanning terms with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPElement {
    field: Field,
    terms: BTreeMap<Key, Scalar>,
}

impl KPElement {
    pub fn zero(field: Field) -> Self {
        KPElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Key, Scalar> {
        &self.terms
    }

    /// True when no terms are stored; use [`Kp::equals`] for algebra equality.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: Key, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
        }
    }

    fn check_field(&self, other: &KPElement) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn checked_add(&self, other: &KPElement) -> Result<KPElement, AlgebraError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Panics on mixed fields; see [`KPElement::checked_add`].
    pub fn add(&self, other: &KPElement) -> KPElement {
        self.checked_add(other).expect("same field")
    }

    pub fn neg(&self) -> KPElement {
        self.scale(&self.field.int(-1))
    }

    pub fn sub(&self, other: &KPElement) -> KPElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> KPElement {
        let mut out = KPElement::zero(self.field);
        for (k, d) in &self.terms {
            out.accumulate(k.clone(), d.mul(c));
        }
        out
    }

    /// Graded degree `d(lambda) - d(mu)` of each stored term.
    pub fn shifts(&self) -> Vec<Shift> {
        let mut s: Vec<Shift> = self
            .terms
            .keys()
            .map(|(l, m)| l.degree().shift_from(m.degree()))
            .collect();
        s.sort();
        s.dedup();
        s
    }
}

/// The algebra `KP_K(Lambda)` for one graph and one field.
#[derive(Clone, Copy)]
pub struct Kp<'g> {
    graph: &'g KGraph,
    field: Field,
}

impl<'g> Kp<'g> {
    pub fn new(graph: &'g KGraph, field: Field) -> Self {
        Kp { graph, field }
    }

    pub fn graph(&self) -> &'g KGraph {
        self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn zero(&self) -> KPElement {
        KPElement::zero(self.field)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.int(n)
    }

    /// `c s_lambda s_mu*`.
    pub fn term_with(&self, c: Scalar, lambda: &Path, mu: &Path) -> Result<KPElement, AlgebraError> {
        if lambda.source() != mu.source() {
            return Err(AlgebraError::SourceMismatch(
                self.graph.path_name(lambda),
                self.graph.path_name(mu),
            ));
        }
        let mut out = self.zero();
        out.accumulate((lambda.clone(), mu.clone()), c);
        Ok(out)
    }

    pub fn term(&self, lambda: &Path, mu: &Path) -> Result<KPElement, AlgebraError> {
        self.term_with(self.field.one(), lambda, mu)
    }

    pub fn vertex(&self, v: VertexId) -> KPElement {
        let p = self.graph.vertex_path(v);
        self.term(&p, &p).expect("vertex term")
    }

    /// `s_lambda`.
    pub fn s(&self, lambda: &Path) -> KPElement {
        self.term(lambda, &self.graph.vertex_path(lambda.source())).expect("same source")
    }

    /// `s_lambda*`.
    pub fn s_star(&self, lambda: &Path) -> KPElement {
        self.term(&self.graph.vertex_path(lambda.source()), lambda).expect("same source")
    }

    /// `s_lambda s_lambda*`.
    pub fn projection(&self, lambda: &Path) -> KPElement {
        self.term(lambda, lambda).expect("same source")
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a KPElement>) -> KPElement {
        items.into_iter().fold(self.zero(), |acc, x| acc.add(x))
    }

    pub fn checked_mul(&self, a: &KPElement, b: &KPElement) -> Result<KPElement, AlgebraError> {
        a.check_field(b)?;
        if a.field != self.field {
            return Err(AlgebraError::FieldMismatch(a.field, self.field));
        }
        let g = self.graph;
        let mut out = self.zero();
        let mut memo: HashMap<(&Path, &Path), Vec<(Path, Path)>> = HashMap::new();
        for ((lambda, mu), c) in &a.terms {
            for ((nu, rho), d) in &b.terms {
                let factors = memo.entry((mu, nu)).or_insert_with(|| mce_factors(g, mu, nu));
                if factors.is_empty() {
                    continue;
                }
                let cd = c.mul(d);
                for (alpha, beta) in factors.iter() {
                    let left = g.compose(lambda, alpha).expect("s(lambda) = s(mu) = r(alpha)");
                    let right = g.compose(rho, beta).expect("s(rho) = s(nu) = r(beta)");
                    out.accumulate((left, right), cd.clone());
                }
            }
        }
        Ok(out)
    }

    /// Panics on mixed fields; see [`Kp::checked_mul`].
    pub fn mul(&self, a: &KPElement, b: &KPElement) -> KPElement {
        self.checked_mul(a, b).expect("same field")
    }

    pub fn mul3(&self, a: &KPElement, b: &KPElement, c: &KPElement) -> KPElement {
        self.mul(&self.mul(a, b), c)
    }

    /// Expands every graded component to the join of its `lambda`-degrees.
    pub fn normal_form(&self, a: &KPElement) -> KPElement {
        let g = self.graph;
        let mut targets: HashMap<Shift, Degree> = HashMap::new();
        for (lambda, mu) in a.terms.keys() {
            let shift = lambda.degree().shift_from(mu.degree());
            targets
                .entry(shift)
                .and_modify(|m| *m = m.join(lambda.degree()))
                .or_insert_with(|| lambda.degree().clone());
        }
        let mut memo: HashMap<(VertexId, Degree), Vec<Path>> = HashMap::new();
        let mut out = KPElement::zero(a.field);
        for ((lambda, mu), c) in &a.terms {
            let m = &targets[&lambda.degree().shift_from(mu.degree())];
            let grow = m.checked_sub(lambda.degree()).expect("join dominates");
            if grow.is_zero() {
                out.accumulate((lambda.clone(), mu.clone()), c.clone());
                continue;
            }
            let taus = memo
                .entry((lambda.source(), grow.clone()))
                .or_insert_with(|| boundary_paths(g, lambda.source(), &grow));
            for tau in taus.iter() {
                let l = g.compose(lambda, tau).expect("composable");
                let r = g.compose(mu, tau).expect("composable");
                out.accumulate((l, r), c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self, a: &KPElement) -> bool {
        self.normal_form(a).is_empty()
    }

    pub fn equals(&self, a: &KPElement, b: &KPElement) -> bool {
        self.is_zero(&a.sub(b))
    }

    pub fn checked_equals(&self, a: &KPElement, b: &KPElement) -> Result<bool, AlgebraError> {
        a.check_field(b)?;
        Ok(self.equals(a, b))
    }

    /// `sum of s_v` over the vertices appearing in the keys of `items`.
    pub fn local_unit<'a>(&self, items: impl IntoIterator<Item = &'a KPElement>) -> KPElement {
        let mut vertices: Vec<VertexId> = items
            .into_iter()
            .flat_map(|x| x.terms.keys().flat_map(|(l, m)| [l.range(), m.range()]))
            .collect();
        vertices.sort();
        vertices.dedup();
        let units: Vec<KPElement> = vertices.into_iter().map(|v| self.vertex(v)).collect();
        self.sum(&units)
    }

    /// `a <= b` in the sense `ab = ba = a`.
    pub fn is_subidempotent(&self, a: &KPElement, b: &KPElement) -> bool {
        self.equals(&self.mul(a, b), a) && self.equals(&self.mul(b, a), a)
    }

    pub fn is_idempotent(&self, a: &KPElement) -> bool {
        self.equals(&self.mul(a, a), a)
    }

    /// `a ~ b` through `rs = a` and `sr = b`.
    pub fn equivalent_verify(&self, a: &KPElement, b: &KPElement, r: &KPElement, s: &KPElement) -> bool {
        self.equals(&self.mul(r, s), a) && self.equals(&self.mul(s, r), b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::paths::exact_paths;

    fn setup(g: &KGraph) -> Kp<'_> {
        Kp::new(g, Field::Rational)
    }

    #[test]
    fn kp3_and_kp1_in_e2() {
        let g = corpus::e_n(2);
        let kp = setup(&g);
        let a = g.parse_path("a").unwrap();
        let b = g.parse_path("b").unwrap();
        let v = kp.vertex(VertexId(0));
        assert!(kp.is_zero(&kp.mul(&kp.s_star(&a), &kp.s(&b))));
        assert!(kp.equals(&kp.mul(&kp.s_star(&a), &kp.s(&a)), &v));
        assert!(kp.is_idempotent(&v));
    }

    #[test]
    fn distinct_vertices_are_orthogonal() {
        let g = corpus::single_edge();
        let kp = setup(&g);
        let (v, w) = (kp.vertex(VertexId(0)), kp.vertex(VertexId(1)));
        assert!(kp.is_zero(&kp.mul(&v, &w)));
        assert!(!kp.is_zero(&v));
    }

    #[test]
    fn matrix_unit_product() {
        let g = corpus::e_n(2);
        let kp = setup(&g);
        let a = g.parse_path("a").unwrap();
        let b = g.parse_path("b").unwrap();
        let x = kp.term(&a, &b).unwrap();
        let y = kp.term(&b, &a).unwrap();
        assert!(kp.equals(&kp.mul(&x, &y), &kp.projection(&a)));
        assert!(!kp.equals(&x, &y));
    }

    #[test]
    fn kp4_boundary_expansion() {
        let g = corpus::e_n(2);
        let kp = setup(&g);
        let v = VertexId(0);
        let split: Vec<KPElement> = exact_paths(&g, v, &Degree::uniform(1, 1))
            .iter()
            .map(|l| kp.projection(l))
            .collect();
        assert!(kp.equals(&kp.vertex(v), &kp.sum(&split)));
        assert!(kp.normal_form(&kp.zero()).is_empty());
    }

    #[test]
    fn torus_vertex_normalizes_to_one_term() {
        let g = corpus::t2();
        let kp = setup(&g);
        let ef = g.parse_path("e.f").unwrap();
        let v = kp.vertex(VertexId(0));
        let mixed = v.add(&kp.projection(&ef));
        let nf = kp.normal_form(&mixed);
        assert_eq!(nf.terms().len(), 1);
        assert_eq!(nf.terms().keys().next().unwrap(), &(ef.clone(), ef.clone()));
        assert!(kp.equals(&v, &kp.projection(&ef)));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let g = corpus::e_n(1);
        let q = setup(&g);
        let f = Kp::new(&g, Field::prime(5).unwrap());
        let v = VertexId(0);
        assert!(q.checked_mul(&q.vertex(v), &f.vertex(v)).is_err());
        assert!(q.vertex(v).checked_add(&f.vertex(v)).is_err());
        assert!(q.term(&g.parse_path("a").unwrap(), &g.vertex_path(v)).is_ok());
    }

    #[test]
    fn source_mismatch_is_rejected() {
        let g = corpus::single_edge();
        let kp = setup(&g);
        let x = g.parse_path("x").unwrap();
        let v = g.vertex_path(VertexId(0));
        assert!(kp.term(&x, &v).is_err());
    }
}
