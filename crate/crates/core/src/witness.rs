//! Explicit, re-verifiable certificates that idempotents are infinite or
//! properly infinite.
//!
//! * `Infinite { q, r, s }` for `p`: `q <= p`, `q != p`, `rs = p`, `sr = q`.
//! * `ProperlyInfinite { a, b }` for `p`: `a` is 2x1, `b` is 1x2 and
//!   `a p b = p ⊕ p`.
//!
//! Every constructor verifies its output before returning it, and
//! [`verify_certificate`] re-checks a certificate from scratch using only
//! algebra equality.

use thiserror::Error;

use crate::algebra::{AlgebraError, KPElement, Kp};
use crate::field::Field;
use crate::ideals::{enumerate_sat_her, quotient, SatHerSet};
use crate::kgraph::{KGraph, Path, VertexId};
use crate::matrix::KPMatrix;
use crate::paths::{
    find_entrance, find_reaching_gen_cycle, is_generalized_cycle, mce, paths_up_to, reaching_vertices,
    CycleSearch, GeneralizedCycle, ReachingCycle, Search,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed at step `{0}`")]
    Verification(String),
    #[error("no explicit absorption `x1 + x2 = X x1 Y` available")]
    AbsorptionUnavailable,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The construction a derivation step used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `s_mu s_mu* < s_nu s_nu*` from a generalized cycle with an entrance.
    GeneralizedCycle,
    /// Infiniteness moved along `p = xy ~ yx`.
    InfiniteTransport,
    /// Infiniteness passed from `e` to `P >= e`.
    SubidempotentLift,
    /// Proper infiniteness moved along `p = xy ~ yx = q`.
    ProperTransport,
    /// Two orthogonal idempotents dominating `p` in the ideal order.
    OrthogonalIdempotents,
    /// A verified equivalence or `≾` link inside a larger construction.
    Link,
    /// `p ⊕ p ≾ p` implies a strict equivalent subidempotent.
    ProperToInfinite,
    /// `s_lambda s_lambda* ~ s_{s(lambda)}`.
    Cylinder,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::GeneralizedCycle => "generalized-cycle",
            Rule::InfiniteTransport => "infinite-transport",
            Rule::SubidempotentLift => "subidempotent-lift",
            Rule::ProperTransport => "proper-transport",
            Rule::OrthogonalIdempotents => "orthogonal-idempotents",
            Rule::Link => "link",
            Rule::ProperToInfinite => "proper-to-infinite",
            Rule::Cylinder => "cylinder",
        }
    }
}

/// One node of a derivation tree: the rule, a note, the named elements it
/// used, and the derivations it built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub note: String,
    pub elements: Vec<(String, KPElement)>,
    pub children: Vec<Step>,
}

impl Step {
    fn new(rule: Rule, note: impl Into<String>) -> Self {
        Step {
            rule,
            note: note.into(),
            elements: Vec::new(),
            children: Vec::new(),
        }
    }

    fn with(mut self, name: &str, x: &KPElement) -> Self {
        self.elements.push((name.to_string(), x.clone()));
        self
    }

    fn child(mut self, s: Step) -> Self {
        self.children.push(s);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Infinite { q: KPElement, r: KPElement, s: KPElement },
    ProperlyInfinite { a: KPMatrix, b: KPMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub target: KPElement,
    pub kind: CertificateKind,
    pub derivation: Step,
}

impl WitnessCertificate {
    pub fn is_properly_infinite(&self) -> bool {
        matches!(self.kind, CertificateKind::ProperlyInfinite { .. })
    }
}

fn ensure(ok: bool, step: &str) -> Result<(), WitnessError> {
    if ok {
        Ok(())
    } else {
        Err(WitnessError::Verification(step.to_string()))
    }
}

fn require(ok: bool, what: &str) -> Result<(), WitnessError> {
    if ok {
        Ok(())
    } else {
        Err(WitnessError::Precondition(what.to_string()))
    }
}

/// Checks a certificate using only multiplication and equality.
pub fn verify_certificate(kp: &Kp<'_>, cert: &WitnessCertificate) -> Result<(), WitnessError> {
    let p = &cert.target;
    ensure(!kp.is_zero(p), "target is nonzero")?;
    ensure(kp.is_idempotent(p), "target is idempotent")?;
    match &cert.kind {
        CertificateKind::Infinite { q, r, s } => {
            ensure(kp.equals(&kp.mul(r, s), p), "rs = p")?;
            ensure(kp.equals(&kp.mul(s, r), q), "sr = q")?;
            ensure(kp.is_subidempotent(q, p), "q <= p")?;
            ensure(!kp.equals(q, p), "q != p")?;
        }
        CertificateKind::ProperlyInfinite { a, b } => {
            ensure(a.rows() == 2 && a.cols() == 1, "A is 2x1")?;
            ensure(b.rows() == 1 && b.cols() == 2, "B is 1x2")?;
            let pm = KPMatrix::scalar(p.clone());
            let lhs = kp.matmul3(a, &pm, b)?;
            ensure(kp.matrix_equals(&lhs, &pm.direct_sum(&pm, kp)), "A p B = p ⊕ p")?;
        }
    }
    Ok(())
}

fn finish(kp: &Kp<'_>, cert: WitnessCertificate) -> Result<WitnessCertificate, WitnessError> {
    verify_certificate(kp, &cert)?;
    Ok(cert)
}

/// Infinite certificate for `s_nu s_nu*` with `q = s_mu s_mu*`,
/// `r = s_nu s_mu*`, `s = s_mu s_nu*`.
pub fn witness_from_gen_cycle(kp: &Kp<'_>, c: &GeneralizedCycle) -> Result<WitnessCertificate, WitnessError> {
    let g = kp.graph();
    let tau = c
        .entrance
        .as_ref()
        .ok_or_else(|| WitnessError::Precondition("generalized cycle has no entrance".into()))?;
    let check = is_generalized_cycle(g, &c.mu, &c.nu).map_err(|e| WitnessError::Precondition(e.to_string()))?;
    require(check.holds, "pair is not a generalized cycle")?;
    let escape = g
        .compose(&c.nu, tau)
        .map_err(|e| WitnessError::Precondition(e.to_string()))?;
    require(mce(g, &c.mu, &escape).is_empty(), "entrance does not escape Z(mu)")?;
    let p = kp.projection(&c.nu);
    let q = kp.projection(&c.mu);
    let r = kp.term(&c.nu, &c.mu)?;
    let s = kp.term(&c.mu, &c.nu)?;
    let step = Step::new(
        Rule::GeneralizedCycle,
        format!(
            "({}, {}) with entrance {}",
            g.path_name(&c.mu),
            g.path_name(&c.nu),
            g.path_name(tau)
        ),
    )
    .with("p", &p)
    .with("q", &q)
    .with("r", &r)
    .with("s", &s);
    finish(
        kp,
        WitnessCertificate {
            target: p,
            kind: CertificateKind::Infinite { q, r, s },
            derivation: step,
        },
    )
}

fn infinite_parts(cert: &WitnessCertificate) -> Result<(&KPElement, &KPElement, &KPElement), WitnessError> {
    match &cert.kind {
        CertificateKind::Infinite { q, r, s } => Ok((q, r, s)),
        _ => Err(WitnessError::Precondition("expected an infinite certificate".into())),
    }
}

/// From an infinite certificate for `p = xy`, one for `yx`.
pub fn transport_infinite(
    kp: &Kp<'_>,
    cert: &WitnessCertificate,
    x: &KPElement,
    y: &KPElement,
) -> Result<WitnessCertificate, WitnessError> {
    let p = &cert.target;
    require(kp.equals(&kp.mul(x, y), p), "xy = p")?;
    verify_certificate(kp, cert)?;
    let (q, r, s) = infinite_parts(cert)?;
    // r in pRq and s in qRp make the transported relations exact
    let r = kp.mul3(p, r, q);
    let s = kp.mul3(q, s, p);
    let target = kp.mul(y, x);
    let q2 = kp.mul3(y, q, x);
    let r2 = kp.mul3(y, &r, x);
    let s2 = kp.mul3(y, &s, x);
    let step = Step::new(Rule::InfiniteTransport, "p = xy ~ yx")
        .with("x", x)
        .with("y", y)
        .child(cert.derivation.clone());
    finish(
        kp,
        WitnessCertificate {
            target,
            kind: CertificateKind::Infinite { q: q2, r: r2, s: s2 },
            derivation: step,
        },
    )
}

/// From an infinite certificate for `e <= big`, one for `big`.
pub fn lift_infinite(kp: &Kp<'_>, cert: &WitnessCertificate, big: &KPElement) -> Result<WitnessCertificate, WitnessError> {
    let e = &cert.target;
    require(kp.is_idempotent(big), "target is idempotent")?;
    require(kp.is_subidempotent(e, big), "e <= P")?;
    verify_certificate(kp, cert)?;
    if kp.equals(e, big) {
        return Ok(WitnessCertificate {
            target: big.clone(),
            ..cert.clone()
        });
    }
    let (q, r, s) = infinite_parts(cert)?;
    let r = kp.mul3(e, r, q);
    let s = kp.mul3(q, s, e);
    let rest = big.sub(e);
    let step = Step::new(Rule::SubidempotentLift, "P = (P - e) + e with e infinite")
        .with("P", big)
        .with("e", e)
        .child(cert.derivation.clone());
    finish(
        kp,
        WitnessCertificate {
            target: big.clone(),
            kind: CertificateKind::Infinite {
                q: rest.add(q),
                r: rest.add(&r),
                s: rest.add(&s),
            },
            derivation: step,
        },
    )
}

/// Infinite certificate for `s_v` from a generalized cycle with an
/// entrance and a connecting path `gamma in v Lambda s(mu)`.
pub fn vertex_infinite_from_cycle(kp: &Kp<'_>, rc: &ReachingCycle) -> Result<WitnessCertificate, WitnessError> {
    let nu = &rc.cycle.nu;
    let gamma = &rc.connector;
    require(gamma.source() == nu.source(), "connector ends at s(nu)")?;
    let base = witness_from_gen_cycle(kp, &rc.cycle)?;
    let at_source = transport_infinite(kp, &base, &kp.s(nu), &kp.s_star(nu))?;
    let along = if gamma.is_vertex() {
        at_source
    } else {
        transport_infinite(kp, &at_source, &kp.s_star(gamma), &kp.s(gamma))?
    };
    lift_infinite(kp, &along, &kp.vertex(gamma.range()))
}

fn proper_parts(cert: &WitnessCertificate) -> Result<(&KPMatrix, &KPMatrix), WitnessError> {
    match &cert.kind {
        CertificateKind::ProperlyInfinite { a, b } => Ok((a, b)),
        _ => Err(WitnessError::Precondition("expected a properly infinite certificate".into())),
    }
}

/// Moves `p ⊕ p = A p B` to `q ⊕ q = ((y⊕y) A x) q (y B (x⊕x))` for
/// `p = xy`, `q = yx`.
pub fn transport_witness(
    kp: &Kp<'_>,
    p: &KPElement,
    q: &KPElement,
    x: &KPElement,
    y: &KPElement,
    w: &WitnessCertificate,
) -> Result<WitnessCertificate, WitnessError> {
    require(kp.equals(&w.target, p), "witness is for p")?;
    require(kp.equals(&kp.mul(x, y), p), "xy = p")?;
    require(kp.equals(&kp.mul(y, x), q), "yx = q")?;
    verify_certificate(kp, w)?;
    let (a, b) = proper_parts(w)?;
    let xm = KPMatrix::scalar(x.clone());
    let ym = KPMatrix::scalar(y.clone());
    let a2 = kp.matmul3(&ym.direct_sum(&ym, kp), a, &xm)?;
    let b2 = kp.matmul3(&ym, b, &xm.direct_sum(&xm, kp))?;
    let step = Step::new(Rule::ProperTransport, "p = xy ~ yx = q")
        .with("x", x)
        .with("y", y)
        .child(w.derivation.clone());
    finish(
        kp,
        WitnessCertificate {
            target: q.clone(),
            kind: CertificateKind::ProperlyInfinite { a: a2, b: b2 },
            derivation: step,
        },
    )
}

/// Inputs of the orthogonal-idempotent construction: `p = a_i q_i b_i`
/// for orthogonal idempotents `q_1, q_2`.
#[derive(Clone, Debug)]
pub struct OrthogonalData {
    pub p: KPElement,
    pub q: [KPElement; 2],
    pub a: [KPElement; 2],
    pub b: [KPElement; 2],
    /// Optional `(X, Y)` with `x_1 + x_2 = X x_1 Y`.
    pub absorption: Option<(KPElement, KPElement)>,
}

/// Composes `p ⊕ p ~ x1 ⊕ x2 ~ x1 + x2 ≾ x1 ~ p` (with
/// `x_i = q_i b_i a_i q_i`) into one pair `(A, B)` with `A p B = p ⊕ p`.
///
/// The step `x1 + x2 ≾ x1` needs explicit elements. They are taken from
/// `absorption` when given; otherwise they exist when both `q_i <= p`, as
/// then `x1 + x2 = (x1 + x2) p (x1 + x2)` and `p = r1 x1 s1`.
pub fn orthogonal_witness(kp: &Kp<'_>, d: &OrthogonalData) -> Result<WitnessCertificate, WitnessError> {
    let p = &d.p;
    let [q1, q2] = &d.q;
    require(kp.is_idempotent(p) && !kp.is_zero(p), "p is a nonzero idempotent")?;
    require(kp.is_idempotent(q1) && kp.is_idempotent(q2), "q_i are idempotents")?;
    require(
        kp.is_zero(&kp.mul(q1, q2)) && kp.is_zero(&kp.mul(q2, q1)),
        "q_1 q_2 = q_2 q_1 = 0",
    )?;
    let mut r = Vec::new();
    let mut s = Vec::new();
    let mut x = Vec::new();
    let mut links = Vec::new();
    for i in 0..2 {
        require(kp.equals(&kp.mul3(&d.a[i], &d.q[i], &d.b[i]), p), "p = a_i q_i b_i")?;
        let a = kp.mul3(p, &d.a[i], &d.q[i]);
        let b = kp.mul3(&d.q[i], &d.b[i], p);
        let ri = kp.mul(&a, &d.q[i]);
        let si = kp.mul(&d.q[i], &b);
        let xi = kp.mul(&si, &ri);
        ensure(kp.equivalent_verify(p, &xi, &ri, &si), "p ~ x_i")?;
        links.push(
            Step::new(Rule::Link, format!("p ~ x_{}", i + 1))
                .with("r", &ri)
                .with("s", &si)
                .with("x", &xi),
        );
        r.push(ri);
        s.push(si);
        x.push(xi);
    }
    let both = x[0].add(&x[1]);
    let (big_x, big_y) = match &d.absorption {
        Some((bx, by)) => (bx.clone(), by.clone()),
        None => {
            if !(kp.is_subidempotent(q1, p) && kp.is_subidempotent(q2, p)) {
                return Err(WitnessError::AbsorptionUnavailable);
            }
            (kp.mul(&both, &r[0]), kp.mul(&s[0], &both))
        }
    };
    ensure(kp.equals(&kp.mul3(&big_x, &x[0], &big_y), &both), "x1 + x2 = X x1 Y")?;
    links.push(
        Step::new(Rule::Link, "x1 + x2 ≾ x1")
            .with("X", &big_x)
            .with("Y", &big_y),
    );
    // A = diag(r1, r2) col(x1, x2) (X s1),  B = (r1 Y) row(x1, x2) diag(s1, s2)
    let xs1 = kp.mul(&big_x, &s[0]);
    let r1y = kp.mul(&r[0], &big_y);
    let a = KPMatrix::column(vec![kp.mul3(&r[0], &x[0], &xs1), kp.mul3(&r[1], &x[1], &xs1)]);
    let b = KPMatrix::row(vec![kp.mul3(&r1y, &x[0], &s[0]), kp.mul3(&r1y, &x[1], &s[1])]);
    let mut step = Step::new(Rule::OrthogonalIdempotents, "p ⊕ p ~ x1 ⊕ x2 ~ x1 + x2 ≾ x1 ~ p")
        .with("p", p)
        .with("q1", q1)
        .with("q2", q2);
    step.children = links;
    finish(
        kp,
        WitnessCertificate {
            target: p.clone(),
            kind: CertificateKind::ProperlyInfinite { a, b },
            derivation: step,
        },
    )
}

/// From `p ⊕ p = A p B`, the strict subidempotent `q = (p B_1 p)(p A_1 p)`
/// with `p ~ q`.
pub fn proper_to_infinite(kp: &Kp<'_>, cert: &WitnessCertificate) -> Result<WitnessCertificate, WitnessError> {
    verify_certificate(kp, cert)?;
    let (a, b) = proper_parts(cert)?;
    let p = &cert.target;
    let r = kp.mul3(p, a.get(0, 0), p);
    let s = kp.mul3(p, b.get(0, 0), p);
    let q = kp.mul(&s, &r);
    let step = Step::new(Rule::ProperToInfinite, "q = (p B1 p)(p A1 p)").child(cert.derivation.clone());
    finish(
        kp,
        WitnessCertificate {
            target: p.clone(),
            kind: CertificateKind::Infinite { q, r, s },
            derivation: step,
        },
    )
}

/// `1_{Z(lambda)} = s_lambda s_lambda*` from a properly infinite
/// certificate for `s_{s(lambda)} = s_lambda* s_lambda`.
pub fn cylinder_properly_infinite(
    kp: &Kp<'_>,
    lambda: &Path,
    vertex_cert: &WitnessCertificate,
) -> Result<WitnessCertificate, WitnessError> {
    let base = kp.vertex(lambda.source());
    require(kp.equals(&vertex_cert.target, &base), "certificate is for s_{s(lambda)}")?;
    if lambda.is_vertex() {
        verify_certificate(kp, vertex_cert)?;
        return Ok(vertex_cert.clone());
    }
    let mut cert = transport_witness(
        kp,
        &base,
        &kp.projection(lambda),
        &kp.s_star(lambda),
        &kp.s(lambda),
        vertex_cert,
    )?;
    cert.derivation = Step::new(Rule::Cylinder, format!("cylinder of {}", kp.graph().path_name(lambda)))
        .child(cert.derivation);
    Ok(cert)
}

/// Two cycles at `v` with no common extension, total degree `<= depth`.
fn disjoint_cycles(g: &KGraph, v: VertexId, depth: u32) -> Option<(Path, Path)> {
    let cycles: Vec<Path> = paths_up_to(g, depth)
        .into_iter()
        .filter(|p| !p.is_vertex() && p.range() == v && p.source() == v)
        .collect();
    for (i, m1) in cycles.iter().enumerate() {
        for m2 in &cycles[i + 1..] {
            if mce(g, m1, m2).is_empty() {
                return Some((m1.clone(), m2.clone()));
            }
        }
    }
    None
}

/// `s_v ⊕ s_v ≾ s_v` from two cycles at `v` whose cylinders are disjoint.
pub fn direct_vertex_witness(kp: &Kp<'_>, v: VertexId, depth: u32) -> Option<WitnessCertificate> {
    let (m1, m2) = disjoint_cycles(kp.graph(), v, depth)?;
    let data = OrthogonalData {
        p: kp.vertex(v),
        q: [kp.projection(&m1), kp.projection(&m2)],
        a: [kp.s_star(&m1), kp.s_star(&m2)],
        b: [kp.s(&m1), kp.s(&m2)],
        absorption: None,
    };
    Some(orthogonal_witness(kp, &data).expect("disjoint cycles give a verified witness"))
}

/// How an infinite certificate for the image of `s_v` was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Through a vertex `w` reached by `v` that carries two disjoint cycles.
    Orthogonal,
    /// Through a generalized cycle with an entrance reaching `v`.
    GeneralizedCycle,
}

#[derive(Clone, Debug)]
pub enum IdealOutcome {
    Certified { route: Route, certificate: Box<WitnessCertificate> },
    /// `v` reaches a vertex `w` receiving no edges: `<t_w>` is a matrix
    /// algebra, which rules out pure infiniteness.
    Matricial { w: VertexId },
    Inconclusive { reason: String },
}

/// The certificate search for `s_v` in one quotient `Gamma = Lambda \ Lambda H`.
#[derive(Clone, Debug)]
pub struct IdealCase {
    pub ideal: SatHerSet,
    pub quotient: KGraph,
    /// `v` as a vertex of `quotient`.
    pub vertex: VertexId,
    pub outcome: IdealOutcome,
}

#[derive(Clone, Debug)]
pub struct VertexProof {
    pub vertex: VertexId,
    pub field: Field,
    /// `s_v ⊕ s_v ≾ s_v` directly in `KP(Lambda)`, when two disjoint cycles sit at `v`.
    pub direct: Option<WitnessCertificate>,
    pub cases: Vec<IdealCase>,
}

impl VertexProof {
    /// Every quotient not containing `v` certifies the image of `s_v` as infinite.
    pub fn is_complete(&self) -> bool {
        self.cases
            .iter()
            .all(|c| matches!(c.outcome, IdealOutcome::Certified { .. }))
    }

    pub fn matricial(&self) -> bool {
        self.cases
            .iter()
            .any(|c| matches!(c.outcome, IdealOutcome::Matricial { .. }))
    }

    pub fn uncovered(&self) -> Vec<&SatHerSet> {
        self.cases
            .iter()
            .filter(|c| !matches!(c.outcome, IdealOutcome::Certified { .. }))
            .map(|c| &c.ideal)
            .collect()
    }
}

fn orthogonal_route(kp: &Kp<'_>, v: VertexId, depth: u32) -> Option<WitnessCertificate> {
    let g = kp.graph();
    for (w, mu) in reaching_vertices(g, v) {
        let Some(proper) = direct_vertex_witness(kp, w, depth) else {
            continue;
        };
        let infinite = proper_to_infinite(kp, &proper).ok()?;
        // s_w = s_mu* s_mu ~ s_mu s_mu* <= s_v
        let moved = if mu.is_vertex() {
            infinite
        } else {
            transport_infinite(kp, &infinite, &kp.s_star(&mu), &kp.s(&mu)).ok()?
        };
        return lift_infinite(kp, &moved, &kp.vertex(v)).ok();
    }
    None
}

fn ideal_outcome(kp: &Kp<'_>, v: VertexId, depth: u32) -> IdealOutcome {
    let g = kp.graph();
    if let Some(certificate) = orthogonal_route(kp, v, depth) {
        return IdealOutcome::Certified {
            route: Route::Orthogonal,
            certificate: Box::new(certificate),
        };
    }
    match find_reaching_gen_cycle(g, v, depth) {
        CycleSearch::Found(rc) => match vertex_infinite_from_cycle(kp, &rc) {
            Ok(certificate) => IdealOutcome::Certified {
                route: Route::GeneralizedCycle,
                certificate: Box::new(certificate),
            },
            Err(e) => panic!("generalized-cycle certificate failed to verify: {e}"),
        },
        CycleSearch::NotFoundUpTo { depth, .. } => {
            if let Some((w, _)) = reaching_vertices(g, v).into_iter().find(|(w, _)| !g.receives_edges(*w)) {
                IdealOutcome::Matricial { w }
            } else {
                IdealOutcome::Inconclusive {
                    reason: format!("no certificate found up to depth {depth}"),
                }
            }
        }
    }
}

/// For every saturated hereditary `H` with `v ∉ H`, searches an infinite
/// certificate for the image of `s_v` in `KP(Lambda \ Lambda H)`. When all
/// succeed, `s_v` is properly infinite (under strong aperiodicity).
pub fn prove_vertex_properly_infinite(g: &KGraph, field: Field, v: VertexId, depth: u32) -> VertexProof {
    let kp = Kp::new(g, field);
    let direct = direct_vertex_witness(&kp, v, depth);
    let cases = enumerate_sat_her(g)
        .sets
        .into_iter()
        .filter(|h| !h.contains(v))
        .map(|h| {
            let gamma = quotient(g, &h).expect("lattice member");
            let local = gamma.vertex_by_name(g.vertex_name(v)).expect("v survives");
            let outcome = ideal_outcome(&Kp::new(&gamma, field), local, depth);
            IdealCase {
                ideal: h,
                quotient: gamma,
                vertex: local,
                outcome,
            }
        })
        .collect();
    VertexProof {
        vertex: v,
        field,
        direct,
        cases,
    }
}

/// Generalized cycle `(mu, nu)` with an entrance found within `depth`.
pub fn cycle_with_entrance(g: &KGraph, mu: &Path, nu: &Path, depth: u32) -> Result<GeneralizedCycle, WitnessError> {
    match find_entrance(g, mu, nu, depth) {
        Search::Found(tau) => Ok(GeneralizedCycle {
            mu: mu.clone(),
            nu: nu.clone(),
            entrance: Some(tau),
        }),
        Search::NotFoundUpTo(d) => Err(WitnessError::Precondition(format!("no entrance up to depth {d}"))),
    }
}
