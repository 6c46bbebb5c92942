//! Deciding (proper) pure infiniteness of `KP_K(Lambda)` for finite graphs.
//!
//! Condition (1) is `v Lambda != {v}` for every vertex, read off the edge
//! table. Condition (2), every vertex reached from a cycle, is decided by
//! a separate walk search: a walk of `t0 = |Lambda^0_{>=v}|` edges out of
//! `v` must repeat a vertex, and the repeated segment is a cycle. Under
//! strong aperiodicity both are equivalent to pure infiniteness, and each
//! positive verdict carries verified certificates for every vertex in
//! every quotient.

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::Kp;
use crate::aperiodic::{strong_aperiodicity_sweep, sweep_label, AperiodicityVerdict, QuotientVerdict};
use crate::expr::format_element;
use crate::field::Field;
use crate::kgraph::{EdgeId, KGraph, Path, VertexId};
use crate::validate::{validate, Violation};
use crate::witness::{prove_vertex_properly_infinite, CertificateKind, IdealOutcome, Step, VertexProof, WitnessCertificate};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid k-graph: {0:?}")]
    InvalidGraph(Vec<Violation>),
    #[error("internal inconsistency: condition (1) is {all_receive} but condition (2) is {all_reached}")]
    Inconsistent { all_receive: bool, all_reached: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ProperlyPurelyInfinite,
    NotPurelyInfinite,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::ProperlyPurelyInfinite => "ProperlyPurelyInfinite",
            Verdict::NotPurelyInfinite => "NotPurelyInfinite",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// A cycle `lambda(m, n)` reached from `v` through `connector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachedCycle {
    pub cycle: Path,
    pub connector: Path,
    /// Length of the walk that forced the repetition.
    pub walk_length: usize,
}

#[derive(Clone, Debug)]
pub struct VertexConditions {
    pub vertex: VertexId,
    pub receives_edges: bool,
    pub reached_from: Option<ReachedCycle>,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub conditions: Vec<VertexConditions>,
    pub aperiodicity: Vec<QuotientVerdict>,
    /// The user supplied strong aperiodicity instead of the sweep.
    pub assumed_aperiodic: bool,
    pub verdict: Verdict,
    pub reason: String,
    pub proofs: Vec<VertexProof>,
    pub depth: u32,
    pub field: Field,
}

/// `t0 = |Lambda^0_{>=v}|`, counted by its own depth-first search.
fn reach_count(g: &KGraph, v: VertexId) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    seen[v.0] = true;
    let mut count = 0;
    while let Some(u) = stack.pop() {
        count += 1;
        for e in g.edges().iter().filter(|e| e.range == u) {
            if !seen[e.source.0] {
                seen[e.source.0] = true;
                stack.push(e.source);
            }
        }
    }
    count
}

/// A cycle reached from `v`, found through a walk of `t0` edges.
pub fn reached_from_cycle(g: &KGraph, v: VertexId) -> Option<ReachedCycle> {
    let t0 = reach_count(g, v);
    // layers[j][u] = edge ending a walk of length j from v at u
    let mut layers: Vec<Vec<Option<EdgeId>>> = vec![vec![None; g.vertex_count()]];
    let mut frontier = vec![v];
    for _ in 0..t0 {
        let mut next = vec![None; g.vertex_count()];
        let mut members = Vec::new();
        for &u in &frontier {
            for (i, e) in g.edges().iter().enumerate() {
                if e.range == u && next[e.source.0].is_none() {
                    next[e.source.0] = Some(EdgeId(i));
                    members.push(e.source);
                }
            }
        }
        if members.is_empty() {
            return None;
        }
        layers.push(next);
        frontier = members;
    }
    let mut walk = Vec::with_capacity(t0);
    let mut at = frontier[0];
    for layer in layers.iter().skip(1).rev() {
        let e = layer[at.0].expect("parent recorded");
        walk.push(e);
        at = g.edge(e).range;
    }
    walk.reverse();
    let mut visits = vec![v];
    visits.extend(walk.iter().map(|&e| g.edge(e).source));
    let (m, n) = (0..visits.len())
        .flat_map(|n| (0..n).map(move |m| (m, n)))
        .find(|&(m, n)| visits[m] == visits[n])
        .expect("t0 + 1 visits among t0 vertices repeat");
    let connector = if m == 0 {
        g.vertex_path(v)
    } else {
        g.path_from_edges(&walk[..m]).expect("walk is composable")
    };
    let cycle = g.path_from_edges(&walk[m..n]).expect("walk is composable");
    Some(ReachedCycle {
        cycle,
        connector,
        walk_length: t0,
    })
}

/// Runs the decision procedure; see the module docs.
pub fn classify_pure_infiniteness(
    g: &KGraph,
    depth: u32,
    field: Field,
    assume_aperiodic: bool,
) -> Result<ClassificationReport, ClassifyError> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(ClassifyError::InvalidGraph(report.violations));
    }
    let conditions: Vec<VertexConditions> = g
        .vertex_ids()
        .map(|v| VertexConditions {
            vertex: v,
            receives_edges: g.receives_edges(v),
            reached_from: reached_from_cycle(g, v),
        })
        .collect();
    let all_receive = conditions.iter().all(|c| c.receives_edges);
    let all_reached = conditions.iter().all(|c| c.reached_from.is_some());
    if all_receive != all_reached {
        return Err(ClassifyError::Inconsistent {
            all_receive,
            all_reached,
        });
    }
    let aperiodicity = strong_aperiodicity_sweep(g, depth);
    let mut out = ClassificationReport {
        conditions,
        aperiodicity,
        assumed_aperiodic: assume_aperiodic,
        verdict: Verdict::Inconclusive,
        reason: String::new(),
        proofs: Vec::new(),
        depth,
        field,
    };
    if let Some(c) = out.conditions.iter().find(|c| !c.receives_edges) {
        out.verdict = Verdict::NotPurelyInfinite;
        out.reason = format!(
            "vertex {} receives no edges, so s_v generates a matrix ideal",
            g.vertex_name(c.vertex)
        );
        return Ok(out);
    }
    let label = sweep_label(&out.aperiodicity);
    if label != "aperiodic" && !assume_aperiodic {
        out.reason = format!("strong aperiodicity not established (sweep: {label})");
        return Ok(out);
    }
    out.proofs = g
        .vertex_ids()
        .map(|v| prove_vertex_properly_infinite(g, field, v, depth))
        .collect();
    if out.proofs.iter().all(VertexProof::is_complete) {
        out.verdict = Verdict::ProperlyPurelyInfinite;
        out.reason = "every vertex certified in every quotient".into();
    } else if let Some(p) = out.proofs.iter().find(|p| p.matricial()) {
        out.verdict = Verdict::NotPurelyInfinite;
        out.reason = format!("vertex {} reaches a matricial corner in a quotient", g.vertex_name(p.vertex));
    } else {
        out.reason = format!("certificate search exhausted at depth {depth}");
    }
    Ok(out)
}

fn names(g: &KGraph, vs: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect()
}

pub fn aperiodicity_json(g: &KGraph, v: &AperiodicityVerdict) -> Value {
    match v {
        AperiodicityVerdict::Aperiodic { evidence, depth } => json!({
            "status": "aperiodic",
            "depth": depth,
            "evidence": evidence
                .iter()
                .map(|(v, x)| json!({ "vertex": g.vertex_name(*v), "path": g.path_name(x) }))
                .collect::<Vec<_>>(),
        }),
        AperiodicityVerdict::Periodic {
            vertex,
            alpha,
            beta,
            states,
        } => json!({
            "status": "periodic",
            "vertex": g.vertex_name(*vertex),
            "alpha": g.path_name(alpha),
            "beta": g.path_name(beta),
            "automaton_states": states,
        }),
        AperiodicityVerdict::Unknown { depth, unresolved } => json!({
            "status": "unknown",
            "depth": depth,
            "unresolved": names(g, unresolved.iter().copied()),
        }),
    }
}

fn step_json(kp: &Kp<'_>, s: &Step) -> Value {
    let elements: serde_json::Map<String, Value> = s
        .elements
        .iter()
        .map(|(n, x)| (n.clone(), Value::String(format_element(kp, x))))
        .collect();
    json!({
        "rule": s.rule.tag(),
        "note": s.note,
        "elements": elements,
        "from": s.children.iter().map(|c| step_json(kp, c)).collect::<Vec<_>>(),
    })
}

/// A certificate with every element in the expression grammar of `g`.
pub fn certificate_json(g: &KGraph, field: Field, cert: &WitnessCertificate) -> Value {
    let kp = Kp::new(g, field);
    let f = |x| Value::String(format_element(&kp, x));
    let kind = match &cert.kind {
        CertificateKind::Infinite { q, r, s } => json!({
            "type": "infinite",
            "q": f(q),
            "r": f(r),
            "s": f(s),
        }),
        CertificateKind::ProperlyInfinite { a, b } => json!({
            "type": "properly-infinite",
            "A": a.entries().map(f).collect::<Vec<_>>(),
            "B": b.entries().map(f).collect::<Vec<_>>(),
        }),
    };
    json!({
        "target": f(&cert.target),
        "certificate": kind,
        "derivation": step_json(&kp, &cert.derivation),
    })
}

pub fn proof_json(g: &KGraph, proof: &VertexProof) -> Value {
    let cases: Vec<Value> = proof
        .cases
        .iter()
        .map(|c| {
            let ideal = names(g, c.ideal.vertices().iter().copied());
            match &c.outcome {
                IdealOutcome::Certified { route, certificate } => json!({
                    "ideal": ideal,
                    "outcome": "certified",
                    "route": format!("{route:?}"),
                    "witness": certificate_json(&c.quotient, proof.field, certificate),
                }),
                IdealOutcome::Matricial { w } => json!({
                    "ideal": ideal,
                    "outcome": "matricial",
                    "vertex": c.quotient.vertex_name(*w),
                }),
                IdealOutcome::Inconclusive { reason } => json!({
                    "ideal": ideal,
                    "outcome": "inconclusive",
                    "reason": reason,
                }),
            }
        })
        .collect();
    json!({
        "vertex": g.vertex_name(proof.vertex),
        "direct": proof.direct.as_ref().map(|c| certificate_json(g, proof.field, c)),
        "quotients": cases,
    })
}

impl ClassificationReport {
    pub fn to_json(&self, g: &KGraph) -> Value {
        let conditions: Vec<Value> = self
            .conditions
            .iter()
            .map(|c| {
                json!({
                    "vertex": g.vertex_name(c.vertex),
                    "condition_1": c.receives_edges,
                    "condition_2": c.reached_from.is_some(),
                    "cycle": c.reached_from.as_ref().map(|r| json!({
                        "cycle": g.path_name(&r.cycle),
                        "connector": g.path_name(&r.connector),
                        "walk_length": r.walk_length,
                    })),
                })
            })
            .collect();
        let aperiodicity: Vec<Value> = self
            .aperiodicity
            .iter()
            .map(|q| {
                json!({
                    "ideal": names(g, q.ideal.vertices().iter().copied()),
                    "verdict": aperiodicity_json(&q.quotient, &q.verdict),
                })
            })
            .collect();
        json!({
            "verdict": self.verdict.label(),
            "reason": self.reason,
            "conditions": conditions,
            "aperiodicity": aperiodicity,
            "aperiodicity_summary": sweep_label(&self.aperiodicity),
            "assumed_aperiodic": self.assumed_aperiodic,
            "certificates": self.proofs.iter().map(|p| proof_json(g, p)).collect::<Vec<_>>(),
            "provenance": {
                "depth": self.depth,
                "field": self.field.to_string(),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::witness::verify_certificate;

    fn run(g: &KGraph) -> ClassificationReport {
        classify_pure_infiniteness(g, 6, Field::Rational, false).unwrap()
    }

    #[test]
    fn cuntz_graph_is_properly_purely_infinite() {
        let g = corpus::e_n(2);
        let r = run(&g);
        assert_eq!(r.verdict, Verdict::ProperlyPurelyInfinite);
        for proof in &r.proofs {
            for case in &proof.cases {
                let IdealOutcome::Certified { certificate, .. } = &case.outcome else { panic!() };
                verify_certificate(&Kp::new(&case.quotient, Field::Rational), certificate).unwrap();
            }
        }
        let json = r.to_json(&g);
        assert_eq!(json["verdict"], "ProperlyPurelyInfinite");
        assert_eq!(json["conditions"][0]["condition_2"], true);
    }

    #[test]
    fn omega_fails_condition_one() {
        let g = corpus::omega(2, &[1, 1]);
        let r = run(&g);
        assert_eq!(r.verdict, Verdict::NotPurelyInfinite);
        let top = g.vertex_by_name("v11").unwrap();
        assert!(!r.conditions[top.0].receives_edges);
        assert!(r.conditions.iter().all(|c| c.reached_from.is_none()));
    }

    #[test]
    fn torus_is_refused() {
        let g = corpus::t2();
        let r = run(&g);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.aperiodicity[0].verdict.is_periodic());
        assert!(r.proofs.is_empty());
    }

    #[test]
    fn reached_cycles_are_cycles() {
        for (_, g) in corpus::standard_corpus() {
            for v in g.vertex_ids() {
                if let Some(rc) = reached_from_cycle(&g, v) {
                    assert!(!rc.cycle.is_vertex());
                    assert_eq!(rc.cycle.source(), rc.cycle.range());
                    assert_eq!(rc.connector.range(), v);
                    assert_eq!(rc.connector.source(), rc.cycle.range());
                }
            }
        }
    }
}
