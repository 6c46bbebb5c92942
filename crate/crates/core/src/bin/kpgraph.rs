//! `kpgraph`: k-graph combinatorics, Kumjian-Pask arithmetic and pure
//! infiniteness classification from the command line.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use kp_core::aperiodic::{aperiodicity_check, strong_aperiodicity_sweep, sweep_label};
use kp_core::algebra::Kp;
use kp_core::classify::{aperiodicity_json, classify_pure_infiniteness, proof_json, ClassifyError};
use kp_core::expr::{format_element, parse_element, ExprError};
use kp_core::field::Field;
use kp_core::ideals::{enumerate_sat_her, quotient, sat_her_closure, IdealError};
use kp_core::paths::{enumerate_paths, mce, CombinatoricsError, Mode, Search};
use kp_core::steinberg::Steinberg;
use kp_core::witness::{prove_vertex_properly_infinite, IdealOutcome};
use kp_core::{load_kgraph, validate, write_kgraph, Degree, KGraph, ParseError, PathError, VertexId};

#[derive(Parser)]
#[command(name = "kpgraph", version, about = "Kumjian-Pask algebras of finite k-graphs")]
struct Cli {
    /// Graph file in `kgraph v1` format
    graph: PathBuf,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Search budget in total-degree units
    #[arg(long, global = true, default_value_t = 6)]
    depth: u32,

    /// Coefficient field: Q, Fp or F<prime>
    #[arg(long, global = true, default_value = "Q")]
    field: Field,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the factorization property and local convexity
    Validate,
    /// List v Lambda^n, or v Lambda^{<=n} with --boundary
    Paths {
        vertex: String,
        /// Degree as comma-separated coordinates, e.g. 1,2
        degree: String,
        #[arg(long)]
        boundary: bool,
    },
    /// Minimal common extensions of two paths
    Mce { p: String, q: String },
    /// Saturated hereditary closure of a vertex set
    Closure { vertices: String },
    /// All saturated hereditary sets with their cover relation
    Ideals,
    /// The quotient graph by a saturated hereditary set, in kgraph v1
    Quotient { vertices: String },
    /// Aperiodicity of the graph and of every quotient
    Aperiodic,
    /// Decide (proper) pure infiniteness
    Classify {
        /// Take strong aperiodicity as a hypothesis
        #[arg(long)]
        assert_aperiodic: bool,
    },
    /// Certificates that s_v is infinite in every quotient not containing v
    Witness {
        vertex: String,
        /// Take strong aperiodicity as a hypothesis
        #[arg(long)]
        assert_aperiodic: bool,
    },
    /// Evaluate expressions, one per line; `lhs = rhs` tests equality
    Eval { file: PathBuf },
    /// Search a strictly contracting bisection inside Z(path)
    Contract { path: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{path}:{0}", path = .1.display())]
    Parse(ParseError, PathBuf),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("bad degree `{0}`: expected {1} comma-separated naturals")]
    BadDegree(String, usize),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Paths(#[from] CombinatoricsError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("line {0}, {1}")]
    Expr(usize, ExprError),
    #[error("graph is not a valid k-graph")]
    Invalid,
}

fn vertex(g: &KGraph, name: &str) -> Result<VertexId, CliError> {
    g.vertex_by_name(name.trim())
        .ok_or_else(|| CliError::UnknownVertex(name.trim().to_string()))
}

fn vertex_set(g: &KGraph, list: &str) -> Result<BTreeSet<VertexId>, CliError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| vertex(g, s))
        .collect()
}

fn degree(g: &KGraph, text: &str) -> Result<Degree, CliError> {
    let bad = || CliError::BadDegree(text.to_string(), g.rank());
    let coords: Vec<u32> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if coords.len() != g.rank() {
        return Err(bad());
    }
    Ok(Degree::from_vec(coords))
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&cli.graph).map_err(|e| CliError::Io(cli.graph.clone(), e))?;
    let g = load_kgraph(&text).map_err(|e| CliError::Parse(e, cli.graph.clone()))?;
    let report = validate(&g);
    if let Command::Validate = cli.command {
        let mut out = String::new();
        if report.is_valid() {
            out.push_str("valid\n");
        }
        for v in &report.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        emit(
            cli.json,
            json!({ "valid": report.is_valid(), "violations": report.violations }),
            out,
        );
        return Ok(report.is_valid());
    }
    if !report.is_valid() {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
        return Err(CliError::Invalid);
    }
    let (depth, field) = (cli.depth, cli.field);
    match cli.command {
        Command::Validate => unreachable!(),
        Command::Paths {
            vertex: v,
            degree: n,
            boundary,
        } => {
            let v = vertex(&g, &v)?;
            let n = degree(&g, &n)?;
            let mode = if boundary { Mode::Boundary } else { Mode::Exact };
            let set = enumerate_paths(&g, v, &n, mode)?;
            let list: Vec<String> = set.paths.iter().map(|p| g.path_name(p)).collect();
            let text = list.iter().map(|p| format!("{p}\n")).collect();
            emit(
                cli.json,
                json!({ "vertex": g.vertex_name(v), "degree": n.coords(), "mode": mode, "paths": list }),
                text,
            );
        }
        Command::Mce { p, q } => {
            let (p, q) = (g.parse_path(&p)?, g.parse_path(&q)?);
            let list: Vec<String> = mce(&g, &p, &q).paths.iter().map(|x| g.path_name(x)).collect();
            let text = if list.is_empty() {
                "(empty)\n".to_string()
            } else {
                list.iter().map(|x| format!("{x}\n")).collect()
            };
            emit(cli.json, json!({ "mce": list }), text);
        }
        Command::Closure { vertices } => {
            let h = sat_her_closure(&g, &vertex_set(&g, &vertices)?)?;
            let list = h.names(&g);
            emit(cli.json, json!({ "closure": list }), format!("{}\n", braces(&list)));
        }
        Command::Ideals => {
            let lattice = enumerate_sat_her(&g);
            let sets: Vec<Vec<String>> = lattice.sets.iter().map(|h| h.names(&g)).collect();
            let mut text = String::new();
            for (i, s) in sets.iter().enumerate() {
                text.push_str(&format!("H{i} = {}\n", braces(s)));
            }
            for (i, j) in &lattice.covers {
                text.push_str(&format!("H{i} < H{j}\n"));
            }
            emit(cli.json, json!({ "sets": sets, "covers": lattice.covers }), text);
        }
        Command::Quotient { vertices } => {
            let seed = vertex_set(&g, &vertices)?;
            let h = kp_core::ideals::SatHerSet::try_from_vertices(&g, seed)?;
            let gamma = quotient(&g, &h)?;
            let out = write_kgraph(&gamma);
            emit(cli.json, json!({ "quotient": out }), out.clone());
        }
        Command::Aperiodic => {
            let own = aperiodicity_check(&g, depth);
            let sweep = strong_aperiodicity_sweep(&g, depth);
            let mut text = format!("graph: {}\n", own.label());
            for q in &sweep {
                text.push_str(&format!(
                    "quotient by {}: {}\n",
                    braces(&q.ideal.names(&g)),
                    q.verdict.label()
                ));
            }
            text.push_str(&format!("strongly aperiodic: {}\n", sweep_label(&sweep)));
            let quotients: Vec<Value> = sweep
                .iter()
                .map(|q| json!({ "ideal": q.ideal.names(&g), "verdict": aperiodicity_json(&q.quotient, &q.verdict) }))
                .collect();
            emit(
                cli.json,
                json!({
                    "graph": aperiodicity_json(&g, &own),
                    "quotients": quotients,
                    "strong": sweep_label(&sweep),
                }),
                text,
            );
        }
        Command::Classify { assert_aperiodic } => {
            let report = classify_pure_infiniteness(&g, depth, field, assert_aperiodic)?;
            let mut text = format!("verdict: {}\nreason: {}\n", report.verdict.label(), report.reason);
            for c in &report.conditions {
                let cycle = c.reached_from.as_ref().map_or("none".to_string(), |r| {
                    format!("{} via {}", g.path_name(&r.cycle), g.path_name(&r.connector))
                });
                text.push_str(&format!(
                    "{}: receives edges {}, reached from cycle {}\n",
                    g.vertex_name(c.vertex),
                    c.receives_edges,
                    cycle
                ));
            }
            text.push_str(&format!("strongly aperiodic: {}", sweep_label(&report.aperiodicity)));
            if report.assumed_aperiodic {
                text.push_str(" (assumed)");
            }
            text.push('\n');
            for p in &report.proofs {
                let certified = p.cases.len() - p.uncovered().len();
                text.push_str(&format!(
                    "{}: certified in {certified}/{} quotients\n",
                    g.vertex_name(p.vertex),
                    p.cases.len()
                ));
            }
            emit(cli.json, report.to_json(&g), text);
        }
        Command::Witness {
            vertex: v,
            assert_aperiodic,
        } => {
            let v = vertex(&g, &v)?;
            let strong = sweep_label(&strong_aperiodicity_sweep(&g, depth));
            let proof = prove_vertex_properly_infinite(&g, field, v, depth);
            let conclusive = strong == "aperiodic" || assert_aperiodic;
            let properly = proof.is_complete() && conclusive;
            let mut text = String::new();
            if let Some(d) = &proof.direct {
                let kp = Kp::new(&g, field);
                let kp_core::witness::CertificateKind::ProperlyInfinite { a, b } = &d.kind else {
                    unreachable!()
                };
                let show = |m: &kp_core::matrix::KPMatrix| {
                    m.entries().map(|x| format_element(&kp, x)).collect::<Vec<_>>().join(", ")
                };
                text.push_str(&format!("direct: A = col({}), B = row({})\n", show(a), show(b)));
            }
            for c in &proof.cases {
                let line = match &c.outcome {
                    IdealOutcome::Certified { route, certificate } => {
                        let kp = Kp::new(&c.quotient, field);
                        format!("certified ({route:?}), target {}", format_element(&kp, &certificate.target))
                    }
                    IdealOutcome::Matricial { w } => format!("matricial at {}", c.quotient.vertex_name(*w)),
                    IdealOutcome::Inconclusive { reason } => format!("inconclusive: {reason}"),
                };
                text.push_str(&format!("quotient by {}: {line}\n", braces(&c.ideal.names(&g))));
            }
            text.push_str(&format!(
                "s_{} properly infinite: {}\n",
                g.vertex_name(v),
                if properly {
                    "yes"
                } else if proof.is_complete() {
                    "not concluded (strong aperiodicity unknown)"
                } else {
                    "not established"
                }
            ));
            let mut value = proof_json(&g, &proof);
            value["properly_infinite"] = json!(properly);
            value["strongly_aperiodic"] = json!(strong);
            value["assumed_aperiodic"] = json!(assert_aperiodic);
            emit(cli.json, value, text);
        }
        Command::Eval { file } => {
            let src = std::fs::read_to_string(&file).map_err(|e| CliError::Io(file.clone(), e))?;
            let kp = Kp::new(&g, field);
            let mut results = Vec::new();
            let mut text = String::new();
            let mut all_hold = true;
            for (i, line) in src.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let parse = |s: &str| parse_element(&kp, s).map_err(|e| CliError::Expr(i + 1, e));
                if let Some((lhs, rhs)) = line.split_once('=') {
                    let holds = kp.equals(&parse(lhs)?, &parse(rhs)?);
                    all_hold &= holds;
                    text.push_str(&format!("{line}: {holds}\n"));
                    results.push(json!({ "line": i + 1, "equation": line, "holds": holds }));
                } else {
                    let value = format_element(&kp, &kp.normal_form(&parse(line)?));
                    text.push_str(&format!("{value}\n"));
                    results.push(json!({ "line": i + 1, "expression": line, "value": value }));
                }
            }
            emit(cli.json, json!({ "results": results }), text);
            return Ok(all_hold);
        }
        Command::Contract { path } => {
            let kappa = g.parse_path(&path)?;
            let st = Steinberg::new(&g, field);
            match st.locally_contracting_on(&kappa, depth) {
                Search::Found(c) => {
                    let (range, source) = (g.path_name(&c.bisection.range), g.path_name(&c.bisection.source));
                    let entrance = g.path_name(&c.entrance);
                    emit(
                        cli.json,
                        json!({ "found": true, "range": range, "source": source, "entrance": entrance }),
                        format!("Z({range} * {source}^*) contracts, entrance {entrance}\n"),
                    );
                }
                Search::NotFoundUpTo(d) => emit(
                    cli.json,
                    json!({ "found": false, "depth": d }),
                    format!("no contracting bisection up to depth {d}\n"),
                ),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
