//! The `flowpoly` command line: argument parsing, file input and output
//! rendering. [`run`] is the whole program; the binary only forwards to it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dynamic::{dyn_decompose, dyn_kpf_with, enumerate_dynamic_flows};
use crate::error::Error;
use crate::exact::rational_to_string;
use crate::families::{conjecture_report, cry_polytope, cry_vertices, cry_volume, morris_closed, morris_ct, Family, MorrisParams};
use crate::graph::{dimension, effective_dimension, netflow_2e1, netflow_type_a, parse_netflow, Dimension, Sign, SignedGraph};
use crate::kostant::{ehrhart, ehrhart_polynomial_fit, enumerate_integer_flows, kpf_with, Engine, Parity};
use crate::linalg::Q;
use crate::subdivision::{subdivide_full, OrderChoice, SubdivideOptions};
use crate::vertices::{count_vertices_2e1, count_vertices_type_a, enumerate_vertices_2e1, enumerate_vertices_general, DEFAULT_SUPPORT_BOUND};
use crate::volume::{volume_crosscheck, volume_with, Method};

#[derive(Parser, Debug)]
#[command(name = "flowpoly", version, about = "Exact volumes, lattice points and vertices of flow polytopes of signed graphs")]
pub struct Cli {
    /// Emit {"command", "input", "result", "diagnostics"} as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// Graph file in the `vertices` / `edge i j +|-|s` text format.
    pub graph: PathBuf,
    /// Netflow vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub netflow: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Dp,
    Series,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Dp => Engine::Dp,
            EngineArg::Series => Engine::Series,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Kpf,
    Dyn,
    Subdivide,
    Ehrhart,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum What {
    Volume,
    Vertices,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kostant partition function: number of integer flows with the given netflow.
    Kpf {
        #[command(flatten)]
        input: GraphInput,
        /// Also list up to N flows.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        #[arg(long, value_enum, default_value = "dp")]
        engine: EngineArg,
    },
    /// Dynamic Kostant partition function of a loopless signed graph.
    #[command(name = "dyn-kpf")]
    DynKpf {
        #[command(flatten)]
        input: GraphInput,
        /// Split the count by the left flows on positive edges.
        #[arg(long)]
        decompose: bool,
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        #[arg(long, value_enum, default_value = "dp")]
        engine: EngineArg,
    },
    /// Lattice points of a dilate, or the fitted Ehrhart polynomial.
    Ehrhart {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, conflicts_with = "fit", required_unless_present = "fit")]
        t: Option<u64>,
        #[arg(long)]
        fit: bool,
        /// Fit on even dilates only.
        #[arg(long, requires = "fit")]
        even: bool,
    },
    /// Normalized volume.
    Volume {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Full subdivision by successive vertex elimination.
    Subdivide {
        #[command(flatten)]
        input: GraphInput,
        /// Print the leaf count only.
        #[arg(long)]
        count_only: bool,
        /// Draw the elimination orders at random from this seed.
        #[arg(long, value_name = "S")]
        seed_orders: Option<u64>,
        /// Maximum number of leaf trails printed.
        #[arg(long, default_value_t = 1000)]
        trails: usize,
    },
    /// Vertices of the flow polytope.
    Vertices {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        count_only: bool,
        /// Largest graph (in edges) for the general enumerator.
        #[arg(long, default_value_t = DEFAULT_SUPPORT_BOUND)]
        bound: usize,
    },
    /// Chan-Robbins-Yuen polytopes of types A, B, C, D.
    Cry {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        what: What,
    },
    /// The Morris constant term, by closed form and by series extraction.
    Morris {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long = "two-c")]
        two_c: u32,
        #[arg(long = "two-d")]
        two_d: Option<u32>,
        #[arg(long, group = "which")]
        ct: bool,
        #[arg(long, group = "which")]
        closed: bool,
        #[arg(long, group = "which")]
        both: bool,
    },
    /// Conjecture report over the CRY families.
    Report {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Write the rows as a JSON array here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of the flow polytope.
    Dim {
        #[command(flatten)]
        input: GraphInput,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a finished invocation printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Rendered {
    input: Value,
    result: Value,
    diagnostics: Vec<String>,
    text: String,
}

fn qs(x: &Q) -> String {
    rational_to_string(x)
}

fn load(input: &GraphInput) -> Result<(SignedGraph, Vec<i64>, Value), Failure> {
    let a = parse_netflow(&input.netflow).map_err(|e| Failure::Usage(format!("--netflow: {e}")))?;
    let text = std::fs::read_to_string(&input.graph)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.graph.display())))?;
    let g = SignedGraph::parse(&text)?;
    let v = json!({ "graph": input.graph.display().to_string(), "netflow": a });
    Ok((g, a, v))
}

fn csv<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn execute(cmd: &Command) -> Result<Rendered, Failure> {
    let mut diagnostics = Vec::new();
    let mut text = String::new();
    let (input, result) = match cmd {
        Command::Kpf { input, enumerate, engine } => {
            let (g, a, iv) = load(input)?;
            let v = kpf_with(&g, &a, (*engine).into())?;
            writeln!(text, "{v}").ok();
            let mut r = json!({ "value": v.to_string() });
            if let Some(limit) = enumerate {
                let fl = enumerate_integer_flows(&g, &a, *limit)?;
                for f in &fl.flows {
                    writeln!(text, "{}", csv(f)).ok();
                }
                if fl.truncated {
                    diagnostics.push(format!("flow list truncated at {limit}"));
                }
                r["flows"] = json!(fl.flows);
            }
            (iv, r)
        }
        Command::DynKpf { input, decompose, enumerate, engine } => {
            let (g, a, iv) = load(input)?;
            let v = dyn_kpf_with(&g, &a, (*engine).into())?;
            writeln!(text, "{v}").ok();
            let mut r = json!({ "value": v.to_string() });
            if *decompose {
                let terms = dyn_decompose(&g, &a)?;
                let mut rows = Vec::new();
                for t in &terms {
                    let left: Vec<String> = t.left_flows.iter().map(|(e, x)| format!("e{e}={x}")).collect();
                    writeln!(text, "{} -> K({}) = {}", left.join(" "), csv(&t.netflow), t.count).ok();
                    rows.push(json!({
                        "left_flows": t.left_flows,
                        "graph": t.graph.to_text(),
                        "netflow": t.netflow,
                        "count": t.count.to_string(),
                    }));
                }
                let parts: Vec<String> = terms.iter().map(|t| t.count.to_string()).collect();
                writeln!(text, "{} = {v}", parts.join("+")).ok();
                r["terms"] = json!(rows);
            }
            if let Some(limit) = enumerate {
                let fl = enumerate_dynamic_flows(&g, &a, *limit)?;
                for f in &fl.flows {
                    let neg: Vec<String> = f.negative.iter().map(|(e, x)| format!("e{e}={x}")).collect();
                    let pos: Vec<String> = f
                        .positive
                        .iter()
                        .map(|p| format!("e{}=({}|{})", p.edge, p.left, csv(&p.right)))
                        .collect();
                    writeln!(text, "{}", neg.into_iter().chain(pos).collect::<Vec<_>>().join(" ")).ok();
                }
                if fl.truncated {
                    diagnostics.push(format!("flow list truncated at {limit}"));
                }
                r["flows"] = serde_json::to_value(&fl.flows).map_err(|e| Error::Internal(e.to_string()))?;
            }
            (iv, r)
        }
        Command::Ehrhart { input, t, fit, even } => {
            let (g, a, iv) = load(input)?;
            if let (Some(t), false) = (t, fit) {
                let v = ehrhart(&g, &a, *t)?;
                writeln!(text, "{v}").ok();
                (iv, json!({ "t": t, "value": v.to_string() }))
            } else {
                let parity = if *even { Parity::Even } else { Parity::All };
                let f = ehrhart_polynomial_fit(&g, &a, parity)?;
                diagnostics.extend(f.diagnostics.iter().cloned());
                let vol = f.normalized_volume();
                writeln!(text, "L(t) = {}", f.polynomial_string()).ok();
                writeln!(text, "dimension {}", f.dimension).ok();
                writeln!(text, "normalized volume {}", qs(&vol)).ok();
                let samples: Vec<Value> = f.samples.iter().map(|(t, v)| json!([t, v.to_string()])).collect();
                (
                    iv,
                    json!({
                        "polynomial": f.polynomial_string(),
                        "dimension": f.dimension,
                        "normalized_volume": qs(&vol),
                        "samples": samples,
                    }),
                )
            }
        }
        Command::Volume { input, method } => {
            let (g, a, iv) = load(input)?;
            let pick = |m| volume_with(&g, &a, m);
            let r = match method {
                Some(MethodArg::All) => {
                    let c = volume_crosscheck(&g, &a)?;
                    writeln!(text, "{}", qs(&c.volume)).ok();
                    for r in &c.reports {
                        writeln!(text, "{} {}", r.method.name(), qs(&r.volume)).ok();
                        diagnostics.extend(r.diagnostics.iter().map(|d| format!("{}: {d}", r.method.name())));
                    }
                    serde_json::to_value(&c).map_err(|e| Error::Internal(e.to_string()))?
                }
                other => {
                    let m = match other {
                        Some(MethodArg::Kpf) => Method::Kpf,
                        Some(MethodArg::Dyn) => Method::DynKpf,
                        Some(MethodArg::Subdivide) => Method::Subdivision,
                        Some(MethodArg::Ehrhart) => Method::EhrhartFit,
                        _ => default_method(&g, &a),
                    };
                    let r = pick(m)?;
                    writeln!(text, "{}", qs(&r.volume)).ok();
                    diagnostics.extend(r.diagnostics.iter().cloned());
                    serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?
                }
            };
            (iv, r)
        }
        Command::Subdivide { input, count_only, seed_orders, trails } => {
            let (g, a, iv) = load(input)?;
            let opts = SubdivideOptions {
                orders: seed_orders.map_or(OrderChoice::Canonical, OrderChoice::Random),
                trail_limit: if *count_only { 0 } else { *trails },
            };
            let s = subdivide_full(&g, &a, &opts)?;
            writeln!(text, "{}", s.leaves).ok();
            let mut r = json!({ "leaves": s.leaves.to_string(), "dimension": s.dimension });
            if !count_only {
                let rendered: Vec<Vec<String>> = s
                    .trails
                    .iter()
                    .map(|t| t.iter().map(|(v, tree)| format!("{v}:{tree}")).collect())
                    .collect();
                for t in &rendered {
                    writeln!(text, "{}", t.join(" ")).ok();
                }
                if s.trails_truncated {
                    diagnostics.push(format!("trail list truncated at {trails}"));
                }
                r["trails"] = json!(rendered);
            }
            (iv, r)
        }
        Command::Vertices { input, count_only, bound } => {
            let (g, a, iv) = load(input)?;
            let n1 = g.n_plus_1();
            let has_short = g.edges().iter().any(|e| e.sign == Sign::Short);
            let two_e1 = a == netflow_2e1(n1) && !has_short && g.is_connected();
            let type_a = a == netflow_type_a(n1) && g.is_all_negative();
            let r = if *count_only && two_e1 {
                let c = count_vertices_2e1(&g)?;
                writeln!(text, "{c}").ok();
                json!({ "count": c.to_string(), "method": "form_count" })
            } else if *count_only && type_a {
                let c = count_vertices_type_a(&g)?;
                writeln!(text, "{c}").ok();
                json!({ "count": c.to_string(), "method": "path_count" })
            } else if two_e1 {
                let vs = enumerate_vertices_2e1(&g)?;
                writeln!(text, "{}", vs.len()).ok();
                for v in &vs {
                    writeln!(text, "{}", csv(v)).ok();
                }
                let vs: Vec<Vec<String>> = vs.iter().map(|v| v.iter().map(u64::to_string).collect()).collect();
                json!({ "count": vs.len().to_string(), "method": "forms", "vertices": vs })
            } else {
                let vs = enumerate_vertices_general(&g, &a, *bound)?;
                writeln!(text, "{}", vs.len()).ok();
                let vs: Vec<Vec<String>> = vs.iter().map(|v| v.iter().map(qs).collect()).collect();
                let rational = vs.iter().filter(|v| v.iter().any(|x| x.contains('/'))).count();
                if !count_only {
                    for v in &vs {
                        writeln!(text, "{}", v.join(",")).ok();
                    }
                }
                diagnostics.push(format!("{rational} vertices have non-integer coordinates"));
                json!({ "count": vs.len().to_string(), "method": "support_search", "rational": rational, "vertices": vs })
            };
            (iv, r)
        }
        Command::Cry { family, n, what } => {
            let iv = json!({ "family": family, "n": n });
            let (g, a) = cry_polytope(*family, *n)?;
            diagnostics.push(format!("{} vertices, {} edges, netflow {}", g.n_plus_1(), g.num_edges(), csv(&a)));
            let mut r = json!({});
            if matches!(what, What::Volume | What::All) {
                let v = cry_volume(*family, *n)?;
                diagnostics.extend(v.diagnostics.iter().map(|d| format!("{}: {d}", v.method.name())));
                let s = qs(&v.volume);
                writeln!(text, "{}{s}", if matches!(what, What::All) { "volume " } else { "" }).ok();
                r["volume"] = json!(s);
                r["method"] = json!(v.method.name());
                r["dimension"] = json!(v.dimension);
            }
            if matches!(what, What::Vertices | What::All) {
                let c = cry_vertices(*family, *n)?;
                writeln!(text, "{}{c}", if matches!(what, What::All) { "vertices " } else { "" }).ok();
                r["vertices"] = json!(c.to_string());
            }
            (iv, r)
        }
        Command::Morris { m, a, b, two_c, two_d, ct, closed, both: _ } => {
            let p = MorrisParams { m: *m, a: *a, b: *b, two_c: *two_c, two_d: *two_d };
            let iv = serde_json::to_value(p).map_err(|e| Error::Internal(e.to_string()))?;
            let (want_ct, want_closed) = match (ct, closed) {
                (true, _) => (true, false),
                (_, true) => (false, true),
                _ => (true, p.two_d.is_none()),
            };
            if !want_ct {
                let v = morris_closed(p)?;
                writeln!(text, "{}", qs(&v)).ok();
                (iv, json!({ "closed": qs(&v) }))
            } else if !want_closed {
                let v = morris_ct(p)?;
                writeln!(text, "{}", qs(&v)).ok();
                (iv, json!({ "ct": qs(&v) }))
            } else {
                let c = morris_ct(p)?;
                let r = match morris_closed(p) {
                    Ok(v) => {
                        writeln!(text, "ct {}\nclosed {}", qs(&c), qs(&v)).ok();
                        if v != c {
                            diagnostics.push("the closed form and the constant term differ".into());
                        }
                        json!({ "ct": qs(&c), "closed": qs(&v), "agree": v == c })
                    }
                    Err(e) => {
                        writeln!(text, "ct {}\nclosed error[{}]: {e}", qs(&c), e.code()).ok();
                        json!({ "ct": qs(&c), "closed": Value::Null, "closed_error": e.code(), "agree": false })
                    }
                };
                (iv, r)
            }
        }
        Command::Report { n_max, out } => {
            let rep = conjecture_report(*n_max)?;
            let rows = serde_json::to_value(&rep.rows).map_err(|e| Error::Internal(e.to_string()))?;
            if let Some(path) = out {
                let body = serde_json::to_string_pretty(&rows).map_err(|e| Error::Internal(e.to_string()))? + "\n";
                std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                diagnostics.push(format!("{} rows written to {}", rep.rows.len(), path.display()));
            }
            for r in &rep.rows {
                let verdict = match r.matches {
                    Some(true) => "match",
                    Some(false) => "MISMATCH",
                    None => "-",
                };
                writeln!(
                    text,
                    "{} n={} {} [{}] = {} (conjectured {}) {verdict}",
                    r.family,
                    r.n,
                    r.quantity,
                    r.method,
                    r.value,
                    r.conjectured.as_deref().unwrap_or("none")
                )
                .ok();
            }
            for f in &rep.findings {
                writeln!(text, "finding: {f}").ok();
            }
            (json!({ "n_max": n_max }), json!({ "rows": rows, "findings": rep.findings }))
        }
        Command::Dim { input } => {
            let (g, a, iv) = load(input)?;
            let r = match dimension(&g, &a) {
                Ok(Dimension::Empty) => {
                    writeln!(text, "empty").ok();
                    json!({ "empty": true })
                }
                Ok(Dimension::Dim(d)) => {
                    writeln!(text, "{d}").ok();
                    json!({ "dimension": d })
                }
                Err(Error::BoundaryNetflow) => {
                    let (d, free) = effective_dimension(&g, &a)?.ok_or(Error::BoundaryNetflow)?;
                    diagnostics.push(format!(
                        "netflow on the cone boundary: {} edges are forced to zero; dimension taken on the rest",
                        g.num_edges() - free.len()
                    ));
                    writeln!(text, "{d}").ok();
                    json!({ "dimension": d, "boundary": true })
                }
                Err(e) => return Err(e.into()),
            };
            (iv, r)
        }
    };
    Ok(Rendered { input, result, diagnostics, text })
}

fn default_method(g: &SignedGraph, a: &[i64]) -> Method {
    let n1 = g.n_plus_1();
    if a == netflow_type_a(n1).as_slice() && g.is_all_negative() {
        Method::Kpf
    } else if a == netflow_2e1(n1).as_slice() && !g.has_loops() {
        Method::DynKpf
    } else {
        Method::EhrhartFit
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Kpf { .. } => "kpf",
        Command::DynKpf { .. } => "dyn-kpf",
        Command::Ehrhart { .. } => "ehrhart",
        Command::Volume { .. } => "volume",
        Command::Subdivide { .. } => "subdivide",
        Command::Vertices { .. } => "vertices",
        Command::Cry { .. } => "cry",
        Command::Morris { .. } => "morris",
        Command::Report { .. } => "report",
        Command::Dim { .. } => "dim",
    }
}

/// Run the program on `args` (including the program name). Exit status is 0 on
/// success, 1 on a domain error and 2 on a usage error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: msg, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: msg }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(r) => {
            if cli.json {
                let v = json!({ "command": name, "input": r.input, "result": r.result, "diagnostics": r.diagnostics });
                let stdout = serde_json::to_string_pretty(&v).unwrap_or_default() + "\n";
                Outcome { status: 0, stdout, stderr: String::new() }
            } else {
                let stderr: String = r.diagnostics.iter().map(|d| format!("note: {d}\n")).collect();
                Outcome { status: 0, stdout: r.text, stderr }
            }
        }
        Err(Failure::Usage(msg)) => Outcome { status: 2, stdout: String::new(), stderr: format!("usage error: {msg}\n") },
        Err(Failure::Domain(e)) => {
            let stderr = format!("error[{}]: {e}\n", e.code());
            let stdout = if cli.json {
                let v = json!({ "command": name, "error": { "code": e.code(), "message": e.to_string() } });
                serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
            } else {
                String::new()
            };
            Outcome { status: 1, stdout, stderr }
        }
    }
}
