//! Normalized volumes of flow polytopes, by several independent methods.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::dynamic::dyn_kpf;
use crate::error::{Error, Result};
use crate::exact::rational_to_string;
use crate::graph::{check_netflow, effective_dimension, free_edges, netflow_2e1, netflow_type_a, SignedEdge, SignedGraph};
use crate::kostant::{ehrhart, ehrhart_polynomial_fit, kpf, Parity};
use crate::linalg::Q;
use crate::subdivision::{subdivide_full, SubdivideOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Kpf,
    DynKpf,
    Subdivision,
    EhrhartFit,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Kpf => "kpf",
            Method::DynKpf => "dyn_kpf",
            Method::Subdivision => "subdivision",
            Method::EhrhartFit => "ehrhart_fit",
        }
    }
}

fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub method: Method,
    /// Normalized volume. Integral for every method except possibly the
    /// Ehrhart fit of a polytope with rational vertices.
    #[serde(serialize_with = "ser_q")]
    pub volume: Q,
    pub dimension: usize,
    pub netflow: Vec<i64>,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VolumeReport {
    pub fn as_integer(&self) -> Option<BigInt> {
        self.volume.is_integer().then(|| self.volume.to_integer())
    }
}

fn dimension_of(g: &SignedGraph, a: &[i64]) -> Result<usize> {
    Ok(effective_dimension(g, a)?.map_or(0, |(d, _)| d))
}

fn report(method: Method, v: BigInt, g: &SignedGraph, a: Vec<i64>, diagnostics: Vec<String>, t0: Instant) -> Result<VolumeReport> {
    let dimension = dimension_of(g, &a)?;
    Ok(VolumeReport { method, volume: Q::from_integer(v), dimension, netflow: a, diagnostics, elapsed: t0.elapsed() })
}

/// `d_i = indeg(i) - 1` for the given vertices.
fn shifted_indegrees(g: &SignedGraph, range: std::ops::RangeInclusive<usize>) -> Result<Vec<i64>> {
    range
        .map(|v| match g.indegree(v) {
            0 => Err(Error::Degenerate(format!("vertex {v} has no incoming negative edge"))),
            d => Ok(d as i64 - 1),
        })
        .collect()
}

/// When `a` lies on the boundary of the cone of roots, some edges carry no flow
/// anywhere on the polytope. Drop them and the vertices left without edges, and
/// relabel the rest in order, so that the polytope becomes full dimensional in
/// the reduced graph. Returns `None` when nothing has to be dropped.
fn restrict_to_support(g: &SignedGraph, a: &[i64]) -> Result<Option<(SignedGraph, Vec<i64>, String)>> {
    let Some(free) = free_edges(g, a)? else {
        return Err(Error::Degenerate("the polytope is empty".into()));
    };
    if free.len() == g.num_edges() {
        return Ok(None);
    }
    let n1 = g.n_plus_1();
    let mut used = vec![false; n1 + 1];
    for &k in &free {
        let e = g.edge(k);
        used[e.lo] = true;
        used[e.hi] = true;
    }
    let mut label = vec![0usize; n1 + 1];
    let mut kept = Vec::new();
    for v in 1..=n1 {
        if used[v] {
            kept.push(v);
            label[v] = kept.len();
        } else if a[v - 1] != 0 {
            return Err(Error::Internal(format!("vertex {v} has netflow {} but no usable edge", a[v - 1])));
        }
    }
    let edges = free
        .iter()
        .map(|&k| {
            let e = g.edge(k);
            SignedEdge::new(label[e.lo], label[e.hi], e.sign)
        })
        .collect::<Result<Vec<_>>>()?;
    let reduced = SignedGraph::new(kept.len(), edges)?;
    let b: Vec<i64> = kept.iter().map(|&v| a[v - 1]).collect();
    let note = format!(
        "netflow on the cone boundary: {} of {} edges carry no flow; relative volume computed on the {} remaining vertices {:?}",
        g.num_edges() - free.len(),
        g.num_edges(),
        kept.len(),
        kept
    );
    Ok(Some((reduced, b, note)))
}

/// Volume of `F_H(1, 0, ..., 0, -1)` for a connected graph with only negative
/// edges, as `K_H(0, d_2, ..., d_n, -sum d)`. Like the other methods this is the
/// volume relative to the polytope's own dimension.
pub fn volume_negative(h: &SignedGraph) -> Result<VolumeReport> {
    let t0 = Instant::now();
    if !h.is_all_negative() {
        return Err(Error::WrongTheorem("graph has positive edges or loops; use the signed volume".into()));
    }
    let n1 = h.n_plus_1();
    if n1 < 2 {
        return Err(Error::Degenerate("need at least two vertices".into()));
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = shifted_indegrees(h, 2..=n1 - 1)?;
    if let Some((r, _, note)) = restrict_to_support(h, &netflow_type_a(n1))? {
        let mut rep = volume_negative(&r)?;
        rep.netflow = netflow_type_a(n1);
        rep.diagnostics.insert(0, note);
        rep.elapsed = t0.elapsed();
        return Ok(rep);
    }
    let mut target = vec![0i64];
    target.extend(&d);
    target.push(-d.iter().sum::<i64>());
    let v = kpf(h, &target)?;
    let mut r = report(Method::Kpf, v, h, netflow_type_a(n1), Vec::new(), t0)?;
    r.diagnostics.push(format!("K_H at {target:?}"));
    Ok(r)
}

/// Volume of `F_G(2, 0, ..., 0)` for a connected loopless signed graph, as
/// `K^dyn_G(0, d_2, ..., d_{n+1})`.
pub fn volume_signed_2e1(g: &SignedGraph) -> Result<VolumeReport> {
    let t0 = Instant::now();
    if g.has_loops() {
        return Err(Error::UnsupportedLoop("the dynamic formula needs a loopless graph; use the Ehrhart method".into()));
    }
    let n1 = g.n_plus_1();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_all_negative() {
        // sum of the netflow is 2 but negative edges preserve the total
        return report(
            Method::DynKpf,
            BigInt::zero(),
            g,
            netflow_2e1(n1),
            vec!["no positive edge: the netflow (2,0,...,0) is infeasible and the polytope is empty".into()],
            t0,
        );
    }
    let d = shifted_indegrees(g, 2..=n1)?;
    if let Some((r, _, note)) = restrict_to_support(g, &netflow_2e1(n1))? {
        let mut rep = volume_signed_2e1(&r)?;
        rep.netflow = netflow_2e1(n1);
        rep.diagnostics.insert(0, note);
        rep.elapsed = t0.elapsed();
        return Ok(rep);
    }
    let mut target = vec![0i64];
    target.extend(&d);
    let v = dyn_kpf(g, &target)?;
    let mut r = report(Method::DynKpf, v, g, netflow_2e1(n1), Vec::new(), t0)?;
    r.diagnostics.push(format!("K^dyn_G at {target:?}"));
    Ok(r)
}

/// Volume by counting the leaves of the full subdivision.
pub fn volume_via_subdivision(g: &SignedGraph, a: &[i64]) -> Result<VolumeReport> {
    let t0 = Instant::now();
    let s = subdivide_full(g, a, &SubdivideOptions::default())?;
    report(Method::Subdivision, s.leaves, g, a.to_vec(), Vec::new(), t0)
}

/// Volume as `d!` times the leading coefficient of the Ehrhart polynomial,
/// fitted on even dilates.
pub fn volume_via_ehrhart(g: &SignedGraph, a: &[i64]) -> Result<VolumeReport> {
    let t0 = Instant::now();
    check_netflow(g, a)?;
    if effective_dimension(g, a)?.is_none() {
        return Ok(VolumeReport {
            method: Method::EhrhartFit,
            volume: Q::zero(),
            dimension: 0,
            netflow: a.to_vec(),
            diagnostics: vec!["empty polytope".into()],
            elapsed: t0.elapsed(),
        });
    }
    let fit = ehrhart_polynomial_fit(g, a, Parity::Even)?;
    let mut diagnostics = fit.diagnostics.clone();
    diagnostics.push(format!("L(t) = {} on even t", fit.polynomial_string()));
    let odd = Q::from_integer(ehrhart(g, a, 1)?);
    let guess = fit.polynomial.eval(&Q::from_integer(BigInt::from(1)));
    if odd != guess {
        diagnostics.push(format!(
            "quasi-polynomial: L(1) = {} but the even-dilate polynomial gives {}",
            rational_to_string(&odd),
            rational_to_string(&guess)
        ));
    }
    Ok(VolumeReport {
        method: Method::EhrhartFit,
        volume: fit.normalized_volume(),
        dimension: fit.dimension,
        netflow: a.to_vec(),
        diagnostics,
        elapsed: t0.elapsed(),
    })
}

/// Methods that apply to `(g, a)`.
pub fn applicable_methods(g: &SignedGraph, a: &[i64]) -> Vec<Method> {
    let n1 = g.n_plus_1();
    let mut out = Vec::new();
    if n1 >= 2 && g.is_connected() {
        if a == netflow_type_a(n1).as_slice() && g.is_all_negative() && (2..n1).all(|v| g.indegree(v) > 0) {
            out.push(Method::Kpf);
            out.push(Method::Subdivision);
        }
        if a == netflow_2e1(n1).as_slice() && !g.has_loops() && (2..=n1).all(|v| g.indegree(v) > 0) {
            out.push(Method::DynKpf);
            out.push(Method::Subdivision);
        }
    }
    out.push(Method::EhrhartFit);
    out
}

pub fn volume_with(g: &SignedGraph, a: &[i64], method: Method) -> Result<VolumeReport> {
    check_netflow(g, a)?;
    let n1 = g.n_plus_1();
    match method {
        Method::Kpf => {
            if a != netflow_type_a(n1).as_slice() {
                return Err(Error::WrongTheorem("the kpf method needs netflow e_1 - e_{n+1}".into()));
            }
            volume_negative(g)
        }
        Method::DynKpf => {
            if a != netflow_2e1(n1).as_slice() {
                return Err(Error::WrongTheorem("the dynamic method needs netflow (2,0,...,0)".into()));
            }
            volume_signed_2e1(g)
        }
        Method::Subdivision => volume_via_subdivision(g, a),
        Method::EhrhartFit => volume_via_ehrhart(g, a),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    #[serde(serialize_with = "ser_q")]
    pub volume: Q,
    pub reports: Vec<VolumeReport>,
}

/// Run every applicable method and require exact agreement.
pub fn volume_crosscheck(g: &SignedGraph, a: &[i64]) -> Result<CrossCheck> {
    check_netflow(g, a)?;
    let methods = applicable_methods(g, a);
    if methods.len() < 2 {
        return Err(Error::Precondition(format!(
            "only {} method applies to this graph and netflow",
            methods.len()
        )));
    }
    let mut reports = Vec::new();
    for m in methods {
        reports.push(volume_with(g, a, m)?);
    }
    let first = reports[0].volume.clone();
    if reports.iter().any(|r| r.volume != first) {
        let detail: Vec<String> = reports
            .iter()
            .map(|r| format!("{}={} ({})", r.method.name(), rational_to_string(&r.volume), r.diagnostics.join("; ")))
            .collect();
        return Err(Error::Disagreement(detail.join(", ")));
    }
    Ok(CrossCheck { volume: first, reports })
}
