//! The Kostant partition function `K_G(a)`, integer flow enumeration and
//! Ehrhart functions of flow polytopes.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::count::{multichoose_row, Counter};
use crate::error::{Error, Result};
use crate::exact::{mul_geometric_inverse, rational_to_string, to_integer, Polynomial, TruncatedPoly};
use crate::graph::{check_netflow, effective_dimension, Sign, SignedGraph};
use crate::linalg::{q, Q};

/// Counting engine for [`kpf_with`] and the dynamic variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Engine {
    /// Vertex-by-vertex dynamic programming.
    Dp,
    /// Coefficient extraction from the generating series.
    Series,
}

/// Upper bound on the total flow leaving each vertex. A negative entry means no
/// flow can balance that vertex.
pub(crate) fn out_bounds(g: &SignedGraph, a: &[i64]) -> Vec<i64> {
    let n1 = g.n_plus_1();
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); n1 + 1];
    for e in g.edges() {
        if e.sign == Sign::Minus && !sources[e.hi].contains(&e.lo) {
            sources[e.hi].push(e.lo);
        }
    }
    let mut u = vec![0i64; n1 + 1];
    for v in 1..=n1 {
        let inflow: i64 = sources[v].iter().map(|&s| u[s].max(0)).fold(0i64, |x, y| x.saturating_add(y));
        u[v] = a[v - 1].saturating_add(inflow);
    }
    u.remove(0);
    u
}

/// Distinct negative sources of each vertex, 1-based.
pub(crate) fn negative_sources(g: &SignedGraph) -> Vec<Vec<usize>> {
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); g.n_plus_1() + 1];
    for e in g.edges() {
        if e.sign == Sign::Minus && !sources[e.hi].contains(&e.lo) {
            sources[e.hi].push(e.lo);
        }
    }
    sources
}

/// A group of parallel edges leaving vertex `v` (its smaller endpoint).
#[derive(Clone, Debug)]
pub(crate) struct Class {
    /// Root coefficient at `v` (1, or 2 for a loop).
    pub coef: i64,
    pub mult: u64,
    /// State slot updated by `delta * x` when `x` units use this class.
    pub slot: Option<usize>,
    pub delta: i32,
}

pub(crate) type StateMap<C> = HashMap<Vec<i32>, C>;

fn add_into<C: Counter>(map: &mut StateMap<C>, key: Vec<i32>, w: C) -> Option<()> {
    match map.get_mut(&key) {
        Some(c) => *c = c.checked_add(&w)?,
        None => {
            map.insert(key, w);
        }
    }
    Some(())
}

/// Distribute the remaining amount in `rem_slot` over one class. If `last`, the
/// class must absorb everything that is left.
pub(crate) fn apply_class<C: Counter>(
    cur: StateMap<C>,
    class: &Class,
    rem_slot: usize,
    row: &[C],
    last: bool,
) -> Option<StateMap<C>> {
    let mut out: StateMap<C> = HashMap::with_capacity(cur.len());
    for (key, cnt) in cur {
        let rem = key[rem_slot] as i64;
        let max_x = rem / class.coef;
        let start = if last {
            if rem % class.coef != 0 {
                continue;
            }
            max_x
        } else {
            0
        };
        for x in start..=max_x {
            let ways = &row[x as usize];
            if ways.is_zero() {
                continue;
            }
            let mut k2 = key.clone();
            k2[rem_slot] = (rem - class.coef * x) as i32;
            if let Some(s) = class.slot {
                k2[s] += class.delta * x as i32;
            }
            add_into(&mut out, k2, cnt.checked_mul(ways)?)?;
        }
    }
    Some(out)
}

fn kpf_classes(g: &SignedGraph) -> Vec<Vec<Class>> {
    let n1 = g.n_plus_1();
    let mut groups: Vec<Vec<((Sign, usize), u64)>> = vec![Vec::new(); n1 + 1];
    for e in g.edges() {
        let key = (e.sign, e.hi);
        let list = &mut groups[e.lo];
        match list.iter_mut().find(|(k, _)| *k == key) {
            Some((_, m)) => *m += 1,
            None => list.push((key, 1)),
        }
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(lo, list)| {
            list.into_iter()
                .map(|((sign, hi), mult)| match sign {
                    Sign::Minus => Class { coef: 1, mult, slot: Some(hi - 1), delta: -1 },
                    Sign::Plus if hi == lo => Class { coef: 2, mult, slot: None, delta: 0 },
                    Sign::Plus => Class { coef: 1, mult, slot: Some(hi - 1), delta: 1 },
                    Sign::Short => Class { coef: 1, mult, slot: None, delta: 0 },
                })
                .collect()
        })
        .collect()
}

fn kpf_dp<C: Counter>(g: &SignedGraph, a: &[i64]) -> Option<C> {
    let n1 = g.n_plus_1();
    let u = out_bounds(g, a);
    if u.iter().any(|&x| x < 0) {
        return Some(C::zero());
    }
    let classes = kpf_classes(g);
    let sources = negative_sources(g);
    let one = C::from_big(&BigUint::from(1u8))?;
    let mut map: StateMap<C> = HashMap::new();
    map.insert(vec![0; n1], one);
    for v in 1..=n1 {
        let uv = u[v - 1];
        let mut cur: StateMap<C> = HashMap::with_capacity(map.len());
        for (mut key, cnt) in map {
            let r = a[v - 1] - key[v - 1] as i64;
            if r < 0 || r > uv {
                continue;
            }
            key[v - 1] = r as i32;
            add_into(&mut cur, key, cnt)?;
        }
        let cls = &classes[v];
        for (idx, class) in cls.iter().enumerate() {
            let row: Vec<C> = multichoose_row(class.mult, (uv / class.coef).max(0) as u64)?;
            cur = apply_class(cur, class, v - 1, &row, idx + 1 == cls.len())?;
        }
        let mut next: StateMap<C> = HashMap::with_capacity(cur.len());
        'states: for (key, cnt) in cur {
            if key[v - 1] != 0 {
                continue;
            }
            for w in v + 1..=n1 {
                let later: i64 = sources[w]
                    .iter()
                    .filter(|&&s| s > v)
                    .map(|&s| u[s - 1].max(0))
                    .sum();
                if a[w - 1] - key[w - 1] as i64 + later < 0 {
                    continue 'states;
                }
            }
            add_into(&mut next, key, cnt)?;
        }
        map = next;
    }
    Some(map.get(&vec![0; n1]).cloned().unwrap_or_else(C::zero))
}

/// Monomial of a root vector after the substitution `x_i = z_i z_{i+1} ... z_{n+1}`:
/// the exponent of `z_k` is the k-th partial sum of the root.
pub(crate) fn partial_sums(v: &[i64]) -> Vec<i32> {
    let mut s = 0i64;
    v.iter()
        .map(|&x| {
            s += x;
            s as i32
        })
        .collect()
}

/// Coefficient of `x^a` in the product of `(1 - L_f)^{-1}` over the factors,
/// each `L_f` being a sum of root monomials. Runs after the partial-sum
/// substitution so that every working exponent is nonnegative.
pub(crate) fn series_coefficient(factors: &[Vec<Vec<i64>>], a: &[i64]) -> Result<BigInt> {
    let target = partial_sums(a);
    if target.iter().any(|&x| x < 0) {
        return Ok(BigInt::zero());
    }
    let cap = TruncatedPoly::capped(&target);
    let mut p = TruncatedPoly::one(cap.clone());
    for f in factors {
        let l = TruncatedPoly::from_terms(cap.clone(), f.iter().map(|m| (partial_sums(m), q(1))));
        p = mul_geometric_inverse(&p, &l, &cap)?;
        if p.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    to_integer(&p.coeff(&target))
}

fn kpf_series(g: &SignedGraph, a: &[i64]) -> Result<BigInt> {
    let n1 = g.n_plus_1();
    let factors: Vec<Vec<Vec<i64>>> = g
        .edges()
        .iter()
        .map(|e| vec![(1..=n1).map(|v| e.coefficient(v)).collect()])
        .collect();
    series_coefficient(&factors, a)
}

pub(crate) fn run_counter<F, G>(fast: F, slow: G) -> BigUint
where
    F: FnOnce() -> Option<u128>,
    G: FnOnce() -> Option<BigUint>,
{
    match fast() {
        Some(x) => BigUint::from(x),
        None => slow().expect("arbitrary precision counting cannot overflow"),
    }
}

/// Number of nonnegative integer solutions of `M_G b = a`.
pub fn kpf(g: &SignedGraph, a: &[i64]) -> Result<BigInt> {
    kpf_with(g, a, Engine::Dp)
}

pub fn kpf_with(g: &SignedGraph, a: &[i64], engine: Engine) -> Result<BigInt> {
    check_netflow(g, a)?;
    match engine {
        Engine::Dp => Ok(BigInt::from(run_counter(
            || kpf_dp::<u128>(g, a),
            || kpf_dp::<BigUint>(g, a),
        ))),
        Engine::Series => kpf_series(g, a),
    }
}

/// Explicit integer flows in lexicographic order, at most `limit` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowList {
    pub flows: Vec<Vec<u64>>,
    pub truncated: bool,
}

/// Per-edge upper bounds derived from [`out_bounds`].
pub(crate) fn edge_bounds(g: &SignedGraph, a: &[i64]) -> Vec<i64> {
    let u = out_bounds(g, a);
    g.edges()
        .iter()
        .map(|e| {
            let c = e.coefficient(e.lo);
            (u[e.lo - 1] / c).max(-1)
        })
        .collect()
}

pub fn enumerate_integer_flows(g: &SignedGraph, a: &[i64], limit: usize) -> Result<FlowList> {
    check_netflow(g, a)?;
    let n1 = g.n_plus_1();
    let ne = g.num_edges();
    let ub = edge_bounds(g, a);
    let mut out = FlowList { flows: Vec::new(), truncated: false };
    if out_bounds(g, a).iter().any(|&x| x < 0) {
        return Ok(out);
    }
    // remaining positive / negative capacity at each vertex from edges k..
    let mut pos_cap = vec![vec![0i64; n1]; ne + 1];
    let mut neg_cap = vec![vec![0i64; n1]; ne + 1];
    for k in (0..ne).rev() {
        pos_cap[k] = pos_cap[k + 1].clone();
        neg_cap[k] = neg_cap[k + 1].clone();
        let e = g.edge(k);
        let b = ub[k].max(0);
        let ends: &[usize] = if e.is_loop() { &[e.lo] } else { &[e.lo, e.hi] };
        for &v in ends {
            let c = e.coefficient(v);
            if c > 0 {
                pos_cap[k][v - 1] += c * b;
            } else {
                neg_cap[k][v - 1] += -c * b;
            }
        }
    }
    let mut res: Vec<i64> = a.to_vec();
    let mut cur = vec![0u64; ne];
    fn rec(
        k: usize,
        g: &SignedGraph,
        ub: &[i64],
        pos_cap: &[Vec<i64>],
        neg_cap: &[Vec<i64>],
        res: &mut Vec<i64>,
        cur: &mut Vec<u64>,
        out: &mut FlowList,
        limit: usize,
    ) -> bool {
        // feasibility of the remaining vertex balances
        for v in 0..res.len() {
            if res[v] > pos_cap[k][v] || res[v] < -neg_cap[k][v] {
                return true;
            }
        }
        if k == cur.len() {
            if out.flows.len() == limit {
                out.truncated = true;
                return false;
            }
            out.flows.push(cur.clone());
            return true;
        }
        let e = g.edge(k);
        for x in 0..=ub[k].max(0) {
            res[e.lo - 1] -= e.coefficient(e.lo) * x;
            if !e.is_loop() {
                res[e.hi - 1] -= e.coefficient(e.hi) * x;
            }
            cur[k] = x as u64;
            let go_on = rec(k + 1, g, ub, pos_cap, neg_cap, res, cur, out, limit);
            res[e.lo - 1] += e.coefficient(e.lo) * x;
            if !e.is_loop() {
                res[e.hi - 1] += e.coefficient(e.hi) * x;
            }
            if !go_on {
                cur[k] = 0;
                return false;
            }
        }
        cur[k] = 0;
        true
    }
    rec(0, g, &ub, &pos_cap, &neg_cap, &mut res, &mut cur, &mut out, limit);
    Ok(out)
}

/// `L(t) = K_G(t a)`.
pub fn ehrhart(g: &SignedGraph, a: &[i64], t: u64) -> Result<BigInt> {
    let ta: Vec<i64> = a.iter().map(|&x| x * t as i64).collect();
    kpf(g, &ta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    All,
    Even,
}

/// Interpolated Ehrhart polynomial together with the samples it was fitted on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartFit {
    pub polynomial: Polynomial,
    pub dimension: usize,
    pub samples: Vec<(u64, BigInt)>,
    pub diagnostics: Vec<String>,
}

impl EhrhartFit {
    /// `d!` times the leading coefficient.
    pub fn normalized_volume(&self) -> Q {
        let f = crate::exact::factorial(self.dimension as u64);
        self.polynomial.leading() * Q::from_integer(BigInt::from(f))
    }

    pub fn polynomial_string(&self) -> String {
        self.polynomial.to_string()
    }
}

pub fn ehrhart_polynomial_fit(g: &SignedGraph, a: &[i64], parity: Parity) -> Result<EhrhartFit> {
    check_netflow(g, a)?;
    let Some((d, free)) = effective_dimension(g, a)? else {
        return Err(Error::Fit("the polytope is empty".into()));
    };
    let mut diagnostics = Vec::new();
    if free.len() != g.num_edges() {
        diagnostics.push(format!(
            "netflow on the cone boundary: {} of {} edges carry no flow; dimension taken on the rest",
            g.num_edges() - free.len(),
            g.num_edges()
        ));
    }
    let step = match parity {
        Parity::All => 1u64,
        Parity::Even => 2,
    };
    // t = 0 is a free fit point; one extra dilate guards the degree
    let fit_ts: Vec<u64> = (0..=d as u64).map(|k| k * step).collect();
    let check_ts = [(d as u64 + 1) * step];
    let all_ts: Vec<u64> = fit_ts.iter().chain(check_ts.iter()).copied().collect();
    let values: Vec<Result<BigInt>> = crate::pool::install(|| {
        all_ts.par_iter().map(|&t| ehrhart(g, a, t)).collect()
    });
    let mut samples = Vec::with_capacity(all_ts.len());
    for (t, v) in all_ts.iter().zip(values) {
        samples.push((*t, v?));
    }
    let points: Vec<(Q, Q)> = samples[..fit_ts.len()]
        .iter()
        .map(|(t, v)| (q(*t as i64), Q::from_integer(v.clone())))
        .collect();
    let poly = Polynomial::interpolate(&points);
    for (t, v) in &samples[fit_ts.len()..] {
        let predicted = poly.eval(&q(*t as i64));
        if predicted != Q::from_integer(v.clone()) {
            return Err(Error::Fit(format!(
                "L({t}) = {v} but the degree-{d} fit predicts {}; the Ehrhart function is a quasi-polynomial here{}",
                rational_to_string(&predicted),
                if parity == Parity::All { ", retry with even dilates" } else { "" }
            )));
        }
    }
    if poly.degree() != Some(d) {
        return Err(Error::Fit(format!(
            "fitted polynomial has degree {:?}, expected {d}",
            poly.degree()
        )));
    }
    Ok(EhrhartFit { polynomial: poly, dimension: d, samples, diagnostics })
}
