//! Cycle parity, the vertex criterion, and vertex enumeration.
//!
//! An `a`-flow is a vertex of `F_G(a)` exactly when its support contains no even
//! cycle, i.e. when the support columns of `M_G` are linearly independent.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_netflow, incidence_matrix, is_flow_rational, Sign, SignedGraph};
use crate::linalg::{kernel, rank_i64, select_columns, solve_unique, Q};

/// One oriented traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

/// A closed walk `e_1, ..., e_k`: the end of each step is the start of the next,
/// cyclically. Vertices may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePath {
    pub steps: Vec<Step>,
}

impl CyclePath {
    /// Build from edge indices and a start vertex, orienting each edge in turn.
    pub fn from_edges(g: &SignedGraph, edges: &[usize], start: usize) -> Result<CyclePath> {
        let mut steps = Vec::with_capacity(edges.len());
        let mut at = start;
        for &k in edges {
            let e = g
                .edges()
                .get(k)
                .ok_or_else(|| Error::InvalidCycle(format!("edge index {k} out of range")))?;
            if e.lo != at && e.hi != at {
                return Err(Error::InvalidCycle(format!("{e} does not touch vertex {at}")));
            }
            let to = e.other_end(at);
            steps.push(Step { edge: k, from: at, to });
            at = to;
        }
        let c = CyclePath { steps };
        c.validate(g)?;
        Ok(c)
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        for (t, s) in self.steps.iter().enumerate() {
            let e = g
                .edges()
                .get(s.edge)
                .ok_or_else(|| Error::InvalidCycle(format!("edge index {} out of range", s.edge)))?;
            let ok = (e.lo == s.from && e.hi == s.to) || (e.hi == s.from && e.lo == s.to);
            if !ok {
                return Err(Error::InvalidCycle(format!("step {t} does not traverse {e}")));
            }
            let next = &self.steps[(t + 1) % self.steps.len()];
            if s.to != next.from {
                return Err(Error::InvalidCycle(format!("step {t} ends at {} but the next starts at {}", s.to, next.from)));
            }
        }
        Ok(())
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Number of turns: consecutive edges meeting at a vertex with the same
/// incidence sign.
pub fn turns(g: &SignedGraph, c: &CyclePath) -> Result<usize> {
    c.validate(g)?;
    let k = c.steps.len();
    Ok((0..k)
        .filter(|&t| {
            let v = c.steps[t].to;
            let a = g.edge(c.steps[t].edge).positively_incident(v);
            let b = g.edge(c.steps[(t + 1) % k].edge).positively_incident(v);
            a == b
        })
        .count())
}

pub fn cycle_parity(g: &SignedGraph, c: &CyclePath) -> Result<Parity> {
    Ok(if turns(g, c)? % 2 == 0 { Parity::Even } else { Parity::Odd })
}

/// Parity read off the kernel of the cycle's columns: even iff some signed
/// zero-flow is supported on every edge of the cycle.
pub fn kernel_parity(g: &SignedGraph, c: &CyclePath) -> Result<Parity> {
    c.validate(g)?;
    let cols: Vec<usize> = c.edge_set().into_iter().collect();
    let m = select_columns(&incidence_matrix(g), &cols);
    let basis = kernel(&m);
    // a generic combination of the basis has full support iff no coordinate
    // vanishes on the whole kernel
    let full = !basis.is_empty() && (0..cols.len()).all(|j| basis.iter().any(|v| !v[j].is_zero()));
    Ok(if full { Parity::Even } else { Parity::Odd })
}

/// All simple cycles: loops, pairs of parallel edges, and cycles through
/// distinct vertices, each reported once with its smallest vertex first.
pub fn simple_cycles(g: &SignedGraph) -> Vec<CyclePath> {
    let n1 = g.n_plus_1();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n1 + 1];
    let mut out = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            out.push(CyclePath { steps: vec![Step { edge: k, from: e.lo, to: e.lo }] });
        } else {
            adj[e.lo].push((e.hi, k));
            adj[e.hi].push((e.lo, k));
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    fn dfs(
        s: usize,
        at: usize,
        adj: &[Vec<(usize, usize)>],
        on_path: &mut Vec<bool>,
        steps: &mut Vec<Step>,
        seen: &mut BTreeSet<Vec<usize>>,
        out: &mut Vec<CyclePath>,
    ) {
        for &(w, k) in &adj[at] {
            if steps.iter().any(|st| st.edge == k) {
                continue;
            }
            if w == s && !steps.is_empty() {
                steps.push(Step { edge: k, from: at, to: w });
                let mut key: Vec<usize> = steps.iter().map(|st| st.edge).collect();
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(CyclePath { steps: steps.clone() });
                }
                steps.pop();
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                steps.push(Step { edge: k, from: at, to: w });
                dfs(s, w, adj, on_path, steps, seen, out);
                steps.pop();
                on_path[w] = false;
            }
        }
    }
    for s in 1..=n1 {
        let mut on_path = vec![false; n1 + 1];
        on_path[s] = true;
        dfs(s, s, &adj, &mut on_path, &mut Vec::new(), &mut seen, &mut out);
    }
    out
}

/// Whether the edges in `subset` contain an even cycle, i.e. carry a nonzero
/// signed zero-flow.
pub fn has_even_cycle(g: &SignedGraph, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return false;
    }
    let m = select_columns(&incidence_matrix(g), subset);
    rank_i64(&m) < subset.len()
}

/// Vertex test for an `a`-flow: its support contains no even cycle.
pub fn is_vertex(g: &SignedGraph, a: &[i64], flow: &[Q]) -> Result<bool> {
    check_netflow(g, a)?;
    if !is_flow_rational(g, a, flow) {
        return Err(Error::InvalidFlow("not a nonnegative a-flow on this graph".into()));
    }
    let support: Vec<usize> = (0..flow.len()).filter(|&k| flow[k].is_positive()).collect();
    Ok(!has_even_cycle(g, &support))
}

/// Increasing negative paths as edge lists, from `from` to every reachable vertex.
fn increasing_paths(g: &SignedGraph, from: usize, avoid: &[bool]) -> Vec<(usize, Vec<usize>)> {
    let mut out = vec![(from, Vec::new())];
    let mut stack = vec![(from, Vec::<usize>::new())];
    while let Some((at, path)) = stack.pop() {
        for (k, e) in g.edges().iter().enumerate() {
            if e.sign == Sign::Minus && e.lo == at && !avoid[e.hi] {
                let mut p = path.clone();
                p.push(k);
                out.push((e.hi, p.clone()));
                stack.push((e.hi, p));
            }
        }
    }
    out
}

fn path_vertices(g: &SignedGraph, path: &[usize]) -> Vec<usize> {
    path.iter().map(|&k| g.edge(k).hi).collect()
}

fn reject_short(g: &SignedGraph) -> Result<()> {
    if g.edges().iter().any(|e| e.sign == Sign::Short) {
        return Err(Error::UnsupportedLoop("short loops are outside the (2,0,...,0) vertex forms".into()));
    }
    Ok(())
}

/// Vertices of `F_G(2, 0, ..., 0)`, generated from the support forms: a stem of
/// negative edges carrying 2 from vertex 1 to some `v`, then either a loop at
/// `v`, or two vertex-disjoint increasing negative branches from `v` (one of
/// them possibly empty) whose ends are joined by a positive edge, each carrying 1.
pub fn enumerate_vertices_2e1(g: &SignedGraph) -> Result<Vec<Vec<u64>>> {
    reject_short(g)?;
    let n1 = g.n_plus_1();
    let ne = g.num_edges();
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let none = vec![false; n1 + 1];
    for (v, stem) in increasing_paths(g, 1, &none) {
        let mut base = vec![0u64; ne];
        for &k in &stem {
            base[k] = 2;
        }
        for (k, e) in g.edges().iter().enumerate() {
            if e.sign == Sign::Plus && e.is_loop() && e.lo == v {
                let mut f = base.clone();
                f[k] = 1;
                found.insert(f);
            }
        }
        // branches: first ends at p, second at q, joined by (p, q, +) with p < q
        for (p, b1) in increasing_paths(g, v, &none) {
            let mut used = vec![false; n1 + 1];
            for w in path_vertices(g, &b1) {
                used[w] = true;
            }
            for (q, b2) in increasing_paths(g, v, &used) {
                if q <= p {
                    continue;
                }
                for (k, e) in g.edges().iter().enumerate() {
                    if e.sign == Sign::Plus && e.lo == p && e.hi == q {
                        let mut f = base.clone();
                        for &x in b1.iter().chain(&b2) {
                            f[x] += 1;
                        }
                        f[k] += 1;
                        found.insert(f);
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Number of vertices of `F_G(2, 0, ..., 0)` by path counting, without listing them.
pub fn count_vertices_2e1(g: &SignedGraph) -> Result<BigInt> {
    reject_short(g)?;
    let n1 = g.n_plus_1();
    // neg[x][z]: number of negative edges (x, z, -)
    let mut neg = vec![vec![0u64; n1 + 1]; n1 + 1];
    let mut pos = vec![vec![0u64; n1 + 1]; n1 + 1];
    for e in g.edges() {
        match e.sign {
            Sign::Minus => neg[e.lo][e.hi] += 1,
            Sign::Plus => pos[e.lo][e.hi] += 1,
            Sign::Short => {}
        }
    }
    // stems[v]: increasing negative paths 1 -> v
    let mut stems = vec![BigInt::zero(); n1 + 1];
    stems[1] = BigInt::from(1);
    for v in 2..=n1 {
        let mut s = BigInt::zero();
        for u in 1..v {
            if neg[u][v] > 0 {
                s += &stems[u] * neg[u][v];
            }
        }
        stems[v] = s;
    }
    let mut total = BigInt::zero();
    for v in 1..=n1 {
        if stems[v].is_zero() {
            continue;
        }
        let mut here = BigInt::from(pos[v][v]);
        // pairs of internally disjoint increasing paths v -> p, v -> q with p < q
        let mut memo: HashMap<(usize, usize, usize, usize), BigInt> = HashMap::new();
        for p in v..=n1 {
            for q in p + 1..=n1 {
                if pos[p][q] > 0 {
                    here += disjoint_pairs(&neg, v, v, p, q, &mut memo) * pos[p][q];
                }
            }
        }
        total += &stems[v] * here;
    }
    Ok(total)
}

/// Pairs of increasing paths from `(x, y)` to `(p, q)` sharing no vertex after
/// the start. The path with the smaller unfinished end is extended first, which
/// makes the extension order canonical.
fn disjoint_pairs(
    neg: &[Vec<u64>],
    x: usize,
    y: usize,
    p: usize,
    q: usize,
    memo: &mut HashMap<(usize, usize, usize, usize), BigInt>,
) -> BigInt {
    if x == p && y == q {
        return BigInt::from(1);
    }
    if x > p || y > q {
        return BigInt::zero();
    }
    if let Some(c) = memo.get(&(x, y, p, q)) {
        return c.clone();
    }
    let a_done = x == p;
    let b_done = y == q;
    let extend_a = !a_done && (b_done || x <= y);
    let n1 = neg.len() - 1;
    let mut total = BigInt::zero();
    if extend_a {
        for z in x + 1..=n1 {
            if neg[x][z] > 0 && z != y {
                total += disjoint_pairs(neg, z, y, p, q, memo) * neg[x][z];
            }
        }
    } else {
        for z in y + 1..=n1 {
            if neg[y][z] > 0 && z != x {
                total += disjoint_pairs(neg, x, z, p, q, memo) * neg[y][z];
            }
        }
    }
    memo.insert((x, y, p, q), total.clone());
    total
}

/// Number of increasing negative paths `1 -> n+1`, the vertex count of
/// `F_H(e_1 - e_{n+1})` for a negative graph `H`.
pub fn count_vertices_type_a(g: &SignedGraph) -> Result<BigInt> {
    if !g.is_all_negative() {
        return Err(Error::Precondition("path counting needs a graph with only negative edges".into()));
    }
    let n1 = g.n_plus_1();
    let mut ways = vec![BigInt::zero(); n1 + 1];
    ways[1] = BigInt::from(1);
    for v in 2..=n1 {
        let mut s = BigInt::zero();
        for e in g.edges() {
            if e.hi == v {
                s += &ways[e.lo];
            }
        }
        ways[v] = s;
    }
    Ok(ways[n1].clone())
}

pub const DEFAULT_SUPPORT_BOUND: usize = 20;

/// Vertices of `F_G(a)` by exhaustive search over independent edge subsets.
pub fn enumerate_vertices_general(g: &SignedGraph, a: &[i64], bound: usize) -> Result<Vec<Vec<Q>>> {
    check_netflow(g, a)?;
    let ne = g.num_edges();
    if ne > bound {
        return Err(Error::TooLarge { what: "edge count".into(), got: ne, limit: bound });
    }
    let m = incidence_matrix(g);
    let r = rank_i64(&m);
    let mut found: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        m: &[Vec<i64>],
        a: &[i64],
        r: usize,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<Q>>,
    ) {
        if let Some(x) = solve_unique(&select_columns(m, chosen), a) {
            if x.iter().all(|v| v.is_positive()) || (chosen.is_empty() && a.iter().all(|&v| v == 0)) {
                let mut full = vec![Q::zero(); m[0].len()];
                for (&k, v) in chosen.iter().zip(x) {
                    full[k] = v;
                }
                found.insert(full);
            }
        }
        if chosen.len() == r {
            return;
        }
        for k in start..m[0].len() {
            chosen.push(k);
            if rank_i64(&select_columns(m, chosen)) == chosen.len() {
                rec(k + 1, m, a, r, chosen, found);
            }
            chosen.pop();
        }
    }
    if ne == 0 {
        return Ok(if a.iter().all(|&v| v == 0) { vec![Vec::new()] } else { Vec::new() });
    }
    rec(0, &m, a, r, &mut chosen, &mut found);
    Ok(found.into_iter().collect())
}
