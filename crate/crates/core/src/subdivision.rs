//! Noncrossing bipartite trees, the reduction rules and the recursive
//! subdivision of flow polytopes into unit simplices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_netflow, effective_dimension, in_out_edges, Sign, SignedEdge, SignedGraph};
use crate::linalg::Q;

/// A signed bipartite noncrossing tree, stored as its signed weak composition.
///
/// Right vertex `j` is joined to the left vertices `s_j..=s_j + b_j`, where
/// `s_1 = 0` and `s_{j+1} = s_j + b_j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NoncrossingTree {
    pub left: usize,
    pub right: usize,
    pub composition: Vec<u64>,
    /// `true` for right vertices incident only to positive edges.
    pub positive: Vec<bool>,
}

impl NoncrossingTree {
    /// Tree edges as 0-based `(left, right)` pairs, grouped by right vertex.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.left == 0 || self.right == 0 {
            return out;
        }
        let mut s = 0usize;
        for (j, &b) in self.composition.iter().enumerate() {
            for l in s..=s + b as usize {
                out.push((l, j));
            }
            s += b as usize;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.left == 0 || self.right == 0
    }
}

impl std::fmt::Display for NoncrossingTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .composition
            .iter()
            .zip(&self.positive)
            .map(|(b, &p)| format!("{b}{}", if p { '+' } else { '-' }))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All signed noncrossing trees with `l` left and `r` right vertices, the right
/// vertices listed in `r_plus` (1-based) being positive. Lexicographic in the
/// composition.
pub fn enumerate_trees(l: usize, r: usize, r_plus: &[usize]) -> Vec<NoncrossingTree> {
    let positive: Vec<bool> = (1..=r).map(|j| r_plus.contains(&j)).collect();
    if l == 0 || r == 0 {
        return vec![NoncrossingTree { left: l, right: r, composition: vec![0; r], positive }];
    }
    let mut out = Vec::new();
    let mut comp = vec![0u64; r];
    fn rec(j: usize, left: u64, comp: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j + 1 == comp.len() {
            comp[j] = left;
            out.push(comp.clone());
            return;
        }
        for x in 0..=left {
            comp[j] = x;
            rec(j + 1, left - x, comp, out);
        }
    }
    let mut comps = Vec::new();
    rec(0, (l - 1) as u64, &mut comp, &mut comps);
    for c in comps {
        out.push(NoncrossingTree { left: l, right: r, composition: c, positive: positive.clone() });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

/// Outcome of one reduction step. Edges of each output graph are the edges of
/// the input minus the dropped ones, in order, followed by `new_edge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub rule: Rule,
    /// The shared vertex.
    pub vertex: usize,
    /// Index of the incoming negative edge `(r, i, -)`.
    pub incoming: usize,
    /// Index of the edge positively incident to `i`.
    pub outgoing: usize,
    pub new_edge: SignedEdge,
    pub g1: SignedGraph,
    pub g2: SignedGraph,
    pub g3: SignedGraph,
    /// Whether `g1` is the outcome without the incoming edge (otherwise it is
    /// the outcome without the outgoing one).
    pub g1_drops_incoming: bool,
}

/// `edge(e1, e2)` for an incoming `e1 = (r, i, -)` and an outgoing `e2` at `i`.
pub fn tree_edge(e1: SignedEdge, e2: SignedEdge, i: usize) -> Result<SignedEdge> {
    let r = e1.lo;
    if e1.sign != Sign::Minus || e1.hi != i {
        return Err(Error::Precondition(format!("{e1} is not incoming at {i}")));
    }
    match e2.sign {
        Sign::Short => Err(Error::Precondition(format!("{e2}: short loops take no part in reductions"))),
        _ if e2.is_loop() && e2.lo == i => SignedEdge::new(r, i, Sign::Plus),
        _ if e2.lo == i && e2.hi > i => SignedEdge::new(r, e2.hi, e2.sign),
        Sign::Plus if e2.hi == i => {
            let t = e2.lo;
            SignedEdge::new(r.min(t), r.max(t), Sign::Plus)
        }
        _ => Err(Error::Precondition(format!("{e2} is not outgoing at {i}"))),
    }
}

fn classify(g: &SignedGraph, inc: usize, out: usize, i: usize) -> Option<Rule> {
    let e1 = g.edge(inc);
    let e2 = g.edge(out);
    if e1.sign != Sign::Minus || e1.hi != i || e1.lo >= i {
        return None;
    }
    let r = e1.lo;
    match e2.sign {
        Sign::Short => None,
        Sign::Plus if e2.is_loop() => (e2.lo == i).then_some(Rule::R6),
        Sign::Minus if e2.lo == i => Some(Rule::R1),
        Sign::Plus if e2.lo == i => Some(Rule::R2),
        Sign::Plus if e2.hi == i => Some(match e2.lo.cmp(&r) {
            std::cmp::Ordering::Greater => Rule::R3,
            std::cmp::Ordering::Less => Rule::R4,
            std::cmp::Ordering::Equal => Rule::R5,
        }),
        _ => None,
    }
}

/// Apply the reduction rule matching edges `e1` and `e2` (in either order).
pub fn reduce(g: &SignedGraph, e1: usize, e2: usize) -> Result<Reduction> {
    if e1 >= g.num_edges() || e2 >= g.num_edges() || e1 == e2 {
        return Err(Error::NotReducible(e1, e2));
    }
    for (inc, out) in [(e1, e2), (e2, e1)] {
        let i = g.edge(inc).hi;
        let Some(rule) = classify(g, inc, out, i) else { continue };
        let new_edge = tree_edge(g.edge(inc), g.edge(out), i)?;
        let without = |drop: &[usize]| -> Result<SignedGraph> {
            let mut h = g.restrict(|k| !drop.contains(&k));
            h.push(new_edge)?;
            Ok(h)
        };
        let drop_inc = without(&[inc])?;
        let drop_out = without(&[out])?;
        let g3 = without(&[inc, out])?;
        // the rule's G1 drops the incoming edge except in (R4) and (R5)
        let g1_drops_incoming = !matches!(rule, Rule::R4 | Rule::R5);
        let (g1, g2) = if g1_drops_incoming { (drop_inc, drop_out) } else { (drop_out, drop_inc) };
        return Ok(Reduction { rule, vertex: i, incoming: inc, outgoing: out, new_edge, g1, g2, g3, g1_drops_incoming });
    }
    Err(Error::NotReducible(e1, e2))
}

/// Which outcome of a reduction a reassigned flow lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    G1,
    G2,
}

/// Move a flow on `g` onto the outcomes of `red`: the new edge takes
/// `m = min(p, q)`, the two original edges keep `p - m` and `q - m`, and the one
/// that drops to zero is deleted. Both outcomes are returned when `p = q`.
pub fn reassign_flow(g: &SignedGraph, red: &Reduction, flow: &[Q]) -> Result<Vec<(Outcome, Vec<Q>)>> {
    if flow.len() != g.num_edges() {
        return Err(Error::InvalidFlow(format!("{} values for {} edges", flow.len(), g.num_edges())));
    }
    let p = &flow[red.incoming];
    let q = &flow[red.outgoing];
    let m = if p <= q { p.clone() } else { q.clone() };
    let build = |drop: usize| -> Vec<Q> {
        let mut v: Vec<Q> = (0..flow.len())
            .filter(|&k| k != drop)
            .map(|k| {
                if k == red.incoming || k == red.outgoing {
                    &flow[k] - &m
                } else {
                    flow[k].clone()
                }
            })
            .collect();
        v.push(m.clone());
        v
    };
    let mut out = Vec::new();
    let inc_outcome = if red.g1_drops_incoming { Outcome::G1 } else { Outcome::G2 };
    let out_outcome = if red.g1_drops_incoming { Outcome::G2 } else { Outcome::G1 };
    if p <= q {
        out.push((inc_outcome, build(red.incoming)));
    }
    if q <= p {
        out.push((out_outcome, build(red.outgoing)));
    }
    out.sort_by_key(|(o, _)| *o as u8);
    Ok(out)
}

/// The graph `G_T^(i)` for every noncrossing tree at vertex `i`.
///
/// `theta_in` and `theta_out` are permutations of the incoming and outgoing
/// edge lists returned by [`in_out_edges`]; `None` keeps the canonical order.
/// Vertex labels are kept: vertex `i` is left isolated.
pub fn eliminate_vertex(
    g: &SignedGraph,
    i: usize,
    theta_in: Option<&[usize]>,
    theta_out: Option<&[usize]>,
) -> Result<Vec<(NoncrossingTree, SignedGraph)>> {
    let io = in_out_edges(g, i)?;
    if !io.loops.is_empty() {
        return Err(Error::Precondition(format!("vertex {i} carries a loop")));
    }
    let order = |list: &[usize], theta: Option<&[usize]>, what: &str| -> Result<Vec<usize>> {
        match theta {
            None => Ok(list.to_vec()),
            Some(p) => {
                let mut sorted = p.to_vec();
                sorted.sort_unstable();
                if sorted != (0..list.len()).collect::<Vec<_>>() {
                    return Err(Error::Precondition(format!("{what} order is not a permutation of 0..{}", list.len())));
                }
                Ok(p.iter().map(|&k| list[k]).collect())
            }
        }
    };
    let ins = order(&io.incoming, theta_in, "incoming")?;
    let outs = order(&io.outgoing, theta_out, "outgoing")?;
    let rest = g.restrict(|k| g.edge(k).lo != i && g.edge(k).hi != i);
    let r_plus: Vec<usize> = outs
        .iter()
        .enumerate()
        .filter(|(_, &k)| g.edge(k).sign == Sign::Plus)
        .map(|(j, _)| j + 1)
        .collect();
    let trees = enumerate_trees(ins.len(), outs.len(), &r_plus);
    let mut result = Vec::with_capacity(trees.len());
    for t in trees {
        let mut h = rest.clone();
        for (l, r) in t.edges() {
            h.push(tree_edge(g.edge(ins[l]), g.edge(outs[r]), i)?)?;
        }
        result.push((t, h));
    }
    Ok(result)
}

/// How the orders `theta_I`, `theta_O` are picked at each elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderChoice {
    Canonical,
    /// Fresh uniformly random orders at every elimination, from this seed.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct SubdivideOptions {
    pub orders: OrderChoice,
    /// Keep at most this many leaf trails.
    pub trail_limit: usize,
}

impl Default for SubdivideOptions {
    fn default() -> Self {
        SubdivideOptions { orders: OrderChoice::Canonical, trail_limit: 0 }
    }
}

pub type Trail = Vec<(usize, NoncrossingTree)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionResult {
    /// Number of full-dimensional leaves, which is the normalized volume.
    pub leaves: BigInt,
    pub dimension: usize,
    pub trails: Vec<Trail>,
    pub trails_truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chain {
    /// `a = e_1 - e_{n+1}`: eliminate `2..=n`, leaves live on `{1, n+1}`.
    TypeA,
    /// `a = 2 e_1`: eliminate `2..=n+1`, leaves are loops at 1.
    Signed,
}

struct Subdivider {
    chain: Chain,
    last: usize,
    dim: usize,
    rng: Option<ChaCha8Rng>,
    memo: HashMap<(usize, Vec<SignedEdge>), BigInt>,
    trail_limit: usize,
    trails: Vec<Trail>,
    truncated: bool,
}

impl Subdivider {
    fn leaf(&self, g: &SignedGraph) -> Result<BigInt> {
        let ok = match self.chain {
            Chain::TypeA => g.edges().iter().all(|e| e.sign == Sign::Minus && e.lo == 1 && e.hi == g.n_plus_1()),
            Chain::Signed => g.edges().iter().all(|e| e.sign == Sign::Plus && e.lo == 1 && e.hi == 1),
        };
        if !ok {
            return Err(Error::Internal(format!("leaf graph has unexpected edges: {g}")));
        }
        Ok(if g.num_edges() == self.dim + 1 { BigInt::one() } else { BigInt::zero() })
    }

    fn go(&mut self, g: &SignedGraph, i: usize, trail: &mut Trail) -> Result<BigInt> {
        if i > self.last {
            let c = self.leaf(g)?;
            if !c.is_zero() && self.trail_limit > 0 {
                if self.trails.len() < self.trail_limit {
                    self.trails.push(trail.clone());
                } else {
                    self.truncated = true;
                }
            }
            return Ok(c);
        }
        let memo_ok = self.rng.is_none() && self.trail_limit == 0;
        let key = if memo_ok {
            let mut es = g.edges().to_vec();
            es.sort_unstable();
            let key = (i, es);
            if let Some(c) = self.memo.get(&key) {
                return Ok(c.clone());
            }
            Some(key)
        } else {
            None
        };
        let (ti, to) = match self.rng.as_mut() {
            None => (None, None),
            Some(rng) => {
                let io = in_out_edges(g, i)?;
                let mut a: Vec<usize> = (0..io.incoming.len()).collect();
                let mut b: Vec<usize> = (0..io.outgoing.len()).collect();
                a.shuffle(rng);
                b.shuffle(rng);
                (Some(a), Some(b))
            }
        };
        let outcomes = eliminate_vertex(g, i, ti.as_deref(), to.as_deref())?;
        let mut total = BigInt::zero();
        for (t, h) in outcomes {
            trail.push((i, t));
            total += self.go(&h, i + 1, trail)?;
            trail.pop();
        }
        if let Some(k) = key {
            self.memo.insert(k, total.clone());
        }
        Ok(total)
    }
}

/// Subdivide `F_G(a)` down to unit simplices by eliminating vertices in order,
/// for `a = e_1 - e_{n+1}` (negative graphs) or `a = 2 e_1` (loopless signed
/// graphs). The number of leaves is the normalized volume.
pub fn subdivide_full(g: &SignedGraph, a: &[i64], opts: &SubdivideOptions) -> Result<SubdivisionResult> {
    check_netflow(g, a)?;
    let n1 = g.n_plus_1();
    if n1 < 2 {
        return Err(Error::Precondition("need at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut type_a = vec![0i64; n1];
    type_a[0] = 1;
    type_a[n1 - 1] = -1;
    let mut two = vec![0i64; n1];
    two[0] = 2;
    let (chain, last) = if a == type_a.as_slice() {
        if !g.is_all_negative() {
            return Err(Error::Precondition("netflow e_1 - e_{n+1} needs a graph with only negative edges".into()));
        }
        if let Some(v) = (2..n1).find(|&v| g.indegree(v) == 0) {
            return Err(Error::Precondition(format!("internal vertex {v} has no incoming edge")));
        }
        (Chain::TypeA, n1 - 1)
    } else if a == two.as_slice() {
        if g.has_loops() {
            return Err(Error::UnsupportedLoop("the signed subdivision chain needs a loopless graph".into()));
        }
        (Chain::Signed, n1)
    } else {
        return Err(Error::Precondition("netflow must be e_1 - e_{n+1} or 2 e_1".into()));
    };
    let Some((dim, _)) = effective_dimension(g, a)? else {
        return Ok(SubdivisionResult { leaves: BigInt::zero(), dimension: 0, trails: Vec::new(), trails_truncated: false });
    };
    let mut s = Subdivider {
        chain,
        last,
        dim,
        rng: match opts.orders {
            OrderChoice::Canonical => None,
            OrderChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        memo: HashMap::new(),
        trail_limit: opts.trail_limit,
        trails: Vec::new(),
        truncated: false,
    };
    let leaves = s.go(g, 2, &mut Vec::new())?;
    Ok(SubdivisionResult { leaves, dimension: dim, trails: s.trails, trails_truncated: s.truncated })
}
