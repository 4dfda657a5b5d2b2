//! Dynamic integer flows and the dynamic Kostant partition function.
//!
//! A positive edge `(i, j, +)` splits into a left half at `i` and a right half at
//! `j`. Every unit of flow on the left half creates one more right half-edge at
//! `j`, and each right half carries its own flow out of `j`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::count::{multichoose_row, Counter};
use crate::error::{Error, Result};
use crate::exact::multichoose;
use crate::graph::{check_netflow, Sign, SignedEdge, SignedGraph};
use crate::kostant::{apply_class, kpf, negative_sources, out_bounds, run_counter, series_coefficient, Class, Engine, StateMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PositiveEdgeFlow {
    /// Canonical index of the positive edge.
    pub edge: usize,
    /// Flow on the left half-edge.
    pub left: u64,
    /// Flows on the right halves: the original one first, then the `left`
    /// extra halves in creation order.
    pub right: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DynamicFlow {
    /// `(edge index, flow)` for every negative edge, in canonical order.
    pub negative: Vec<(usize, u64)>,
    /// One entry per positive edge, in canonical order.
    pub positive: Vec<PositiveEdgeFlow>,
}

impl DynamicFlow {
    /// Ordering key: negative flows, then left halves, then right halves.
    pub fn key(&self) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        (
            self.negative.iter().map(|x| x.1).collect(),
            self.positive.iter().map(|p| p.left).collect(),
            self.positive.iter().flat_map(|p| p.right.iter().copied()).collect(),
        )
    }

    /// Number of extra right half-edges over all positive edges.
    pub fn extra_halves(&self) -> u64 {
        self.positive.iter().map(|p| p.left).sum()
    }
}

pub(crate) fn reject_loops(g: &SignedGraph) -> Result<()> {
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(Error::UnsupportedLoop(format!(
            "{e}: dynamic flows are defined for loopless graphs; use the Ehrhart volume instead"
        )));
    }
    Ok(())
}

/// Check the dynamic conservation law at every vertex.
pub fn is_dynamic_flow(g: &SignedGraph, a: &[i64], f: &DynamicFlow) -> bool {
    let n1 = g.n_plus_1();
    if a.len() != n1 {
        return false;
    }
    // balance[v] = inflow + a_v - outflow, must vanish
    let mut bal: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut seen = vec![false; g.num_edges()];
    for &(k, x) in &f.negative {
        let Some(e) = g.edges().get(k) else { return false };
        if e.sign != Sign::Minus || seen[k] {
            return false;
        }
        seen[k] = true;
        bal[e.lo - 1] -= x as i128;
        bal[e.hi - 1] += x as i128;
    }
    for p in &f.positive {
        let Some(e) = g.edges().get(p.edge) else { return false };
        if e.sign != Sign::Plus || e.is_loop() || seen[p.edge] || p.right.len() as u64 != p.left + 1 {
            return false;
        }
        seen[p.edge] = true;
        bal[e.lo - 1] -= p.left as i128;
        for &r in &p.right {
            bal[e.hi - 1] -= r as i128;
        }
    }
    seen.iter().all(|&s| s) && bal.iter().all(|&b| b == 0)
}

fn dyn_dp<C: Counter>(g: &SignedGraph, a: &[i64]) -> Option<C> {
    let n1 = g.n_plus_1();
    let u = out_bounds(g, a);
    if u.iter().any(|&x| x < 0) {
        return Some(C::zero());
    }
    let sources = negative_sources(g);
    // slots 0..n1: negative inflow; n1..2 n1: extra right halves
    let mut pos_in = vec![0u64; n1 + 1];
    let mut groups: Vec<Vec<((Sign, usize), u64)>> = vec![Vec::new(); n1 + 1];
    for e in g.edges() {
        if e.sign == Sign::Plus {
            pos_in[e.hi] += 1;
        }
        let key = (e.sign, e.hi);
        match groups[e.lo].iter_mut().find(|(k, _)| *k == key) {
            Some((_, m)) => *m += 1,
            None => groups[e.lo].push((key, 1)),
        }
    }
    let classes: Vec<Vec<Class>> = groups
        .into_iter()
        .map(|list| {
            list.into_iter()
                .map(|((sign, hi), mult)| Class {
                    coef: 1,
                    mult,
                    slot: Some(if sign == Sign::Minus { hi - 1 } else { n1 + hi - 1 }),
                    delta: 1,
                })
                .collect()
        })
        .collect();
    let one = C::from_big(&BigUint::from(1u8))?;
    let mut map: StateMap<C> = HashMap::new();
    map.insert(vec![0; 2 * n1], one);
    let mut half_ways: HashMap<(u64, u64), C> = HashMap::new();
    for v in 1..=n1 {
        let uv = u[v - 1];
        let cls = &classes[v];
        // right halves at v first, with a state dependent number of slots
        let mut cur: StateMap<C> = HashMap::with_capacity(map.len());
        for (mut key, cnt) in map {
            let t = a[v - 1] + key[v - 1] as i64;
            if t < 0 || t > uv {
                continue;
            }
            let h = pos_in[v] + key[n1 + v - 1] as u64;
            key[n1 + v - 1] = 0;
            let start = if cls.is_empty() { t } else { 0 };
            for s in start..=t {
                let w = match half_ways.get(&(s as u64, h)) {
                    Some(w) => w.clone(),
                    None => {
                        let w = C::from_big(&multichoose(s as u64, h))?;
                        half_ways.insert((s as u64, h), w.clone());
                        w
                    }
                };
                if w.is_zero() {
                    continue;
                }
                let mut k2 = key.clone();
                k2[v - 1] = (t - s) as i32;
                let c = cnt.checked_mul(&w)?;
                match cur.get_mut(&k2) {
                    Some(x) => *x = x.checked_add(&c)?,
                    None => {
                        cur.insert(k2, c);
                    }
                }
            }
        }
        for (idx, class) in cls.iter().enumerate() {
            let row: Vec<C> = multichoose_row(class.mult, uv.max(0) as u64)?;
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
                if a[w - 1] + key[w - 1] as i64 + later < 0 {
                    continue 'states;
                }
            }
            match next.get_mut(&key) {
                Some(x) => *x = x.checked_add(&cnt)?,
                None => {
                    next.insert(key, cnt);
                }
            }
        }
        map = next;
    }
    Some(map.get(&vec![0; 2 * n1]).cloned().unwrap_or_else(C::zero))
}

fn dyn_series(g: &SignedGraph, a: &[i64]) -> Result<BigInt> {
    let n1 = g.n_plus_1();
    let unit = |i: usize| {
        let mut v = vec![0i64; n1];
        v[i - 1] = 1;
        v
    };
    let factors: Vec<Vec<Vec<i64>>> = g
        .edges()
        .iter()
        .map(|e| match e.sign {
            Sign::Minus => vec![(1..=n1).map(|v| e.coefficient(v)).collect()],
            _ => vec![unit(e.lo), unit(e.hi)],
        })
        .collect();
    series_coefficient(&factors, a)
}

/// Number of dynamic integer `a`-flows on a loopless signed graph.
pub fn dyn_kpf(g: &SignedGraph, a: &[i64]) -> Result<BigInt> {
    dyn_kpf_with(g, a, Engine::Dp)
}

pub fn dyn_kpf_with(g: &SignedGraph, a: &[i64], engine: Engine) -> Result<BigInt> {
    check_netflow(g, a)?;
    reject_loops(g)?;
    match engine {
        Engine::Dp => Ok(BigInt::from(run_counter(
            || dyn_dp::<u128>(g, a),
            || dyn_dp::<BigUint>(g, a),
        ))),
        Engine::Series => dyn_series(g, a),
    }
}

/// One term of the expansion of `K^dyn` as a sum of ordinary partition functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynTerm {
    /// `(positive edge index, left-half flow)`.
    pub left_flows: Vec<(usize, u64)>,
    /// Negative edges plus one short loop `e_j` per right half-edge.
    pub graph: SignedGraph,
    pub netflow: Vec<i64>,
    pub count: BigInt,
}

/// Expand `K^dyn_G(a)` over the left-half flows. Terms with count zero are
/// dropped unless the graph has no positive edge.
pub fn dyn_decompose(g: &SignedGraph, a: &[i64]) -> Result<Vec<DynTerm>> {
    check_netflow(g, a)?;
    reject_loops(g)?;
    let u = out_bounds(g, a);
    let positives: Vec<(usize, SignedEdge)> = g.positive_edges().map(|(k, e)| (k, *e)).collect();
    let negatives: Vec<SignedEdge> = g.edges().iter().filter(|e| e.sign == Sign::Minus).copied().collect();
    if u.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut left = vec![0u64; positives.len()];
    loop {
        // spent[v] = total left flow leaving v
        let mut spent = vec![0i64; g.n_plus_1()];
        for ((_, e), &l) in positives.iter().zip(&left) {
            spent[e.lo - 1] += l as i64;
        }
        if spent.iter().zip(&u).all(|(s, b)| s <= b) {
            let mut edges = negatives.clone();
            let mut netflow = a.to_vec();
            for ((_, e), &l) in positives.iter().zip(&left) {
                netflow[e.lo - 1] -= l as i64;
                for _ in 0..=l {
                    edges.push(SignedEdge::short_loop(e.hi));
                }
            }
            let graph = SignedGraph::new(g.n_plus_1(), edges)?;
            let count = kpf(&graph, &netflow)?;
            if positives.is_empty() || count != BigInt::from(0) {
                terms.push(DynTerm {
                    left_flows: positives.iter().map(|(k, _)| *k).zip(left.iter().copied()).collect(),
                    graph,
                    netflow,
                    count,
                });
            }
        }
        // odometer over left flows, each bounded by the out bound of its tail
        let mut i = positives.len();
        loop {
            if i == 0 {
                return Ok(terms);
            }
            i -= 1;
            let bound = u[positives[i].1.lo - 1].max(0) as u64;
            if left[i] < bound {
                left[i] += 1;
                for x in left.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Explicit dynamic flows ordered by (negative flows, left halves, right halves).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicFlowList {
    pub flows: Vec<DynamicFlow>,
    pub truncated: bool,
}

struct Enumerator<'a> {
    g: &'a SignedGraph,
    a: &'a [i64],
    neg: Vec<usize>,
    pos: Vec<usize>,
    ub: Vec<i64>,
    limit: usize,
    out: DynamicFlowList,
}

impl Enumerator<'_> {
    /// Assign negative edges then left halves, in order.
    fn assign(&mut self, k: usize, vals: &mut Vec<u64>, bal: &mut Vec<i64>) -> bool {
        let nn = self.neg.len();
        let total = nn + self.pos.len();
        if k == total {
            return self.right_halves(vals, bal);
        }
        let e = if k < nn { self.g.edge(self.neg[k]) } else { self.g.edge(self.pos[k - nn]) };
        let bound = self.ub[e.lo - 1].max(0);
        for x in 0..=bound {
            // out of e.lo may not exceed what arrives there
            if bal[e.lo - 1] - x < 0 && self.all_inflow_fixed(e.lo, k) {
                break;
            }
            bal[e.lo - 1] -= x;
            if k < nn {
                bal[e.hi - 1] += x;
            }
            vals.push(x as u64);
            let go = self.assign(k + 1, vals, bal);
            vals.pop();
            bal[e.lo - 1] += x;
            if k < nn {
                bal[e.hi - 1] -= x;
            }
            if !go {
                return false;
            }
        }
        true
    }

    /// Whether every negative edge into `v` is among the first `k` assigned.
    fn all_inflow_fixed(&self, v: usize, k: usize) -> bool {
        self.neg
            .iter()
            .enumerate()
            .all(|(idx, &e)| self.g.edge(e).hi != v || idx < k)
    }

    fn right_halves(&mut self, vals: &[u64], bal: &[i64]) -> bool {
        let nn = self.neg.len();
        // halves in creation order: (positive slot, vertex)
        let mut halves: Vec<(usize, usize)> = Vec::new();
        for (p, &k) in self.pos.iter().enumerate() {
            let e = self.g.edge(k);
            for _ in 0..=vals[nn + p] {
                halves.push((p, e.hi));
            }
        }
        let mut need = bal.to_vec();
        let mut remaining_halves = vec![0usize; self.g.n_plus_1()];
        for &(_, v) in &halves {
            remaining_halves[v - 1] += 1;
        }
        for v in 0..need.len() {
            if need[v] < 0 || (remaining_halves[v] == 0 && need[v] != 0) {
                return true;
            }
        }
        let mut rvals = Vec::with_capacity(halves.len());
        self.fill(0, &halves, &mut need, &mut remaining_halves, &mut rvals, vals)
    }

    fn fill(
        &mut self,
        idx: usize,
        halves: &[(usize, usize)],
        need: &mut Vec<i64>,
        left: &mut Vec<usize>,
        rvals: &mut Vec<u64>,
        vals: &[u64],
    ) -> bool {
        if idx == halves.len() {
            if self.out.flows.len() == self.limit {
                self.out.truncated = true;
                return false;
            }
            self.out.flows.push(self.build(vals, rvals));
            return true;
        }
        let v = halves[idx].1 - 1;
        let lo = if left[v] == 1 { need[v] } else { 0 };
        for x in lo..=need[v] {
            need[v] -= x;
            left[v] -= 1;
            rvals.push(x as u64);
            let go = self.fill(idx + 1, halves, need, left, rvals, vals);
            rvals.pop();
            left[v] += 1;
            need[v] += x;
            if !go {
                return false;
            }
        }
        true
    }

    fn build(&self, vals: &[u64], rvals: &[u64]) -> DynamicFlow {
        let nn = self.neg.len();
        let negative = self.neg.iter().copied().zip(vals[..nn].iter().copied()).collect();
        let mut positive = Vec::new();
        let mut at = 0;
        for (p, &k) in self.pos.iter().enumerate() {
            let l = vals[nn + p];
            positive.push(PositiveEdgeFlow {
                edge: k,
                left: l,
                right: rvals[at..at + l as usize + 1].to_vec(),
            });
            at += l as usize + 1;
        }
        DynamicFlow { negative, positive }
    }
}

pub fn enumerate_dynamic_flows(g: &SignedGraph, a: &[i64], limit: usize) -> Result<DynamicFlowList> {
    check_netflow(g, a)?;
    reject_loops(g)?;
    let ub = out_bounds(g, a);
    let mut en = Enumerator {
        g,
        a,
        neg: (0..g.num_edges()).filter(|&k| g.edge(k).sign == Sign::Minus).collect(),
        pos: (0..g.num_edges()).filter(|&k| g.edge(k).sign == Sign::Plus).collect(),
        ub: ub.clone(),
        limit,
        out: DynamicFlowList { flows: Vec::new(), truncated: false },
    };
    if ub.iter().any(|&x| x < 0) {
        return Ok(en.out);
    }
    let mut bal: Vec<i64> = en.a.to_vec();
    en.assign(0, &mut Vec::new(), &mut bal);
    Ok(en.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig10() -> SignedGraph {
        SignedGraph::from_triples(3, &[(1, 2, '-'), (2, 3, '-'), (1, 3, '-'), (1, 3, '+')]).unwrap()
    }

    #[test]
    fn fig10_counts() {
        for e in [Engine::Dp, Engine::Series] {
            assert_eq!(dyn_kpf_with(&fig10(), &[2, 1, 1], e).unwrap(), BigInt::from(17));
        }
        let terms = dyn_decompose(&fig10(), &[2, 1, 1]).unwrap();
        let counts: Vec<BigInt> = terms.iter().map(|t| t.count.clone()).collect();
        assert_eq!(counts, vec![BigInt::from(3), BigInt::from(8), BigInt::from(6)]);
        assert_eq!(terms[1].netflow, vec![1, 1, 1]);
        let all = enumerate_dynamic_flows(&fig10(), &[2, 1, 1], 100).unwrap();
        assert_eq!(all.flows.len(), 17);
        assert!(all.flows.iter().all(|f| is_dynamic_flow(&fig10(), &[2, 1, 1], f)));
        let keys: Vec<_> = all.flows.iter().map(|f| f.key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let lefts: std::collections::BTreeSet<u64> = all.flows.iter().map(|f| f.positive[0].left).collect();
        assert_eq!(lefts.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn loops_rejected() {
        let g = SignedGraph::from_triples(2, &[(1, 2, '-'), (1, 1, '+')]).unwrap();
        assert!(matches!(dyn_kpf(&g, &[2, 0]), Err(Error::UnsupportedLoop(_))));
        assert!(matches!(dyn_decompose(&g, &[2, 0]), Err(Error::UnsupportedLoop(_))));
    }

    #[test]
    fn negative_graphs_reduce_to_kpf() {
        let g = SignedGraph::from_triples(3, &[(1, 2, '-'), (1, 3, '-'), (2, 3, '-')]).unwrap();
        assert_eq!(dyn_kpf(&g, &[1, 2, -3]).unwrap(), kpf(&g, &[1, 2, -3]).unwrap());
        let terms = dyn_decompose(&g, &[1, 2, -3]).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].count, BigInt::from(2));
        assert!(enumerate_dynamic_flows(&g, &[-1, 0, 1], 10).unwrap().flows.is_empty());
    }
}
