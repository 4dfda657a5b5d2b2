#![allow(dead_code)]

use flowpoly::{SignedEdge, SignedGraph};
use rand::Rng;

/// Connected all-negative graph on `n1` vertices in which every vertex other
/// than the first has an incoming edge.
pub fn random_negative(rng: &mut impl Rng, n1: usize, extra: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for j in 2..=n1 {
        edges.push(SignedEdge::neg(rng.gen_range(1..j), j));
    }
    for _ in 0..extra {
        let i = rng.gen_range(1..n1);
        let j = rng.gen_range(i + 1..=n1);
        edges.push(SignedEdge::neg(i, j));
    }
    SignedGraph::new(n1, edges).unwrap()
}

/// Connected loopless signed graph with at least one positive edge and an
/// incoming negative edge at every vertex but the first.
pub fn random_signed(rng: &mut impl Rng, n1: usize, extra: usize) -> SignedGraph {
    let mut g = random_negative(rng, n1, 0);
    let i = rng.gen_range(1..n1);
    g.push(SignedEdge::pos(i, rng.gen_range(i + 1..=n1))).unwrap();
    for _ in 0..extra {
        let i = rng.gen_range(1..n1);
        let j = rng.gen_range(i + 1..=n1);
        let e = if rng.gen_bool(0.5) { SignedEdge::pos(i, j) } else { SignedEdge::neg(i, j) };
        g.push(e).unwrap();
    }
    g
}

/// Arbitrary signed graph, possibly disconnected, with loops of both kinds.
pub fn random_any(rng: &mut impl Rng, n1: usize, m: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for _ in 0..m {
        let i = rng.gen_range(1..=n1);
        let j = rng.gen_range(i..=n1);
        let e = if i == j {
            if rng.gen_bool(0.5) {
                SignedEdge::pos(i, i)
            } else {
                SignedEdge::short_loop(i)
            }
        } else if rng.gen_bool(0.5) {
            SignedEdge::pos(i, j)
        } else {
            SignedEdge::neg(i, j)
        };
        edges.push(e);
    }
    SignedGraph::new(n1, edges).unwrap()
}

pub fn shifted_indegrees(g: &SignedGraph, first: usize) -> Vec<i64> {
    (1..=g.n_plus_1())
        .map(|v| if v < first { 0 } else { g.indegree(v) as i64 - 1 })
        .collect()
}
