//! Worked examples with known answers, read from the graph files in data/.

use num_bigint::BigInt;

use flowpoly::dynamic::{dyn_kpf, enumerate_dynamic_flows};
use flowpoly::graph::{dimension, in_out_edges, Dimension};
use flowpoly::kostant::{ehrhart_polynomial_fit, kpf, Parity};
use flowpoly::linalg::q;
use flowpoly::subdivision::{eliminate_vertex, enumerate_trees, subdivide_full, SubdivideOptions};
use flowpoly::volume::volume_crosscheck;
use flowpoly::SignedGraph;

fn load(name: &str) -> SignedGraph {
    let path = format!("{}/data/{name}.graph", env!("CARGO_MANIFEST_DIR"));
    SignedGraph::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn loop_graph_count() {
    assert_eq!(kpf(&load("signed_loop"), &[1, 3, -2]).unwrap(), BigInt::from(3));
}

#[test]
fn two_edge_graph_is_a_point() {
    let g = load("two_edge");
    assert_eq!(dimension(&g, &[1, 0]).unwrap(), Dimension::Dim(0));
}

#[test]
fn four_vertex_signed_graph() {
    let g = load("four_vertex_signed");
    assert_eq!(dyn_kpf(&g, &[0, 1, 0, 1]).unwrap(), BigInt::from(5));
    let flows = enumerate_dynamic_flows(&g, &[0, 1, 0, 1], 100).unwrap().flows;
    assert_eq!(flows.len(), 5);
    assert_eq!(flows.iter().filter(|f| f.extra_halves() > 0).count(), 2);
    let fit = ehrhart_polynomial_fit(&g, &[2, 0, 0, 0], Parity::All).unwrap();
    assert_eq!(fit.polynomial_string(), "5/6*t^3 + 3*t^2 + 19/6*t + 1");
    assert_eq!(volume_crosscheck(&g, &[2, 0, 0, 0]).unwrap().volume, q(5));
}

#[test]
fn negative_multigraph() {
    let h = load("negative_multi");
    assert_eq!(kpf(&h, &[0, 3, 2, -5]).unwrap(), BigInt::from(4));
    let s = subdivide_full(&h, &[1, 0, 0, -1], &SubdivideOptions::default()).unwrap();
    assert_eq!(s.leaves, BigInt::from(4));
}

#[test]
fn signed_chain() {
    let g = load("signed_chain");
    let d: Vec<i64> = (1..=4).map(|v| if v == 1 { 0 } else { g.indegree(v) as i64 - 1 }).collect();
    assert_eq!(d, vec![0, 2, 1, 1]);
    assert_eq!(dyn_kpf(&g, &d).unwrap(), BigInt::from(46));
    let s = subdivide_full(&g, &[2, 0, 0, 0], &SubdivideOptions::default()).unwrap();
    assert_eq!(s.leaves, BigInt::from(46));
}

#[test]
fn signed_elimination_step() {
    let g = load("signed_chain");
    let io = in_out_edges(&g, 2).unwrap();
    assert_eq!((io.incoming.len(), io.outgoing.len()), (3, 4));
    assert_eq!(eliminate_vertex(&g, 2, None, None).unwrap().len(), 10);
    // outgoing order (1,2,+), (2,4,-), (2,4,+), (2,3,-)
    let outs = eliminate_vertex(&g, 2, None, Some(&[0, 2, 3, 1])).unwrap();
    let (_, gt) = outs
        .iter()
        .find(|(t, _)| t.composition == [1, 0, 1, 0] && t.positive == [true, false, true, false])
        .unwrap();
    assert_eq!(in_out_edges(gt, 4).unwrap().outgoing.len(), 2);
}

#[test]
fn negative_elimination_step() {
    let h = SignedGraph::from_triples(
        4,
        &[(1, 2, '-'), (1, 2, '-'), (1, 2, '-'), (1, 2, '-'), (1, 3, '-'), (1, 4, '-'), (2, 3, '-'), (2, 3, '-'), (2, 4, '-'), (3, 4, '-')],
    )
    .unwrap();
    let find = |theta: Option<&[usize]>| {
        let outs = eliminate_vertex(&h, 2, None, theta).unwrap();
        let (_, gt) = outs.into_iter().find(|(t, _)| t.composition == [1, 0, 2]).unwrap();
        (gt.indegree(3), gt.indegree(4))
    };
    // outgoing order (2,4,-), (2,3,-), (2,3,-)
    assert_eq!(find(Some(&[2, 0, 1])), (5, 4));
    // canonical order (2,3,-), (2,3,-), (2,4,-)
    assert_eq!(find(None), (4, 5));
}

#[test]
fn tree_counts() {
    assert_eq!(enumerate_trees(4, 5, &[]).len(), 35);
    assert_eq!(enumerate_trees(1, 3, &[]).len(), 1);
    assert!(enumerate_trees(4, 5, &[]).iter().any(|t| t.composition == [1, 0, 1, 1, 0]));
    assert_eq!(enumerate_trees(2, 3, &[0, 2]).len(), 3);
}

#[test]
fn complete_graph_volumes() {
    let k5 = load("complete_a5");
    let c = volume_crosscheck(&k5, &[1, 0, 0, 0, -1]).unwrap();
    assert_eq!(c.volume, q(2));
}
