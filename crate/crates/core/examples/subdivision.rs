//! Subdivide a flow polytope into unimodular simplices by eliminating
//! vertices one at a time, and check that the leaf count does not depend on
//! the elimination orders.

use flowpoly::graph::in_out_edges;
use flowpoly::subdivision::{eliminate_vertex, enumerate_trees, reduce, subdivide_full, OrderChoice, SubdivideOptions};
use flowpoly::SignedGraph;

fn main() -> flowpoly::Result<()> {
    println!("{} noncrossing trees for l=4, r=5", enumerate_trees(4, 5, &[]).len());

    let g = SignedGraph::from_triples(3, &[(1, 2, '-'), (2, 3, '-'), (1, 2, '+')])?;
    let red = reduce(&g, 0, 1)?;
    println!("{:?} at vertex {}: new edge {}", red.rule, red.vertex, red.new_edge);

    let h = SignedGraph::from_triples(
        4,
        &[(1, 2, '-'), (1, 2, '-'), (1, 2, '+'), (2, 3, '-'), (2, 4, '-'), (2, 4, '+'), (1, 3, '-'), (3, 4, '-'), (1, 3, '+')],
    )?;
    let io = in_out_edges(&h, 2)?;
    println!("vertex 2: {} in, {} out", io.incoming.len(), io.outgoing.len());
    for (tree, out) in eliminate_vertex(&h, 2, None, None)?.iter().take(3) {
        println!("  {tree} -> {} edges", out.num_edges());
    }

    let a = [2, 0, 0, 0];
    let opts = SubdivideOptions { trail_limit: 3, ..Default::default() };
    let s = subdivide_full(&h, &a, &opts)?;
    println!("{} leaves, dimension {}", s.leaves, s.dimension);
    for trail in &s.trails {
        let steps: Vec<String> = trail.iter().map(|(v, t)| format!("{v}:{t}")).collect();
        println!("  {}", steps.join(" "));
    }
    for seed in 1..=5 {
        let opts = SubdivideOptions { orders: OrderChoice::Random(seed), trail_limit: 0 };
        println!("seed {seed}: {} leaves", subdivide_full(&h, &a, &opts)?.leaves);
    }
    Ok(())
}
