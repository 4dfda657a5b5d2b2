//! The dynamic Kostant partition function: positive edges split their flow into
//! a left part and right half-edges that can be passed along later.

use flowpoly::dynamic::{dyn_decompose, dyn_kpf, enumerate_dynamic_flows};
use flowpoly::SignedGraph;

fn main() -> flowpoly::Result<()> {
    let g = SignedGraph::from_triples(3, &[(1, 2, '-'), (2, 3, '-'), (1, 3, '-'), (1, 3, '+')])?;
    let a = [2, 1, 1];
    println!("K^dyn{a:?} = {}", dyn_kpf(&g, &a)?);

    // one term per flow on the left half of (1,3,+)
    for t in dyn_decompose(&g, &a)? {
        println!("left {:?}: K_{{G'}}{:?} = {}", t.left_flows, t.netflow, t.count);
    }

    let list = enumerate_dynamic_flows(&g, &a, 5)?;
    for f in &list.flows {
        println!("  negative {:?} positive {:?}", f.negative, f.positive);
    }
    if list.truncated {
        println!("  ...");
    }
    Ok(())
}
