//! Count integer flows with the Kostant partition function, list a few of them
//! and fit the Ehrhart polynomial of a signed graph with a loop.

use flowpoly::kostant::{ehrhart, ehrhart_polynomial_fit, enumerate_integer_flows, kpf, kpf_with, Engine, Parity};
use flowpoly::SignedGraph;

fn main() -> flowpoly::Result<()> {
    // the loop (2,2,+) has root 2e_2
    let g = SignedGraph::parse(
        "vertices 3\n\
         edge 1 2 -\nedge 1 3 -\nedge 1 2 +\nedge 2 2 +\nedge 2 3 -\n",
    )?;
    let a = [1, 3, -2];
    println!("graph:\n{}", g.to_text());
    println!("K_G{a:?} = {} (dp)", kpf(&g, &a)?);
    println!("K_G{a:?} = {} (series)", kpf_with(&g, &a, Engine::Series)?);
    for f in enumerate_integer_flows(&g, &a, 10)?.flows {
        println!("  flow {f:?}");
    }

    let k4 = SignedGraph::from_triples(4, &[(1, 2, '-'), (1, 3, '-'), (1, 4, '-'), (2, 3, '-'), (2, 4, '-'), (3, 4, '-')])?;
    let a = [1, 0, 0, -1];
    for t in 0..5 {
        println!("L({t}) = {}", ehrhart(&k4, &a, t)?);
    }
    let fit = ehrhart_polynomial_fit(&k4, &a, Parity::All)?;
    println!("L(t) = {}", fit.polynomial_string());
    println!("normalized volume {}", fit.normalized_volume());
    Ok(())
}
