//! Normalized volumes by every applicable method, with exact agreement.

use flowpoly::exact::rational_to_string;
use flowpoly::volume::volume_crosscheck;
use flowpoly::SignedGraph;

fn show(name: &str, g: &SignedGraph, a: &[i64]) -> flowpoly::Result<()> {
    let c = volume_crosscheck(g, a)?;
    println!("{name}: volume {}", rational_to_string(&c.volume));
    for r in &c.reports {
        println!("  {:<12} {:>6} in {:?}", r.method.name(), rational_to_string(&r.volume), r.elapsed);
    }
    Ok(())
}

fn main() -> flowpoly::Result<()> {
    let h = SignedGraph::from_triples(
        4,
        &[(1, 2, '-'), (1, 2, '-'), (1, 2, '-'), (1, 2, '-'), (1, 3, '-'), (1, 3, '-'), (2, 3, '-'), (2, 4, '-'), (3, 4, '-')],
    )?;
    show("negative multigraph", &h, &[1, 0, 0, -1])?;

    let g = SignedGraph::from_triples(4, &[(1, 2, '-'), (1, 2, '-'), (1, 3, '+'), (2, 3, '-'), (3, 4, '-'), (2, 4, '-'), (2, 4, '+')])?;
    show("signed graph", &g, &[2, 0, 0, 0])?;
    Ok(())
}
