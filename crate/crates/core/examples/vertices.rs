//! Vertices of flow polytopes: cycle parity, the even-cycle criterion and
//! enumeration, including a polytope with non-integral vertices.

use flowpoly::exact::rational_to_string;
use flowpoly::families::{family_graph, Family, FamilySpec};
use flowpoly::vertices::{count_vertices_2e1, cycle_parity, enumerate_vertices_general, kernel_parity, simple_cycles};
use flowpoly::SignedGraph;

fn main() -> flowpoly::Result<()> {
    let g = SignedGraph::from_triples(3, &[(1, 2, '-'), (2, 3, '-'), (1, 3, '+'), (1, 3, '-')])?;
    for c in simple_cycles(&g) {
        println!("cycle {:?}: {:?} by turns, {:?} by kernel", c.edge_set(), cycle_parity(&g, &c)?, kernel_parity(&g, &c)?);
    }

    // one odd cycle and nothing else: the only vertex is (1/2, 1/2)
    let two = SignedGraph::from_triples(2, &[(1, 2, '-'), (1, 2, '+')])?;
    for v in enumerate_vertices_general(&two, &[1, 0], 20)? {
        println!("vertex {:?}", v.iter().map(rational_to_string).collect::<Vec<_>>());
    }

    let kd = family_graph(FamilySpec { family: Family::D, vertices: 4 })?;
    let vs = enumerate_vertices_general(&kd, &[1, 1, 0, 0], 20)?;
    let rational = vs.iter().filter(|v| v.iter().any(|x| !x.is_integer())).count();
    println!("K^D_4 at (1,1,0,0): {} vertices, {rational} of them not integral", vs.len());

    for n in 2..=7 {
        let g = family_graph(FamilySpec { family: Family::D, vertices: n })?;
        println!("K^D_{n} at 2e_1: {} vertices", count_vertices_2e1(&g)?);
    }
    Ok(())
}
