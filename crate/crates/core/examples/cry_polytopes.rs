//! Volumes and vertex counts of the Chan-Robbins-Yuen polytopes of types A and D.

use flowpoly::exact::catalan_product;
use flowpoly::families::{cry_vertices, cry_volume, Family};

fn main() -> flowpoly::Result<()> {
    for n in 3..=7 {
        let v = cry_volume(Family::A, n)?;
        println!("CRYA_{n}: volume {} (Catalan product {}), {} vertices", v.volume, catalan_product(0, n as u64 - 2), cry_vertices(Family::A, n)?);
    }
    for n in 2..=7 {
        let v = cry_volume(Family::D, n)?;
        println!("CRYD_{n}: volume {} in {:?}, {} vertices", v.volume, v.elapsed, cry_vertices(Family::D, n)?);
    }
    // types B and C go through Ehrhart fits and get slow beyond n = 3
    for f in [Family::B, Family::C] {
        for n in 2..=3 {
            println!("CRY{f}_{n}: volume {}", cry_volume(f, n)?.volume);
        }
    }
    Ok(())
}
