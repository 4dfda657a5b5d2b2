//! Exact helpers: Gamma at half integers, Catalan numbers and rational
//! polynomial interpolation.

use flowpoly::exact::{catalan, gamma_half, Polynomial};
use flowpoly::linalg::q;

fn main() -> flowpoly::Result<()> {
    for two_k in 1..=7 {
        println!("Gamma({two_k}/2) = {}", gamma_half(two_k)?);
    }
    println!("Gamma(1/2)^2 / Gamma(1) = {}", gamma_half(1)? * gamma_half(1)? / gamma_half(2)?);
    println!("Gamma(0): {:?}", gamma_half(0).err());
    println!("Catalan: {:?}", (0..10).map(catalan).collect::<Vec<_>>());

    let pts: Vec<_> = (0..4).map(|t| (q(t), q((t + 1) * (t + 2) * (t + 3) / 6))).collect();
    let p = Polynomial::interpolate(&pts);
    println!("interpolated {p}, value at 10 = {}", p.eval(&q(10)));
    Ok(())
}
