//! The Morris constant term identity: closed form against direct extraction,
//! and the variant with the extra kernel that gives the type D volumes.

use flowpoly::exact::rational_to_string;
use flowpoly::families::{morris_closed, morris_ct, MorrisParams};

fn main() -> flowpoly::Result<()> {
    for m in 1..=4 {
        let p = MorrisParams { m, a: 1, b: 1, two_c: 1, two_d: None };
        println!(
            "M_{m}(1,1,1/2): closed {}, constant term {}",
            rational_to_string(&morris_closed(p)?),
            rational_to_string(&morris_ct(p)?)
        );
    }
    let p = MorrisParams { m: 3, a: 2, b: 0, two_c: 1, two_d: None };
    println!("M_3(2,0,1/2): constant term {}, closed form {:?}", morris_ct(p)?, morris_closed(p).err());

    for m in 2..=3 {
        let p = MorrisParams { m, a: 1, b: 2, two_c: 1, two_d: Some(1) };
        println!("with (1 - x_i - x_j)^-1, m={m}: {}", morris_ct(p)?);
    }
    Ok(())
}
