//! Building towers and differentiating in them.
//!
//! Run with `cargo run --example towers`.

use charp::algebra::Field;
use charp::cli::format_elem;
use charp::tower::{GenKind, Tower};

fn main() -> charp::Result<()> {
    // F_3(X, E) with DE = 2X E, an analogue of exp(X^2)
    let t = Tower::rational(3, "X")?;
    let x = t.gen("X").unwrap();
    let t = t.extend("E", GenKind::HyperExp(&t.scalar(2) * &x))?;
    let e = t.gen("E").unwrap();

    let y = (&e * &x.pow(2)).checked_div(&(&x + &t.one())).unwrap();
    println!("y         = {}", format_elem(&y, &t));
    println!("D y       = {}", format_elem(&t.derive(&y), &t));
    println!("D^3 E     = {}", format_elem(&t.derive_n(&e, 3), &t));
    // D^(p^j) is again a derivation, computed without iterating
    let d3 = t.pth_power_derivation(1);
    println!("D^3 y     = {}", format_elem(&d3.apply(&y), &t));

    // p-th powers are constants, and every element splits over them
    println!("D(y^3)    = {}", format_elem(&t.derive(&y.pow(3)), &t));
    let parts = t.frobenius_decompose(&y);
    println!("y has {} Frobenius coordinates", parts.terms.len());

    for p in [2u32, 3, 5, 7] {
        let t = Tower::rational(p, "X")?;
        let x = t.gen("X").unwrap();
        let w = t.derive_n(&x.pow(p as u64 - 1), p as u64 - 1);
        println!("p = {p}: D^(p-1) X^(p-1) = {}", format_elem(&w, &t));
    }
    Ok(())
}
