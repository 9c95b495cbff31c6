//! Constant-coefficient operators killing a given element.
//!
//! Run with `cargo run --example annihilators`.

use charp::algebra::Field;
use charp::annihilator::{
    carlitz_coefficient, default_j_max, derivation_annihilator, joint_annihilator, p_annihilator,
};
use charp::cli::{format_const_op, format_elem};
use charp::tower::{GenKind, Tower};

fn main() -> charp::Result<()> {
    let t = Tower::rational(3, "X")?;
    let x = t.gen("X").unwrap();
    let t = t.extend("E", GenKind::HyperExp(&t.scalar(2) * &x))?;
    let e = t.gen("E").unwrap();
    let j_max = default_j_max(&t);

    let cert = p_annihilator(&t, &e, j_max)?;
    println!("E:         {} = 0", format_const_op(&cert.to_const_op(), &t));

    let cert = derivation_annihilator(&t, std::slice::from_ref(&e), j_max)?;
    println!("E, pure:   {} = 0", format_const_op(&cert.to_const_op(), &t));

    let cert = joint_annihilator(&t, &[x.clone(), e.clone()], j_max)?;
    let op = cert.to_const_op();
    println!("X and E:   {}", format_const_op(&op, &t));
    println!("  on X: {}, on E: {}", format_elem(&op.apply(&t, &x), &t), format_elem(&op.apply(&t, &e), &t));

    // D^(p^r) F = A_r F for DF = Du F
    let u = x.pow(2);
    let t = t.extend("F", GenKind::Exp(u.clone()))?;
    for r in 0..3 {
        println!("D^(3^{r}) F / F = {}", format_elem(&carlitz_coefficient(&t, &u, r), &t));
    }
    Ok(())
}
