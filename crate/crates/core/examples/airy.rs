//! Reducing `D^2 - X` over `F_3(X)` to an operator with constant
//! coefficients, and checking it on a formal solution.
//!
//! Run with `cargo run --example airy`.

use charp::algebra::Field;
use charp::annihilator::{generic_solution, reduce_to_constant_coeffs, SkewOp};
use charp::cli::{format_const_op, format_elem, format_poly, format_skew};
use charp::tower::Tower;

fn main() -> charp::Result<()> {
    let t = Tower::rational(3, "X")?;
    let x = t.gen("X").unwrap();
    let op = SkewOp::new(3, vec![x.neg(), t.zero(), t.one()]);
    let r = reduce_to_constant_coeffs(&t, &op, 4)?;
    println!("operator:       {}", format_skew(&op, &t));
    println!("annihilator:    {}", format_const_op(&r.annihilator.to_const_op(), &t));
    for i in 0..r.matrix.rows() {
        let row: Vec<String> = r.matrix.row(i).iter().map(|c| format_elem(c, &t)).collect();
        println!("matrix row {i}:   [{}]", row.join(", "));
    }
    println!("min poly:       {}", format_poly(&r.min_poly, "T", &t));
    println!("reduced:        {}", format_const_op(&r.op, &t));

    let (l, y) = generic_solution(&t, &op)?;
    println!("on {}: {}", l.name(t.len()), format_elem(&r.op.apply(&l, &y), &l));
    Ok(())
}
