//! Operators with non-constant coefficients: composition, right division
//! and the experimental transfer of solutions.
//!
//! Run with `cargo run --example skew_operators`.

use charp::algebra::Field;
use charp::annihilator::SkewOp;
use charp::cli::{format_const_op, format_elem, format_skew};
use charp::odesolve::{skew_mul, skew_right_divmod, solve_via_transfer, RootStrategy};
use charp::tower::Tower;

fn main() -> charp::Result<()> {
    let t = Tower::rational(3, "X")?;
    let x = t.gen("X").unwrap();
    let d = SkewOp::monomial(t.one(), 1);
    let xo = SkewOp::new(3, vec![x.clone()]);
    println!("D * X = {}", format_skew(&skew_mul(&t, &d, &xo), &t));

    let d2 = SkewOp::monomial(t.one(), 2);
    let b = SkewOp::new(3, vec![x.neg(), t.one()]);
    let (q, r) = skew_right_divmod(&t, &d2, &b)?;
    println!(
        "{} = ({}) * ({}) + {}",
        format_skew(&d2, &t),
        format_skew(&q, &t),
        format_skew(&b, &t),
        format_skew(&r, &t)
    );

    let airy = SkewOp::new(3, vec![x.neg(), t.zero(), t.one()]);
    match solve_via_transfer(&t, &airy, 4, RootStrategy::Auto) {
        Ok(sols) => {
            let first = &sols[0];
            println!(
                "{} divides {} after U = {}",
                format_skew(&airy, &t),
                format_const_op(&first.reduction.op, &t),
                format_skew(&first.transfer, &t)
            );
            for s in &sols {
                let l = &s.base.extended_tower;
                println!("  solution: {}", format_elem(&s.value, l));
            }
        }
        Err(e) => println!("transfer failed: {e}"),
    }
    Ok(())
}
