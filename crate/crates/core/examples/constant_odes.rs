//! Exponential solutions of linear equations with constant coefficients.
//!
//! Run with `cargo run --example constant_odes`.

use charp::annihilator::ConstOp;
use charp::cli::{format_const_op, format_elem, format_poly, TowerSpec};
use charp::odesolve::{solve_constant_ode, RootStrategy};
use charp::tower::Tower;

fn solve(t: &Tower, q: &ConstOp, strategy: RootStrategy) -> charp::Result<()> {
    let sols = solve_constant_ode(t, q, strategy)?;
    println!("{} = 0 over F_{}(X):", format_const_op(q, t), t.p());
    let c = &sols[0].construction;
    let l = &sols[0].extended_tower;
    println!("  e = {}, A = {}, R = {}", c.e, format_poly(&c.a_poly, "T", l), format_poly(&c.r_poly, "T", l));
    for s in &sols {
        let l = &s.extended_tower;
        let root = match &s.adjunction {
            Some(ctx) => format!("root of {}", format_poly(&ctx.modulus, l.name(ctx.alpha), l)),
            None => format_elem(&s.alpha, l),
        };
        println!("  y = {}  (alpha = {root})", format_elem(&s.solution, l));
        println!("    {}", TowerSpec::of(l).to_inline());
    }
    Ok(())
}

fn main() -> charp::Result<()> {
    for p in [3u32, 5] {
        let t = Tower::rational(p, "X")?;
        // T^p - T splits into linear factors over F_p
        let q = ConstOp::new(p, [(1, t.scalar(-1)), (p as u64, t.one())])?;
        solve(&t, &q, RootStrategy::Auto)?;
    }
    let t = Tower::rational(3, "X")?;
    let q = ConstOp::new(3, [(0, t.one()), (2, t.one())])?;
    solve(&t, &q, RootStrategy::Auto)?;
    // inseparable: T^3 - 1 = (T - 1)^3
    let q = ConstOp::new(3, [(0, t.scalar(-1)), (3, t.one())])?;
    solve(&t, &q, RootStrategy::Formal)?;
    Ok(())
}
