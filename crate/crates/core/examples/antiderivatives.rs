//! Antiderivatives, with logarithms adjoined when the field has none.
//!
//! Run with `cargo run --example antiderivatives`.

use charp::algebra::Field;
use charp::antideriv::integrate;
use charp::cli::{format_elem, TowerSpec};
use charp::tower::{Elem, GenKind, Tower};

fn show(t: &Tower, u: &Elem) -> charp::Result<()> {
    let r = integrate(t, u)?;
    let l = &r.extended_tower;
    println!("integral of {} = {}", format_elem(u, t), format_elem(&r.value, l));
    if !r.new_generators.is_empty() {
        println!("  in {}", TowerSpec::of(l).to_inline());
    }
    Ok(())
}

fn main() -> charp::Result<()> {
    for p in [3u32, 5] {
        let t = Tower::rational(p, "X")?;
        let x = t.gen("X").unwrap();
        let t = t.extend("E", GenKind::HyperExp(&t.scalar(2) * &x))?;
        show(&t, &t.gen("E").unwrap())?;
    }

    // X^(p-1) has no antiderivative in F_p(X)
    let t = Tower::rational(5, "X")?;
    let x = t.gen("X").unwrap();
    show(&t, &x.pow(4))?;
    show(&t, &x.checked_div(&(&x + &t.one())).unwrap())?;

    let t = Tower::rational(3, "X")?;
    let x = t.gen("X").unwrap();
    let t = t.extend("E", GenKind::Exp(x))?;
    let t = t.extend("F", GenKind::Exp(t.gen("E").unwrap()))?;
    show(&t, &t.gen("F").unwrap())?;
    Ok(())
}
