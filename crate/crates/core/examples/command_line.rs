//! Parsing and printing expressions, tower descriptions and the `charp`
//! commands, driven in-process.
//!
//! Run with `cargo run --example command_line`.

use charp::cli::{format_elem, format_skew, parse_expr, parse_operator, run_args, TowerSpec};

fn main() {
    let spec = TowerSpec::from_inline("p=3; X:base; E:hyperexp(2*X)").unwrap();
    println!("{}", spec.to_json());
    let t = spec.build().unwrap();

    let y = parse_expr("(1-X^2)/X^3*E", &t).unwrap();
    println!("canonical: {}", format_elem(&y, &t));
    let op = parse_operator("D^2 - X*D + 1", &t).unwrap();
    println!("operator:  {}", format_skew(&op, &t));
    match parse_expr("2X + 1", &t) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected:  {e}"),
    }

    let inline = "p=3; X:base; E:hyperexp(2*X)";
    let commands: [&[&str]; 5] = [
        &["integrate", "--expr", "E"],
        &["verify", "--d", "(1-X^2)/X^3*E", "--equals", "E"],
        &["annihilate", "--expr", "E"],
        &["solve", "--op", "D^3-D", "--format", "json"],
        &["derive", "--expr", "X^-1"],
    ];
    for args in commands {
        let argv = ["charp", "--inline", inline].into_iter().chain(args.iter().copied());
        let out = run_args(argv);
        println!("$ charp {} -> exit {}", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
