//! Exact polynomial arithmetic and the expression parser.
//!
//! Run with `cargo run --example polynomial_arithmetic`.

use omnilie::parse::parse_poly;
use omnilie::poly::{rat, Patch};

fn main() -> omnilie::Result<()> {
    let patch = Patch::new(vec!["x".into(), "y".into()], 1)?;
    let names = patch.var_names();

    let p = parse_poly("x^2*y - 3/2", &patch)?;
    let q = parse_poly("(x + 1)*(x - 1)", &patch)?;
    println!("p       = {}", p.display(names));
    println!("q       = {}", q.display(names));
    println!("p * q   = {}", (&p * &q).display(names));
    println!("dp/dx   = {}", p.diff(0).display(names));
    println!("p(2, 1/3) = {}", p.evaluate(&[rat(2, 1), rat(1, 3)])?);

    for bad in ["2 x", "x + z", "1/x"] {
        match parse_poly(bad, &patch) {
            Ok(_) => unreachable!(),
            Err(e) => println!("{bad:>7} -> {e}"),
        }
    }
    Ok(())
}
