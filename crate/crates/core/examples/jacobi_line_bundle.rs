//! Jacobi structures (Λ, X) on the trivial line bundle, their rank-one
//! Dirac graphs, and why the quotient is only a local Lie algebra.

use omnilie::dirac::{self, CheckOptions};
use omnilie::document::{Document, Payload};
use omnilie::jacobi;

fn main() -> omnilie::Result<()> {
    let doc = Document::from_json(include_str!("../fixtures/contact.json"))?;
    let Payload::Jacobi(j) = &doc.payload else { unreachable!() };
    let names = doc.patch.var_names();

    for check in jacobi::check_jacobi_structure(j, 2).iter() {
        println!("{:<24} {}", check.name, check.pass);
    }

    let (x, y) = (omnilie::Poly::var(3, 0), omnilie::Poly::var(3, 1));
    println!("{{x, y}} = {}", j.bracket(&x, &y).display(names));

    let pi = jacobi::jacobi_to_pi(j);
    let opts = CheckOptions::default();
    println!("graph is Dirac: {}", dirac::is_dirac(&pi, &opts));
    let four = dirac::four_conditions(&pi, &opts);
    println!("algebroid conditions on E: {:?}", four.values());
    match dirac::dirac_to_algebroid(&pi, &opts) {
        Ok(_) => println!("unexpectedly an algebroid"),
        Err(e) => println!("refused: {e}"),
    }

    let recovered = jacobi::line_dirac_to_local_lie(&pi, 2)?;
    println!("recovered (Λ, X) matches input: {}", &recovered.data == j);
    Ok(())
}
