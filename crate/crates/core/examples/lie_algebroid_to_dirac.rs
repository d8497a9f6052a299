//! A Lie algebroid of rank at least two and its Dirac graph in the
//! omni-Lie algebroid, there and back again.
//!
//! The example uses the rotation action of so(3) on ℝ³.

use omnilie::algebroid;
use omnilie::dirac::{self, CheckOptions};
use omnilie::document::{Document, Payload};

fn main() -> omnilie::Result<()> {
    let doc = Document::from_json(include_str!("../fixtures/so3_action.json"))?;
    let Payload::Algebroid(a) = &doc.payload else { unreachable!() };

    for check in algebroid::check_axioms(a).iter() {
        println!("axiom {:<24} {}", check.name, check.pass);
    }

    let pi = algebroid::algebroid_to_pi(a)?;
    let opts = CheckOptions::default();
    for check in dirac::check_integrability(&pi, &opts)?.iter() {
        println!("dirac {:<24} {}", check.name, check.pass);
    }

    let four = dirac::four_conditions(&pi, &opts);
    println!("algebroid conditions on E: {:?}", four.values());

    let back = dirac::dirac_to_algebroid(&pi, &opts)?;
    println!("round trip is the identity: {}", &back == a);
    Ok(())
}
