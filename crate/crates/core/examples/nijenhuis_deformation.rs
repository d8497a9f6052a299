//! Deforming an algebroid by a bundle endomorphism N: the twisted graph is
//! Dirac, the deformed bracket is a Lie algebroid, and the torsion identity
//! holds, all together or not at all.

use omnilie::algebroid::{self, NijenhuisOp};
use omnilie::document::{Document, Payload};
use omnilie::poly::{Poly, PolyMatrix};

fn main() -> omnilie::Result<()> {
    let doc = Document::from_json(include_str!("../fixtures/so3_action.json"))?;
    let Payload::Algebroid(a) = &doc.payload else { unreachable!() };

    for (name, diag) in [("2 * identity", [2, 2, 2]), ("diag(1, 0, 0)", [1, 0, 0])] {
        let n = PolyMatrix::from_fn(3, 3, 3, |i, j| if i == j { Poly::integer(3, diag[i]) } else { Poly::zero(3) });
        let report = algebroid::nijenhuis_suite(a, &NijenhuisOp::new(n)?, 3, 0, 1);
        println!(
            "{name:<14} twisted Dirac {:<5} deformed algebroid {:<5} cyclic identity {:<5} torsion zero {}",
            report.twisted_dirac, report.deformed_algebroid, report.cyclic_identity, report.torsion_zero
        );
    }
    Ok(())
}
