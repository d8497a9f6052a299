//! Over a point the omni-Lie algebroid is gl(V) ⊕ V, and a skew bilinear
//! map on V has a Dirac graph exactly when it is a Lie bracket.

use omnilie::dirac::{self, CheckOptions, PiMap};
use omnilie::poly::{Poly, PolyMatrix};
use omnilie::tensor::StructureTensor;

fn bracket(entries: [[i64; 3]; 3]) -> StructureTensor {
    // entries[p] is [e_a, e_b] for (a, b) = (1,2), (1,3), (2,3)
    let mut t = StructureTensor::zero(0, 3);
    for (p, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        for (m, &v) in entries[p].iter().enumerate() {
            t.set(m, a, b, Poly::integer(0, v));
            t.set(m, b, a, Poly::integer(0, -v));
        }
    }
    t
}

fn main() -> omnilie::Result<()> {
    let cases = [
        ("so(3)", [[0, 0, 1], [0, -1, 0], [1, 0, 0]]),
        ("heisenberg", [[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
        ("so(3) + e1 in [e1,e2]", [[1, 0, 1], [0, -1, 0], [1, 0, 0]]),
    ];
    for (name, entries) in cases {
        let pi = PiMap::trivial(PolyMatrix::zeros(0, 0, 3), bracket(entries))?;
        let checks = dirac::check_integrability(&pi, &CheckOptions::default())?;
        match checks.first_failure() {
            None => println!("{name:<24} Dirac"),
            Some(c) => println!(
                "{name:<24} not Dirac: {} fails at {}",
                c.name,
                c.witness.as_ref().map_or("?", |w| w.sections.as_str())
            ),
        }
    }
    Ok(())
}
