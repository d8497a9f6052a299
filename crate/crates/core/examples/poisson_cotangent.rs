//! The cotangent algebroid of a Poisson manifold, its jet representation ρ̂
//! and the commuting diagram with the Dirac graph.

use omnilie::algebroid;
use omnilie::poly::{rat, Poly, PolyMatrix};

fn main() -> omnilie::Result<()> {
    // Lie-Poisson structure on so(3)*: {x_i, x_j} = ε_ijk x_k
    let x = |i| Poly::var(3, i);
    let z = Poly::zero(3);
    let bivector = PolyMatrix::from_rows(3, vec![vec![z.clone(), x(2), -x(1)], vec![-x(2), z.clone(), x(0)], vec![x(1), -x(0), z]])?;
    let a = algebroid::poisson_cotangent(&bivector)?;
    for check in algebroid::check_axioms(&a).iter().chain(algebroid::check_diagram(&a, 3, 1, 1).iter()) {
        println!("{:<24} {}", check.name, check.pass);
    }

    // The symplectic plane: ρ̂ is invertible everywhere.
    let plane = PolyMatrix::from_rows(2, vec![vec![Poly::zero(2), Poly::one(2)], vec![-Poly::one(2), Poly::zero(2)]])?;
    let b = algebroid::poisson_cotangent(&plane)?;
    println!("det of rho-hat at (1/2, -3): {}", algebroid::rho_hat_determinant(&b, &[rat(1, 2), rat(-3, 1)])?);

    // A bivector that is not Poisson is rejected with the offending component.
    let bad = PolyMatrix::from_rows(3, vec![
        vec![Poly::zero(3), Poly::one(3), Poly::zero(3)],
        vec![-Poly::one(3), Poly::zero(3), x(1)],
        vec![Poly::zero(3), -x(1), Poly::zero(3)],
    ])?;
    if let Err(e) = algebroid::poisson_cotangent(&bad) {
        println!("rejected: {e}");
    }
    Ok(())
}
