//! Embed a conservative superalgebra into the universal algebra of a
//! quotient space.
//!
//! For a conservative M on V, the map a -> ad(a) sends each element to a
//! bilinear operator on W = V / J (J the Jacobi kernel of M), with a slot
//! for a distinguished vector epsilon coming from the quasiunity class (or
//! adjoined when none exists). The example verifies that ad is an algebra
//! homomorphism into U(W), that its kernel is exactly the maximal Jacobi
//! ideal, and that the construction does not depend on which associated
//! multiplication the solver picked.

use kantor::catalog::catalog;
use kantor::conservative::{maximal_jacobi_ideal, solve_associated};
use kantor::embedding::{adjoint_independence_check, verify_embedding, EpsilonOrigin};

fn main() -> Result<(), kantor::Error> {
    for name in ["grassmann1", "lie2", "heisenberg-super", "leibniz2"] {
        let m = catalog(name)?;
        let sol = match solve_associated(&m)? {
            kantor::conservative::SolveOutcome::Conservative(s) => s,
            kantor::conservative::SolveOutcome::NotConservative { .. } => {
                println!("{name}: not conservative, skipping");
                continue;
            }
        };

        let report = verify_embedding(&m, &sol)?;
        let q = &report.quotient;
        println!(
            "{name:16} W dim {} ({}|{}), epsilon from {}",
            q.w_space.dim(),
            q.w_space.even_dim(),
            q.w_space.odd_dim(),
            match q.origin {
                EpsilonOrigin::FromQuasiunity => "the quasiunity class",
                EpsilonOrigin::Adjoined => "an adjoined vector",
            }
        );
        println!(
            "{:16} homomorphism {}  kernel dim {}  kernel = maximal Jacobi ideal: {}",
            "",
            report.is_homomorphism,
            report.kernel.dim(),
            report.kernel_equals_max_jacobi_ideal
        );
        assert!(report.is_homomorphism);
        assert!(report.kernel_equals_max_jacobi_ideal);
        assert_eq!(report.kernel.dim(), maximal_jacobi_ideal(&m).dim());

        // ad(a) must not change if * is shifted inside its freedom space.
        let shifted = kantor::conservative::AssociatedSolution {
            particular: match sol.freedom.rows().first() {
                Some(row) => sol
                    .particular
                    .add(&kantor::superspace::BilinearOp::from_coords_vec(&m.space, row)),
                None => sol.particular.clone(),
            },
            freedom: sol.freedom.clone(),
        };
        assert!(adjoint_independence_check(&m, &sol, &shifted)?);
    }

    // On the universal algebra itself the embedding is the identity map
    // (under the identification A -> A(a, .)).
    use kantor::embedding::verify_ad_is_identity_on_u;
    for (n, m) in [(1, 0), (1, 1)] {
        println!("ad = id on U({n},{m}): {}", verify_ad_is_identity_on_u(n, m)?);
    }
    Ok(())
}
