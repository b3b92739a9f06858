//! Grassmann envelopes: transfer super-identities to ordinary algebras.
//!
//! The envelope of a superalgebra M with respect to a Grassmann algebra on
//! g generators is the ordinary algebra on the even part of M (x) Gamma.
//! A superalgebra satisfies a super-identity exactly when its envelope
//! satisfies the ordinary identity, and the toolkit checks both routes and
//! insists they agree.

use kantor::catalog::catalog;
use kantor::conservative::{solve_associated, SolveOutcome};
use kantor::grassmann::{
    envelope, is_associative_envelope, is_commutative_envelope, is_flexible_envelope,
    transfer_report,
};

fn main() -> Result<(), kantor::Error> {
    for name in ["grassmann1", "clifford11", "lie2", "nonflexible2"] {
        let m = catalog(name)?;
        let env = envelope(&m, 4);
        println!(
            "{name:14} envelope on 4 generators: dim {} (from {}|{} x Grassmann)",
            env.dim(),
            m.space.even_dim(),
            m.space.odd_dim()
        );
        println!(
            "{:14} flexible {}  associative {}  commutative {}",
            "",
            is_flexible_envelope(&m, 4),
            is_associative_envelope(&m, 4),
            is_commutative_envelope(&m, 4)
        );

        // Conservativity transfers too: the super check and the envelope
        // check must return the same verdict.
        if let SolveOutcome::Conservative(sol) = solve_associated(&m)? {
            let rep = transfer_report(&m, &sol.particular, 4)?;
            println!(
                "{:14} conservativity: super {}  envelope {}  agree {}",
                "",
                rep.super_verdict,
                rep.envelope_verdict,
                rep.agree()
            );
            assert!(rep.agree());
        }
    }
    Ok(())
}
