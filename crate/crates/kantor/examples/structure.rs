//! Structure invariants of a superalgebra: Jacobi kernel, maximal Jacobi
//! ideal, quasiunities, the operator spans U0/U1, and rigidity.
//!
//! All invariants are computed over exact rationals, so every printed
//! dimension is a theorem about the algebra, not a numerical estimate.

use kantor::catalog::all_catalog;
use kantor::conservative::{
    is_rigid, jacobi_subspace, left_annihilator, maximal_jacobi_ideal, quasiunities, u0_span,
    u1_span,
};

fn main() {
    println!(
        "{:18} {:>3} {:>3} {:>4} {:>4} {:>3} {:>3}  {:5}  quasiunity",
        "algebra", "dim", "J", "annL", "maxI", "u0", "u1", "rig"
    );
    for (name, m) in all_catalog() {
        let d = m.space.dim();
        let j = jacobi_subspace(&m);
        let ann = left_annihilator(&m);
        let ideal = maximal_jacobi_ideal(&m);
        let qu = quasiunities(&m);
        println!(
            "{:18} {:>3} {:>3} {:>4} {:>4} {:>3} {:>3}  {:5}  {}",
            name,
            d,
            j.dim(),
            ann.dim(),
            ideal.dim(),
            u0_span(&m).dim(),
            u1_span(&m).dim(),
            is_rigid(&m),
            match &qu {
                Some((e, freedom)) => format!(
                    "[{}] (freedom {})",
                    e.coords.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
                    freedom.dim()
                ),
                None => "none".to_string(),
            }
        );
    }
}
