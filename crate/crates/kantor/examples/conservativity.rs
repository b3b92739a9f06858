//! Check conservativity for every algebra in the built-in catalog.
//!
//! For each algebra M this solves the linear system for an associated
//! multiplication * such that [L_b, [L_a, M]] = -(-1)^{ab} [L_{a*b}, M]
//! for all homogeneous a, b. When no * exists, the first failing
//! operator pair is reported; when one exists, the solver also reports
//! how much freedom remains (a bilinear map with values in the Jacobi
//! kernel can be added to * without breaking the identity).

use kantor::catalog::all_catalog;
use kantor::conservative::{
    check_conservative_pair, is_terminal, solve_associated, terminal_star, SolveOutcome,
};

fn main() -> Result<(), kantor::Error> {
    for (name, m) in all_catalog() {
        print!("{name:18}");
        match solve_associated(&m)? {
            SolveOutcome::Conservative(sol) => {
                // Double-check the particular solution through the
                // independent degree-4 expansion route.
                let report = check_conservative_pair(&m, &sol.particular)?;
                assert!(report.verdict);
                let terminal = is_terminal(&m)?;
                println!(
                    "conservative  freedom-dim {:2}  terminal {}",
                    sol.freedom.dim(),
                    terminal
                );
                if !terminal {
                    // Show a witness against the canonical symmetrized star.
                    let report = check_conservative_pair(&m, &terminal_star(&m))?;
                    if let Some((quad, residual)) = report.witness {
                        let coords: Vec<String> =
                            residual.coords.iter().map(|r| r.to_string()).collect();
                        println!(
                            "{:18}  terminal witness: quadruple {:?}, residual [{}]",
                            "",
                            quad,
                            coords.join(", ")
                        );
                    }
                }
            }
            SolveOutcome::NotConservative { pair } => {
                println!("NOT conservative  first failing operator pair {pair:?}");
            }
        }
    }
    Ok(())
}
