//! The distinguished subalgebras W, S and H of the universal algebra.
//!
//! W(n,m) is spanned by the operators x(y a) + (-1)^{xy} y(x a) built from
//! left multiplications; S and H are the supertrace-zero and canonical-form
//! variants. The example builds all three at small superdimensions, checks
//! terminality of W, and probes which of them contain a left unity.

use kantor::conservative::is_terminal;
use kantor::universal::{build_h, build_s, build_w, subalgebra_left_unities, w_dimension};

fn main() -> Result<(), kantor::Error> {
    for (n, m) in [(1usize, 1usize), (2, 0), (1, 2)] {
        println!("--- superdimension ({n}|{m}) ---");

        let w = build_w(n, m)?;
        println!(
            "W: dim {} (predicted {}), even/odd {}/{}",
            w.space.dim(),
            w_dimension(n, m),
            w.space.even_dim(),
            w.space.odd_dim()
        );
        assert_eq!(w.space.dim(), w_dimension(n, m));
        println!("W terminal: {}", is_terminal(&w.product)?);
        match subalgebra_left_unities(&w) {
            Some((_, freedom)) => println!("W left unities: yes (freedom dim {})", freedom.dim()),
            None => println!("W left unities: none"),
        }

        let s = build_s(n, m)?;
        println!(
            "S: dim {}, left unities: {}",
            s.space.dim(),
            if subalgebra_left_unities(&s).is_some() { "yes" } else { "none" }
        );

        if n % 2 == 0 {
            let h = build_h(n, m)?;
            println!(
                "H: dim {}, left unities: {}",
                h.space.dim(),
                if subalgebra_left_unities(&h).is_some() { "yes" } else { "none" }
            );
        } else {
            println!("H: skipped (the symplectic form needs an even number of even directions)");
        }
    }
    Ok(())
}
