//! Build the universal conservative superalgebra U(n,m) and verify its
//! defining properties over exact rationals.
//!
//! U(n,m) lives on the space of bilinear operators on an (n|m)-space; its
//! multiplication A . B = A triangle_a B is the Kantor-style product at the
//! distinguished even vector a. The example confirms that U(1,1) is itself
//! conservative with respect to both canonical associated multiplications,
//! computes the Jacobi kernel, and shows the left-unity family.

use kantor::conservative::check_conservative_pair;
use kantor::universal::{build_universal, jacobi_of_universal, left_unities};

fn main() -> Result<(), kantor::Error> {
    let (n, m) = (1, 1);
    let u = build_universal(n, m)?;
    println!(
        "U({n},{m}): carrier dim {} ({}|{})",
        u.carrier.dim(),
        u.carrier.even_dim(),
        u.carrier.odd_dim()
    );

    // Conservativity of U itself, with either associated multiplication.
    for (label, star) in [("nabla1", u.nabla1_product()), ("nabla2", u.nabla2_product())] {
        let rep = check_conservative_pair(&u.product, &star)?;
        println!("conservative with * = {label}: {}", rep.verdict);
        assert!(rep.verdict);
    }

    // The Jacobi kernel J(U) has codimension n + m.
    let j = jacobi_of_universal(&u)?;
    println!(
        "Jacobi kernel: dim {} (codimension {})",
        j.dim(),
        u.carrier.dim() - j.dim()
    );
    assert_eq!(u.carrier.dim() - j.dim(), n + m);

    // Left unities: one particular solution plus a freedom space.
    let (e, freedom) = left_unities(&u)?;
    let coords: Vec<String> = e.coords.iter().map(|r| r.to_string()).collect();
    println!("left unity found (coords [{}]), freedom dim {}", coords.join(", "), freedom.dim());

    // e really is a left unity: E . B = B for every basis operator B.
    for b in 0..u.carrier.dim() {
        let eb = u.product.eval(&e, &kantor::superspace::Element::basis(&u.carrier, b));
        assert_eq!(eb.coords, kantor::superspace::Element::basis(&u.carrier, b).coords);
    }
    println!("verified E . B = B on the whole basis");
    Ok(())
}
