//! Read and write the plain-text algebra file format.
//!
//! The format is line based:
//!
//! ```text
//! superalg <name> <even-dim> <odd-dim>
//! # product structure constants: e_i e_j = sum_k c e_k
//! i j k num/den
//! # optional associated multiplication
//! star i j k num/den
//! ```
//!
//! Basis vectors are numbered 0.., even ones first. Serialization is
//! canonical (sorted, relabeled even-first), so parse . serialize is a
//! fixed point.

use kantor::catalog::catalog;
use kantor::io::{parse_algebra, serialize_algebra, AlgebraFile};

fn main() -> Result<(), kantor::Error> {
    let file = AlgebraFile {
        name: "grassmann1".into(),
        product: catalog("grassmann1")?,
        assoc: None,
    };
    let text = serialize_algebra(&file);
    println!("--- canonical serialization ---\n{text}");

    let parsed = parse_algebra(&text)?;
    assert_eq!(serialize_algebra(&parsed), text);
    println!("round-trip is exact");

    // Errors carry the offending line number.
    let bad = "superalg broken 1 1\n0 0 5 1/1\n";
    match parse_algebra(bad) {
        Err(e) => println!("rejected malformed input: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
