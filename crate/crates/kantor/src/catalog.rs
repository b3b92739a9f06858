//! Built-in example superalgebras and a deterministic random generator.

use crate::rat::{koszul, rat, rone};
use crate::superspace::{BilinearOp, SuperSpace};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Names of the parameter-free catalog algebras.
pub const CATALOG_NAMES: &[&str] = &[
    "idempotent-line",
    "grassmann1",
    "clifford11",
    "lie2",
    "heisenberg-super",
    "leibniz2",
    "nonflexible2",
];

fn known_names() -> String {
    let mut all: Vec<String> = CATALOG_NAMES.iter().map(|s| s.to_string()).collect();
    all.push("zero(p|q)".into());
    all.push("abelian-lie(p|q)".into());
    all.join(", ")
}

/// Looks up a catalog algebra by name. `zero(p|q)` and `abelian-lie(p|q)`
/// take the superdimension as part of the name, e.g. `zero(2|1)`.
pub fn catalog(name: &str) -> Result<BilinearOp> {
    if let Some(dims) = parse_param(name, "zero") {
        return Ok(BilinearOp::zero(&SuperSpace::new(dims.0, dims.1)));
    }
    if let Some(dims) = parse_param(name, "abelian-lie") {
        // abelian Lie: identically zero bracket, any superdimension
        return Ok(BilinearOp::zero(&SuperSpace::new(dims.0, dims.1)));
    }
    match name {
        "idempotent-line" => {
            let sp = SuperSpace::new(1, 0);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(0, 0, 0, rone());
            Ok(m)
        }
        "grassmann1" => {
            // unital associative (1|1): e the unity, xi odd with xi*xi = 0
            let sp = SuperSpace::new(1, 1);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(0, 0, 0, rone());
            m.set_entry(0, 1, 1, rone());
            m.set_entry(1, 0, 1, rone());
            Ok(m)
        }
        "clifford11" => {
            // unital associative (1|1): xi*xi = e
            let sp = SuperSpace::new(1, 1);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(0, 0, 0, rone());
            m.set_entry(0, 1, 1, rone());
            m.set_entry(1, 0, 1, rone());
            m.set_entry(1, 1, 0, rone());
            Ok(m)
        }
        "lie2" => {
            // purely even 2-dim Lie algebra, [e, f] = e
            let sp = SuperSpace::new(2, 0);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(0, 1, 0, rone());
            m.set_entry(1, 0, 0, -rone());
            Ok(m)
        }
        "heisenberg-super" => {
            // (1|2) Lie superalgebra: [f1, f2] = [f2, f1] = e, center <e>;
            // validated rather than trusted.
            let sp = SuperSpace::new(1, 2);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(1, 2, 0, rone());
            m.set_entry(2, 1, 0, rone());
            assert!(is_lie_super(&m), "heisenberg-super must be a Lie superalgebra");
            Ok(m)
        }
        "leibniz2" => {
            // 2-dim Leibniz algebra: e2*e2 = e1, rest zero
            let sp = SuperSpace::new(2, 0);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(1, 1, 0, rone());
            Ok(m)
        }
        "nonflexible2" => {
            // e1*e1 = e2, e1*e2 = e1: fails (xy)x = x(yx) at (e1, e1)
            let sp = SuperSpace::new(2, 0);
            let mut m = BilinearOp::zero(&sp);
            m.set_entry(0, 0, 1, rone());
            m.set_entry(0, 1, 0, rone());
            Ok(m)
        }
        _ => Err(Error::UnknownCatalog { name: name.to_string(), known: known_names() }),
    }
}

/// The full catalog with default (1|1) parameters for the parametrized
/// families, for exhaustive test sweeps.
pub fn all_catalog() -> Vec<(String, BilinearOp)> {
    let mut names: Vec<String> = CATALOG_NAMES.iter().map(|s| s.to_string()).collect();
    names.push("zero(1|1)".into());
    names.push("zero(2|1)".into());
    names.push("abelian-lie(2|0)".into());
    names.push("abelian-lie(1|2)".into());
    names.into_iter().map(|n| {
        let m = catalog(&n).expect("catalog self-listing");
        (n, m)
    }).collect()
}

fn parse_param(name: &str, family: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix(family)?;
    let rest = rest.strip_prefix('(')?.strip_suffix(')')?;
    let (p, q) = rest.split_once('|')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

/// Super-anticommutativity plus the super Jacobi identity:
/// (-1)^{xz}[[x,y],z] + (-1)^{yx}[[y,z],x] + (-1)^{zy}[[z,x],y] = 0.
pub fn is_lie_super(m: &BilinearOp) -> bool {
    let sp = &m.space;
    let d = sp.dim();
    for i in 0..d {
        for j in 0..d {
            let anti = m
                .eval_basis(i, j)
                .add(&m.eval_basis(j, i).scale(&koszul(sp.parity(i) & sp.parity(j), rone())));
            if !anti.is_zero() {
                return false;
            }
        }
    }
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let (px, py, pz) = (sp.parity(x), sp.parity(y), sp.parity(z));
                let t1 = m.eval(&m.eval_basis(x, y), &crate::superspace::Element::basis(sp, z));
                let t2 = m.eval(&m.eval_basis(y, z), &crate::superspace::Element::basis(sp, x));
                let t3 = m.eval(&m.eval_basis(z, x), &crate::superspace::Element::basis(sp, y));
                let sum = t1
                    .scale(&koszul(px & pz, rone()))
                    .add(&t2.scale(&koszul(py & px, rone())))
                    .add(&t3.scale(&koszul(pz & py, rone())));
                if !sum.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Deterministic random even product on an (n|m) superspace: each
/// parity-allowed structure constant is nonzero with probability
/// `density`, drawn from the small integers -3..=3.
pub fn random_superalgebra(seed: u64, n: usize, m: usize, density: f64) -> BilinearOp {
    let sp = SuperSpace::new(n, m);
    let d = sp.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut op = BilinearOp::zero(&sp);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if sp.parity(i) ^ sp.parity(j) != sp.parity(k) {
                    continue;
                }
                // draw both samples unconditionally so the stream shape
                // (hence determinism across densities) is fixed
                let roll: f64 = rng.gen();
                let value: i64 = rng.gen_range(-3..=3);
                if roll < density && value != 0 {
                    op.set_entry(i, j, k, rat(value));
                }
            }
        }
    }
    op
}
