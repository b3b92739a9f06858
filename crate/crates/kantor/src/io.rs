//! Line-based text format for superalgebras.
//!
//! ```text
//! # comment
//! superalg <name> <even-dim> <odd-dim>
//! <i> <j> <k> <num>/<den>          product structure constant
//! star <i> <j> <k> <num>/<den>     associated-product constant (optional)
//! ```
//!
//! Indices are 0-based with the even coordinates first. The canonical
//! serialization sorts entries lexicographically and always writes the
//! denominator, so `serialize(parse(x))` is a fixed point.

use crate::rat::{Rat, ratio};
use crate::superspace::{BilinearOp, SuperSpace};
use crate::{Error, Result};
use num::{BigInt, Signed, Zero};
use std::collections::BTreeSet;

/// A parsed algebra file: the product, and optionally an associated
/// product sharing the same superspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub product: BilinearOp,
    pub assoc: Option<BilinearOp>,
}

fn load_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Load { line, msg: msg.into() }
}

fn parse_index(tok: &str, d: usize, line: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| load_err(line, format!("malformed index '{tok}'")))?;
    if i >= d {
        return Err(load_err(line, format!("index {i} out of range (dimension {d})")));
    }
    Ok(i)
}

fn parse_rational(tok: &str, line: usize) -> Result<Rat> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: i128 = num
        .parse()
        .map_err(|_| load_err(line, format!("malformed rational '{tok}'")))?;
    let den: i128 = den
        .parse()
        .map_err(|_| load_err(line, format!("malformed rational '{tok}'")))?;
    if den == 0 {
        return Err(load_err(line, format!("zero denominator in '{tok}'")));
    }
    Ok(ratio(num as i64, den as i64))
}

/// Parses the text format. Entries of either parity character are
/// admitted; dimension bounds, denominators, and duplicate (i,j,k) keys
/// are validated with line-numbered errors.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let mut name = None;
    let mut space: Option<SuperSpace> = None;
    let mut product: Option<BilinearOp> = None;
    let mut assoc: Option<BilinearOp> = None;
    let mut seen: BTreeSet<(bool, usize, usize, usize)> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if space.is_none() {
            if toks.len() != 4 || toks[0] != "superalg" {
                return Err(load_err(lineno, "expected header 'superalg <name> <n> <m>'"));
            }
            let n: usize = toks[2]
                .parse()
                .map_err(|_| load_err(lineno, format!("malformed even dimension '{}'", toks[2])))?;
            let m: usize = toks[3]
                .parse()
                .map_err(|_| load_err(lineno, format!("malformed odd dimension '{}'", toks[3])))?;
            name = Some(toks[1].to_string());
            let sp = SuperSpace::new(n, m);
            product = Some(BilinearOp::zero(&sp));
            space = Some(sp);
            continue;
        }
        let sp = space.as_ref().unwrap();
        let d = sp.dim();
        let (is_star, rest) = if toks[0] == "star" { (true, &toks[1..]) } else { (false, &toks[..]) };
        if rest.len() != 4 {
            return Err(load_err(lineno, "expected '<i> <j> <k> <num>/<den>'"));
        }
        let i = parse_index(rest[0], d, lineno)?;
        let j = parse_index(rest[1], d, lineno)?;
        let k = parse_index(rest[2], d, lineno)?;
        let v = parse_rational(rest[3], lineno)?;
        if !seen.insert((is_star, i, j, k)) {
            return Err(load_err(lineno, format!("duplicate entry ({i}, {j}, {k})")));
        }
        if v.is_zero() {
            continue;
        }
        let target = if is_star {
            assoc.get_or_insert_with(|| BilinearOp::zero(sp))
        } else {
            product.as_mut().unwrap()
        };
        target.set_entry(i, j, k, v);
    }

    match (name, product) {
        (Some(name), Some(product)) => Ok(AlgebraFile { name, product, assoc }),
        _ => Err(load_err(text.lines().count() + 1, "missing 'superalg' header")),
    }
}

pub(crate) fn fmt_rat(v: &Rat) -> String {
    let neg = v.is_negative();
    let (n, d): (&BigInt, &BigInt) = (v.numer(), v.denom());
    let s = format!("{}/{}", n.abs(), d);
    if neg { format!("-{s}") } else { s }
}

fn serialize_op(op: &BilinearOp, prefix: &str, out: &mut String) {
    let d = op.space.dim();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in op.eval_basis(i, j).coords.iter().enumerate() {
                if !c.is_zero() {
                    out.push_str(&format!("{prefix}{i} {j} {k} {}\n", fmt_rat(c)));
                }
            }
        }
    }
}

/// Stable relabeling onto an even-coordinates-first superspace; the
/// identity when the basis is already ordered that way.
pub fn even_first(op: &BilinearOp) -> BilinearOp {
    let sp = &op.space;
    let d = sp.dim();
    if (0..d).all(|i| i < sp.even_dim() || sp.parity(i) == 1) {
        return op.clone();
    }
    // perm[new] = old, evens before odds, each block in original order
    let perm: Vec<usize> = (0..d)
        .filter(|&i| sp.parity(i) == 0)
        .chain((0..d).filter(|&i| sp.parity(i) == 1))
        .collect();
    let mut inv = vec![0usize; d];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let target = SuperSpace::new(sp.even_dim(), d - sp.even_dim());
    let mut out = BilinearOp::zero(&target);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in op.eval_basis(perm[i], perm[j]).coords.iter().enumerate() {
                if !c.is_zero() {
                    out.set_entry(i, j, inv[k], c.clone());
                }
            }
        }
    }
    out
}

/// Canonical serialization: header, sorted product lines, sorted `star`
/// lines, coordinates relabeled even-first. Stable fixed point of
/// parse-then-serialize.
pub fn serialize_algebra(f: &AlgebraFile) -> String {
    let product = even_first(&f.product);
    let sp = &product.space;
    let mut out = format!(
        "superalg {} {} {}\n",
        f.name,
        sp.even_dim(),
        sp.dim() - sp.even_dim()
    );
    serialize_op(&product, "", &mut out);
    if let Some(assoc) = &f.assoc {
        serialize_op(&even_first(assoc), "star ", &mut out);
    }
    out
}

/// Reads an algebra from a path, from standard input when the path is
/// "-", or from the built-in catalog when the name matches one.
pub fn read_algebra(path: &str) -> Result<AlgebraFile> {
    if path == "-" {
        let mut text = String::new();
        use std::io::Read;
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| load_err(0, format!("stdin: {e}")))?;
        return parse_algebra(&text);
    }
    if !std::path::Path::new(path).exists() {
        if let Ok(product) = crate::catalog::catalog(path) {
            return Ok(AlgebraFile { name: path.to_string(), product, assoc: None });
        }
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| load_err(0, format!("{path}: {e}")))?;
    parse_algebra(&text)
}
