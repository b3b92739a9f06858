//! Superspaces, homogeneous elements, and parity-graded linear/bilinear/
//! trilinear operators with structure-constant storage.
//!
//! Parities always derive from index position, so Koszul signs are
//! computable from indices alone. Sign-bearing formulas are evaluated
//! entrywise: an individual structure constant or matrix entry belongs to
//! a definite homogeneous component, and its parity is read off from the
//! indices involved.

use crate::linalg::Mat;
use crate::rat::{rone, rzero, Rat};
use crate::{Error, Result};
use num::Zero;
use std::collections::BTreeMap;

pub type Parity = u8;

/// A Z2-graded vector space with a parity-tagged ordered basis.
///
/// `new(n, m)` builds the standard even-first layout; carriers of U(n,m)
/// use `from_parities` with the lexicographic (i,j,k) parity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperSpace {
    parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(even: usize, odd: usize) -> Self {
        let mut parities = vec![0; even];
        parities.extend(vec![1; odd]);
        SuperSpace { parities }
    }

    pub fn from_parities(parities: Vec<Parity>) -> Self {
        assert!(parities.iter().all(|&p| p <= 1));
        SuperSpace { parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|&&p| p == 0).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.parities.iter().filter(|&&p| p == 1).count()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// Index of basis ops / carrier coordinates: lexicographic in (i,j,k).
    pub fn triple_index(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.dim();
        (i * d + j) * d + k
    }

    pub fn triple_of_index(&self, t: usize) -> (usize, usize, usize) {
        let d = self.dim();
        (t / (d * d), (t / d) % d, t % d)
    }
}

/// Coordinate vector over exact rationals in a fixed superspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub space: SuperSpace,
    pub coords: Vec<Rat>,
}

impl Element {
    pub fn zero(space: &SuperSpace) -> Self {
        Element { space: space.clone(), coords: vec![rzero(); space.dim()] }
    }

    pub fn basis(space: &SuperSpace, i: usize) -> Self {
        let mut e = Element::zero(space);
        e.coords[i] = rone();
        e
    }

    pub fn from_coords(space: &SuperSpace, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), space.dim());
        Element { space: space.clone(), coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn parity_part(&self, q: Parity) -> Element {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if self.space.parity(i) == q { c.clone() } else { rzero() })
            .collect();
        Element { space: self.space.clone(), coords }
    }

    pub fn even_part(&self) -> Element {
        self.parity_part(0)
    }

    pub fn odd_part(&self) -> Element {
        self.parity_part(1)
    }

    /// Parity of a nonzero homogeneous element; `None` for zero or mixed.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.space.parity(i);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.space, other.space, "space mismatch");
        Element {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.space, other.space, "space mismatch");
        Element {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element { space: self.space.clone(), coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Element {
        Element { space: self.space.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    fn nonzero(&self) -> Vec<(usize, &Rat)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Linear operator as a d x d matrix (column j = image of e_j), with the
/// parity decomposition derived from the block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOp {
    pub space: SuperSpace,
    pub matrix: Mat,
}

impl LinearOp {
    pub fn zero(space: &SuperSpace) -> Self {
        LinearOp { space: space.clone(), matrix: Mat::zeros(space.dim(), space.dim()) }
    }

    pub fn identity(space: &SuperSpace) -> Self {
        LinearOp { space: space.clone(), matrix: Mat::identity(space.dim()) }
    }

    pub fn from_matrix(space: &SuperSpace, matrix: Mat) -> Self {
        assert_eq!(matrix.rows, space.dim());
        assert_eq!(matrix.cols, space.dim());
        LinearOp { space: space.clone(), matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Entry (r, c) belongs to the homogeneous component of parity
    /// p(r)+p(c).
    pub fn parity_part(&self, q: Parity) -> LinearOp {
        let d = self.space.dim();
        let mut m = Mat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                if (self.space.parity(r) ^ self.space.parity(c)) == q {
                    m.set(r, c, self.matrix.get(r, c).clone());
                }
            }
        }
        LinearOp { space: self.space.clone(), matrix: m }
    }

    pub fn even_part(&self) -> LinearOp {
        self.parity_part(0)
    }

    pub fn odd_part(&self) -> LinearOp {
        self.parity_part(1)
    }

    pub fn is_even(&self) -> bool {
        self.parity_part(1).is_zero()
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_eq!(self.space, x.space, "space mismatch");
        Element { space: self.space.clone(), coords: self.matrix.mul_vec(&x.coords) }
    }

    pub fn compose(&self, other: &LinearOp) -> LinearOp {
        assert_eq!(self.space, other.space, "space mismatch");
        LinearOp { space: self.space.clone(), matrix: self.matrix.mul_mat(&other.matrix) }
    }

    pub fn add(&self, other: &LinearOp) -> LinearOp {
        let d = self.space.dim();
        let mut m = Mat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, self.matrix.get(r, c) + other.matrix.get(r, c));
            }
        }
        LinearOp { space: self.space.clone(), matrix: m }
    }

    pub fn sub(&self, other: &LinearOp) -> LinearOp {
        let d = self.space.dim();
        let mut m = Mat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, self.matrix.get(r, c) - other.matrix.get(r, c));
            }
        }
        LinearOp { space: self.space.clone(), matrix: m }
    }

    pub fn scale(&self, f: &Rat) -> LinearOp {
        let d = self.space.dim();
        let mut m = Mat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, self.matrix.get(r, c) * f);
            }
        }
        LinearOp { space: self.space.clone(), matrix: m }
    }

    /// Flat d^2 coordinate vector, row-major; the ambient space for U0
    /// span computations.
    pub fn coords_vec(&self) -> Vec<Rat> {
        let d = self.space.dim();
        let mut out = Vec::with_capacity(d * d);
        for r in 0..d {
            out.extend(self.matrix.row(r).iter().cloned());
        }
        out
    }

    /// Trace of the even-even block minus trace of the odd-odd block.
    pub fn supertrace(&self) -> Rat {
        let mut acc = rzero();
        for k in 0..self.space.dim() {
            let v = self.matrix.get(k, k);
            if self.space.parity(k) == 1 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        acc
    }
}

/// Supertrace of a linear operator.
pub fn supertrace(t: &LinearOp) -> Rat {
    t.supertrace()
}

/// Bilinear operation stored as parity-graded structure constants
/// c(i,j) -> vector; doubles as a superalgebra product and as an element
/// of U(V). Missing keys are zero; stored values are pruned of all-zero
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearOp {
    pub space: SuperSpace,
    constants: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl BilinearOp {
    pub fn zero(space: &SuperSpace) -> Self {
        BilinearOp { space: space.clone(), constants: BTreeMap::new() }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<Rat>) {
        assert_eq!(v.len(), self.space.dim());
        if v.iter().all(|x| x.is_zero()) {
            self.constants.remove(&(i, j));
        } else {
            self.constants.insert((i, j), v);
        }
    }

    pub fn set_entry(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        let d = self.space.dim();
        let vec = self.constants.entry((i, j)).or_insert_with(|| vec![rzero(); d]);
        vec[k] = v;
        if vec.iter().all(|x| x.is_zero()) {
            self.constants.remove(&(i, j));
        }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let d = self.space.dim();
        let vec = self.constants.entry((i, j)).or_insert_with(|| vec![rzero(); d]);
        vec[k] += v;
    }

    pub(crate) fn prune(&mut self) {
        self.constants.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vec<Rat>> {
        self.constants.get(&(i, j))
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> Rat {
        self.constants.get(&(i, j)).map(|v| v[k].clone()).unwrap_or_else(rzero)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Rat>)> {
        self.constants.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.constants.values().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// Bilinear extension of the structure constants.
    pub fn eval(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(self.space, x.space, "space mismatch");
        assert_eq!(self.space, y.space, "space mismatch");
        let mut out = Element::zero(&self.space);
        for (i, xv) in x.nonzero() {
            for (j, yv) in y.nonzero() {
                if let Some(c) = self.get(i, j) {
                    let f = xv * yv;
                    for (o, ck) in out.coords.iter_mut().zip(c) {
                        if !ck.is_zero() {
                            *o += &f * ck;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn eval_basis(&self, i: usize, j: usize) -> Element {
        let mut out = Element::zero(&self.space);
        if let Some(c) = self.get(i, j) {
            out.coords = c.clone();
        }
        out
    }

    /// Structure constant c(i,j)_k belongs to the component of parity
    /// p(i)+p(j)+p(k).
    pub fn parity_part(&self, q: Parity) -> BilinearOp {
        let mut out = BilinearOp::zero(&self.space);
        let sp = &self.space;
        for (&(i, j), v) in &self.constants {
            let filtered: Vec<Rat> = v
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    if (sp.parity(i) ^ sp.parity(j) ^ sp.parity(k)) == q {
                        x.clone()
                    } else {
                        rzero()
                    }
                })
                .collect();
            out.set(i, j, filtered);
        }
        out
    }

    pub fn even_part(&self) -> BilinearOp {
        self.parity_part(0)
    }

    pub fn odd_part(&self) -> BilinearOp {
        self.parity_part(1)
    }

    pub fn is_even(&self) -> bool {
        self.parity_part(1).is_zero()
    }

    pub fn add(&self, other: &BilinearOp) -> BilinearOp {
        assert_eq!(self.space, other.space, "space mismatch");
        let mut out = self.clone();
        for (&(i, j), v) in &other.constants {
            let d = out.space.dim();
            let dst = out.constants.entry((i, j)).or_insert_with(|| vec![rzero(); d]);
            for (a, b) in dst.iter_mut().zip(v) {
                *a += b;
            }
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &BilinearOp) -> BilinearOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BilinearOp {
        self.scale(&-rone())
    }

    pub fn scale(&self, f: &Rat) -> BilinearOp {
        if f.is_zero() {
            return BilinearOp::zero(&self.space);
        }
        let mut out = self.clone();
        for v in out.constants.values_mut() {
            for x in v.iter_mut() {
                *x *= f;
            }
        }
        out
    }

    /// Flat d^3 coordinate vector, lexicographic in (i,j,k).
    pub fn coords_vec(&self) -> Vec<Rat> {
        let d = self.space.dim();
        let mut out = vec![rzero(); d * d * d];
        for (&(i, j), v) in &self.constants {
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[self.space.triple_index(i, j, k)] = x.clone();
                }
            }
        }
        out
    }

    pub fn from_coords_vec(space: &SuperSpace, coords: &[Rat]) -> BilinearOp {
        let d = space.dim();
        assert_eq!(coords.len(), d * d * d);
        let mut out = BilinearOp::zero(space);
        for (t, x) in coords.iter().enumerate() {
            if !x.is_zero() {
                let (i, j, k) = space.triple_of_index(t);
                out.add_entry(i, j, k, x.clone());
            }
        }
        out
    }
}

/// Trilinear operation keyed by (i,j,k); used for values of [B,C].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrilinearOp {
    pub space: SuperSpace,
    constants: BTreeMap<(usize, usize, usize), Vec<Rat>>,
}

impl TrilinearOp {
    pub fn zero(space: &SuperSpace) -> Self {
        TrilinearOp { space: space.clone(), constants: BTreeMap::new() }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, l: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let d = self.space.dim();
        let vec = self.constants.entry((i, j, k)).or_insert_with(|| vec![rzero(); d]);
        vec[l] += v;
    }

    pub(crate) fn prune(&mut self) {
        self.constants.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<&Vec<Rat>> {
        self.constants.get(&(i, j, k))
    }

    pub fn is_zero(&self) -> bool {
        self.constants.values().all(|v| v.iter().all(|x| x.is_zero()))
    }

    pub fn keys(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Vec<Rat>)> {
        self.constants.iter()
    }
}

/// Left multiplication L_a with respect to M: columns are M(a, e_j).
pub fn left_mul(m: &BilinearOp, a: &Element) -> LinearOp {
    assert_eq!(m.space, a.space, "space mismatch");
    let d = m.space.dim();
    let mut mat = Mat::zeros(d, d);
    for (&(i, j), c) in m.keys() {
        let ai = &a.coords[i];
        if ai.is_zero() {
            continue;
        }
        for (k, x) in c.iter().enumerate() {
            if !x.is_zero() {
                let v = mat.get(k, j) + ai * x;
                mat.set(k, j, v);
            }
        }
    }
    LinearOp { space: m.space.clone(), matrix: mat }
}

/// Raw right multiplication: columns are M(e_j, a). Koszul signs are not
/// baked in here; sign-bearing formulas apply them at the use site.
pub fn right_mul(m: &BilinearOp, a: &Element) -> LinearOp {
    assert_eq!(m.space, a.space, "space mismatch");
    let d = m.space.dim();
    let mut mat = Mat::zeros(d, d);
    for (&(j, i), c) in m.keys() {
        let ai = &a.coords[i];
        if ai.is_zero() {
            continue;
        }
        for (k, x) in c.iter().enumerate() {
            if !x.is_zero() {
                let v = mat.get(k, j) + ai * x;
                mat.set(k, j, v);
            }
        }
    }
    LinearOp { space: m.space.clone(), matrix: mat }
}

/// The natural action of an even invertible operator:
/// phi(B)(x,y) = phi(B(phi^-1 x, phi^-1 y)).
pub fn induced_iso(phi: &LinearOp, b: &BilinearOp) -> Result<BilinearOp> {
    if phi.space != b.space {
        return Err(Error::DimensionMismatch("induced_iso: spaces differ".into()));
    }
    if !phi.is_even() {
        return Err(Error::ParityViolation("induced_iso: operator must be even".into()));
    }
    let inv = phi.matrix.inverse().ok_or(Error::NotInvertible)?;
    let d = b.space.dim();
    let mut out = BilinearOp::zero(&b.space);
    let inv_cols: Vec<Element> = (0..d)
        .map(|j| {
            Element::from_coords(&b.space, (0..d).map(|r| inv.get(r, j).clone()).collect())
        })
        .collect();
    for i in 0..d {
        for j in 0..d {
            let mid = b.eval(&inv_cols[i], &inv_cols[j]);
            let img = phi.apply(&mid);
            out.set(i, j, img.coords);
        }
    }
    Ok(out)
}

/// The d^3 elementary operations E_ij^k (E_ij^k(e_i, e_j) = e_k, zero
/// elsewhere), in lexicographic (i,j,k) order. E_ij^k has parity
/// p(i)+p(j)+p(k).
pub fn basis_ops(space: &SuperSpace) -> Vec<BilinearOp> {
    let d = space.dim();
    let mut out = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut op = BilinearOp::zero(space);
                op.set_entry(i, j, k, rone());
                out.push(op);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Gamma_1: basis (1, xi) with 1 even, xi odd; 1*1=1, 1*xi=xi*1=xi,
    /// xi*xi=0.
    pub(crate) fn gamma1() -> BilinearOp {
        let sp = SuperSpace::new(1, 1);
        let mut m = BilinearOp::zero(&sp);
        m.set_entry(0, 0, 0, rone());
        m.set_entry(0, 1, 1, rone());
        m.set_entry(1, 0, 1, rone());
        m
    }

    fn idempotent_line() -> BilinearOp {
        let sp = SuperSpace::new(1, 0);
        let mut m = BilinearOp::zero(&sp);
        m.set_entry(0, 0, 0, rone());
        m
    }

    #[test]
    fn eval_bilinear_basics() {
        let sp = SuperSpace::new(1, 0);
        let z = BilinearOp::zero(&sp);
        let x = Element::basis(&sp, 0);
        assert!(z.eval(&x, &x).is_zero());

        let m = idempotent_line();
        let out = m.eval(&x.scale(&rat(2)), &x.scale(&rat(3)));
        assert_eq!(out.coords, vec![rat(6)]);

        let g = gamma1();
        let xi = Element::basis(&g.space, 1);
        assert!(g.eval(&xi, &xi).is_zero());
    }

    #[test]
    fn left_and_right_mul() {
        let sp = SuperSpace::new(1, 0);
        let z = BilinearOp::zero(&sp);
        let e = Element::basis(&sp, 0);
        assert!(left_mul(&z, &e).is_zero());
        assert!(right_mul(&z, &e).is_zero());

        let m = idempotent_line();
        assert_eq!(left_mul(&m, &e), LinearOp::identity(&sp));
        assert_eq!(right_mul(&m, &e), LinearOp::identity(&sp));

        let g = gamma1();
        let xi = Element::basis(&g.space, 1);
        let l = left_mul(&g, &xi);
        // 1 -> xi, xi -> 0
        assert_eq!(l.apply(&Element::basis(&g.space, 0)), xi);
        assert!(l.apply(&xi).is_zero());
        let r = right_mul(&g, &xi);
        assert_eq!(r.apply(&Element::basis(&g.space, 0)), xi);
        assert!(r.apply(&xi).is_zero());
    }

    #[test]
    fn supertrace_values() {
        let sp = SuperSpace::new(1, 1);
        assert_eq!(LinearOp::identity(&sp).supertrace(), rat(0));

        let mut m = Mat::zeros(2, 2);
        m.set(0, 0, rat(2));
        m.set(1, 1, rat(3));
        assert_eq!(LinearOp::from_matrix(&sp, m).supertrace(), rat(-1));

        // any odd operator has zero diagonal blocks
        let mut o = Mat::zeros(2, 2);
        o.set(0, 1, rat(5));
        o.set(1, 0, rat(7));
        let op = LinearOp::from_matrix(&sp, o);
        assert!(op.is_zero() || op.even_part().is_zero());
        assert_eq!(op.supertrace(), rat(0));
    }

    #[test]
    fn induced_iso_basics() {
        let g = gamma1();
        let id = LinearOp::identity(&g.space);
        assert_eq!(induced_iso(&id, &g).unwrap(), g);

        // 1-dim: phi = lambda id sends constant alpha to alpha/lambda
        let sp = SuperSpace::new(1, 0);
        let mut b = BilinearOp::zero(&sp);
        b.set_entry(0, 0, 0, rat(6));
        let mut pm = Mat::zeros(1, 1);
        pm.set(0, 0, rat(3));
        let phi = LinearOp::from_matrix(&sp, pm);
        let img = induced_iso(&phi, &b).unwrap();
        assert_eq!(img.entry(0, 0, 0), rat(2));

        // odd phi rejected
        let spo = SuperSpace::new(1, 1);
        let mut om = Mat::zeros(2, 2);
        om.set(0, 1, rat(1));
        om.set(1, 0, rat(1));
        let odd = LinearOp::from_matrix(&spo, om);
        assert!(induced_iso(&odd, &gamma1()).is_err());
    }

    #[test]
    fn induced_iso_is_group_action() {
        let sp = SuperSpace::new(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let mut b = BilinearOp::zero(&sp);
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        b.add_entry(i, j, k, rat(rng.gen_range(-2..=2)));
                    }
                }
            }
            // random even invertible: diagonal with nonzero entries
            let mk = |a: i64, c: i64| {
                let mut m = Mat::zeros(2, 2);
                m.set(0, 0, rat(a));
                m.set(1, 1, rat(c));
                LinearOp::from_matrix(&sp, m)
            };
            let phi = mk(rng.gen_range(1..=3), rng.gen_range(1..=3));
            let psi = mk(rng.gen_range(1..=3), rng.gen_range(1..=3));
            let lhs = induced_iso(&phi, &induced_iso(&psi, &b).unwrap()).unwrap();
            let rhs = induced_iso(&phi.compose(&psi), &b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_ops_counts_and_parity() {
        assert_eq!(basis_ops(&SuperSpace::new(1, 0)).len(), 1);
        let ops = basis_ops(&SuperSpace::new(1, 1));
        assert_eq!(ops.len(), 8);
        let even = ops.iter().filter(|o| o.is_even()).count();
        assert_eq!(even, 4);
        assert_eq!(basis_ops(&SuperSpace::new(2, 1)).len(), 27);
    }

    #[test]
    fn basis_ops_span_every_op() {
        let sp = SuperSpace::new(1, 1);
        let mut b = BilinearOp::zero(&sp);
        b.set_entry(0, 0, 1, rat(2));
        b.set_entry(1, 1, 0, ratio(-1, 3));
        let ops = basis_ops(&sp);
        let coords = b.coords_vec();
        let mut acc = BilinearOp::zero(&sp);
        for (t, c) in coords.iter().enumerate() {
            acc = acc.add(&ops[t].scale(c));
        }
        assert_eq!(acc, b);
        assert_eq!(BilinearOp::from_coords_vec(&sp, &coords), b);
    }

    #[test]
    fn parity_grading_of_parts() {
        let g = gamma1();
        assert!(g.is_even());
        let mut mixed = g.clone();
        mixed.set_entry(0, 0, 1, rat(1)); // odd component
        let ev = mixed.even_part();
        let od = mixed.odd_part();
        assert_eq!(ev, g);
        assert_eq!(od.entry(0, 0, 1), rat(1));
        assert_eq!(ev.add(&od), mixed);
    }

    #[test]
    fn eval_is_bilinear_on_random_inputs() {
        let sp = SuperSpace::new(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut b = BilinearOp::zero(&sp);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    b.add_entry(i, j, k, rat(rng.gen_range(-2..=2)));
                }
            }
        }
        for _ in 0..20 {
            let rv = |rng: &mut ChaCha8Rng| {
                Element::from_coords(&sp, (0..3).map(|_| rat(rng.gen_range(-3..=3))).collect())
            };
            let x = rv(&mut rng);
            let x2 = rv(&mut rng);
            let y = rv(&mut rng);
            let lhs = b.eval(&x.add(&x2), &y);
            let rhs = b.eval(&x, &y).add(&b.eval(&x2, &y));
            assert_eq!(lhs, rhs);
            let c = rat(rng.gen_range(-3..=3));
            assert_eq!(b.eval(&x.scale(&c), &y), b.eval(&x, &y).scale(&c));
        }
    }
}
