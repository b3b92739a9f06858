//! Finite-generator Grassmann algebras and the Grassmann enveloping
//! functor, used as an independent sign oracle: a multilinear identity
//! holds in a superalgebra with Koszul signs iff the corresponding
//! sign-free identity holds in its Grassmann envelope.
//!
//! The evaluators on the envelope are deliberately written without any
//! shared sign code: the only signs in this module come from reordering
//! Grassmann generators and the single (-1)^{p(a)p(b)} factor baked into
//! the envelope's structure constants. Everything downstream is ordinary
//! (ungraded) algebra.
//!
//! Identities of degree <= 4 are checked by the tagged-substitution
//! argument: each of the four variable slots gets its own generator
//! xi_1..xi_4 for odd basis elements (and 1 for even ones), which
//! separates all sign cases while keeping the check at d^4 evaluations.

use crate::brackets::{is_flexible, symmetrized};
use crate::conservative::degree4_residual;
use crate::rat::{rone, Rat};
use crate::superspace::{BilinearOp, SuperSpace};
use crate::{Error, Result};
use num::Zero;
use std::collections::BTreeMap;

/// The Grassmann algebra on g anticommuting generators. Basis monomials
/// are subsets of {1..g} encoded as bitmasks; bit i set means xi_{i+1}
/// occurs.
#[derive(Debug, Clone)]
pub struct GrassmannAlgebra {
    g: usize,
}

/// Parity of the number of transpositions needed to merge two disjoint
/// ordered monomials: for each generator of `m2`, count the generators of
/// `m1` that must jump over it.
fn merge_sign_exp(m1: u32, m2: u32) -> u8 {
    let mut exp = 0u32;
    let mut bits = m2;
    while bits != 0 {
        let b = bits.trailing_zeros();
        exp += (m1 >> (b + 1)).count_ones();
        bits &= bits - 1;
    }
    (exp & 1) as u8
}

pub fn grassmann_algebra(g: usize) -> GrassmannAlgebra {
    assert!(g < 32, "generator count out of range");
    GrassmannAlgebra { g }
}

impl GrassmannAlgebra {
    pub fn generators(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        1 << self.g
    }

    /// dim of the even half (even-size subsets); 2^{g-1} for g >= 1.
    pub fn even_dim(&self) -> usize {
        self.monomials().filter(|&m| m.count_ones() % 2 == 0).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.monomials().filter(|&m| m.count_ones() % 2 == 1).count()
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.g)
    }

    pub fn parity(&self, m: u32) -> u8 {
        (m.count_ones() & 1) as u8
    }

    /// Product of two basis monomials: `None` when a generator repeats
    /// (square zero), otherwise the merged monomial with its sign exponent.
    pub fn product(&self, m1: u32, m2: u32) -> Option<(u8, u32)> {
        if m1 & m2 != 0 {
            return None;
        }
        Some((merge_sign_exp(m1, m2), m1 | m2))
    }
}

/// Sparse element of an ordinary (ungraded) algebra.
pub type OrdElem = BTreeMap<usize, Rat>;

fn ord_add_into(dst: &mut OrdElem, idx: usize, v: Rat) {
    if v.is_zero() {
        return;
    }
    let e = dst.entry(idx).or_insert_with(Rat::zero);
    *e += v;
    if e.is_zero() {
        dst.remove(&idx);
    }
}

fn ord_sub(a: &OrdElem, b: &OrdElem) -> OrdElem {
    let mut out = a.clone();
    for (&i, v) in b {
        ord_add_into(&mut out, i, -v.clone());
    }
    out
}

fn ord_addv(a: &OrdElem, b: &OrdElem) -> OrdElem {
    let mut out = a.clone();
    for (&i, v) in b {
        ord_add_into(&mut out, i, v.clone());
    }
    out
}

/// An ordinary algebra given by sparse structure constants.
#[derive(Debug, Clone)]
pub struct OrdinaryAlgebra {
    pub dim: usize,
    constants: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl OrdinaryAlgebra {
    pub fn zero(dim: usize) -> Self {
        OrdinaryAlgebra { dim, constants: BTreeMap::new() }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        self.constants.entry((i, j)).or_default().push((k, v));
    }

    pub fn basis_product(&self, i: usize, j: usize) -> OrdElem {
        let mut out = OrdElem::new();
        if let Some(terms) = self.constants.get(&(i, j)) {
            for (k, v) in terms {
                ord_add_into(&mut out, *k, v.clone());
            }
        }
        out
    }

    pub fn eval(&self, x: &OrdElem, y: &OrdElem) -> OrdElem {
        let mut out = OrdElem::new();
        for (&i, xc) in x {
            for (&j, yc) in y {
                if let Some(terms) = self.constants.get(&(i, j)) {
                    let f = xc * yc;
                    for (k, v) in terms {
                        ord_add_into(&mut out, *k, v * &f);
                    }
                }
            }
        }
        out
    }
}

/// The Grassmann envelope of a superalgebra: the ordinary algebra on
/// (M_even tensor Gamma_even) + (M_odd tensor Gamma_odd) with
/// (a tensor f)(b tensor h) = (-1)^{p(a)p(b)} ab tensor fh.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub space: SuperSpace,
    pub gamma: GrassmannAlgebra,
    /// Carrier basis: (superalgebra basis index, Grassmann monomial) with
    /// matching parities.
    pub basis: Vec<(usize, u32)>,
    index: BTreeMap<(usize, u32), usize>,
    /// The enveloped product.
    pub alg: OrdinaryAlgebra,
}

pub fn envelope(m: &BilinearOp, g: usize) -> Envelope {
    let sp = m.space.clone();
    let gamma = grassmann_algebra(g);
    let mut basis = Vec::new();
    for i in 0..sp.dim() {
        for mono in gamma.monomials() {
            if gamma.parity(mono) == sp.parity(i) {
                basis.push((i, mono));
            }
        }
    }
    let index: BTreeMap<(usize, u32), usize> =
        basis.iter().enumerate().map(|(n, &key)| (key, n)).collect();
    let mut env = Envelope { space: sp, gamma, basis, index, alg: OrdinaryAlgebra::zero(0) };
    env.alg = env.envelope_of(m);
    env
}

impl Envelope {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, i: usize, mono: u32) -> Option<usize> {
        self.index.get(&(i, mono)).copied()
    }

    /// Envelope of another product on the same superspace, over the same
    /// carrier (used for associated multiplications).
    pub fn envelope_of(&self, m: &BilinearOp) -> OrdinaryAlgebra {
        assert_eq!(m.space, self.space, "space mismatch");
        let mut alg = OrdinaryAlgebra::zero(self.dim());
        for (n1, &(i, f)) in self.basis.iter().enumerate() {
            for (n2, &(j, h)) in self.basis.iter().enumerate() {
                let Some((gexp, fh)) = self.gamma.product(f, h) else { continue };
                let exp = gexp ^ (self.space.parity(i) & self.space.parity(j));
                let sign = if exp == 1 { -rone() } else { rone() };
                if let Some(c) = m.get(i, j) {
                    for (k, v) in c.iter().enumerate() {
                        if !v.is_zero() {
                            let tgt = self.index[&(k, fh)];
                            alg.add_entry(n1, n2, tgt, v * &sign);
                        }
                    }
                }
            }
        }
        alg
    }

    /// The tagged image of basis vector i in variable slot `slot`: odd
    /// elements are paired with the slot's own generator, even ones with 1.
    pub fn tagged(&self, i: usize, slot: usize) -> OrdElem {
        assert!(slot < self.gamma.generators(), "not enough Grassmann generators for this slot");
        let mono = if self.space.parity(i) == 1 { 1u32 << slot } else { 0 };
        let mut e = OrdElem::new();
        e.insert(self.index[&(i, mono)], rone());
        e
    }
}

/// Residual of the ordinary (sign-free) degree-4 conservativity identity
///
///   b(a(xy)) - b((ax)y) - b(x(ay)) - a((bx)y) + (a(bx))y + (bx)(ay)
///   - a(x(by)) + (ax)(by) + x(a(by))
///   = -(a*b)(xy) + ((a*b)x)y + x((a*b)y)
///
/// evaluated in an ordinary algebra.
fn ord_cons_residual(
    alg: &OrdinaryAlgebra,
    star: &OrdinaryAlgebra,
    a: &OrdElem,
    b: &OrdElem,
    x: &OrdElem,
    y: &OrdElem,
) -> OrdElem {
    let p = |u: &OrdElem, v: &OrdElem| alg.eval(u, v);
    let xy = p(x, y);
    let ax = p(a, x);
    let ay = p(a, y);
    let bx = p(b, x);
    let by = p(b, y);
    let ab = star.eval(a, b);

    let mut lhs = p(b, &p(a, &xy));
    lhs = ord_sub(&lhs, &p(b, &p(&ax, y)));
    lhs = ord_sub(&lhs, &p(b, &p(x, &ay)));
    lhs = ord_sub(&lhs, &p(a, &p(&bx, y)));
    lhs = ord_addv(&lhs, &p(&p(a, &bx), y));
    lhs = ord_addv(&lhs, &p(&bx, &ay));
    lhs = ord_sub(&lhs, &p(a, &p(x, &by)));
    lhs = ord_addv(&lhs, &p(&ax, &by));
    lhs = ord_addv(&lhs, &p(x, &p(a, &by)));

    let mut rhs = OrdElem::new();
    rhs = ord_sub(&rhs, &p(&ab, &xy));
    rhs = ord_addv(&rhs, &p(&p(&ab, x), y));
    rhs = ord_addv(&rhs, &p(x, &p(&ab, y)));

    ord_sub(&lhs, &rhs)
}

/// Verdicts of the two independent conservativity routes: the super
/// degree-4 identity with Koszul signs, and the sign-free identity on the
/// Grassmann envelope.
#[derive(Debug, Clone, Copy)]
pub struct TransferReport {
    pub super_verdict: bool,
    pub envelope_verdict: bool,
}

impl TransferReport {
    pub fn agree(&self) -> bool {
        self.super_verdict == self.envelope_verdict
    }
}

/// Runs both conservativity routes over all basis quadruples.
pub fn transfer_report(m: &BilinearOp, mstar: &BilinearOp, g: usize) -> Result<TransferReport> {
    if g < 4 {
        return Err(Error::Unsupported(
            "the degree-4 identity needs at least 4 Grassmann generators".into(),
        ));
    }
    if !m.is_even() || !mstar.is_even() {
        return Err(Error::ParityViolation("conservativity needs even M, M*".into()));
    }
    let d = m.space.dim();
    let env = envelope(m, g);
    let star_env = env.envelope_of(mstar);

    let mut super_verdict = true;
    'outer: for a in 0..d {
        for b in 0..d {
            for x in 0..d {
                for y in 0..d {
                    if !degree4_residual(m, mstar, a, b, x, y).is_zero() {
                        super_verdict = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut envelope_verdict = true;
    'outer2: for a in 0..d {
        let ta = env.tagged(a, 0);
        for b in 0..d {
            let tb = env.tagged(b, 1);
            for x in 0..d {
                let tx = env.tagged(x, 2);
                for y in 0..d {
                    let ty = env.tagged(y, 3);
                    if !ord_cons_residual(&env.alg, &star_env, &ta, &tb, &tx, &ty).is_empty() {
                        envelope_verdict = false;
                        break 'outer2;
                    }
                }
            }
        }
    }
    Ok(TransferReport { super_verdict, envelope_verdict })
}

/// Envelope-route conservativity verdict (the independent oracle).
pub fn transfer_check_conservative(m: &BilinearOp, mstar: &BilinearOp, g: usize) -> Result<bool> {
    Ok(transfer_report(m, mstar, g)?.envelope_verdict)
}

/// Sign-free flexibility on the envelope: (xy)z - x(yz) + (zy)x - z(yx).
pub fn is_flexible_envelope(m: &BilinearOp, g: usize) -> bool {
    let env = envelope(m, g);
    let d = m.space.dim();
    let p = |u: &OrdElem, v: &OrdElem| env.alg.eval(u, v);
    for x in 0..d {
        let tx = env.tagged(x, 0);
        for y in 0..d {
            let ty = env.tagged(y, 1);
            for z in 0..d {
                let tz = env.tagged(z, 2);
                let r = ord_sub(
                    &ord_addv(&ord_sub(&p(&p(&tx, &ty), &tz), &p(&tx, &p(&ty, &tz))), &p(&p(&tz, &ty), &tx)),
                    &p(&tz, &p(&ty, &tx)),
                );
                if !r.is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Sign-free associativity on the envelope.
pub fn is_associative_envelope(m: &BilinearOp, g: usize) -> bool {
    let env = envelope(m, g);
    let d = m.space.dim();
    for x in 0..d {
        let tx = env.tagged(x, 0);
        for y in 0..d {
            let ty = env.tagged(y, 1);
            for z in 0..d {
                let tz = env.tagged(z, 2);
                let r = ord_sub(
                    &env.alg.eval(&env.alg.eval(&tx, &ty), &tz),
                    &env.alg.eval(&tx, &env.alg.eval(&ty, &tz)),
                );
                if !r.is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Sign-free commutativity on the envelope (= supercommutativity of M).
pub fn is_commutative_envelope(m: &BilinearOp, g: usize) -> bool {
    let env = envelope(m, g);
    let d = m.space.dim();
    for x in 0..d {
        let tx = env.tagged(x, 0);
        for y in 0..d {
            let ty = env.tagged(y, 1);
            if !ord_sub(&env.alg.eval(&tx, &ty), &env.alg.eval(&ty, &tx)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Sign-free terminality on the envelope: [[[M,a],M],M] = 0 with the
/// ordinary (trivial-sign) brackets, expanded through the closure
/// B(x,y) = a(xy) - (ax)y - x(ay).
pub fn is_terminal_envelope(m: &BilinearOp, g: usize) -> bool {
    let env = envelope(m, g);
    let d = m.space.dim();
    let p = |u: &OrdElem, v: &OrdElem| env.alg.eval(u, v);
    for a in 0..d {
        let ta = env.tagged(a, 0);
        let b_op = |u: &OrdElem, v: &OrdElem| -> OrdElem {
            ord_sub(&ord_sub(&p(&ta, &p(u, v)), &p(&p(&ta, u), v)), &p(u, &p(&ta, v)))
        };
        for x in 0..d {
            let tx = env.tagged(x, 1);
            for y in 0..d {
                let ty = env.tagged(y, 2);
                for z in 0..d {
                    let tz = env.tagged(z, 3);
                    // [B,M](x,y,z) with all signs trivial
                    let mut r = b_op(&p(&tx, &ty), &tz);
                    r = ord_addv(&r, &b_op(&tx, &p(&ty, &tz)));
                    r = ord_addv(&r, &b_op(&ty, &p(&tx, &tz)));
                    r = ord_sub(&r, &p(&b_op(&tx, &ty), &tz));
                    r = ord_sub(&r, &p(&tx, &b_op(&ty, &tz)));
                    r = ord_sub(&r, &p(&ty, &b_op(&tx, &tz)));
                    if !r.is_empty() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// True iff M is a Jordan superalgebra: its envelope is commutative and
/// satisfies the fully linearized Jordan identity (equivalent to the
/// Jordan identity in characteristic 0).
pub fn is_jordan_super(m: &BilinearOp) -> bool {
    let g = 4;
    if !is_commutative_envelope(m, g) {
        return false;
    }
    let env = envelope(m, g);
    let d = m.space.dim();
    let p = |u: &OrdElem, v: &OrdElem| env.alg.eval(u, v);
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for x1 in 0..d {
        for x2 in 0..d {
            for x3 in 0..d {
                let xs = [env.tagged(x1, 0), env.tagged(x2, 1), env.tagged(x3, 2)];
                for y in 0..d {
                    let ty = env.tagged(y, 3);
                    let mut r = OrdElem::new();
                    for [i, j, k] in perms {
                        let prod = p(&xs[i], &xs[j]);
                        r = ord_addv(&r, &p(&p(&prod, &ty), &xs[k]));
                        r = ord_sub(&r, &p(&prod, &p(&ty, &xs[k])));
                    }
                    if !r.is_empty() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// True iff M is a noncommutative Jordan superalgebra: flexible, with a
/// Jordan symmetrization.
pub fn is_ncjordan_super(m: &BilinearOp) -> bool {
    is_flexible(m) && is_jordan_super(&symmetrized(m))
}
