//! Exact linear algebra over the rationals: reduced row echelon form,
//! kernels, affine solving, and subspace lattice operations.
//!
//! Subspaces are always kept in RREF with strictly increasing pivots, so
//! subspace equality is representation equality.

use crate::rat::{rone, rzero, Rat};
use crate::{Error, Result};
use num::Zero;

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![rzero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rat> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = rzero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let e = self.get(r, c);
                        if !e.is_zero() {
                            acc += e * x;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "mul_mat dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, rone());
        }
        let (red, pivots) = rref(&aug);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form; returns the RREF matrix and the strictly
/// increasing list of pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if pr != row {
            for c in 0..a.cols {
                let tmp = a.get(pr, c).clone();
                a.set(pr, c, a.get(row, c).clone());
                a.set(row, c, tmp);
            }
        }
        let inv = {
            let p = a.get(row, col).clone();
            rone() / p
        };
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let f = a.get(r, col).clone();
            for c in col..a.cols {
                let v = a.get(r, c) - &f * a.get(row, c);
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Row-reduced basis of a subspace of F^ambient. Rows are in RREF with
/// strictly increasing pivots; zero rows are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rows(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![rzero(); ambient];
                    v[i] = rone();
                    v
                })
                .collect(),
        )
    }

    /// Canonicalize a spanning set into an RREF basis.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "row length mismatch");
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (red, pivots) = rref(&Mat::from_rows(rows));
        let kept: Vec<Vec<Rat>> = (0..pivots.len()).map(|r| red.row_vec(r)).collect();
        SubspaceBasis { ambient, rows: kept, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating against the basis rows; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the basis rows, or `None` when `v` is outside
    /// the span. For an RREF basis the coordinate on row r is `v[pivot_r]`.
    pub fn coords_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combine(&self, coeffs: &[Rat]) -> Vec<Rat> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![rzero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace sum: ambient dims differ".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.clone());
        Ok(SubspaceBasis::from_rows(self.ambient, rows))
    }

    /// Basis of the intersection, via the kernel of the stacked system
    /// x·A - y·B = 0.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace intersect: ambient dims differ".into()));
        }
        let k = self.dim();
        let l = other.dim();
        if k == 0 || l == 0 {
            return Ok(SubspaceBasis::zero(self.ambient));
        }
        // Columns: k coefficients on self, l coefficients on other.
        let mut m = Mat::zeros(self.ambient, k + l);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                m.set(i, k + j, -v.clone());
            }
        }
        let ker = kernel_basis(&m);
        let rows = ker
            .rows()
            .iter()
            .map(|coef| self.combine(&coef[..k]))
            .collect();
        Ok(SubspaceBasis::from_rows(self.ambient, rows))
    }
}

/// Basis of {v : m·v = 0}, RREF-canonicalized.
pub fn kernel_basis(m: &Mat) -> SubspaceBasis {
    let (red, pivots) = rref(m);
    let rank = pivots.len();
    let mut rows = Vec::new();
    let piv_set: Vec<bool> = {
        let mut s = vec![false; m.cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    for free in 0..m.cols {
        if piv_set[free] {
            continue;
        }
        let mut v = vec![rzero(); m.cols];
        v[free] = rone();
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            v[p] = -red.get(r, free).clone();
        }
        rows.push(v);
    }
    SubspaceBasis::from_rows(m.cols, rows)
}

/// Kernel of the matrix whose columns are given, dropping all-zero rows
/// first (the sparse case this crate actually hits).
pub fn kernel_from_columns(ambient_rows: usize, cols: &[Vec<Rat>]) -> SubspaceBasis {
    let ncols = cols.len();
    assert!(cols.iter().all(|c| c.len() == ambient_rows));
    let keep: Vec<usize> = (0..ambient_rows)
        .filter(|&r| cols.iter().any(|c| !c[r].is_zero()))
        .collect();
    let mut m = Mat::zeros(keep.len(), ncols);
    for (rr, &r) in keep.iter().enumerate() {
        for (cc, col) in cols.iter().enumerate() {
            if !col[r].is_zero() {
                m.set(rr, cc, col[r].clone());
            }
        }
    }
    kernel_basis(&m)
}

/// Solution of m·x = b: a particular solution plus the kernel, or `None`
/// when b is outside the column space.
pub fn solve_affine(m: &Mat, b: &[Rat]) -> Option<(Vec<Rat>, SubspaceBasis)> {
    assert_eq!(b.len(), m.rows, "rhs length mismatch");
    let mut aug = Mat::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![rzero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red.get(r, m.cols).clone();
    }
    Some((x, kernel_basis(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: Vec<Vec<i64>>) -> Mat {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    fn v(xs: Vec<i64>) -> Vec<Rat> {
        xs.into_iter().map(rat).collect()
    }

    #[test]
    fn rref_identity() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&m(vec![vec![2, 4], vec![1, 2]]));
        assert_eq!(r, m(vec![vec![1, 2], vec![0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let (r, p) = rref(&Mat::zeros(2, 3));
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_idempotent_on_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let a = Mat::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let (r1, p1) = rref(&a);
            let (r2, p2) = rref(&r1);
            assert_eq!(r1, r2);
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(kernel_basis(&Mat::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&Mat::zeros(2, 2)).dim(), 2);
    }

    #[test]
    fn kernel_line() {
        // [[1,2]] -> span{(-2,1)}; RREF-normalized that is (1, -1/2).
        let k = kernel_basis(&m(vec![vec![1, 2]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(vec![-2, 1])));
        assert_eq!(k.rows()[0], vec![rat(1), ratio(-1, 2)]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..6);
            let a = Mat::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let k = kernel_basis(&a);
            for kv in k.rows() {
                assert!(a.mul_vec(kv).iter().all(|x| x.is_zero()));
            }
            let (_, piv) = rref(&a);
            assert_eq!(k.dim(), cols - piv.len());
        }
    }

    #[test]
    fn solve_identity() {
        let (x, k) = solve_affine(&Mat::identity(2), &v(vec![5, 7])).unwrap();
        assert_eq!(x, v(vec![5, 7]));
        assert!(k.is_zero());
    }

    #[test]
    fn solve_underdetermined() {
        let (x, k) = solve_affine(&m(vec![vec![1, 1]]), &v(vec![2])).unwrap();
        assert_eq!(x, v(vec![2, 0]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(vec![-1, 1])));
    }

    #[test]
    fn solve_inconsistent() {
        assert!(solve_affine(&m(vec![vec![0, 0]]), &v(vec![1])).is_none());
    }

    #[test]
    fn solve_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..5);
            let a = Mat::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let x0: Vec<Rat> = (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let b = a.mul_vec(&x0);
            let (p, k) = solve_affine(&a, &b).unwrap();
            let mut x = p.clone();
            for kv in k.rows() {
                let c = rat(rng.gen_range(-2..=2));
                for (xi, ki) in x.iter_mut().zip(kv) {
                    *xi += &c * ki;
                }
            }
            assert_eq!(a.mul_vec(&x), b);
        }
    }

    #[test]
    fn subspace_lattice() {
        let full = SubspaceBasis::full(2);
        let e1 = SubspaceBasis::from_rows(2, vec![v(vec![1, 0])]);
        let diag = SubspaceBasis::from_rows(2, vec![v(vec![1, 1])]);
        assert_eq!(e1.intersect(&full).unwrap(), e1);
        assert!(e1.intersect(&SubspaceBasis::zero(2)).unwrap().is_zero());
        assert!(e1.intersect(&diag).unwrap().is_zero());
        assert!(diag.contains(&v(vec![3, 3])));
        assert!(!e1.contains(&v(vec![0, 1])));
        assert!(e1.contains(&v(vec![0, 0])));
        // dim(a∩b) = dim a + dim b - dim(a+b)
        let s = e1.sum(&diag).unwrap();
        assert_eq!(e1.intersect(&diag).unwrap().dim(), e1.dim() + diag.dim() - s.dim());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul_mat(&inv), Mat::identity(2));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    // Modular cross-check: rank over Q equals rank over a large prime field
    // on random integer matrices.
    #[test]
    fn rank_matches_modular_rank() {
        const P: i64 = 1_000_003;
        fn mod_rank(rows: &[Vec<i64>], cols: usize) -> usize {
            let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(P)).collect()).collect();
            let mut rank = 0;
            for col in 0..cols {
                let Some(pr) = (rank..a.len()).find(|&r| a[r][col] != 0) else { continue };
                a.swap(rank, pr);
                let inv = mod_inv(a[rank][col], P);
                for c in col..cols {
                    a[rank][c] = a[rank][c] * inv % P;
                }
                for r in 0..a.len() {
                    if r != rank && a[r][col] != 0 {
                        let f = a[r][col];
                        for c in col..cols {
                            a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(P);
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
        fn mod_inv(x: i64, p: i64) -> i64 {
            // Fermat
            let mut base = x.rem_euclid(p);
            let mut e = p - 2;
            let mut acc = 1i64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            acc
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let ints: Vec<Vec<i64>> =
                (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let a = m(ints.clone());
            let (_, piv) = rref(&a);
            assert_eq!(piv.len(), mod_rank(&ints, cols));
        }
    }
}
