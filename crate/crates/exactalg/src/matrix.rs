//! Dense matrices over a commutative ring, with division-free characteristic
//! polynomials, fraction-free determinants and field elimination.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::poly::UniPoly;
use crate::scalar::{ExactDiv, Field, Ring};

/// Entries that carry the conjugation involution.
pub trait Conj: Clone {
    fn conj(&self) -> Self;
}

impl<F: Field> Conj for F {
    fn conj(&self) -> Self {
        Field::conj(self)
    }
}

impl<F: Field> Conj for UniPoly<F> {
    fn conj(&self) -> Self {
        UniPoly::conj(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(cols: &[Vec<R>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Clone>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn diagonal(d: &[R]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { R::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * o[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(R::zero(), |acc, k| acc + self[(i, k)].clone() * v[k].clone())
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + o[(i, j)].clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - o[(i, j)].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Coefficients of `det(tI − self)`, lowest degree first (monic, length
    /// `n + 1`). Berkowitz's division-free algorithm.
    pub fn charpoly_coeffs(&self) -> Vec<R> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        // highest degree first while accumulating
        let mut vect: Vec<R> = vec![R::one()];
        for k in 0..n {
            // q_0 = 1, q_1 = -a_kk, q_{j+2} = -R A^j C
            let mut q = Vec::with_capacity(k + 2);
            q.push(R::one());
            q.push(-self[(k, k)].clone());
            let mut col: Vec<R> = (0..k).map(|i| self[(i, k)].clone()).collect();
            for _ in 0..k {
                let rc = (0..k).fold(R::zero(), |acc, i| acc + self[(k, i)].clone() * col[i].clone());
                q.push(-rc);
                col = (0..k)
                    .map(|i| (0..k).fold(R::zero(), |acc, l| acc + self[(i, l)].clone() * col[l].clone()))
                    .collect();
            }
            let mut next = vec![R::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = R::zero();
                for (j, v) in vect.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        acc = acc + q[i - j].clone() * v.clone();
                    }
                }
                *slot = acc;
            }
            vect = next;
        }
        vect.reverse();
        vect
    }

    pub fn is_hermitian(&self) -> bool
    where
        R: Conj,
    {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self
    where
        R: Conj,
    {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self
    where
        R: Conj,
    {
        self.map(Conj::conj)
    }
}

impl<R: ExactDiv> Matrix<R> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut sign_neg = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign_neg = !sign_neg;
                    }
                    None => return R::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)].clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v.div_exact(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_neg {
            -d
        } else {
            d
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, fc)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Congruence diagonalization of a constant Hermitian (or symmetric)
    /// matrix: returns `(T, d)` with `T^* · self · T = diag(d)` and `T`
    /// invertible. Zero entries of `d` record the radical.
    pub fn hermitian_ldl(&self) -> (Self, Vec<F>) {
        assert!(self.is_square());
        let n = self.rows;
        let mut g = self.clone();
        let mut t = Self::identity(n);
        for k in 0..n {
            if g[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                    swap_basis(&mut g, &mut t, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !g[(k, j)].is_zero()) {
                    // b_k += conj(g_kj)·b_j makes the new diagonal 2|g_kj|^2
                    let u = Field::conj(&g[(k, j)]);
                    add_basis(&mut g, &mut t, k, j, &u);
                } else {
                    continue;
                }
            }
            let pivot = g[(k, k)].clone();
            for j in k + 1..n {
                if !g[(k, j)].is_zero() {
                    let q = -(g[(k, j)].clone() / pivot.clone());
                    add_basis(&mut g, &mut t, j, k, &q);
                }
            }
        }
        let d = (0..n).map(|i| g[(i, i)].clone()).collect();
        (t, d)
    }
}

/// `b_target += q·b_source` applied to a Gram matrix and a basis matrix.
fn add_basis<F: Field>(g: &mut Matrix<F>, t: &mut Matrix<F>, target: usize, source: usize, q: &F) {
    let n = g.rows;
    for i in 0..n {
        let v = g[(i, target)].clone() + g[(i, source)].clone() * q.clone();
        g[(i, target)] = v;
        let w = t[(i, target)].clone() + t[(i, source)].clone() * q.clone();
        t[(i, target)] = w;
    }
    let qc = Field::conj(q);
    for j in 0..n {
        let v = g[(target, j)].clone() + qc.clone() * g[(source, j)].clone();
        g[(target, j)] = v;
    }
}

fn swap_basis<F: Field>(g: &mut Matrix<F>, t: &mut Matrix<F>, a: usize, b: usize) {
    g.swap_rows(a, b);
    g.swap_cols(a, b);
    t.swap_cols(a, b);
}

/// Sign counts `(positive, negative, zero)` of a constant Hermitian matrix
/// whose diagonal congruence entries are rational.
pub fn inertia<F: Field>(m: &Matrix<F>) -> (usize, usize, usize) {
    let (_, d) = m.hermitian_ldl();
    let mut out = (0, 0, 0);
    for v in d {
        let q = v.to_rational().expect("Hermitian diagonal entries are rational");
        match crate::scalar::rational_sign(&q) {
            1 => out.0 += 1,
            -1 => out.1 += 1,
            _ => out.2 += 1,
        }
    }
    out
}
