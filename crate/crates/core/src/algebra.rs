//! The algebra `L = F(x)[t]/(f)` for `f` monic in `t`, with elements stored as
//! reduced polynomials in `t` over `F(x)`.

use exactalg::{BiPoly, Field, Matrix, RatFunc, UniPoly};
use num_traits::{One, Zero};

/// An element of `L`, of `t`-degree below `n`.
pub type Elem<F> = UniPoly<RatFunc<F>>;

/// Newton power sums `p_0, …, p_{count−1}` of the `t`-roots of a monic `f`.
pub fn power_sums<F: Field>(f: &BiPoly<F>, count: usize) -> Vec<UniPoly<F>> {
    let n = f.t_degree();
    let a = |m: isize| -> UniPoly<F> {
        if m < 0 {
            UniPoly::zero()
        } else {
            f.tcoeff(m as usize)
        }
    };
    let mut p: Vec<UniPoly<F>> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(UniPoly::constant(F::from_i64(n as i64)));
            continue;
        }
        let mut s = if k <= n { a((n - k) as isize).scale(&F::from_i64(k as i64)) } else { UniPoly::zero() };
        for j in 1..k.min(n + 1) {
            s = &s + &(&a(n as isize - j as isize) * &p[k - j]);
        }
        p.push(-s);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    f: BiPoly<F>,
    modulus: Elem<F>,
    traces: Vec<RatFunc<F>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(f: BiPoly<F>) -> Self {
        assert!(f.is_monic_t() && f.t_degree() >= 1, "f must be monic in t of positive degree");
        let modulus = UniPoly::new(f.tcoeffs().iter().map(|c| RatFunc::from_poly(c.clone())).collect());
        let traces = power_sums(&f, f.t_degree()).into_iter().map(RatFunc::from_poly).collect();
        Algebra { f, modulus, traces }
    }

    pub fn f(&self) -> &BiPoly<F> {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.t_degree()
    }

    pub fn reduce(&self, p: &Elem<F>) -> Elem<F> {
        if p.coeffs().len() <= self.n() {
            return p.clone();
        }
        p.div_rem(&self.modulus).1
    }

    pub fn mul(&self, a: &Elem<F>, b: &Elem<F>) -> Elem<F> {
        self.reduce(&(a * b))
    }

    pub fn t_pow(&self, k: usize) -> Elem<F> {
        self.reduce(&UniPoly::monomial(RatFunc::one(), k))
    }

    pub fn from_poly(&self, p: &UniPoly<F>) -> Elem<F> {
        UniPoly::constant(RatFunc::from_poly(p.clone()))
    }

    pub fn from_bipoly(&self, g: &BiPoly<F>) -> Elem<F> {
        self.reduce(&UniPoly::new(g.tcoeffs().iter().map(|c| RatFunc::from_poly(c.clone())).collect()))
    }

    pub fn from_coords(&self, c: &[RatFunc<F>]) -> Elem<F> {
        UniPoly::new(c.to_vec())
    }

    /// Power-basis coordinates, padded to length `n`.
    pub fn coords(&self, e: &Elem<F>) -> Vec<RatFunc<F>> {
        (0..self.n()).map(|k| e.coeff(k)).collect()
    }

    /// Coefficient-wise conjugation; an automorphism when `f` is conjugation-fixed.
    pub fn conj(&self, e: &Elem<F>) -> Elem<F> {
        e.map(|c| c.conj())
    }

    pub fn is_real(&self, e: &Elem<F>) -> bool {
        self.conj(e) == *e
    }

    pub fn trace(&self, e: &Elem<F>) -> RatFunc<F> {
        e.coeffs()
            .iter()
            .zip(&self.traces)
            .fold(RatFunc::zero(), |acc, (c, p)| acc + c.clone() * p.clone())
    }

    /// `∂f/∂t` evaluated at `t̄`.
    pub fn f_t(&self) -> Elem<F> {
        self.from_bipoly(&self.f.derivative_t())
    }

    pub fn inverse(&self, e: &Elem<F>) -> Option<Elem<F>> {
        let (g, s, _) = e.xgcd(&self.modulus);
        (g.is_one()).then(|| self.reduce(&s))
    }

    /// Matrix of multiplication by `e` in the power basis (columns are images).
    pub fn mult_matrix(&self, e: &Elem<F>) -> Matrix<RatFunc<F>> {
        let cols: Vec<Vec<RatFunc<F>>> = (0..self.n()).map(|j| self.coords(&self.mul(e, &self.t_pow(j)))).collect();
        Matrix::from_cols(&cols)
    }

    pub fn norm(&self, e: &Elem<F>) -> RatFunc<F> {
        self.mult_matrix(e).det()
    }

    /// Companion matrix of `f` over `F[x]`: multiplication by `t̄` in the power basis.
    pub fn companion(&self) -> Matrix<UniPoly<F>> {
        let n = self.n();
        Matrix::from_fn(n, n, |i, j| {
            if j + 1 < n {
                if i == j + 1 {
                    UniPoly::one()
                } else {
                    UniPoly::zero()
                }
            } else {
                -self.f.tcoeff(i)
            }
        })
    }
}

/// Exact polynomial matrix from a rational-function one, when every entry is a polynomial.
pub fn to_poly_matrix<F: Field>(m: &Matrix<RatFunc<F>>) -> Option<Matrix<UniPoly<F>>> {
    if m.entries().all(RatFunc::is_poly) {
        Some(m.map(|e| e.num().clone()))
    } else {
        None
    }
}

pub fn to_ratfunc_matrix<F: Field>(m: &Matrix<UniPoly<F>>) -> Matrix<RatFunc<F>> {
    m.map(|e| RatFunc::from_poly(e.clone()))
}

/// Inverse of a polynomial matrix whose determinant is a nonzero constant.
pub fn unimodular_inverse<F: Field>(m: &Matrix<UniPoly<F>>) -> Option<Matrix<UniPoly<F>>> {
    let inv = to_ratfunc_matrix(m).inverse()?;
    to_poly_matrix(&inv)
}

pub fn det_poly<F: Field>(m: &Matrix<UniPoly<F>>) -> UniPoly<F> {
    if m.rows() == 0 {
        return UniPoly::one();
    }
    m.det()
}
