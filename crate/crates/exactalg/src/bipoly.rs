//! Bivariate polynomials `f(x, t) = Σ a_k(x) t^k`, stored by powers of `t`.

use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::poly::{push_term, UniPoly};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly<F> {
    tcoeffs: Vec<UniPoly<F>>,
}

impl<F: Field> BiPoly<F> {
    pub fn new(mut tcoeffs: Vec<UniPoly<F>>) -> Self {
        while tcoeffs.last().is_some_and(|c| c.is_zero()) {
            tcoeffs.pop();
        }
        BiPoly { tcoeffs }
    }

    pub fn zero() -> Self {
        BiPoly { tcoeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.tcoeffs.is_empty()
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        BiPoly { tcoeffs: vec![UniPoly::zero(), UniPoly::one()] }
    }

    /// A polynomial in `x` only.
    pub fn from_x(p: UniPoly<F>) -> Self {
        Self::new(vec![p])
    }

    /// `t − p(x)`
    pub fn t_minus(p: UniPoly<F>) -> Self {
        Self::new(vec![-p, UniPoly::one()])
    }

    pub fn tcoeffs(&self) -> &[UniPoly<F>] {
        &self.tcoeffs
    }

    pub fn tcoeff(&self, k: usize) -> UniPoly<F> {
        self.tcoeffs.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Degree in `t`; zero polynomial reports 0.
    pub fn t_degree(&self) -> usize {
        self.tcoeffs.len().saturating_sub(1)
    }

    pub fn x_degree(&self) -> usize {
        self.tcoeffs.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.tcoeffs
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.degree().map(|d| d + k))
            .max()
            .unwrap_or(0)
    }

    pub fn is_monic_t(&self) -> bool {
        self.tcoeffs.last().is_some_and(UniPoly::is_one)
    }

    pub fn derivative_t(&self) -> Self {
        Self::new(
            self.tcoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(self.tcoeffs.iter().map(UniPoly::derivative).collect())
    }

    /// `f(a, t)` as a polynomial in `t`.
    pub fn eval_x(&self, a: &F) -> UniPoly<F> {
        UniPoly::new(self.tcoeffs.iter().map(|c| c.eval(a)).collect())
    }

    pub fn eval(&self, a: &F, t0: &F) -> F {
        self.eval_x(a).eval(t0)
    }

    /// Substitutes a polynomial in `x` for `t`.
    pub fn eval_t_poly(&self, p: &UniPoly<F>) -> UniPoly<F> {
        let mut acc = UniPoly::zero();
        for c in self.tcoeffs.iter().rev() {
            acc = &(&acc * p) + c;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        BiPoly { tcoeffs: self.tcoeffs.iter().map(UniPoly::conj).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly::new(self.tcoeffs.iter().map(|c| c.map(&f)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.tcoeffs.len().max(o.tcoeffs.len());
        Self::new((0..n).map(|k| &self.tcoeff(k) + &o.tcoeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.tcoeffs.len().max(o.tcoeffs.len());
        Self::new((0..n).map(|k| &self.tcoeff(k) - &o.tcoeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UniPoly::zero(); self.tcoeffs.len() + o.tcoeffs.len() - 1];
        for (i, a) in self.tcoeffs.iter().enumerate() {
            for (j, b) in o.tcoeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Self::new(v)
    }

    pub fn scale_x(&self, p: &UniPoly<F>) -> Self {
        Self::new(self.tcoeffs.iter().map(|c| c * p).collect())
    }

    /// Resultant with respect to `t`: the determinant of the Sylvester matrix
    /// with the rows of `self` first.
    pub fn resultant_t(&self, g: &Self) -> UniPoly<F> {
        assert!(!self.is_zero() && !g.is_zero(), "resultant of a zero polynomial");
        let m = self.t_degree();
        let n = g.t_degree();
        if m == 0 && n == 0 {
            return UniPoly::one();
        }
        let size = m + n;
        let mut s = Matrix::<UniPoly<F>>::zeros(size, size);
        // rows hold coefficients from the highest power of t down
        for r in 0..n {
            for k in 0..=m {
                s[(r, r + m - k)] = self.tcoeff(k);
            }
        }
        for r in 0..m {
            for k in 0..=n {
                s[(n + r, r + n - k)] = g.tcoeff(k);
            }
        }
        s.det()
    }

    /// Canonical text: monomials sorted by descending `t` degree, then
    /// descending `x` degree.
    pub fn fmt_vars(&self, xvar: &str, tvar: &str) -> String
    where
        F: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for k in (0..self.tcoeffs.len()).rev() {
            let c = &self.tcoeffs[k];
            for j in (0..c.coeffs().len()).rev() {
                let a = &c.coeffs()[j];
                if a.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                match j {
                    0 => {}
                    1 => mono.push(xvar.to_string()),
                    _ => mono.push(format!("{}^{}", xvar, j)),
                }
                match k {
                    0 => {}
                    1 => mono.push(tvar.to_string()),
                    _ => mono.push(format!("{}^{}", tvar, k)),
                }
                push_term(&mut out, &a.to_string(), &mono.join("*"));
            }
        }
        out
    }
}

impl<F: Field + fmt::Display> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "t"))
    }
}

/// `det(tI − M)` for a square polynomial matrix.
pub fn charpoly<F: Field>(m: &Matrix<UniPoly<F>>) -> BiPoly<F> {
    BiPoly::new(m.charpoly_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRational;
    use crate::{GPoly, QBiPoly, QPoly};

    fn x() -> QPoly {
        QPoly::var()
    }

    #[test]
    fn charpoly_examples() {
        let m = Matrix::from_rows(vec![vec![x(), QPoly::one()], vec![QPoly::one(), -x()]]);
        // t^2 - x^2 - 1
        let f = QBiPoly::new(vec![QPoly::from_i64s(&[-1, 0, -1]), QPoly::zero(), QPoly::one()]);
        assert_eq!(charpoly(&m), f);
        assert_eq!(charpoly(&Matrix::<QPoly>::zeros(2, 2)), QBiPoly::new(vec![QPoly::zero(), QPoly::zero(), QPoly::one()]));
        let gi = |a, b| GaussRational::from_ints(a, b);
        let xm = GPoly::new(vec![gi(0, -1), gi(1, 0)]);
        let xp = GPoly::new(vec![gi(0, 1), gi(1, 0)]);
        let h = Matrix::from_rows(vec![vec![GPoly::zero(), xm], vec![xp, GPoly::zero()]]);
        assert_eq!(charpoly(&h), f.map(|c| GaussRational::real(c.clone())));
    }

    #[test]
    fn resultant_examples() {
        let f = QBiPoly::new(vec![QPoly::from_i64s(&[-1, 0, -1]), QPoly::zero(), QPoly::one()]);
        let ft = f.derivative_t();
        assert_eq!(f.resultant_t(&ft), QPoly::from_i64s(&[-4, 0, -4]));
        let a = QBiPoly::t_minus(x());
        let b = QBiPoly::t_minus(-x());
        assert_eq!(a.resultant_t(&b), QPoly::from_i64s(&[0, 2]));
        let c = QBiPoly::t();
        let d = QBiPoly::t_minus(QPoly::one());
        assert_eq!(c.resultant_t(&d), QPoly::from_i64s(&[-1]));
    }

    #[test]
    fn printing_is_t_major() {
        let f = QBiPoly::new(vec![QPoly::from_i64s(&[-1, 0, -1]), x(), QPoly::one()]);
        assert_eq!(f.to_string(), "t^2 + x*t - x^2 - 1");
    }
}
