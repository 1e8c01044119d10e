//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and has degree `None`.
//! Dense storage is intended for desk-scale degrees (up to roughly 64).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{One, Zero};

use crate::scalar::{ExactDiv, Field, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        UniPoly { coeffs: vec![F::zero(), F::one()] }
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        UniPoly { coeffs: v }
    }

    /// Monic linear polynomial `x − a`.
    pub fn linear_root(a: F) -> Self {
        UniPoly { coeffs: vec![-a, F::one()] }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, a: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc().inv();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Coefficientwise application of the field involution.
    pub fn conj(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(Field::conj).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g)`
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc().inv();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(a.clone());
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Renders with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String
    where
        F: fmt::Display,
    {
        let mut out = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            push_term(&mut out, &c.to_string(), &mono);
        }
        out
    }
}

/// Appends `coeff·mono` to a sum being rendered, handling signs and unit
/// coefficients. `coeff` is the scalar's text form.
pub(crate) fn push_term(out: &mut String, coeff: &str, mono: &str) {
    let compound = coeff.get(1..).is_some_and(|rest| rest.contains(['+', '-']));
    let (neg, body) = if !compound && coeff.starts_with('-') {
        (true, &coeff[1..])
    } else {
        (false, coeff)
    };
    let body = if compound { format!("({})", body) } else { body.to_string() };
    let term = if mono.is_empty() {
        body
    } else if body == "1" {
        mono.to_string()
    } else if body == "i" {
        format!("i*{}", mono)
    } else if body.ends_with('i') || body.contains('/') && !body.starts_with('(') {
        format!("({})*{}", body, mono)
    } else {
        format!("{}*{}", body, mono)
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&term);
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for UniPoly<F> {
    fn one() -> Self {
        UniPoly { coeffs: vec![F::one()] }
    }
}

impl<F: Field> Add<&UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, o: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Field> Sub<&UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, o: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Field> Mul<&UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, o: &UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(v)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, o: Self) -> UniPoly<F> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        -&self
    }
}

/// Euclidean quotient.
impl<F: Field> Div for UniPoly<F> {
    type Output = UniPoly<F>;
    fn div(self, o: Self) -> UniPoly<F> {
        self.div_rem(&o).0
    }
}

impl<F: Field> Rem for UniPoly<F> {
    type Output = UniPoly<F>;
    fn rem(self, o: Self) -> UniPoly<F> {
        self.div_rem(&o).1
    }
}

impl<F: Field> ExactDiv for UniPoly<F> {
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl UniPoly<Rational> {
    /// Lifts a rational polynomial into any field containing Q.
    pub fn lift<G: Field>(&self) -> UniPoly<G> {
        self.map(|c| G::from_rational(c))
    }
}

/// Returns `Some` when every coefficient is rational.
pub fn to_rational_poly<F: Field>(p: &UniPoly<F>) -> Option<UniPoly<Rational>> {
    let cs: Option<Vec<Rational>> = p.coeffs().iter().map(Field::to_rational).collect();
    cs.map(UniPoly::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRational;
    use crate::QPoly;

    fn q(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(x²−1, x−1) = x−1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // gcd(x²+1, x²+1) = x²+1
        assert_eq!(q(&[1, 0, 1]).gcd(&q(&[1, 0, 1])), q(&[1, 0, 1]));
        // gcd(x³−x, x²+x) = x²+x
        assert_eq!(q(&[0, -1, 0, 1]).gcd(&q(&[0, 1, 1])), q(&[0, 1, 1]));
        assert!(QPoly::zero().gcd(&QPoly::zero()).is_zero());
        assert_eq!(q(&[0, 2]).gcd(&QPoly::zero()), q(&[0, 1]));
    }

    #[test]
    fn xgcd_identity() {
        let a = q(&[3, -1, 0, 2, 5]);
        let b = q(&[1, 1, 7]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn division() {
        let a = q(&[1, 2, 3, 4]);
        let d = q(&[1, 0, 2]);
        let (qq, r) = a.div_rem(&d);
        assert_eq!(&(&qq * &d) + &r, a);
        assert!(r.deg_i() < d.deg_i());
    }

    #[test]
    fn printing() {
        assert_eq!(q(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(q(&[0, -3]).to_string(), "-3*x");
        let g = UniPoly::new(vec![GaussRational::from_ints(0, -1), GaussRational::from_ints(1, 0)]);
        assert_eq!(g.to_string(), "x - i");
        let h = UniPoly::new(vec![GaussRational::from_ints(1, 2), GaussRational::from_ints(1, 1)]);
        assert_eq!(h.to_string(), "(1+i)*x + (1+2i)");
    }

    #[test]
    fn root_multiplicity() {
        let p = &q(&[-1, 1]).pow(3) * &q(&[2, 1]);
        assert_eq!(p.root_multiplicity(&crate::scalar::rat_int(1)), 3);
        assert_eq!(p.root_multiplicity(&crate::scalar::rat_int(-2)), 1);
        assert_eq!(p.root_multiplicity(&crate::scalar::rat_int(0)), 0);
    }
}
