//! Single-radical quantities `c·√r` with `c ∈ Q(i)` and `r` a squarefree
//! positive integer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::gauss::GaussRational;
use crate::scalar::{Field, Rational};
use crate::GPoly;

const TRIAL_LIMIT: u64 = 1_000_000;

/// `n = s²·r` with `r` squarefree, for `n > 0`.
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square split of a nonpositive integer");
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut r = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &pb;
        }
        if e % 2 == 1 {
            r *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let q = rest.sqrt();
    if &q * &q == rest {
        s *= q;
    } else {
        r *= rest;
    }
    (s, r)
}

fn gauss_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `p = a² + b²` for a prime `p ≡ 1 (mod 4)` below `TRIAL_LIMIT²`.
fn prime_two_squares(p: &BigInt) -> (BigInt, BigInt) {
    let mut a = BigInt::one();
    loop {
        let rest = p - &a * &a;
        let b = rest.sqrt();
        if &b * &b == rest {
            return (a, b);
        }
        a += 1;
    }
}

/// `n = a² + b²` over the integers, for `n > 0`. `None` when no such pair
/// exists, or when `n` has a cofactor too large to factor by trial division.
pub fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    assert!(n.is_positive(), "sum of two squares of a nonpositive integer");
    let mut rest = n.clone();
    let mut acc = (BigInt::one(), BigInt::zero());
    let absorb = |p: &BigInt, e: u32, acc: &mut (BigInt, BigInt)| -> bool {
        let four = BigInt::from(4);
        if p == &BigInt::from(2) {
            for _ in 0..e {
                *acc = gauss_mul(acc, &(BigInt::one(), BigInt::one()));
            }
        } else if p.mod_floor(&four) == BigInt::from(3) {
            if e % 2 == 1 {
                return false;
            }
            let s = p.pow(e / 2);
            *acc = (&acc.0 * &s, &acc.1 * &s);
        } else {
            let g = prime_two_squares(p);
            for _ in 0..e {
                *acc = gauss_mul(acc, &g);
            }
        }
        true
    };
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 && !absorb(&pb, e, &mut acc) {
            return None;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        // no factor up to the trial limit: prime iff below its square
        if rest > BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) || !absorb(&rest, 1, &mut acc) {
            return None;
        }
    }
    Some((acc.0.abs(), acc.1.abs()))
}

/// `c = s² + w²` over the rationals, for `c > 0`.
pub fn rational_two_squares(c: &Rational) -> Option<(Rational, Rational)> {
    let d = c.denom().clone();
    let (a, b) = two_squares(&(c.numer() * &d))?;
    Some((Rational::new(a, d.clone()), Rational::new(b, d)))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadScalar {
    coeff: GaussRational,
    radicand: BigInt,
}

impl RadScalar {
    /// `coeff·√radicand` for a positive rational radicand, canonicalized.
    pub fn new(coeff: GaussRational, radicand: &Rational) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        let ab = radicand.numer() * radicand.denom();
        let (s, r) = split_square(&ab);
        let c = coeff * GaussRational::real(Rational::new(s, radicand.denom().clone()));
        Self::canonical(c, r)
    }

    fn canonical(coeff: GaussRational, radicand: BigInt) -> Self {
        if coeff.is_zero() {
            RadScalar { coeff, radicand: BigInt::one() }
        } else {
            RadScalar { coeff, radicand }
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self::canonical(GaussRational::real(q), BigInt::one())
    }

    pub fn gauss(c: GaussRational) -> Self {
        Self::canonical(c, BigInt::one())
    }

    /// `√q` for a positive rational `q`.
    pub fn sqrt(q: &Rational) -> Self {
        Self::new(GaussRational::real(Rational::one()), q)
    }

    pub fn coeff(&self) -> &GaussRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::canonical(self.coeff.conj(), self.radicand.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let g = self.radicand.gcd(&o.radicand);
        let r = (&self.radicand / &g) * (&o.radicand / &g);
        let c = self.coeff.clone() * o.coeff.clone() * GaussRational::real(Rational::from_integer(g));
        Self::canonical(c, r)
    }

    /// Square of the value, a Gaussian rational.
    pub fn square(&self) -> GaussRational {
        self.coeff.clone() * self.coeff.clone() * GaussRational::real(Rational::from_integer(self.radicand.clone()))
    }
}

fn fmt_rad(coeff: &str, radicand: &BigInt, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if radicand.is_one() {
        return f.write_str(coeff);
    }
    match coeff {
        "1" => write!(f, "sqrt({})", radicand),
        "-1" => write!(f, "-sqrt({})", radicand),
        c if c.contains(['+', '/']) || c[1..].contains('-') || c.ends_with('i') => {
            write!(f, "({})*sqrt({})", c, radicand)
        }
        c => write!(f, "{}*sqrt({})", c, radicand),
    }
}

impl fmt::Display for RadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rad(&self.coeff.to_string(), &self.radicand, f)
    }
}

/// `p(x)·√r` with `p` over Q(i) and `r` squarefree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadPoly {
    poly: GPoly,
    radicand: BigInt,
}

impl RadPoly {
    pub fn new(poly: GPoly, radicand: BigInt) -> Self {
        if poly.is_zero() {
            return RadPoly { poly, radicand: BigInt::one() };
        }
        RadPoly { poly, radicand }
    }

    /// `p·s` for a radical scalar `s`.
    pub fn from_scaled(p: &GPoly, s: &RadScalar) -> Self {
        Self::new(p.scale(s.coeff()), s.radicand().clone())
    }

    pub fn poly(&self) -> &GPoly {
        &self.poly
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn conj(&self) -> Self {
        RadPoly { poly: self.poly.conj(), radicand: self.radicand.clone() }
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// Coefficient of `x^k` as a radical scalar.
    pub fn coeff(&self, k: usize) -> RadScalar {
        RadScalar::canonical(self.poly.coeff(k), self.radicand.clone())
    }
}

impl fmt::Display for RadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly.to_string();
        if self.radicand.is_one() {
            return f.write_str(&p);
        }
        if self.poly.coeffs().len() == 1 {
            return fmt_rad(&p, &self.radicand, f);
        }
        write!(f, "({})*sqrt({})", p, self.radicand)
    }
}
