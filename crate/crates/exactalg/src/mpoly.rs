//! Sparse polynomials over Q(i) in the variables `x, y, z, t`, with the text
//! grammar used for all polynomial input and output.
//!
//! Grammar: sums and differences of products of factors; a factor is a
//! number (`3`, `5/2`), a variable, `i`, or a parenthesized expression,
//! optionally raised to a nonnegative integer power with `^`. A number
//! directly followed by a variable, `i` or `(` multiplies it. Division is
//! allowed by nonzero constants only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bipoly::BiPoly;
use crate::gauss::GaussRational;
use crate::poly::{push_term, UniPoly};
use crate::scalar::{Field, Rational};
use crate::{AlgError, GBiPoly, GPoly};

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];
pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

pub type Exp = [u32; 4];

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, GaussRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: GaussRational, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; 4];
        e[v] = 1;
        Self::monomial(GaussRational::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &GaussRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> GaussRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())).collect() }
    }

    pub fn conj(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, a)| (*e, a.conj())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(GaussRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[GaussRational; 4]) -> GaussRational {
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for v in 0..4 {
                for _ in 0..e[v] {
                    m = m * point[v].clone();
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Replaces each variable `v` by `subs[v]`.
    pub fn substitute(&self, subs: &[MPoly; 4]) -> Self {
        let mut acc = Self::zero();
        for (e, c) in &self.terms {
            let mut m = Self::constant(c.clone());
            for v in 0..4 {
                if e[v] > 0 {
                    m = &m * &subs[v].pow(e[v]);
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Reads a polynomial in `x` and `t` only.
    pub fn to_bipoly(&self) -> Option<GBiPoly> {
        if self.uses_var(Y) || self.uses_var(Z) {
            return None;
        }
        let n = self.degree_in(T) as usize;
        let mut cols = vec![vec![GaussRational::zero(); self.degree_in(X) as usize + 1]; n + 1];
        for (e, c) in &self.terms {
            cols[e[T] as usize][e[X] as usize] = c.clone();
        }
        Some(BiPoly::new(cols.into_iter().map(UniPoly::new).collect()))
    }

    pub fn from_bipoly<F: Field>(f: &BiPoly<F>) -> Self
    where
        F: Into<GaussRational>,
    {
        let mut out = Self::zero();
        for (k, c) in f.tcoeffs().iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.terms.insert([j as u32, 0, 0, k as u32], a.clone().into());
                }
            }
        }
        out
    }

    pub fn from_gpoly(p: &GPoly, v: usize) -> Self {
        let mut out = Self::zero();
        for (j, a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                let mut e = [0; 4];
                e[v] = j as u32;
                out.terms.insert(e, a.clone());
            }
        }
        out
    }

    fn sort_key(e: &Exp) -> [u32; 4] {
        [e[T], e[Z], e[X], e[Y]]
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse(Self::sort_key(e)));
        let mut out = String::new();
        for e in keys {
            let mono: Vec<String> = (0..4)
                .filter(|&v| e[v] > 0)
                .map(|v| if e[v] == 1 { VARS[v].to_string() } else { format!("{}^{}", VARS[v], e[v]) })
                .collect();
            push_term(&mut out, &self.terms[e].to_string(), &mono.join("*"));
        }
        f.write_str(&out)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = terms.remove(e).unwrap_or_else(GaussRational::zero) + c.clone();
            if !v.is_zero() {
                terms.insert(*e, v);
            }
        }
        MPoly { terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut acc = MPoly::zero();
        for (e1, c1) in &self.terms {
            let mut part = BTreeMap::new();
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                part.insert(e, c1.clone() * c2.clone());
            }
            acc = &acc + &MPoly { terms: part };
        }
        acc
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgError> {
        Err(AlgError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Next byte without skipping whitespace.
    fn peek_tight(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<MPoly, AlgError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.inv()),
                        Some(_) => {
                            self.pos = at;
                            return self.err("division by zero");
                        }
                        None => {
                            self.pos = at;
                            return self.err("division by a non-constant");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, AlgError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, AlgError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let Some(k) = self.digits() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let Ok(k) = u32::try_from(k) else {
                return self.err("exponent too large");
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, AlgError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                let mut q = Rational::from_integer(n);
                if self.peek_tight() == Some(b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                    let d = self.digits().unwrap();
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    q /= Rational::from_integer(d);
                }
                let c = MPoly::constant(GaussRational::real(q));
                match self.peek_tight() {
                    Some(b) if b.is_ascii_alphabetic() || b == b'(' => Ok(&c * &self.power()?),
                    _ => Ok(c),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(MPoly::constant(GaussRational::i()));
                }
                match VARS.iter().position(|v| *v == name) {
                    Some(v) => Ok(MPoly::var(v)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown identifier {:?}", name))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_mpoly(s: &str) -> Result<MPoly, AlgError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for MPoly {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        parse_mpoly(s)
    }
}

/// Parses a univariate polynomial in `x`.
pub fn parse_gpoly(s: &str) -> Result<GPoly, AlgError> {
    let m = parse_mpoly(s)?;
    if m.uses_var(Y) || m.uses_var(Z) || m.uses_var(T) {
        return Err(AlgError::Parse { pos: 0, msg: "expected a polynomial in x only".into() });
    }
    Ok(m.to_bipoly().map(|b| b.tcoeff(0)).unwrap_or_else(GPoly::zero))
}
