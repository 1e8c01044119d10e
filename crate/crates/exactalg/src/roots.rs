//! Roots in Q(i) of polynomials over Q or Q(i).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::factor::factor_over_q;
use crate::gauss::GaussRational;
use crate::poly::{to_rational_poly, UniPoly};
use crate::scalar::Rational;
use crate::GPoly;

fn exact_sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a nonnegative rational when it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    Some(Rational::new(exact_sqrt_int(q.numer())?, exact_sqrt_int(q.denom())?))
}

fn rational_poly_roots(p: &UniPoly<Rational>) -> Vec<(GaussRational, usize)> {
    let mut out = Vec::new();
    for (g, m) in factor_over_q(p).factors {
        match g.deg_i() {
            1 => out.push((GaussRational::real(-g.coeff(0)), m)),
            2 => {
                let b = g.coeff(1);
                let c = g.coeff(0);
                let disc = &b * &b - Rational::from_integer(4.into()) * &c;
                if let Some(d) = rational_sqrt(&-disc) {
                    let two = Rational::from_integer(2.into());
                    let re = -b / &two;
                    let im = d / two;
                    out.push((GaussRational::new(re.clone(), im.clone()), m));
                    out.push((GaussRational::new(re, -im), m));
                }
            }
            _ => {}
        }
    }
    out
}

/// Every root of `p` lying in Q(i), with multiplicity. Roots outside Q(i)
/// are absent.
pub fn gaussian_roots<P: IntoGauss>(p: &P) -> Vec<(GaussRational, usize)> {
    let g = p.into_gauss();
    assert!(!g.is_zero(), "roots of the zero polynomial");
    if let Some(q) = to_rational_poly(&g) {
        return rational_poly_roots(&q);
    }
    let norm = &g * &g.conj();
    let nq = to_rational_poly(&norm).expect("norm polynomial is rational");
    let mut out: Vec<(GaussRational, usize)> = Vec::new();
    for (z, _) in rational_poly_roots(&nq) {
        if out.iter().any(|(w, _)| *w == z) {
            continue;
        }
        let m = g.root_multiplicity(&z);
        if m > 0 {
            out.push((z, m));
        }
    }
    out
}

/// Coefficient-wise embedding into Q(i).
pub trait IntoGauss {
    fn into_gauss(&self) -> GPoly;
}

impl IntoGauss for UniPoly<Rational> {
    fn into_gauss(&self) -> GPoly {
        self.map(|c| GaussRational::real(c.clone()))
    }
}

impl IntoGauss for GPoly {
    fn into_gauss(&self) -> GPoly {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QPoly;

    fn g(a: i64, b: i64) -> GaussRational {
        GaussRational::from_ints(a, b)
    }

    #[test]
    fn examples() {
        assert_eq!(gaussian_roots(&QPoly::from_i64s(&[1, 0, 1])), vec![(g(0, 1), 1), (g(0, -1), 1)]);
        assert!(gaussian_roots(&QPoly::from_i64s(&[-2, 0, 1])).is_empty());
        let p = &QPoly::from_i64s(&[1, 0, 1]) * &QPoly::from_i64s(&[4, 0, 1]);
        assert_eq!(gaussian_roots(&p), vec![(g(0, 1), 1), (g(0, -1), 1), (g(0, 2), 1), (g(0, -2), 1)]);
    }

    #[test]
    fn gaussian_coefficients() {
        // (x - i)^2 (x - 1 - 2i)
        let p = &GPoly::linear_root(g(0, 1)).pow(2) * &GPoly::linear_root(g(1, 2));
        let mut r = gaussian_roots(&p);
        r.sort_by_key(|(z, _)| z.to_string());
        assert_eq!(r, vec![(g(1, 2), 1), (g(0, 1), 2)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = &QPoly::from_i64s(&[-1, 2]).pow(3) * &QPoly::from_i64s(&[1, 0, 1]);
        let r = gaussian_roots(&p);
        assert!(r.contains(&(GaussRational::real(crate::scalar::rat(1, 2)), 3)));
        assert_eq!(r.len(), 3);
    }
}
