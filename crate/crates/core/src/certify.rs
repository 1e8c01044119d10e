//! Real-rootedness certificates from the principal minors of the Hermite matrix.

use exactalg::sturm::negative_point;
use exactalg::{nonneg_on_r, MPoly, QBiPoly, QMatrix, QPoly, Rational};
use num_traits::Signed;
use rayon::prelude::*;

use crate::algebra::{det_poly, power_sums};
use crate::error::{Error, Result};
use crate::hvpipeline::{normalize_direction, to_rational_bipoly};

pub const DEFAULT_MINOR_CEILING: usize = 12;

/// Symmetric `H_ij = p_{i+j}` over `Q[x]`.
pub fn hermite_matrix(f: &QBiPoly) -> exactalg::QPolyMatrix {
    let n = f.t_degree();
    let ps = power_sums(f, 2 * n.max(1) - 1);
    exactalg::Matrix::from_fn(n, n, |i, j| ps[i + j].clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minor {
    pub indices: Vec<usize>,
    pub poly: QPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `minor.poly(a) = value < 0`
    NegativeMinor { minor: Minor, a: Rational, value: Rational },
    /// `F(e) = value < 0`
    NegativeDirection { value: Rational },
}

impl Witness {
    /// Re-evaluates the witness.
    pub fn check(&self) -> bool {
        match self {
            Witness::NegativeMinor { minor, a, value } => minor.poly.eval(a) == *value && value.is_negative(),
            Witness::NegativeDirection { value } => value.is_negative(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub verdict: bool,
    /// All principal minors in subset-bitmask order, each nonnegative on R when `verdict`.
    pub minors: Vec<Minor>,
    pub witness: Option<Witness>,
}

pub fn principal_minors(h: &exactalg::QPolyMatrix) -> Vec<Minor> {
    let n = h.rows();
    (1u64..(1u64 << n))
        .into_par_iter()
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            let poly = det_poly(&h.select(&idx, &idx));
            Minor { indices: idx, poly }
        })
        .collect()
}

pub fn certify_real_rooted(f: &QBiPoly) -> Result<Certificate> {
    certify_real_rooted_with_ceiling(f, DEFAULT_MINOR_CEILING)
}

pub fn certify_real_rooted_with_ceiling(f: &QBiPoly, ceiling: usize) -> Result<Certificate> {
    let n = f.t_degree();
    if !f.is_monic_t() || n == 0 {
        return Err(Error::NotMonic);
    }
    if n > ceiling {
        return Err(Error::TooManyMinors { n, count: (1u64 << n.min(63)) - 1, ceiling });
    }
    let minors = principal_minors(&hermite_matrix(f));
    let ok: Vec<bool> = minors.par_iter().map(|m| nonneg_on_r(&m.poly)).collect();
    let witness = ok.iter().position(|&b| !b).map(|k| {
        let minor = minors[k].clone();
        let a = negative_point(&minor.poly).expect("a polynomial negative somewhere has a negative rational point");
        let value = minor.poly.eval(&a);
        Witness::NegativeMinor { minor, a, value }
    });
    Ok(Certificate { verdict: witness.is_none(), minors, witness })
}

/// Hyperbolicity of a real ternary form with respect to `e`, with `F(e) > 0`.
pub fn certify_hyperbolic(form: &MPoly, e: &[Rational; 3]) -> Result<Certificate> {
    let norm = normalize_direction(form, e)?;
    if norm.fe.is_negative() {
        return Ok(Certificate {
            verdict: false,
            minors: Vec::new(),
            witness: Some(Witness::NegativeDirection { value: norm.fe.clone() }),
        });
    }
    let f = to_rational_bipoly(&norm.dehomogenize())?;
    certify_real_rooted(&f)
}

/// Evaluates the constant Hermite matrix at `a`.
pub fn hermite_at(f: &QBiPoly, a: &Rational) -> QMatrix {
    hermite_matrix(f).map(|p| p.eval(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{parse_mpoly, rat};

    fn qf(s: &str) -> QBiPoly {
        to_rational_bipoly(&parse_mpoly(s).unwrap()).unwrap()
    }

    fn qp(s: &str) -> QPoly {
        exactalg::poly::to_rational_poly(&exactalg::mpoly::parse_gpoly(s).unwrap()).unwrap()
    }

    #[test]
    fn hermite_examples() {
        let h = hermite_matrix(&qf("t^2 - x^3 - 2"));
        assert_eq!(h.to_rows(), vec![vec![qp("2"), qp("0")], vec![qp("0"), qp("2*x^3 + 4")]]);
        let h = hermite_matrix(&qf("t^2 + 1"));
        assert_eq!(h.to_rows(), vec![vec![qp("2"), qp("0")], vec![qp("0"), qp("-2")]]);
        let h = hermite_matrix(&qf("t"));
        assert_eq!(h.to_rows(), vec![vec![qp("1")]]);
    }

    #[test]
    fn certify_examples() {
        let c = certify_real_rooted(&qf("t^2 - x^2 - 1")).unwrap();
        assert!(c.verdict);
        assert_eq!(c.minors.iter().map(|m| m.poly.clone()).collect::<Vec<_>>(), vec![qp("2"), qp("2x^2+2"), qp("4x^2+4")]);
        let c = certify_real_rooted(&qf("t^2 + 1")).unwrap();
        assert!(!c.verdict);
        let w = c.witness.unwrap();
        assert!(w.check());
        match w {
            Witness::NegativeMinor { a, value, .. } => {
                assert_eq!(a, rat(0, 1));
                assert_eq!(value, rat(-2, 1));
            }
            _ => panic!("wrong witness kind"),
        }
        assert!(certify_real_rooted(&qf("t - x")).unwrap().verdict);
    }

    #[test]
    fn ceiling() {
        let f = qf("t^3 - x");
        assert!(matches!(certify_real_rooted_with_ceiling(&f, 2), Err(Error::TooManyMinors { n: 3, count: 7, ceiling: 2 })));
    }

    #[test]
    fn hyperbolic_examples() {
        let e = [rat(0, 1), rat(0, 1), rat(1, 1)];
        assert!(certify_hyperbolic(&parse_mpoly("z^2 - x^2 - y^2").unwrap(), &e).unwrap().verdict);
        let c = certify_hyperbolic(&parse_mpoly("z^2 + x^2").unwrap(), &e).unwrap();
        assert!(!c.verdict);
        match c.witness.unwrap() {
            Witness::NegativeMinor { a, value, .. } => {
                assert_eq!(a, rat(1, 1));
                assert_eq!(value, rat(-2, 1));
            }
            _ => panic!("wrong witness kind"),
        }
        assert!(certify_hyperbolic(&parse_mpoly("z").unwrap(), &e).unwrap().verdict);
        let c = certify_hyperbolic(&parse_mpoly("x^2 - z^2").unwrap(), &e).unwrap();
        assert!(!c.verdict);
        assert!(matches!(c.witness, Some(Witness::NegativeDirection { .. })));
        assert!(matches!(
            certify_hyperbolic(&parse_mpoly("x^2 - y^2").unwrap(), &e),
            Err(Error::DirectionZero)
        ));
    }
}
