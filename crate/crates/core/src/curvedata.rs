//! Discriminant, branch points and smoothness of the affine curve `f = 0`.

use exactalg::sturm::squarefree_part;
use exactalg::{gaussian_roots, Field, GBiPoly, GaussRational, QBiPoly, QPoly};
use num_traits::Zero;

use crate::error::{Error, Result};

/// A point `(a, t0)` where `t0` is a root of multiplicity `e ≥ 2` of `f(a, ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub a: GaussRational,
    pub t0: GaussRational,
    pub e: usize,
    /// `e − 1`
    pub m: usize,
}

impl BranchPoint {
    pub fn conj(&self) -> Self {
        BranchPoint { a: self.a.conj(), t0: self.t0.conj(), e: self.e, m: self.m }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub f: QBiPoly,
    /// `Res_t(f, ∂f/∂t)`
    pub disc: QPoly,
    /// Closed under conjugation.
    pub branch_points: Vec<BranchPoint>,
    pub smooth: bool,
}

impl CurveData {
    pub fn gauss_f(&self) -> GBiPoly {
        lift(&self.f)
    }
}

pub fn lift(f: &QBiPoly) -> GBiPoly {
    f.map(|c| GaussRational::real(c.clone()))
}

pub fn analyze_curve(f: &QBiPoly) -> Result<CurveData> {
    if !f.is_monic_t() || f.t_degree() == 0 {
        return Err(Error::NotMonic);
    }
    let ft = f.derivative_t();
    let disc = f.resultant_t(&ft);
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let roots = gaussian_roots(&disc);
    let found: usize = roots.iter().map(|(_, k)| k).sum();
    if found < disc.deg_i() as usize {
        return Err(Error::BranchPointNotRational(format!(
            "the discriminant {} has roots outside Q(i)",
            disc
        )));
    }
    let gf = lift(f);
    let gft = gf.derivative_t();
    let gfx = gf.derivative_x();
    let mut branch_points = Vec::new();
    for (a, mult) in roots {
        let fa = gf.eval_x(&a);
        let g = fa.gcd(&gft.eval_x(&a));
        let troots = gaussian_roots(&g);
        let covered: usize = troots.iter().map(|(_, k)| k).sum();
        if covered < g.deg_i() as usize {
            return Err(Error::BranchPointNotRational(format!("a multiple t-root over x = {} lies outside Q(i)", a)));
        }
        let mut local = 0;
        for (t0, _) in troots {
            if gfx.eval(&a, &t0).is_zero() {
                return Err(Error::NotSmooth { a, t0 });
            }
            let e = fa.root_multiplicity(&t0);
            local += e - 1;
            branch_points.push(BranchPoint { a: a.clone(), t0, e, m: e - 1 });
        }
        if local != mult {
            return Err(Error::BranchPointNotRational(format!(
                "ramification over x = {} accounts for {} of discriminant multiplicity {}",
                a, local, mult
            )));
        }
    }
    Ok(CurveData { f: f.clone(), disc, branch_points, smooth: true })
}

/// True iff the discriminant has no real roots.
pub fn check_no_real_ramification(cd: &CurveData) -> bool {
    exactalg::sturm_count(&squarefree_part(&cd.disc)).expect("nonzero discriminant") == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::parse_mpoly;

    fn qf(s: &str) -> QBiPoly {
        let g = parse_mpoly(s).unwrap().to_bipoly().unwrap();
        g.map(|c| c.to_rational().unwrap())
    }

    fn gi(a: i64, b: i64) -> GaussRational {
        GaussRational::from_ints(a, b)
    }

    #[test]
    fn hyperbola() {
        let cd = analyze_curve(&qf("t^2 - x^2 - 1")).unwrap();
        assert_eq!(cd.disc, QPoly::from_i64s(&[-4, 0, -4]));
        assert_eq!(
            cd.branch_points,
            vec![
                BranchPoint { a: gi(0, 1), t0: gi(0, 0), e: 2, m: 1 },
                BranchPoint { a: gi(0, -1), t0: gi(0, 0), e: 2, m: 1 }
            ]
        );
        assert!(check_no_real_ramification(&cd));
    }

    #[test]
    fn quartic_discriminant() {
        let cd = analyze_curve(&qf("t^2 - (x^2+1)*(x^2+4)")).unwrap();
        let a: Vec<_> = cd.branch_points.iter().map(|b| b.a.clone()).collect();
        assert_eq!(a, vec![gi(0, 1), gi(0, -1), gi(0, 2), gi(0, -2)]);
        assert!(cd.branch_points.iter().all(|b| b.t0 == gi(0, 0) && b.e == 2));
        assert!(check_no_real_ramification(&cd));
    }

    #[test]
    fn unramified_and_failures() {
        assert!(analyze_curve(&qf("t^2 - 1")).unwrap().branch_points.is_empty());
        assert!(matches!(analyze_curve(&qf("t^2 - x^2")), Err(Error::NotSmooth { .. })));
        assert!(matches!(analyze_curve(&qf("t^2 - x^2 - 2")), Err(Error::BranchPointNotRational(_))));
        assert!(matches!(analyze_curve(&qf("(t - x)^2")), Err(Error::NotSquarefree)));
    }

    #[test]
    fn higher_ramification() {
        // one point of ramification index 3 over x = 0
        let cd = analyze_curve(&qf("t^3 - x")).unwrap();
        assert_eq!(cd.branch_points, vec![BranchPoint { a: gi(0, 0), t0: gi(0, 0), e: 3, m: 2 }]);
        assert!(!check_no_real_ramification(&cd));
    }
}
