//! Definite determinantal pencils of hyperbolic ternary forms.

use exactalg::mpoly::{T, X};
use exactalg::{charpoly, GBiPoly, GPoly, GPolyMatrix, GaussRational, MPoly, Matrix, QBiPoly, QMatrix, RadScalar, Rational};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::certify::{certify_hyperbolic, Witness};
use crate::error::{Error, Result};
use crate::represent::{block_compose, represent, verify_representation, Kind, SpectralRep};

/// Reads a real polynomial in `x` and `t`.
pub fn to_rational_bipoly(m: &MPoly) -> Result<QBiPoly> {
    let g = m.to_bipoly().ok_or_else(|| Error::Usage("expected a polynomial in x and t only".into()))?;
    if !m.is_real() {
        return Err(Error::NotRational);
    }
    Ok(g.map(|c| c.re.clone()))
}

fn q2g(q: &Rational) -> GaussRational {
    GaussRational::real(q.clone())
}

/// `F′ = F∘U⁻¹ / F(e)` with `U·e = (0, 0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub form: MPoly,
    pub u: QMatrix,
    pub u_inv: QMatrix,
    /// `F(e)`
    pub fe: Rational,
    pub degree: usize,
}

impl Normalized {
    /// `F′(x, 1, t)`
    pub fn dehomogenize(&self) -> MPoly {
        dehomogenize_form(&self.form)
    }
}

fn dehomogenize_form(form: &MPoly) -> MPoly {
    form.substitute(&[MPoly::var(X), MPoly::constant(GaussRational::one()), MPoly::var(T), MPoly::var(T)])
}

fn linear_form(row: &[Rational]) -> MPoly {
    let mut acc = MPoly::zero();
    for (v, c) in row.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &MPoly::var(v).scale(&q2g(c));
        }
    }
    acc
}

/// `F(M·w)` for a rational 3×3 matrix `M`.
pub fn compose_linear(form: &MPoly, m: &QMatrix) -> MPoly {
    let r = m.to_rows();
    form.substitute(&[linear_form(&r[0]), linear_form(&r[1]), linear_form(&r[2]), MPoly::var(T)])
}

fn check_ternary(form: &MPoly) -> Result<usize> {
    if form.uses_var(T) {
        return Err(Error::Usage("ternary forms use the variables x, y, z".into()));
    }
    if !form.is_real() {
        return Err(Error::NotRational);
    }
    if form.is_zero() || !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(form.total_degree() as usize)
}

pub fn normalize_direction(form: &MPoly, e: &[Rational; 3]) -> Result<Normalized> {
    let degree = check_ternary(form)?;
    let fe = form.eval(&[q2g(&e[0]), q2g(&e[1]), q2g(&e[2]), GaussRational::zero()]).re;
    if fe.is_zero() {
        return Err(Error::DirectionZero);
    }
    let p = (0..3).rev().find(|&k| !e[k].is_zero()).expect("F(e) ≠ 0 forces e ≠ 0");
    let mut cols: Vec<Vec<Rational>> = (0..3)
        .filter(|&k| k != p)
        .map(|k| (0..3).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    cols.push(e.to_vec());
    let u_inv = Matrix::from_cols(&cols);
    let u = u_inv.inverse().expect("columns span Q^3");
    let form_p = compose_linear(form, &u_inv).scale(&q2g(&fe.recip()));
    Ok(Normalized { form: form_p, u, u_inv, fe, degree })
}

/// `F′(x, 1, t)` as a monic polynomial in `t` of degree `n`.
pub fn dehomogenize(norm: &Normalized) -> Result<QBiPoly> {
    let f = to_rational_bipoly(&norm.dehomogenize())?;
    if f.t_degree() != norm.degree || !f.is_monic_t() {
        return Err(Error::NotMonic);
    }
    Ok(f)
}

/// `y^n·f(x/y, z/y)`; `None` when the total degree of `f` exceeds `n`.
pub fn homogenize(f: &GBiPoly, n: usize) -> Option<MPoly> {
    let mut acc = MPoly::zero();
    for (k, c) in f.tcoeffs().iter().enumerate() {
        for (a, v) in c.coeffs().iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let rest = n.checked_sub(a + k)?;
            acc = &acc + &MPoly::monomial(v.clone(), [a as u32, rest as u32, k as u32, 0]);
        }
    }
    Some(acc)
}

/// `−max deg` over the entries.
pub fn degree_valuation(m: &GPolyMatrix) -> Result<i64> {
    m.entries()
        .filter(|p| !p.is_zero())
        .map(|p| -p.deg_i())
        .min()
        .ok_or(Error::ZeroMatrix)
}

/// `v(M) = min_i v(a_i)/(n − i)` for `f = Σ a_i t^i`; the zero matrix matches
/// only `f = t^n`.
pub fn check_degree_bound(m: &GPolyMatrix, f: &GBiPoly) -> bool {
    let n = f.t_degree();
    let rhs = (0..n)
        .filter(|&i| !f.tcoeff(i).is_zero())
        .map(|i| Rational::new((-f.tcoeff(i).deg_i()).into(), ((n - i) as i64).into()))
        .min();
    match (degree_valuation(m), rhs) {
        (Ok(v), Some(r)) => Rational::from_integer(v.into()) == r,
        (Err(_), None) => true,
        _ => false,
    }
}

/// `L = A·x + B·y + C·z` with `det L = F` and `L(e) ≻ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub kind: Kind,
    pub a: Matrix<RadScalar>,
    pub b: Matrix<RadScalar>,
    pub c: Matrix<RadScalar>,
    pub e: [Rational; 3],
    pub form: MPoly,
    pub normalized: Normalized,
    /// `L = S·L′(U·w)·S` with `S² = diag(s)`.
    pub s: Vec<Rational>,
    pub rep: SpectralRep,
}

fn rad_zero() -> RadScalar {
    RadScalar::rational(Rational::zero())
}

/// `S·(U_0j·(−M1) + U_1j·(−M0) + U_2j·I)·S` for `j = 0, 1, 2`.
fn pencil_matrices(rep: &SpectralRep, u: &QMatrix, s: &[Rational]) -> [Matrix<RadScalar>; 3] {
    let n = rep.size();
    let roots: Vec<RadScalar> = s.iter().map(RadScalar::sqrt).collect();
    let build = |j: usize| {
        Matrix::from_fn(n, n, |k, l| {
            let entry = &rep.m[(k, l)];
            let c1 = entry.poly().coeff(1);
            let c0 = entry.poly().coeff(0);
            let mut v = -(q2g(&u[(0, j)]) * c1) - q2g(&u[(1, j)]) * c0;
            if k == l {
                v = v + q2g(&u[(2, j)]);
            }
            if v.is_zero() {
                return rad_zero();
            }
            let r = Rational::from_integer(entry.radicand().clone());
            RadScalar::new(v, &r).mul(&roots[k]).mul(&roots[l])
        })
    };
    [build(0), build(1), build(2)]
}

fn describe(w: &Option<Witness>) -> String {
    match w {
        Some(Witness::NegativeDirection { value }) => format!("F(e) = {} is negative", value),
        Some(Witness::NegativeMinor { minor, a, value }) => format!(
            "after normalization, principal minor {:?} of the Hermite matrix of F(x, 1, t) equals {} at x = {}",
            minor.indices, value, a
        ),
        None => "no witness".into(),
    }
}

fn multiply_all(forms: &[MPoly]) -> MPoly {
    forms.iter().fold(MPoly::constant(GaussRational::one()), |a, b| &a * b)
}

pub fn hv_representation(form: &MPoly, e: &[Rational; 3], kind: Kind, bound: Option<usize>) -> Result<Pencil> {
    hv_representation_factors(std::slice::from_ref(form), e, kind, bound)
}

/// Pencil of `F = Π F_i`, block-composed from the factors.
pub fn hv_representation_factors(factors: &[MPoly], e: &[Rational; 3], kind: Kind, bound: Option<usize>) -> Result<Pencil> {
    if factors.is_empty() {
        return Err(Error::Usage("no factors given".into()));
    }
    let parts: Vec<(Normalized, SpectralRep)> = factors
        .par_iter()
        .map(|fi| {
            let cert = certify_hyperbolic(fi, e)?;
            if !cert.verdict {
                return Err(Error::NotHyperbolic(describe(&cert.witness)));
            }
            let norm = normalize_direction(fi, e)?;
            let f = dehomogenize(&norm)?;
            let rep = represent(&f, kind, bound)?;
            Ok((norm, rep))
        })
        .collect::<Result<_>>()?;
    let form = multiply_all(factors);
    let normalized = normalize_direction(&form, e)?;
    let mut s = Vec::new();
    for (norm, rep) in &parts {
        s.push(norm.fe.clone());
        s.extend(std::iter::repeat(Rational::one()).take(rep.size() - 1));
    }
    let reps: Vec<SpectralRep> = parts.into_iter().map(|(_, r)| r).collect();
    let rep = block_compose(&reps)?;
    let [a, b, c] = pencil_matrices(&rep, &normalized.u, &s);
    let pencil = Pencil { kind, a, b, c, e: e.clone(), form, normalized, s, rep };
    verify_pencil(&pencil)?;
    Ok(pencil)
}

/// Radical-free check of `det L = F` and `L(e) ≻ 0` through the witness.
pub fn verify_pencil(p: &Pencil) -> Result<()> {
    let fail = |m: &str| Err(Error::InternalCheckFailed(m.to_string()));
    let norm = &p.normalized;
    let n = norm.degree;
    let f = norm.dehomogenize().to_bipoly().ok_or_else(|| Error::InternalCheckFailed("dehomogenization".into()))?;
    if p.rep.size() != n || !verify_representation(&f, &p.rep) {
        return fail("spectral representation fails verification");
    }
    if p.rep.n_mat.entries().any(|q| q.deg_i() > 1) {
        return fail("representation is not linear in x");
    }
    if !check_degree_bound(&p.rep.n_mat, &f) {
        return fail("valuation identity fails");
    }
    let n1: GPolyMatrix = p.rep.n_mat.map(|q| GPoly::constant(q.coeff(1)));
    let n0: GPolyMatrix = p.rep.n_mat.map(|q| GPoly::constant(q.coeff(0)));
    let lin = n1.map(|c| c * &GPoly::var()).add(&n0);
    if charpoly(&lin) != f || homogenize(&f, n).as_ref() != Some(&norm.form) {
        return fail("homogenized characteristic polynomial differs from F′");
    }
    if compose_linear(&norm.form, &norm.u).scale(&q2g(&norm.fe)) != p.form {
        return fail("change of variables does not recover F");
    }
    let ue = norm.u.mul_vec(&p.e);
    if ue != vec![Rational::zero(), Rational::zero(), Rational::one()] {
        return fail("U does not map e to (0, 0, 1)");
    }
    if p.s.len() != n || p.s.iter().any(|q| !q.is_positive()) || p.s.iter().product::<Rational>() != norm.fe {
        return fail("scaling is not positive or does not multiply to F(e)");
    }
    if pencil_matrices(&p.rep, &norm.u, &p.s) != [p.a.clone(), p.b.clone(), p.c.clone()] {
        return fail("pencil matrices differ from the witness");
    }
    Ok(())
}

/// `L(point)` in floating point, entries as (re, im).
pub fn pencil_at_f64(p: &Pencil, point: [f64; 3]) -> Vec<Vec<(f64, f64)>> {
    let n = p.a.rows();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for (m, w) in [&p.a, &p.b, &p.c].iter().zip(point) {
                        let (r, i) = rad_to_f64(&m[(k, l)]);
                        re += r * w;
                        im += i * w;
                    }
                    (re, im)
                })
                .collect()
        })
        .collect()
}

pub fn rad_to_f64(s: &RadScalar) -> (f64, f64) {
    use num_traits::ToPrimitive;
    let root = s.radicand().to_f64().unwrap_or(f64::NAN).sqrt();
    let re = s.coeff().re.to_f64().unwrap_or(f64::NAN) * root;
    let im = s.coeff().im.to_f64().unwrap_or(f64::NAN) * root;
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{parse_mpoly, rat};

    fn mp(s: &str) -> MPoly {
        parse_mpoly(s).unwrap()
    }

    fn e001() -> [Rational; 3] {
        [rat(0, 1), rat(0, 1), rat(1, 1)]
    }

    fn rs(s: &str) -> RadScalar {
        RadScalar::gauss(exactalg::mpoly::parse_gpoly(s).unwrap().coeff(0))
    }

    fn rm(rows: &[&[&str]]) -> Matrix<RadScalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rs(s)).collect()).collect())
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_direction(&mp("z^2 - x^2 - y^2"), &e001()).unwrap();
        assert_eq!(n.u, Matrix::identity(3));
        assert_eq!(n.form, mp("z^2 - x^2 - y^2"));
        let n = normalize_direction(&mp("2z^2"), &e001()).unwrap();
        assert_eq!(n.form, mp("z^2"));
        assert_eq!(n.fe, rat(2, 1));
        let n = normalize_direction(&mp("x^2 - y^2 - z^2"), &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(n.u.entries().all(|c| c.is_zero() || c.is_one()));
        assert_eq!(n.form.eval(&[GaussRational::zero(), GaussRational::zero(), GaussRational::one(), GaussRational::zero()]), GaussRational::one());
        assert!(matches!(normalize_direction(&mp("x*y"), &e001()), Err(Error::DirectionZero)));
        assert!(matches!(normalize_direction(&mp("z^2 + x"), &e001()), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn dehomogenize_examples() {
        let f = dehomogenize(&normalize_direction(&mp("z^2 - x^2 - y^2"), &e001()).unwrap()).unwrap();
        assert_eq!(f, to_rational_bipoly(&mp("t^2 - x^2 - 1")).unwrap());
        let f = dehomogenize(&normalize_direction(&mp("z^3"), &e001()).unwrap()).unwrap();
        assert_eq!(f, to_rational_bipoly(&mp("t^3")).unwrap());
        let f = dehomogenize(&normalize_direction(&mp("z^2 - x*y"), &e001()).unwrap()).unwrap();
        assert_eq!(f, to_rational_bipoly(&mp("t^2 - x")).unwrap());
    }

    #[test]
    fn valuation_examples() {
        let gp = |s: &str| exactalg::mpoly::parse_gpoly(s).unwrap();
        let m = Matrix::from_rows(vec![vec![gp("x"), gp("1")], vec![gp("1"), gp("-x")]]);
        let f = mp("t^2 - x^2 - 1").to_bipoly().unwrap();
        assert_eq!(degree_valuation(&m).unwrap(), -1);
        assert!(check_degree_bound(&m, &f));
        let m = Matrix::from_rows(vec![vec![gp("x^2")]]);
        assert_eq!(degree_valuation(&m).unwrap(), -2);
        assert!(check_degree_bound(&m, &mp("t - x^2").to_bipoly().unwrap()));
        let m = Matrix::from_rows(vec![vec![gp("2"), gp("1")], vec![gp("1"), gp("0")]]);
        assert_eq!(degree_valuation(&m).unwrap(), 0);
        assert!(check_degree_bound(&m, &exactalg::charpoly(&m)));
        assert!(matches!(degree_valuation(&GPolyMatrix::zeros(2, 2)), Err(Error::ZeroMatrix)));
    }

    #[test]
    fn hermitian_cone() {
        let p = hv_representation(&mp("z^2 - x^2 - y^2"), &e001(), Kind::Hermitian, None).unwrap();
        assert_eq!(p.a, rm(&[&["0", "-1"], &["-1", "0"]]));
        assert_eq!(p.b, rm(&[&["0", "i"], &["-i", "0"]]));
        assert_eq!(p.c, rm(&[&["1", "0"], &["0", "1"]]));
    }

    #[test]
    fn symmetric_cone() {
        let p = hv_representation(&mp("z^2 - x^2 - y^2"), &e001(), Kind::Symmetric, Some(3)).unwrap();
        assert_eq!(p.c, rm(&[&["1", "0"], &["0", "1"]]));
        verify_pencil(&p).unwrap();
    }

    #[test]
    fn scaled_and_permuted_direction() {
        let p = hv_representation(&mp("2z^2 - 2x^2 - 2y^2"), &e001(), Kind::Hermitian, None).unwrap();
        verify_pencil(&p).unwrap();
        assert_eq!(p.c[(0, 0)], RadScalar::rational(rat(2, 1)));
        let p = hv_representation(&mp("x^2 - y^2 - z^2"), &[rat(1, 1), rat(0, 1), rat(0, 1)], Kind::Hermitian, None).unwrap();
        verify_pencil(&p).unwrap();
    }

    #[test]
    fn linear_factors() {
        let fs = [mp("z - x"), mp("z + 2y"), mp("z - x + y")];
        let p = hv_representation_factors(&fs, &e001(), Kind::Symmetric, Some(0)).unwrap();
        assert_eq!(p.a, rm(&[&["-1", "0", "0"], &["0", "0", "0"], &["0", "0", "-1"]]));
        assert_eq!(p.b, rm(&[&["0", "0", "0"], &["0", "2", "0"], &["0", "0", "1"]]));
    }

    #[test]
    fn not_hyperbolic() {
        assert!(matches!(
            hv_representation(&mp("z^2 + x^2"), &e001(), Kind::Hermitian, None),
            Err(Error::NotHyperbolic(_))
        ));
    }
}
