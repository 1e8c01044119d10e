//! Hermitian and real symmetric spectral representations with exact witnesses.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use exactalg::radical::rational_two_squares;
use exactalg::{charpoly, gaussian_roots, Field, GBiPoly, GPoly, GPolyMatrix, GaussRational, Matrix, QBiPoly, RadPoly, RadScalar, Rational};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{det_poly, Algebra, Elem};
use crate::certify::{certify_real_rooted, Witness};
use crate::curvedata::{analyze_curve, lift, BranchPoint, CurveData};
use crate::error::{Error, Result};
use crate::ideallat::{codifferent, for_each_generator, half_different, prime_at_point, IdealLattice};
use crate::traceform::{diagonalize_unimodular, gram_matrix, is_unimodular_matrix, Diagonalization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Hermitian,
    Symmetric,
}

impl Kind {
    pub fn is_hermitian(self) -> bool {
        self == Kind::Hermitian
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Hermitian => "hermitian",
            Kind::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hermitian" => Ok(Kind::Hermitian),
            "symmetric" => Ok(Kind::Symmetric),
            other => Err(Error::Usage(format!("unknown kind '{}': expected hermitian or symmetric", other))),
        }
    }
}

/// `M = D^{1/2}·N·D^{−1/2}` with `N = T⁻¹·M_I·T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRep {
    pub kind: Kind,
    pub m: Matrix<RadPoly>,
    pub m_i: GPolyMatrix,
    pub t: GPolyMatrix,
    pub d: Vec<Rational>,
    pub n_mat: GPolyMatrix,
}

impl SpectralRep {
    pub fn size(&self) -> usize {
        self.m_i.rows()
    }
}

/// Multiplication by `t̄` in the lattice basis.
pub fn mult_matrix<F: Field>(ideal: &IdealLattice<F>) -> Result<Matrix<exactalg::UniPoly<F>>> {
    ideal.t_matrix()
}

/// Entries `n_kl·√(d_k·d_l)/d_l`; requires every `d_k > 0`.
pub fn materialize(n_mat: &GPolyMatrix, d: &[Rational]) -> Result<Matrix<RadPoly>> {
    if d.iter().any(|q| !q.is_positive()) {
        return Err(Error::InternalCheckFailed("D is not positive".into()));
    }
    let n = d.len();
    Ok(Matrix::from_fn(n, n, |k, l| {
        let s = RadScalar::new(GaussRational::real(d[l].recip()), &(&d[k] * &d[l]));
        RadPoly::from_scaled(&n_mat[(k, l)], &s)
    }))
}

fn sigma_mat(m: &GPolyMatrix, hermitian: bool) -> GPolyMatrix {
    if hermitian {
        m.map(GPoly::conj)
    } else {
        m.clone()
    }
}

fn is_real_mat(m: &GPolyMatrix) -> bool {
    m.entries().all(|p| p.coeffs().iter().all(|c| c.is_real()))
}

fn d_matrix(d: &[Rational]) -> GPolyMatrix {
    Matrix::diagonal(&d.iter().map(|q| GPoly::constant(GaussRational::real(q.clone()))).collect::<Vec<_>>())
}

/// Exact, radical-free check of every witness identity, plus the materialized matrix.
pub fn verify_representation(f: &GBiPoly, rep: &SpectralRep) -> bool {
    let n = rep.m_i.rows();
    let shapes_ok = [&rep.t, &rep.n_mat].iter().all(|m| m.rows() == n && m.cols() == n)
        && rep.d.len() == n
        && rep.m.rows() == n
        && rep.m.cols() == n;
    if !shapes_ok || charpoly(&rep.m_i) != *f {
        return false;
    }
    let dt = det_poly(&rep.t);
    if dt.is_zero() || !dt.is_constant() {
        return false;
    }
    if rep.t.mul(&rep.n_mat) != rep.m_i.mul(&rep.t) {
        return false;
    }
    if rep.d.iter().any(|q| !q.is_positive()) {
        return false;
    }
    let h = rep.kind.is_hermitian();
    let dm = d_matrix(&rep.d);
    if sigma_mat(&rep.n_mat, h).transpose().mul(&dm) != dm.mul(&rep.n_mat) {
        return false;
    }
    if !h && !(is_real_mat(&rep.m_i) && is_real_mat(&rep.t) && is_real_mat(&rep.n_mat)) {
        return false;
    }
    match materialize(&rep.n_mat, &rep.d) {
        Ok(m) => m == rep.m && is_self_adjoint(&m, h),
        Err(_) => false,
    }
}

/// `M* = M` (Hermitian) or `Mᵀ = M` with real entries (symmetric).
pub fn is_self_adjoint(m: &Matrix<RadPoly>, hermitian: bool) -> bool {
    let n = m.rows();
    (0..n).all(|k| {
        (0..n).all(|l| {
            let other = if hermitian { m[(l, k)].conj() } else { m[(l, k)].clone() };
            m[(k, l)] == other && (hermitian || m[(k, l)].poly().coeffs().iter().all(|c| c.is_real()))
        })
    })
}

fn reverse_basis(dz: Diagonalization<GaussRational>) -> Diagonalization<GaussRational> {
    let n = dz.d.len();
    let p = Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { GPoly::one() } else { GPoly::zero() });
    Diagonalization { t: dz.t.mul(&p), t_inv: p.mul(&dz.t_inv), d: dz.d.into_iter().rev().collect() }
}

/// Completes a representation from a lattice and its diagonalized unimodular Gram matrix.
fn finish(f: &GBiPoly, ideal: &IdealLattice<GaussRational>, dz: Diagonalization<GaussRational>, kind: Kind) -> Result<SpectralRep> {
    // output basis is the diagonalizing basis in reverse order
    let dz = reverse_basis(dz);
    let m_i = mult_matrix(ideal)?;
    let n_mat = dz.t_inv.mul(&m_i).mul(&dz.t);
    let m = materialize(&n_mat, &dz.d)?;
    let rep = SpectralRep { kind, m, m_i, t: dz.t, d: dz.d, n_mat };
    if !verify_representation(f, &rep) {
        return Err(Error::InternalCheckFailed("representation fails verification".into()));
    }
    Ok(rep)
}

fn describe_witness(w: &Option<Witness>) -> String {
    match w {
        Some(Witness::NegativeMinor { minor, a, value }) => format!(
            "principal minor {:?} of the Hermite matrix equals {} at x = {}",
            minor.indices, value, a
        ),
        Some(Witness::NegativeDirection { value }) => format!("F(e) = {}", value),
        None => "no witness".into(),
    }
}

/// Preconditions shared by both kinds.
pub fn prepare(f: &QBiPoly) -> Result<(CurveData, Arc<Algebra<GaussRational>>)> {
    let cert = certify_real_rooted(f)?;
    if !cert.verdict {
        return Err(Error::NotRealRooted(describe_witness(&cert.witness)));
    }
    let cd = analyze_curve(f)?;
    if let Some(bp) = cd.branch_points.iter().find(|bp| bp.a.is_real()) {
        return Err(Error::RealRamification(bp.a.clone()));
    }
    let alg = Arc::new(Algebra::new(lift(f)));
    Ok((cd, alg))
}

pub fn hermitian_representation(f: &QBiPoly) -> Result<SpectralRep> {
    let (cd, alg) = prepare(f)?;
    let j = half_different(&alg, &cd)?;
    let inv_ft = alg.inverse(&alg.f_t()).ok_or(Error::NotSquarefree)?;
    let ideal = j.conj().scale(&inv_ft)?;
    let g = gram_matrix(&ideal, &alg.t_pow(0), true)
        .poly()
        .ok_or_else(|| Error::InternalCheckFailed("Hermitian Gram matrix is not integral".into()))?;
    if !is_unimodular_matrix(&g) {
        return Err(Error::InternalCheckFailed("Hermitian Gram matrix is not unimodular".into()));
    }
    let dz = diagonalize_unimodular(&g, true)?;
    finish(alg.f(), &ideal, dz, Kind::Hermitian)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Degree bound for generator coordinates.
    pub bound: usize,
    /// Candidate generators tried per scaling ideal.
    pub budget: usize,
}

pub const DEFAULT_SYMMETRIC_BUDGET: usize = 20_000;

/// `2n + deg_x(disc)`
pub fn default_search_bound(cd: &CurveData) -> usize {
    2 * cd.f.t_degree() + cd.disc.deg_i().max(0) as usize
}

/// Exponent vectors in `[−m_1, m_1] × … ` in lexicographic order.
fn exponent_vectors(ms: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &m in ms {
        let m = m as i64;
        out = out.into_iter().flat_map(|v| (-m..=m).map(move |e| { let mut w = v.clone(); w.push(e); w })).collect();
    }
    out
}

fn upper_points(cd: &CurveData) -> Vec<BranchPoint> {
    cd.branch_points.iter().filter(|bp| bp.a.im.is_positive()).cloned().collect()
}

/// Real lattice `∏ (q_P·q̄_P)^{ε_P}` over upper branch points.
fn candidate_lattice(
    alg: &Arc<Algebra<GaussRational>>,
    pts: &[BranchPoint],
    eps: &[i64],
) -> Result<IdealLattice<GaussRational>> {
    let mut i0 = IdealLattice::unit(alg);
    for (bp, &e) in pts.iter().zip(eps) {
        if e == 0 {
            continue;
        }
        let q = prime_at_point(alg, &bp.a, &bp.t0)?;
        i0 = i0.mul(&q.pow(e)?)?.mul(&q.conj().pow(e)?)?;
    }
    Ok(i0)
}

/// Tries one real lattice `I₀` and a real generator `c` of `Δ·I₀⁻²`.
fn try_lattice(
    alg: &Arc<Algebra<GaussRational>>,
    i0: IdealLattice<GaussRational>,
    cfg: SearchConfig,
) -> Result<Option<(IdealLattice<GaussRational>, Diagonalization<GaussRational>)>> {
    let c_ideal = codifferent(alg)?.mul(&i0.pow(-2)?)?;
    let mut found = None;
    for_each_generator(&c_ideal, cfg.bound, cfg.budget, |g: &Elem<GaussRational>| {
        if !alg.is_real(g) {
            return false;
        }
        for c in [g.clone(), -g.clone()] {
            let Some(gm) = gram_matrix(&i0, &c, false).poly() else { continue };
            if !is_unimodular_matrix(&gm) {
                continue;
            }
            if let Ok(dz) = diagonalize_unimodular(&gm, false) {
                if dz.d.iter().all(|q| q.is_positive()) {
                    found = Some(dz);
                    return true;
                }
            }
        }
        false
    });
    Ok(found.map(|dz| (i0, dz)))
}

/// Bounded search; `Ok(None)` means nothing was found within the bound, not
/// that no symmetric representation exists.
pub fn symmetric_representation_search(f: &QBiPoly, cfg: SearchConfig) -> Result<Option<SpectralRep>> {
    let (cd, alg) = prepare(f)?;
    let pts = upper_points(&cd);
    let ms: Vec<usize> = pts.iter().map(|bp| bp.m).collect();
    let hit = exponent_vectors(&ms)
        .par_iter()
        .map(|eps| try_lattice(&alg, candidate_lattice(&alg, &pts, eps)?, cfg))
        .find_map_first(|r| match r {
            Ok(Some(x)) => Some(Ok(x)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
    match hit {
        None => two_squares_representation(f),
        Some(Err(e)) => Err(e),
        Some(Ok((i0, dz))) => finish(alg.f(), &i0, dz, Kind::Symmetric).map(Some),
    }
}

/// For `n = 2`: `M = −a₁/2 + [[u, v], [v, −u]]` with `u + iv = (s + iw)·∏(x − α)`,
/// the product over roots `α` of `r = a₁²/4 − a₀` with `Im α > 0`, and
/// `s² + w² = lc(r)`. `None` when `lc(r)` is not a sum of two rational squares.
pub fn two_squares_representation(f: &QBiPoly) -> Result<Option<SpectralRep>> {
    if f.t_degree() != 2 {
        return Ok(None);
    }
    let half = f.tcoeff(1).scale(&Rational::new(1.into(), 2.into()));
    let r = &(&half * &half) - &f.tcoeff(0);
    let c = r.lc();
    if !c.is_positive() {
        return Ok(None);
    }
    let mut g = GPoly::one();
    for (alpha, mult) in gaussian_roots(&r) {
        if alpha.im.is_positive() {
            for _ in 0..mult {
                g = &g * &GPoly::linear_root(alpha.clone());
            }
        }
    }
    let to_g = |p: &exactalg::QPoly| -> GPoly { p.map(|q| GaussRational::real(q.clone())) };
    if &g.scale(&GaussRational::real(c.clone())) * &g.conj() != to_g(&r) {
        return Ok(None);
    }
    let Some((s, w)) = rational_two_squares(&c) else { return Ok(None) };
    let z = g.scale(&GaussRational::new(s, w));
    let u = z.map(|q| GaussRational::real(q.re.clone()));
    let v = z.map(|q| GaussRational::real(q.im.clone()));
    let shift = -to_g(&half);
    let m_i = Matrix::from_rows(vec![vec![&shift + &u, v.clone()], vec![v, &shift - &u]]);
    let d = vec![Rational::one(), Rational::one()];
    let m = materialize(&m_i, &d)?;
    let rep = SpectralRep { kind: Kind::Symmetric, m, m_i: m_i.clone(), t: Matrix::identity(2), d, n_mat: m_i };
    if !verify_representation(&lift(f), &rep) {
        return Err(Error::InternalCheckFailed("two-squares representation fails verification".into()));
    }
    Ok(Some(rep))
}

pub fn represent(f: &QBiPoly, kind: Kind, bound: Option<usize>) -> Result<SpectralRep> {
    match kind {
        Kind::Hermitian => hermitian_representation(f),
        Kind::Symmetric => {
            let bound = match bound {
                Some(b) => b,
                None => default_search_bound(&analyze_curve(f)?),
            };
            symmetric_representation_search(f, SearchConfig { bound, budget: DEFAULT_SYMMETRIC_BUDGET })?
                .ok_or(Error::NotFound)
        }
    }
}

pub fn block_compose(reps: &[SpectralRep]) -> Result<SpectralRep> {
    let first = reps.first().ok_or_else(|| Error::Usage("no representations to compose".into()))?;
    if reps.iter().any(|r| r.kind != first.kind) {
        return Err(Error::KindMismatch);
    }
    let cat = |get: &dyn Fn(&SpectralRep) -> &GPolyMatrix| Matrix::block_diag(&reps.iter().map(|r| get(r).clone()).collect::<Vec<_>>());
    let total: usize = reps.iter().map(SpectralRep::size).sum();
    let mut m = Matrix::from_fn(total, total, |_, _| RadPoly::new(GPoly::zero(), One::one()));
    let mut off = 0;
    for r in reps {
        for k in 0..r.size() {
            for l in 0..r.size() {
                m[(off + k, off + l)] = r.m[(k, l)].clone();
            }
        }
        off += r.size();
    }
    Ok(SpectralRep {
        kind: first.kind,
        m,
        m_i: cat(&|r| &r.m_i),
        t: cat(&|r| &r.t),
        d: reps.iter().flat_map(|r| r.d.iter().cloned()).collect(),
        n_mat: cat(&|r| &r.n_mat),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::mpoly::parse_gpoly;
    use exactalg::parse_mpoly;

    fn qf(s: &str) -> QBiPoly {
        crate::hvpipeline::to_rational_bipoly(&parse_mpoly(s).unwrap()).unwrap()
    }

    fn gm(rows: &[&[&str]]) -> GPolyMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_gpoly(s).unwrap()).collect()).collect())
    }

    fn rp(s: &str) -> RadPoly {
        RadPoly::new(parse_gpoly(s).unwrap(), One::one())
    }

    #[test]
    fn companion_for_unit_lattice() {
        let alg = Arc::new(Algebra::new(lift(&qf("t^2 - x^3 - 1"))));
        let m = mult_matrix(&IdealLattice::unit(&alg)).unwrap();
        assert_eq!(m, gm(&[&["0", "x^3 + 1"], &["1", "0"]]));
    }

    #[test]
    fn hyperbola_hermitian() {
        let f = qf("t^2 - x^2 - 1");
        let rep = hermitian_representation(&f).unwrap();
        assert_eq!(rep.m, Matrix::from_rows(vec![vec![rp("0"), rp("x - i")], vec![rp("x + i"), rp("0")]]));
        assert!(verify_representation(&lift(&f), &rep));
    }

    #[test]
    fn linear_in_t() {
        let f = qf("t - x^3 + 2x - 1/2");
        let rep = hermitian_representation(&f).unwrap();
        assert_eq!(rep.m, Matrix::from_rows(vec![vec![rp("x^3 - 2x + 1/2")]]));
        let rep = represent(&f, Kind::Symmetric, Some(0)).unwrap();
        assert_eq!(rep.m, Matrix::from_rows(vec![vec![rp("x^3 - 2x + 1/2")]]));
    }

    #[test]
    fn quartic_hermitian() {
        let f = qf("t^2 - (x^2 + 1)*(x^2 + 4)");
        let rep = hermitian_representation(&f).unwrap();
        assert!(verify_representation(&lift(&f), &rep));
    }

    #[test]
    fn hyperbola_symmetric() {
        let f = qf("t^2 - x^2 - 1");
        let rep = symmetric_representation_search(&f, SearchConfig { bound: 3, budget: DEFAULT_SYMMETRIC_BUDGET })
            .unwrap()
            .unwrap();
        assert_eq!(rep.kind, Kind::Symmetric);
        assert!(verify_representation(&lift(&f), &rep));
    }

    #[test]
    fn two_squares_direct() {
        let f = qf("t^2 - (x^2+1)*(x^2+4)");
        let rep = two_squares_representation(&f).unwrap().unwrap();
        // (x − i)(x − 2i) = x² − 2 − 3ix
        assert_eq!(rep.m_i, gm(&[&["x^2 - 2", "-3x"], &["-3x", "-x^2 + 2"]]));
        let shifted = qf("t^2 + 2x*t - 1");
        assert!(verify_representation(&lift(&shifted), &two_squares_representation(&shifted).unwrap().unwrap()));
        assert!(two_squares_representation(&qf("t^2 - 3x^2 - 3")).unwrap().is_none());
        assert!(two_squares_representation(&qf("(t - x)*(t^2 - x^2 - 1)")).unwrap().is_none());
    }

    #[test]
    fn tampering_detected() {
        let f = lift(&qf("t^2 - x^2 - 1"));
        let rep = hermitian_representation(&qf("t^2 - x^2 - 1")).unwrap();
        let mut bad = rep.clone();
        bad.d[0] = -bad.d[0].clone();
        assert!(!verify_representation(&f, &bad));
        let mut bad = rep.clone();
        let a = bad.n_mat[(0, 1)].clone();
        bad.n_mat[(0, 1)] = bad.n_mat[(1, 0)].clone();
        bad.n_mat[(1, 0)] = a;
        assert!(!verify_representation(&f, &bad));
    }

    #[test]
    fn not_real_rooted_rejected() {
        assert!(matches!(hermitian_representation(&qf("t^2 + x^2 + 1")), Err(Error::NotRealRooted(_))));
    }

    #[test]
    fn blocks() {
        let a = hermitian_representation(&qf("t - x")).unwrap();
        let b = hermitian_representation(&qf("t + x")).unwrap();
        let c = block_compose(&[a.clone(), b]).unwrap();
        assert_eq!(charpoly(&c.m_i), lift(&qf("t^2 - x^2")));
        assert_eq!(block_compose(&[a.clone()]).unwrap(), a);
        let s = represent(&qf("t - x"), Kind::Symmetric, Some(0)).unwrap();
        assert!(matches!(block_compose(&[a, s]), Err(Error::KindMismatch)));
    }
}
