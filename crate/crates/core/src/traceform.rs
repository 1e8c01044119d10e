//! Scaled trace forms on ideal lattices and their diagonalization over `F[x]`.

use exactalg::radical::split_square;
use exactalg::{Field, Matrix, RadScalar, RatFunc, Rational, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{det_poly, to_poly_matrix, Algebra, Elem};
use crate::error::{Error, Result};
use crate::ideallat::IdealLattice;

pub const DIAGONALIZE_ROUND_CAP: usize = 10_000;

/// `Tr(u)` as a rational function of `x`.
pub fn trace_element<F: Field>(alg: &Algebra<F>, u: &Elem<F>) -> RatFunc<F> {
    alg.trace(u)
}

/// Gram matrix `Tr(σ(b_k)·b_l·c)` of arbitrary elements.
pub fn gram_of_elements<F: Field>(alg: &Algebra<F>, elems: &[Elem<F>], c: &Elem<F>, hermitian: bool) -> Matrix<RatFunc<F>> {
    let left: Vec<Elem<F>> =
        elems.iter().map(|b| if hermitian { alg.conj(b) } else { b.clone() }).collect();
    let right: Vec<Elem<F>> = elems.iter().map(|b| alg.mul(b, c)).collect();
    let k = elems.len();
    Matrix::from_fn(k, k, |i, j| alg.trace(&alg.mul(&left[i], &right[j])))
}

#[derive(Clone, Debug)]
pub struct GramForm<F: Field> {
    pub g: Matrix<RatFunc<F>>,
    pub lattice: IdealLattice<F>,
    pub scale: Elem<F>,
    pub hermitian: bool,
}

impl<F: Field> GramForm<F> {
    /// Entries in `F[x]`, or `None` when some entry is not integral.
    pub fn poly(&self) -> Option<Matrix<UniPoly<F>>> {
        to_poly_matrix(&self.g)
    }

    pub fn is_integral(&self) -> bool {
        self.g.entries().all(RatFunc::is_poly)
    }
}

pub fn gram_matrix<F: Field>(ideal: &IdealLattice<F>, c: &Elem<F>, hermitian: bool) -> GramForm<F> {
    let alg = ideal.algebra();
    GramForm {
        g: gram_of_elements(alg, &ideal.elements(), c, hermitian),
        lattice: ideal.clone(),
        scale: c.clone(),
        hermitian,
    }
}

/// Determinant a nonzero constant.
pub fn is_unimodular_matrix<F: Field>(g: &Matrix<UniPoly<F>>) -> bool {
    let d = det_poly(g);
    !d.is_zero() && d.is_constant()
}

pub fn is_unimodular<F: Field>(gf: &GramForm<F>) -> bool {
    gf.poly().is_some_and(|g| is_unimodular_matrix(&g))
}

/// `σ(T)ᵀ·G·T = diag(d)`, `T·t_inv = I`, `d` nonzero and normalized to
/// squarefree integers.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization<F: Field> {
    pub t: Matrix<UniPoly<F>>,
    pub t_inv: Matrix<UniPoly<F>>,
    pub d: Vec<Rational>,
}

fn sigma<F: Field>(p: &UniPoly<F>, hermitian: bool) -> UniPoly<F> {
    if hermitian {
        p.conj()
    } else {
        p.clone()
    }
}

/// `σ(T)ᵀ·G·T`
pub fn congruence<F: Field>(g: &Matrix<UniPoly<F>>, t: &Matrix<UniPoly<F>>, hermitian: bool) -> Matrix<UniPoly<F>> {
    t.map(|e| sigma(e, hermitian)).transpose().mul(g).mul(t)
}

/// Basis state: `σ(T)ᵀ·G0·T = g` and `t_inv·T = I` throughout.
struct Reducer<F: Field> {
    g: Matrix<UniPoly<F>>,
    t: Matrix<UniPoly<F>>,
    t_inv: Matrix<UniPoly<F>>,
    hermitian: bool,
}

impl<F: Field> Reducer<F> {
    fn n(&self) -> usize {
        self.g.rows()
    }

    /// `b_j += q·b_i`
    fn add_multiple(&mut self, j: usize, i: usize, q: &UniPoly<F>) {
        if q.is_zero() {
            return;
        }
        let n = self.n();
        let sq = sigma(q, self.hermitian);
        for k in 0..n {
            let v = &self.g[(k, j)] + &(&self.g[(k, i)] * q);
            self.g[(k, j)] = v;
        }
        for k in 0..n {
            let v = &self.g[(j, k)] + &(&sq * &self.g[(i, k)]);
            self.g[(j, k)] = v;
        }
        for k in 0..n {
            let v = &self.t[(k, j)] + &(&self.t[(k, i)] * q);
            self.t[(k, j)] = v;
            let w = &self.t_inv[(i, k)] - &(q * &self.t_inv[(j, k)]);
            self.t_inv[(i, k)] = w;
        }
    }

    /// `b_j ← c·b_j`
    fn scale(&mut self, j: usize, c: &F) {
        let n = self.n();
        let sc = if self.hermitian { c.conj() } else { c.clone() };
        let ci = c.inv();
        for k in 0..n {
            self.g[(k, j)] = self.g[(k, j)].scale(c);
        }
        for k in 0..n {
            self.g[(j, k)] = self.g[(j, k)].scale(&sc);
            self.t[(k, j)] = self.t[(k, j)].scale(c);
            self.t_inv[(j, k)] = self.t_inv[(j, k)].scale(&ci);
        }
    }

    /// Makes `g_ji = 0` for all `j ≠ i` in `active`, when `g_ii` is a nonzero constant.
    fn split_off(&mut self, i: usize, active: &[usize]) {
        let inv = self.g[(i, i)].coeff(0).inv();
        for &j in active {
            if j != i && !self.g[(i, j)].is_zero() {
                let q = self.g[(i, j)].scale(&inv);
                self.add_multiple(j, i, &-q);
            }
        }
    }

    /// Reduces `g_ij` modulo `g_ii` for the other active `j`.
    fn reduce_against(&mut self, i: usize, active: &[usize]) {
        for &j in active {
            if j == i {
                continue;
            }
            let (q, _) = self.g[(i, j)].div_rem(&self.g[(i, i)]);
            self.add_multiple(j, i, &-q);
        }
    }
}

fn even_half(p: &UniPoly<impl Field>) -> Option<usize> {
    let d = p.degree()?;
    (d % 2 == 0).then_some(d / 2)
}

/// Exact congruence to a constant diagonal form by degree reduction.
///
/// Positive semidefinite forms always diagonalize; indefinite forms with
/// nonconstant entries may be rejected with `Indefinite`.
pub fn diagonalize_unimodular<F: Field>(g0: &Matrix<UniPoly<F>>, hermitian: bool) -> Result<Diagonalization<F>> {
    diagonalize_with_cap(g0, hermitian, DIAGONALIZE_ROUND_CAP)
}

pub fn diagonalize_with_cap<F: Field>(g0: &Matrix<UniPoly<F>>, hermitian: bool, cap: usize) -> Result<Diagonalization<F>> {
    let n = g0.rows();
    if n != g0.cols() {
        return Err(Error::NotUnimodular("Gram matrix is not square".into()));
    }
    let adj = g0.map(|e| sigma(e, hermitian)).transpose();
    if adj != *g0 {
        return Err(Error::NotUnimodular("Gram matrix is not self-adjoint".into()));
    }
    if !is_unimodular_matrix(g0) {
        return Err(Error::NotUnimodular("determinant is not a nonzero constant".into()));
    }
    let mut r = Reducer { g: g0.clone(), t: Matrix::identity(n), t_inv: Matrix::identity(n), hermitian };
    let mut active: Vec<usize> = (0..n).collect();
    let mut rounds = 0usize;
    while !active.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::NonTermination(cap));
        }
        if let Some(&i) = active.iter().find(|&&i| !r.g[(i, i)].is_zero() && r.g[(i, i)].is_constant()) {
            r.split_off(i, &active);
            active.retain(|&k| k != i);
            continue;
        }
        let all_constant = active.iter().all(|&k| active.iter().all(|&l| r.g[(k, l)].is_constant()));
        if all_constant {
            // every active diagonal entry vanishes here
            let (i, j) = active
                .iter()
                .flat_map(|&k| active.iter().map(move |&l| (k, l)))
                .find(|&(k, l)| k != l && !r.g[(k, l)].is_zero())
                .ok_or_else(|| Error::InternalCheckFailed("degenerate constant block".into()))?;
            let lam = sigma(&r.g[(i, j)], hermitian);
            r.add_multiple(i, j, &lam);
            continue;
        }
        let mut w = vec![0usize; n];
        for &k in &active {
            let gkk = &r.g[(k, k)];
            let half = even_half(gkk).ok_or_else(|| Error::Indefinite(format!("diagonal entry {} has odd degree or vanishes", fmt_poly(gkk))))?;
            if !lc_positive(gkk) {
                return Err(Error::Indefinite(format!("diagonal entry {} has non-positive leading coefficient", fmt_poly(gkk))));
            }
            w[k] = half;
        }
        let &i = active.iter().min_by_key(|&&k| (w[k], k)).unwrap();
        r.reduce_against(i, &active);
        for &k in &active {
            let half = even_half(&r.g[(k, k)]).ok_or_else(|| Error::Indefinite("diagonal entry lost even degree".into()))?;
            w[k] = half;
        }
        for &k in &active {
            for &l in &active {
                if r.g[(k, l)].deg_i() > (w[k] + w[l]) as i64 {
                    return Err(Error::Indefinite("off-diagonal degree exceeds the Cauchy-Schwarz bound".into()));
                }
            }
        }
        let lead = Matrix::from_fn(active.len(), active.len(), |a, b| {
            let (k, l) = (active[a], active[b]);
            r.g[(k, l)].coeff(w[k] + w[l])
        });
        let ker = lead.kernel();
        let c = ker.first().ok_or_else(|| Error::NotUnimodular("leading form is nonsingular with positive degrees".into()))?;
        let supp: Vec<usize> = (0..active.len()).filter(|&a| !c[a].is_zero()).collect();
        let &jpos = supp.iter().max_by_key(|&&a| (w[active[a]], usize::MAX - a)).unwrap();
        let j = active[jpos];
        r.scale(j, &c[jpos]);
        for &a in &supp {
            if a != jpos {
                let k = active[a];
                r.add_multiple(j, k, &UniPoly::monomial(c[a].clone(), w[j] - w[k]));
            }
        }
    }
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        let v = r.g[(k, k)].coeff(0);
        let q = v.to_rational().ok_or_else(|| Error::InternalCheckFailed("diagonal entry is not rational".into()))?;
        let (num, den) = (q.numer().abs(), q.denom().clone());
        let (s, _) = split_square(&(&num * &den));
        let lam = Rational::new(den, s);
        r.scale(k, &F::from_rational(&lam));
        d.push(r.g[(k, k)].coeff(0).to_rational().expect("rational after rational scaling"));
    }
    let out = Diagonalization { t: r.t, t_inv: r.t_inv, d };
    let expect = Matrix::diagonal(&out.d.iter().map(|q| UniPoly::constant(F::from_rational(q))).collect::<Vec<_>>());
    if congruence(g0, &out.t, hermitian) != expect || out.t.mul(&out.t_inv) != Matrix::identity(n) {
        return Err(Error::InternalCheckFailed("diagonalization identity fails".into()));
    }
    Ok(out)
}

fn lc_positive<F: Field>(p: &UniPoly<F>) -> bool {
    p.lc().to_rational().is_some_and(|q| q.is_positive())
}

fn fmt_poly<F: Field>(p: &UniPoly<F>) -> String {
    format!("{:?}", p.coeffs())
}

/// `√d_k` for positive rationals.
pub fn constant_cholesky(d: &[Rational]) -> Result<Vec<RadScalar>> {
    d.iter()
        .map(|q| {
            if q.is_positive() {
                Ok(RadScalar::sqrt(q))
            } else {
                Err(Error::Indefinite(format!("diagonal entry {} is not positive", q)))
            }
        })
        .collect()
}

/// `(positive, negative, zero)` counts of a constant self-adjoint matrix.
pub fn signature<F: Field>(m: &Matrix<F>) -> (usize, usize, usize) {
    exactalg::inertia(m)
}

pub fn radicand_is_squarefree(r: &BigInt) -> bool {
    split_square(r).0.is_one()
}
