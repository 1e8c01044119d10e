//! Fractional ideals of `B = F[x][t]/(f)` as full-rank `F[x]`-lattices in `L`.
//!
//! A lattice is `(1/den)·colspan(H)` with `H` in column Hermite normal form
//! over the power basis, `den` monic and coprime to the content of `H`, so
//! equal modules have equal representations.

use std::sync::Arc;

use exactalg::{hnf_reduce, AlgError, Field, GaussRational, Matrix, RatFunc, UniPoly};
use num_traits::{One, Zero};

use crate::algebra::{power_sums, to_poly_matrix, to_ratfunc_matrix, Algebra, Elem};
use crate::curvedata::CurveData;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct IdealLattice<F: Field> {
    alg: Arc<Algebra<F>>,
    basis: Matrix<UniPoly<F>>,
    den: UniPoly<F>,
}

impl<F: Field> PartialEq for IdealLattice<F> {
    fn eq(&self, o: &Self) -> bool {
        self.basis == o.basis && self.den == o.den && self.alg.f() == o.alg.f()
    }
}

impl<F: Field> Eq for IdealLattice<F> {}

fn poly_lcm<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    let g = a.gcd(b);
    (a * &b.div_rem(&g).0).monic()
}

impl<F: Field> IdealLattice<F> {
    /// The `F[x]`-module spanned by the given coordinate vectors; the caller
    /// guarantees it is closed under multiplication by `t̄`.
    pub fn from_module_columns(alg: &Arc<Algebra<F>>, cols: &[Vec<RatFunc<F>>]) -> Result<Self> {
        let n = alg.n();
        let den = cols.iter().flatten().fold(UniPoly::one(), |d, e| poly_lcm(&d, e.den()));
        let pcols: Vec<Vec<UniPoly<F>>> = cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| {
                        let r = e.clone() * RatFunc::from_poly(den.clone());
                        r.to_poly().expect("common denominator clears")
                    })
                    .collect()
            })
            .collect();
        let h = match hnf_reduce(&pcols, n) {
            Ok(h) => h,
            Err(AlgError::RankDeficient { .. }) => return Err(Error::ZeroModule),
            Err(e) => return Err(e.into()),
        };
        let content = h.entries().fold(UniPoly::zero(), |g, e| g.gcd(e));
        let g = content.gcd(&den);
        let (basis, den) = if g.is_one() {
            (h, den)
        } else {
            (h.map(|e| e.div_rem(&g).0), den.div_rem(&g).0)
        };
        Ok(IdealLattice { alg: alg.clone(), basis, den })
    }

    /// The `B`-module generated by the given elements.
    pub fn from_generators(alg: &Arc<Algebra<F>>, gens: &[Elem<F>]) -> Result<Self> {
        let mut cols = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            for k in 0..alg.n() {
                cols.push(alg.coords(&alg.mul(g, &alg.t_pow(k))));
            }
        }
        if cols.is_empty() {
            return Err(Error::ZeroModule);
        }
        Self::from_module_columns(alg, &cols)
    }

    pub fn unit(alg: &Arc<Algebra<F>>) -> Self {
        IdealLattice { alg: alg.clone(), basis: Matrix::identity(alg.n()), den: UniPoly::one() }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn basis(&self) -> &Matrix<UniPoly<F>> {
        &self.basis
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    /// Power-basis coordinates of the lattice basis, as columns.
    pub fn coords_matrix(&self) -> Matrix<RatFunc<F>> {
        let d = RatFunc::from_poly(self.den.clone());
        self.basis.map(|e| RatFunc::from_poly(e.clone()) / d.clone())
    }

    pub fn element(&self, k: usize) -> Elem<F> {
        let d = RatFunc::from_poly(self.den.clone());
        self.alg.from_coords(&self.basis.col(k).into_iter().map(|e| RatFunc::from_poly(e) / d.clone()).collect::<Vec<_>>())
    }

    pub fn elements(&self) -> Vec<Elem<F>> {
        (0..self.n()).map(|k| self.element(k)).collect()
    }

    /// `deg det(H) − n·deg den`; additive under products, zero for `B`.
    pub fn degree(&self) -> i64 {
        (0..self.n()).map(|i| self.basis[(i, i)].deg_i()).sum::<i64>() - self.n() as i64 * self.den.deg_i()
    }

    fn same_ambient(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &o.alg) || self.alg.f() == o.alg.f() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_ambient(o)?;
        let a = self.elements();
        let b = o.elements();
        let mut cols = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                cols.push(self.alg.coords(&self.alg.mul(x, y)));
            }
        }
        Self::from_module_columns(&self.alg, &cols)
    }

    /// Entrywise conjugation; meaningful when `f` is conjugation-fixed.
    pub fn conj(&self) -> Self {
        IdealLattice { alg: self.alg.clone(), basis: self.basis.map(UniPoly::conj), den: self.den.conj() }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `c·I`
    pub fn scale(&self, c: &Elem<F>) -> Result<Self> {
        let cols: Vec<_> = self.elements().iter().map(|b| self.alg.coords(&self.alg.mul(c, b))).collect();
        Self::from_module_columns(&self.alg, &cols)
    }

    /// Trace dual `{y : Tr(y·I) ⊆ F[x]}`.
    pub fn dual(&self) -> Result<Self> {
        let n = self.n();
        let ps = power_sums(self.alg.f(), 2 * n - 1);
        let hf = Matrix::from_fn(n, n, |i, j| RatFunc::from_poly(ps[i + j].clone()));
        let p = self.coords_matrix();
        let x = p.transpose().mul(&hf).inverse().ok_or(Error::NotInvertible)?;
        let cols: Vec<_> = (0..n).map(|k| x.col(k)).collect();
        Self::from_module_columns(&self.alg, &cols)
    }

    /// `(B : I)`, guarded by `I·I⁻¹ = B`.
    pub fn inverse(&self) -> Result<Self> {
        let dual = self.dual()?;
        let inv = dual.scale(&self.alg.f_t())?;
        if self.mul(&inv)? != Self::unit(&self.alg) {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::unit(&self.alg);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Coordinates of `e` in the lattice basis, when they exist in `F(x)`.
    pub fn lattice_coords(&self, e: &Elem<F>) -> Vec<RatFunc<F>> {
        let p = self.coords_matrix().inverse().expect("full rank");
        p.mul_vec(&self.alg.coords(e))
    }

    pub fn contains(&self, e: &Elem<F>) -> bool {
        self.lattice_coords(e).iter().all(RatFunc::is_poly)
    }

    pub fn contains_lattice(&self, o: &Self) -> bool {
        o.elements().iter().all(|b| self.contains(b))
    }

    pub fn is_t_closed(&self) -> bool {
        let t = self.alg.t_pow(1);
        self.elements().iter().all(|b| self.contains(&self.alg.mul(&t, b)))
    }

    /// Matrix of multiplication by `t̄` in the lattice basis.
    pub fn t_matrix(&self) -> Result<Matrix<UniPoly<F>>> {
        let h = to_ratfunc_matrix(&self.basis);
        let c = to_ratfunc_matrix(&self.alg.companion());
        let m = h.inverse().ok_or(Error::ZeroModule)?.mul(&c).mul(&h);
        to_poly_matrix(&m).ok_or_else(|| Error::InternalCheckFailed("lattice is not closed under t".into()))
    }
}

/// The maximal ideal `(x − a, t̄ − t0)` of a point on the curve.
pub fn prime_at_point<F: Field>(alg: &Arc<Algebra<F>>, a: &F, t0: &F) -> Result<IdealLattice<F>> {
    if !alg.f().eval(a, t0).is_zero() {
        return Err(Error::NotOnCurve {
            a: to_gauss(a),
            t0: to_gauss(t0),
        });
    }
    let g1 = alg.from_poly(&UniPoly::linear_root(a.clone()));
    let g2 = &alg.t_pow(1) - &UniPoly::constant(RatFunc::constant(t0.clone()));
    let p = IdealLattice::from_generators(alg, &[g1, g2])?;
    if p.degree() != 1 {
        return Err(Error::InternalCheckFailed("prime ideal of a point must have colength 1".into()));
    }
    Ok(p)
}

fn to_gauss<F: Field>(a: &F) -> GaussRational {
    a.to_rational().map(GaussRational::real).unwrap_or_else(|| GaussRational::from_ints(0, 0))
}

/// `(∂f/∂t)`
pub fn different<F: Field>(alg: &Arc<Algebra<F>>) -> Result<IdealLattice<F>> {
    IdealLattice::from_generators(alg, &[alg.f_t()])
}

/// `(1/∂f/∂t)`, the trace dual of `B` for smooth curves.
pub fn codifferent<F: Field>(alg: &Arc<Algebra<F>>) -> Result<IdealLattice<F>> {
    let inv = alg.inverse(&alg.f_t()).ok_or(Error::NotSquarefree)?;
    IdealLattice::from_generators(alg, &[inv])
}

/// `J = Π q_P^{m_P}` over the branch points with `Im a > 0`, checked against
/// `J*·J = (∂f/∂t)`.
pub fn half_different(alg: &Arc<Algebra<GaussRational>>, cd: &CurveData) -> Result<IdealLattice<GaussRational>> {
    let mut j = IdealLattice::unit(alg);
    for bp in &cd.branch_points {
        if bp.a.im.is_zero() {
            return Err(Error::RealRamification(bp.a.clone()));
        }
        if bp.a.im > num_traits::Zero::zero() {
            let q = prime_at_point(alg, &bp.a, &bp.t0)?;
            j = j.mul(&q.pow(bp.m as i64)?)?;
        }
    }
    if j.conj().mul(&j)? != different(alg)? {
        return Err(Error::InternalCheckFailed("J*·J differs from (f_t)".into()));
    }
    Ok(j)
}

/// Visits candidate generators `g = Σ c_kj x^j b_k` of `I`, with `c_kj ∈ {−1, 0, 1}`
/// and `j ≤ degree_bound`, by increasing support and then lexicographically,
/// with the first nonzero coefficient `+1`. Stops when `visit` returns true or
/// after `budget` candidates.
pub fn for_each_generator<F: Field>(
    ideal: &IdealLattice<F>,
    degree_bound: usize,
    budget: usize,
    mut visit: impl FnMut(&Elem<F>) -> bool,
) -> Option<Elem<F>> {
    let alg = ideal.algebra();
    let n = ideal.n();
    let target: i64 = (0..n).map(|i| ideal.basis()[(i, i)].deg_i()).sum();
    let comp = alg.companion();
    let mut cpow = vec![Matrix::<UniPoly<F>>::identity(n)];
    for _ in 1..n {
        let last = cpow.last().unwrap().mul(&comp);
        cpow.push(last);
    }
    let slots: Vec<(usize, usize)> = (0..=degree_bound).flat_map(|j| (0..n).map(move |k| (k, j))).collect();
    let den = RatFunc::from_poly(ideal.den().clone());
    let mut seen = 0usize;
    for r in 1..=slots.len() {
        let mut combo: Vec<usize> = (0..r).collect();
        loop {
            for signs in 0..(1u64 << (r - 1)) {
                seen += 1;
                if seen > budget {
                    return None;
                }
                let mut h = vec![UniPoly::<F>::zero(); n];
                for (pos, &s) in combo.iter().enumerate() {
                    let (k, j) = slots[s];
                    let neg = pos > 0 && (signs >> (pos - 1)) & 1 == 1;
                    let c = if neg { -F::one() } else { F::one() };
                    let mono = UniPoly::monomial(c, j);
                    for i in 0..n {
                        h[i] = &h[i] + &(&mono * &ideal.basis()[(i, k)]);
                    }
                }
                let mut mm = Matrix::<UniPoly<F>>::zeros(n, n);
                for (i, hi) in h.iter().enumerate() {
                    if !hi.is_zero() {
                        mm = mm.add(&cpow[i].map(|e| e * hi));
                    }
                }
                let nd = crate::algebra::det_poly(&mm);
                if nd.is_zero() || nd.deg_i() != target {
                    continue;
                }
                let g = alg.from_coords(&h.iter().map(|p| RatFunc::from_poly(p.clone()) / den.clone()).collect::<Vec<_>>());
                match IdealLattice::from_generators(alg, std::slice::from_ref(&g)) {
                    Ok(l) if l == *ideal => {
                        if visit(&g) {
                            return Some(g);
                        }
                    }
                    _ => {}
                }
            }
            // next combination of r slots
            let m = slots.len();
            let mut i = r;
            while i > 0 && combo[i - 1] == m - r + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for k in i..r {
                combo[k] = combo[k - 1] + 1;
            }
        }
    }
    None
}

pub const DEFAULT_GENERATOR_BUDGET: usize = 200_000;

/// A generator `g` of `I` whose lattice coordinates have degree at most
/// `degree_bound` and coefficients in `{−1, 0, 1}`, if one exists.
pub fn principal_generator_search<F: Field>(ideal: &IdealLattice<F>, degree_bound: usize) -> Option<Elem<F>> {
    for_each_generator(ideal, degree_bound, DEFAULT_GENERATOR_BUDGET, |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvedata::{analyze_curve, lift};
    use exactalg::{parse_mpoly, GBiPoly, GPoly, QBiPoly};

    fn alg_of(s: &str) -> Arc<Algebra<GaussRational>> {
        let f: GBiPoly = parse_mpoly(s).unwrap().to_bipoly().unwrap();
        Arc::new(Algebra::new(f))
    }

    fn gi(a: i64, b: i64) -> GaussRational {
        GaussRational::from_ints(a, b)
    }

    fn gp(s: &str) -> GPoly {
        exactalg::mpoly::parse_gpoly(s).unwrap()
    }

    fn el(alg: &Algebra<GaussRational>, s: &str) -> Elem<GaussRational> {
        alg.from_bipoly(&parse_mpoly(s).unwrap().to_bipoly().unwrap())
    }

    #[test]
    fn generator_examples() {
        let alg = alg_of("t^2 - x^2 - 1");
        let b = IdealLattice::from_generators(&alg, &[el(&alg, "1")]).unwrap();
        assert_eq!(b, IdealLattice::unit(&alg));
        let q = IdealLattice::from_generators(&alg, &[el(&alg, "x - i"), el(&alg, "t")]).unwrap();
        assert_eq!(q.basis(), &Matrix::diagonal(&[gp("x - i"), GPoly::one()]));
        assert!(q.den().is_one());
        let tt = IdealLattice::from_generators(&alg, &[el(&alg, "2t")]).unwrap();
        assert_eq!(tt.basis(), &Matrix::diagonal(&[gp("x^2 + 1"), GPoly::one()]));
        assert!(tt.is_t_closed());
    }

    #[test]
    fn products_and_conjugates() {
        let alg = alg_of("t^2 - x^2 - 1");
        let q = prime_at_point(&alg, &gi(0, 1), &gi(0, 0)).unwrap();
        let qb = prime_at_point(&alg, &gi(0, -1), &gi(0, 0)).unwrap();
        assert_eq!(q.conj(), qb);
        let t = IdealLattice::from_generators(&alg, &[el(&alg, "t")]).unwrap();
        assert_eq!(q.mul(&qb).unwrap(), t);
        let x2 = IdealLattice::from_generators(&alg, &[el(&alg, "x^2 + 1")]).unwrap();
        assert_eq!(t.mul(&t).unwrap(), x2);
        assert_eq!(q.mul(&IdealLattice::unit(&alg)).unwrap(), q);
    }

    #[test]
    fn off_curve_point_rejected() {
        let alg = alg_of("t^2 - x^2 - 1");
        assert!(matches!(prime_at_point(&alg, &gi(0, 0), &gi(0, 0)), Err(Error::NotOnCurve { .. })));
        let p = prime_at_point(&alg, &gi(0, 0), &gi(1, 0)).unwrap();
        let g = IdealLattice::from_generators(&alg, &[el(&alg, "x"), el(&alg, "t - 1")]).unwrap();
        assert_eq!(p, g);
        assert_eq!(p.basis(), &Matrix::from_rows(vec![vec![gp("x"), gp("-1")], vec![GPoly::zero(), GPoly::one()]]));
    }

    #[test]
    fn inverses() {
        let alg = alg_of("t^2 - x^2 - 1");
        let b = IdealLattice::unit(&alg);
        assert_eq!(b.inverse().unwrap(), b);
        let t = IdealLattice::from_generators(&alg, &[el(&alg, "t")]).unwrap();
        let ti = t.inverse().unwrap();
        let expected = IdealLattice::from_generators(&alg, &[alg.inverse(&el(&alg, "t")).unwrap()]).unwrap();
        assert_eq!(ti, expected);
        assert_eq!(ti.degree(), -2);
        let q = prime_at_point(&alg, &gi(0, 1), &gi(0, 0)).unwrap();
        assert_eq!(q.inverse().unwrap().mul(&q).unwrap(), b);
    }

    #[test]
    fn half_different_examples() {
        let f: QBiPoly = parse_mpoly("t^2 - x^2 - 1").unwrap().to_bipoly().unwrap().map(|c| c.to_rational().unwrap());
        let cd = analyze_curve(&f).unwrap();
        let alg = Arc::new(Algebra::new(lift(&f)));
        let j = half_different(&alg, &cd).unwrap();
        assert_eq!(j.basis(), &Matrix::diagonal(&[gp("x - i"), GPoly::one()]));

        let f: QBiPoly =
            parse_mpoly("t^2 - (x^2+1)*(x^2+4)").unwrap().to_bipoly().unwrap().map(|c| c.to_rational().unwrap());
        let cd = analyze_curve(&f).unwrap();
        let alg = Arc::new(Algebra::new(lift(&f)));
        let j = half_different(&alg, &cd).unwrap();
        assert_eq!(j.basis(), &Matrix::diagonal(&[gp("(x - i)*(x - 2i)"), GPoly::one()]));

        let f: QBiPoly = parse_mpoly("t^2 - 1").unwrap().to_bipoly().unwrap().map(|c| c.to_rational().unwrap());
        let cd = analyze_curve(&f).unwrap();
        let alg = Arc::new(Algebra::new(lift(&f)));
        assert_eq!(half_different(&alg, &cd).unwrap(), IdealLattice::unit(&alg));
    }

    #[test]
    fn generator_search() {
        let alg = alg_of("t^2 - x^2 - 1");
        let t = IdealLattice::from_generators(&alg, &[el(&alg, "t")]).unwrap();
        let g = principal_generator_search(&t, 1).unwrap();
        assert_eq!(IdealLattice::from_generators(&alg, &[g]).unwrap(), t);
        let b = IdealLattice::unit(&alg);
        assert!(principal_generator_search(&b, 0).unwrap().is_one());
        let q = prime_at_point(&alg, &gi(0, 1), &gi(0, 0)).unwrap();
        let g = principal_generator_search(&q, 3).unwrap();
        assert_eq!(g, el(&alg, "t + x - i"));
    }
}
