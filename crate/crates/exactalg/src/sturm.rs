//! Squarefree decomposition, exact real root counting and isolation over Q.

use num_traits::{One, Signed, Zero};

use crate::poly::UniPoly;
use crate::scalar::{rational_sign, Field, Rational};
use crate::{AlgError, QPoly};

/// Yun's squarefree decomposition: `p = lc(p) · Π g_k^{m_k}` with `g_k` monic,
/// squarefree, pairwise coprime and the `m_k` distinct and increasing.
pub fn squarefree_decompose<F: Field>(p: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, usize)>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial("squarefree decomposition"));
    }
    let p = p.monic();
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = &nc - &nb.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Squarefree part (product of the distinct monic irreducible factors).
pub fn squarefree_part<F: Field>(p: &UniPoly<F>) -> UniPoly<F> {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

/// Sturm sequence `p, p', -rem(...), ...`.
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone()];
    let mut cur = p.derivative();
    while !cur.is_zero() {
        let prev = seq.last().unwrap();
        let r = prev.div_rem(&cur).1;
        seq.push(cur);
        cur = -r;
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_at_infinity(p: &QPoly, positive: bool) -> i32 {
    let s = rational_sign(&p.lc());
    if positive || p.deg_i() % 2 == 0 {
        s
    } else {
        -s
    }
}

fn variations_at(seq: &[QPoly], a: &Rational) -> usize {
    variations(seq.iter().map(|q| rational_sign(&q.eval(a))))
}

/// Number of distinct real roots.
pub fn sturm_count(p: &QPoly) -> Result<usize, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial("Sturm count"));
    }
    let seq = sturm_sequence(p);
    let lo = variations(seq.iter().map(|q| sign_at_infinity(q, false)));
    let hi = variations(seq.iter().map(|q| sign_at_infinity(q, true)));
    Ok(lo - hi)
}

/// Number of distinct real roots in `(a, b]`, for `a` not a root.
pub fn sturm_count_interval(seq: &[QPoly], a: &Rational, b: &Rational) -> usize {
    variations_at(seq, a) - variations_at(seq, b)
}

/// Cauchy bound: every complex root has modulus strictly below it.
pub fn cauchy_bound(p: &QPoly) -> Rational {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Isolating intervals `(lo, hi]` for the distinct real roots, in increasing
/// order. Endpoints are never roots.
pub fn isolate_real_roots(p: &QPoly) -> Result<Vec<(Rational, Rational)>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial("root isolation"));
    }
    let q = squarefree_part(p);
    if q.is_constant() {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&q);
    let b = cauchy_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm_count_interval(&seq, &lo, &hi);
        match c {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let two = Rational::from_integer(2.into());
                let mut mid = (&lo + &hi) / &two;
                while q.eval(&mid).is_zero() {
                    mid = (&lo + &mid) / &two;
                }
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Decides `p(a) ≥ 0` for every real `a`.
pub fn nonneg_on_r(p: &QPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    if rational_sign(&p.lc()) < 0 {
        return false;
    }
    let odd: QPoly = squarefree_decompose(p)
        .expect("nonzero")
        .into_iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(QPoly::one(), |acc, (g, _)| &acc * &g);
    sturm_count(&odd).expect("nonzero") == 0
}

/// A rational point where `p` is negative, if one exists. Small integers are
/// tried first, then points separating the isolated real roots.
pub fn negative_point(p: &QPoly) -> Option<Rational> {
    if nonneg_on_r(p) {
        return None;
    }
    let bound = cauchy_bound(p);
    let mut k = 0i64;
    while Rational::from_integer(k.into()) <= bound {
        for v in [k, -k] {
            let a = Rational::from_integer(v.into());
            if p.eval(&a).is_negative() {
                return Some(a);
            }
        }
        k += 1;
        if k > 64 {
            break;
        }
    }
    let intervals = isolate_real_roots(p).ok()?;
    let mut pts: Vec<Rational> = intervals.iter().flat_map(|(l, r)| [l.clone(), r.clone()]).collect();
    pts.push(bound.clone() + Rational::one());
    pts.push(-bound - Rational::one());
    pts.into_iter().find(|a| p.eval(a).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn squarefree_examples() {
        let p = &q(&[-1, 1]).pow(2) * &q(&[2, 1]);
        assert_eq!(squarefree_decompose(&p).unwrap(), vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decompose(&q(&[1, 0, 1])).unwrap(), vec![(q(&[1, 0, 1]), 1)]);
        assert_eq!(squarefree_decompose(&q(&[1, 0, 2, 0, 1])).unwrap(), vec![(q(&[1, 0, 1]), 2)]);
        assert!(squarefree_decompose(&QPoly::zero()).is_err());
        // non-monic input keeps the factors monic
        let s = squarefree_decompose(&q(&[0, 0, 0, 3])).unwrap();
        assert_eq!(s, vec![(q(&[0, 1]), 3)]);
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_count(&q(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_count(&q(&[-1, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_count(&q(&[0, -1, 0, 1])).unwrap(), 3);
        // repeated roots are counted once
        assert_eq!(sturm_count(&(&q(&[-1, 1]).pow(3) * &q(&[1, 1]))).unwrap(), 2);
        assert!(sturm_count(&QPoly::zero()).is_err());
    }

    #[test]
    fn nonneg_examples() {
        assert!(nonneg_on_r(&q(&[1, 0, 1])));
        assert!(!nonneg_on_r(&q(&[0, 0, -1])));
        assert!(nonneg_on_r(&(&q(&[-1, 1]).pow(2) * &q(&[2, 0, 1]))));
        assert!(nonneg_on_r(&QPoly::zero()));
        assert!(!nonneg_on_r(&q(&[0, 1])));
    }

    #[test]
    fn isolation_and_witness() {
        // 6(x - 1/2)(x - 1/3) is negative only strictly between 1/3 and 1/2
        let p = &q(&[-1, 2]) * &q(&[-1, 3]);
        let iv = isolate_real_roots(&p).unwrap();
        assert_eq!(iv.len(), 2);
        let a = negative_point(&p).unwrap();
        assert!(p.eval(&a).is_negative());
        assert!(a > rat(1, 3) && a < rat(1, 2));
        assert!(negative_point(&q(&[1, 0, 1])).is_none());
    }
}
