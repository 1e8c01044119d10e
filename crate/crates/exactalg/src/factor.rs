//! Factorization over Q: squarefree decomposition, factorization modulo a
//! small prime, linear Hensel lifting and exhaustive subset recombination.
//!
//! Recombination is exponential in the number of modular factors; inputs of
//! degree up to about 20 are in range.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{self, Fp};
use crate::scalar::Rational;
use crate::sturm::squarefree_decompose;
use crate::QPoly;

/// `unit · Π g^m` with every `g` monic irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m as u32))
    }
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

/// `a + c·b`
fn zadd_scaled(a: &ZPoly, b: &ZPoly, c: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z) * c).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive integer polynomial with positive leading coefficient and the
/// same roots as `p`.
fn primitive_integer(p: &QPoly) -> ZPoly {
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut c = content(&z);
    if z.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    z.into_iter().map(|x| x / &c).collect()
}

fn zpoly_to_q(a: &ZPoly) -> QPoly {
    QPoly::new(a.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to the same relation modulo `m = p^k`.
fn hensel_pair(f: &ZPoly, g: &Fp, h: &Fp, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = modp::xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let m = pb.pow(k);
    let lcf = f.last().unwrap().mod_floor(&m);
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    *big_h.last_mut().unwrap() = lcf;
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = zmod(&zsub(f, &zmul(&big_g, &big_h)), &m);
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ep = to_fp(&e, p);
        let (q, r) = modp::div_rem(&modp::mul(&s, &ep, p), h, p);
        let tau = modp::add(&modp::mul(&t, &ep, p), &modp::mul(&q, g, p), p);
        let sigma = r;
        big_g = zmod(&zadd_scaled(&big_g, &from_fp(&tau), &pj), &m);
        big_h = zmod(&zadd_scaled(&big_h, &from_fp(&sigma), &pj), &m);
        pj *= &pb;
    }
    (big_g, big_h)
}

/// Monic lifts `U_i ≡ u_i (mod p)` with `f ≡ lc(f)·Π U_i (mod p^k)`.
fn hensel_multi(f: &ZPoly, us: &[Fp], p: u64, k: u32) -> Vec<ZPoly> {
    let m = BigInt::from(p).pow(k);
    if us.len() == 1 {
        let l = f.last().unwrap().mod_floor(&m);
        let inv = l.modinv(&m).expect("leading coefficient invertible");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect(), &m)];
    }
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let rest = us[1..].iter().fold(vec![lc], |a, b| modp::mul(&a, b, p));
    let (g, h) = hensel_pair(f, &us[0], &rest, p, k);
    let mut out = vec![g];
    out.extend(hensel_multi(&h, &us[1..], p, k));
    out
}

fn combinations(m: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, s, &mut Vec::new(), &mut out);
    out
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Monic irreducible factors of a squarefree polynomial over Q.
pub fn factor_squarefree(g: &QPoly) -> Vec<QPoly> {
    if g.deg_i() <= 1 {
        return if g.deg_i() == 1 { vec![g.monic()] } else { Vec::new() };
    }
    let h = primitive_integer(g);
    let lc = h.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let hp = modp::monic(&to_fp(&h, p), p);
        if modp::gcd(&hp, &modp::derivative(&hp, p), p) != vec![1] {
            continue;
        }
        let fs = modp::factor_squarefree(&hp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, us) = best.expect("no good prime among the small primes");
    if us.len() == 1 {
        return vec![g.monic()];
    }
    let norm1: BigInt = h.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << (h.len() - 1)) * norm1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(&h, &us, p, k);
    let mut cur = h;
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), s) {
            let l = cur.last().unwrap().clone();
            let cand = subset.iter().fold(vec![l], |a, &i| zmod(&zmul(&a, &lifted[i]), &m));
            let cand = zsym(&cand, &m);
            let c = content(&cand);
            let cand: ZPoly = cand.iter().map(|x| x / &c).collect();
            let (q, r) = zpoly_to_q(&cur).div_rem(&zpoly_to_q(&cand));
            if r.is_zero() {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(zpoly_to_q(&cand).monic());
                cur = primitive_integer(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if cur.len() > 1 {
        out.push(zpoly_to_q(&cur).monic());
    }
    out
}

/// Complete factorization into monic irreducibles over Q, factors sorted by
/// degree and then coefficients.
pub fn factor_over_q(p: &QPoly) -> Factorization {
    assert!(!p.is_zero(), "factorization of the zero polynomial");
    let mut factors = Vec::new();
    for (g, m) in squarefree_decompose(p).expect("nonzero") {
        for h in factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg_i().cmp(&b.deg_i()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Factorization { unit: p.lc(), factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn examples() {
        let f = factor_over_q(&q(&[-1, 0, 0, 0, 1]));
        assert_eq!(f.factors, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1), (q(&[1, 0, 1]), 1)]);
        assert_eq!(factor_over_q(&q(&[1, 0, 1])).factors, vec![(q(&[1, 0, 1]), 1)]);
        let g = factor_over_q(&q(&[4, 0, 0, 0, 1]));
        assert_eq!(g.factors, vec![(q(&[2, -2, 1]), 1), (q(&[2, 2, 1]), 1)]);
    }

    #[test]
    fn non_monic_and_repeated() {
        // 6x^2 + x - 1 = (2x + 1)(3x - 1), squared, times 5
        let p = q(&[-1, 1, 6]).pow(2).scale(&crate::scalar::rat_int(5));
        let f = factor_over_q(&p);
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(g, m)| g.deg_i() == 1 && *m == 2));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let p = q(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_over_q(&p).factors, vec![(p, 1)]);
    }

    #[test]
    fn product_of_cyclotomics() {
        // x^6 - 1
        let p = q(&[-1, 0, 0, 0, 0, 0, 1]);
        let f = factor_over_q(&p);
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(), p);
    }
}
