use exactalg::factor::factor_over_q;
use exactalg::modp;
use exactalg::radical::split_square;
use exactalg::{hnf_reduce, is_hnf, rat, rat_int, sturm_count, Field, GaussRational, Matrix, QPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qpoly(cs: &[i64]) -> QPoly {
    QPoly::from_i64s(cs)
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|cs| qpoly(&cs))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6)
        .prop_map(|(a, b, c, d)| GaussRational::new(rat(a, b), rat(c, d)))
}

proptest! {
    #[test]
    fn gcd_is_multiplicative(p in nonzero_poly(2), q in small_poly(3), r in nonzero_poly(3)) {
        let lhs = (&p * &q).gcd(&(&p * &r));
        let rhs = (&p * &q.gcd(&r)).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(q in nonzero_poly(4), r in nonzero_poly(4)) {
        let g = q.gcd(&r);
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&q) && g.divides(&r));
    }

    #[test]
    fn hnf_is_canonical(
        diag in prop::collection::vec(nonzero_poly(2), 3),
        extra in prop::collection::vec(prop::collection::vec(small_poly(3), 3), 0..3),
        dup in 0usize..3,
    ) {
        let n = 3;
        // upper-triangular part keeps the generators full rank
        let mut cols: Vec<Vec<QPoly>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j { diag[j].clone() } else if i < j { qpoly(&[1, j as i64]) } else { QPoly::zero() }).collect())
            .collect();
        cols.extend(extra.iter().cloned());
        let h = hnf_reduce(&cols, n).unwrap();
        prop_assert!(is_hnf(&h));
        let hcols = h.transpose().to_rows();
        prop_assert_eq!(&hnf_reduce(&hcols, n).unwrap(), &h);
        let mut shuffled: Vec<Vec<QPoly>> = cols.iter().rev().cloned().collect();
        shuffled.push(cols[dup % cols.len()].clone());
        let sum: Vec<QPoly> = (0..n).map(|i| &cols[0][i] + &cols[1][i]).collect();
        shuffled.push(sum);
        prop_assert_eq!(&hnf_reduce(&shuffled, n).unwrap(), &h);
    }

    #[test]
    fn charpoly_of_block_diag_is_product(
        a in prop::collection::vec(-4i64..=4, 4),
        b in prop::collection::vec(-4i64..=4, 9),
    ) {
        let ma = Matrix::from_fn(2, 2, |i, j| rat_int(a[2 * i + j]));
        let mb = Matrix::from_fn(3, 3, |i, j| rat_int(b[3 * i + j]));
        let whole = QPoly::new(Matrix::block_diag(&[ma.clone(), mb.clone()]).charpoly_coeffs());
        let prod = &QPoly::new(ma.charpoly_coeffs()) * &QPoly::new(mb.charpoly_coeffs());
        prop_assert_eq!(whole, prod);
    }

    #[test]
    fn gauss_conj_and_norm(a in gauss(), b in gauss()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!(!a.norm().is_negative());
        prop_assert_eq!(a.norm().is_zero(), a.is_zero());
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!(a.clone() * a.conj(), GaussRational::real(a.norm()));
    }

    #[test]
    fn square_split(n in 1i64..200_000) {
        let (s, r) = split_square(&BigInt::from(n));
        prop_assert_eq!(&s * &s * &r, BigInt::from(n));
        let r = r.to_i64().unwrap();
        prop_assert!((2..=r).take_while(|k| k * k <= r).all(|k| r % (k * k) != 0));
    }
}

// (1+y)^deg · p((a + b y)/(1 + y)): positive roots in y are roots of p in (a, b)
fn mobius(p: &QPoly, a: &Rational, b: &Rational) -> QPoly {
    let n = p.degree().unwrap();
    let num = QPoly::new(vec![a.clone(), b.clone()]);
    let den = QPoly::new(vec![Rational::one(), Rational::one()]);
    let mut acc = QPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &(&num.pow(k as u32) * &den.pow((n - k) as u32)).scale(c);
    }
    acc
}

fn sign_variations(q: &QPoly) -> usize {
    let signs: Vec<bool> = q.coeffs().iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

// roots of a squarefree p in the open interval (a, b), by Descartes bisection
fn bisection_count(p: &QPoly, a: &Rational, b: &Rational, depth: usize) -> usize {
    assert!(depth < 200, "bisection did not separate the roots");
    match sign_variations(&mobius(p, a, b)) {
        0 => 0,
        1 => 1,
        _ => {
            let m = (a + b) / rat_int(2);
            let mid = usize::from(p.eval(&m).is_zero());
            bisection_count(p, a, &m, depth + 1) + mid + bisection_count(p, &m, b, depth + 1)
        }
    }
}

fn real_root_oracle(p: &QPoly) -> usize {
    let sf = p.div_rem(&p.gcd(&p.derivative())).0;
    if sf.degree() == Some(0) {
        return 0;
    }
    let bound = sf.coeffs().iter().map(|c| (c / sf.lc()).abs()).fold(Rational::zero(), |m, c| if c > m { c } else { m })
        + Rational::one();
    bisection_count(&sf, &-bound.clone(), &bound, 0)
}

#[test]
fn sturm_matches_bisection_on_random_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut cases = 0;
    while cases < 1000 {
        let deg = rng.gen_range(3..=4);
        let mut cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if cs[deg] == 0 {
            cs[deg] = 1;
        }
        let p = qpoly(&cs);
        assert_eq!(sturm_count(&p).unwrap(), real_root_oracle(&p), "{:?}", cs);
        cases += 1;
    }
}

#[test]
fn sturm_counts_repeated_roots_once() {
    // (x-1)^2 (x+2)^3 (x^2+1)
    let p = &(&qpoly(&[-1, 1]).pow(2) * &qpoly(&[2, 1]).pow(3)) * &qpoly(&[1, 0, 1]);
    assert_eq!(sturm_count(&p).unwrap(), 2);
    assert_eq!(real_root_oracle(&p), 2);
}

fn has_rational_root(g: &QPoly) -> bool {
    // integer primitive form, then the rational root theorem
    let l = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = g.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<i64> {
        let n = n.abs().to_i64().unwrap();
        (1..=n).filter(|d| n % d == 0).collect()
    };
    for pnum in divisors(&ints[0]) {
        for q in divisors(ints.last().unwrap()) {
            for s in [1, -1] {
                if g.eval(&rat(s * pnum, q)).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn reduce_mod(g: &QPoly, p: u64) -> Option<modp::Fp> {
    let l = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let pb = BigInt::from(p);
    let red: Vec<u64> = g
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer().mod_floor(&pb).to_u64().unwrap())
        .collect();
    if *red.last().unwrap() == 0 {
        return None;
    }
    let f = modp::monic(&modp::trim(red), p);
    let sq = modp::gcd(&f, &modp::derivative(&f, p), p);
    (modp::deg(&sq) == 0).then_some(f)
}

// proper degrees a factor could have, given one modular factorization
fn subset_sums(degs: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn modular_irreducibility_certificate(g: &QPoly, rng: &mut ChaCha8Rng) -> bool {
    let n = g.degree().unwrap();
    let mut possible = vec![true; n + 1];
    let primes = [101u64, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];
    for &p in &primes {
        if let Some(f) = reduce_mod(g, p) {
            let degs: Vec<usize> = modp::factor_squarefree(&f, p, rng).iter().map(|h| modp::deg(h) as usize).collect();
            let reach = subset_sums(&degs, n);
            for k in 0..=n {
                possible[k] &= reach[k];
            }
        }
    }
    (1..n).all(|k| !possible[k])
}

#[test]
fn factorization_round_trip_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut certified = 0;
    let mut checked = 0;
    for _ in 0..200 {
        let pieces = rng.gen_range(1..=3);
        let mut p = QPoly::constant(rat(rng.gen_range(1..=5), rng.gen_range(1..=3)));
        for _ in 0..pieces {
            let d = rng.gen_range(1..=3);
            let mut cs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-3..=3)).collect();
            if cs[d] == 0 {
                cs[d] = 1;
            }
            p = &p * &qpoly(&cs).pow(rng.gen_range(1..=2));
        }
        let fz = factor_over_q(&p);
        assert_eq!(fz.expand(), p);
        for (g, m) in &fz.factors {
            assert!(*m >= 1 && g.is_monic());
            let d = g.degree().unwrap();
            assert!((1..=3).contains(&d), "irreducible factor of degree {d} from pieces of degree at most 3");
            if d >= 2 {
                assert!(!has_rational_root(g), "reducible factor {:?}", g);
                checked += 1;
                if modular_irreducibility_certificate(g, &mut rng) {
                    certified += 1;
                }
            }
        }
        let gs: Vec<&QPoly> = fz.factors.iter().map(|(g, _)| g).collect();
        for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                assert_ne!(gs[i], gs[j]);
            }
        }
    }
    assert_eq!(certified, checked, "modular degree sets left a proper factor degree open");
}

#[test]
fn factor_x4_plus_1_is_irreducible_despite_splitting_mod_every_prime() {
    let p = qpoly(&[1, 0, 0, 0, 1]);
    let fz = factor_over_q(&p);
    assert_eq!(fz.factors, vec![(p, 1)]);
}
