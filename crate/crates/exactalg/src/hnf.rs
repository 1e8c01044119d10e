//! Column Hermite normal form for full-rank `F[x]`-lattices in `F[x]^n`.
//!
//! The normal form is upper triangular with monic diagonal entries, and
//! every entry to the right of a diagonal entry has strictly smaller degree
//! than that diagonal entry. Two generating sets of the same module reduce to
//! the identical matrix.

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::scalar::Field;
use crate::AlgError;

type Col<F> = Vec<UniPoly<F>>;

fn axpy<F: Field>(target: &mut Col<F>, q: &UniPoly<F>, src: &Col<F>, rows: usize) {
    for i in 0..rows {
        if !src[i].is_zero() {
            target[i] = &target[i] - &(q * &src[i]);
        }
    }
}

/// Reduces generating columns of a rank-`n` submodule of `F[x]^n`.
pub fn hnf_reduce<F: Field>(columns: &[Col<F>], n: usize) -> Result<Matrix<UniPoly<F>>, AlgError> {
    assert!(columns.iter().all(|c| c.len() == n), "generator of the wrong length");
    let mut pool: Vec<Col<F>> = columns.iter().filter(|c| c.iter().any(|e| !e.is_zero())).cloned().collect();
    let mut basis: Vec<Option<Col<F>>> = vec![None; n];
    for r in (0..n).rev() {
        // Euclid on row r across the pool
        loop {
            let nz: Vec<usize> = (0..pool.len()).filter(|&k| !pool[k][r].is_zero()).collect();
            if nz.is_empty() {
                return Err(AlgError::RankDeficient { rank_missing_at: r });
            }
            if nz.len() == 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&k| pool[k][r].deg_i()).unwrap();
            let piv = pool[p].clone();
            for &k in &nz {
                if k == p {
                    continue;
                }
                let (q, _) = pool[k][r].div_rem(&piv[r]);
                axpy(&mut pool[k], &q, &piv, r + 1);
            }
        }
        let k = (0..pool.len()).find(|&k| !pool[k][r].is_zero()).unwrap();
        let mut col = pool.swap_remove(k);
        let inv = col[r].lc().inv();
        for e in col.iter_mut().take(r + 1) {
            *e = e.scale(&inv);
        }
        basis[r] = Some(col);
        pool.retain(|c| c[..r].iter().any(|e| !e.is_zero()));
    }
    let mut cols: Vec<Col<F>> = basis.into_iter().map(Option::unwrap).collect();
    for r in (0..n).rev() {
        for c in r + 1..n {
            let (q, _) = cols[c][r].div_rem(&cols[r][r]);
            if !q.is_zero() {
                let src = cols[r].clone();
                axpy(&mut cols[c], &q, &src, r + 1);
            }
        }
    }
    Ok(Matrix::from_cols(&cols))
}

/// True when the matrix is in the canonical form produced by [`hnf_reduce`].
pub fn is_hnf<F: Field>(m: &Matrix<UniPoly<F>>) -> bool {
    let n = m.rows();
    if !m.is_square() {
        return false;
    }
    for i in 0..n {
        if !m[(i, i)].is_monic() {
            return false;
        }
        for j in 0..i {
            if !m[(i, j)].is_zero() {
                return false;
            }
        }
        for j in i + 1..n {
            if m[(i, j)].deg_i() >= m[(i, i)].deg_i() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRational;
    use crate::{GPoly, QPoly};
    use num_traits::One;

    fn g(a: i64, b: i64) -> GaussRational {
        GaussRational::from_ints(a, b)
    }

    #[test]
    fn module_reduction_example() {
        let x_minus_i = GPoly::new(vec![g(0, -1), g(1, 0)]);
        let x2p1 = GPoly::new(vec![g(1, 0), g(0, 0), g(1, 0)]);
        let cols = vec![
            vec![x_minus_i.clone(), GPoly::zero()],
            vec![x2p1, GPoly::zero()],
            vec![GPoly::zero(), GPoly::one()],
        ];
        let h = hnf_reduce(&cols, 2).unwrap();
        assert_eq!(h, Matrix::diagonal(&[x_minus_i, GPoly::one()]));
    }

    #[test]
    fn units_absorbed() {
        let two = QPoly::from_i64s(&[2]);
        let cols = vec![vec![two.clone(), QPoly::zero()], vec![QPoly::zero(), two]];
        assert_eq!(hnf_reduce(&cols, 2).unwrap(), Matrix::identity(2));
        let std = vec![vec![QPoly::one(), QPoly::zero()], vec![QPoly::zero(), QPoly::one()]];
        assert_eq!(hnf_reduce(&std, 2).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn rank_deficiency() {
        let x = QPoly::var();
        let cols = vec![vec![x.clone(), x.clone()], vec![QPoly::one(), QPoly::one()]];
        assert!(matches!(hnf_reduce(&cols, 2), Err(AlgError::RankDeficient { .. })));
    }

    #[test]
    fn off_diagonal_reduced() {
        let x = QPoly::var();
        // columns (x, 0), (0, x), (-1, 1), (x^2+1, -1): the ideal (x, t-1) on t^2 = x^2+1
        let cols = vec![
            vec![x.clone(), QPoly::zero()],
            vec![QPoly::zero(), x.clone()],
            vec![QPoly::from_i64s(&[-1]), QPoly::one()],
            vec![QPoly::from_i64s(&[1, 0, 1]), QPoly::from_i64s(&[-1])],
        ];
        let h = hnf_reduce(&cols, 2).unwrap();
        assert_eq!(h, Matrix::from_rows(vec![vec![x, QPoly::from_i64s(&[-1])], vec![QPoly::zero(), QPoly::one()]]));
        assert!(is_hnf(&h));
    }
}
