//! Integer lattice bases: Hermite normal form, integer kernels, sublattice
//! membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{Mat, ZMat};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is upper triangular (in echelon sense) with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped,
/// so the output is the canonical basis of the row lattice.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, _) = hermite_with_transform(rows);
    h.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Hermite normal form together with the unimodular transform `U` such that
/// `U · rows = H` (zero rows of `H` kept at the bottom).
pub fn hermite_with_transform(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    if r == c {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut prow = 0;
    for c in 0..n {
        if prow == m {
            break;
        }
        // gcd-eliminate column c below prow
        loop {
            let nz: Vec<usize> = (prow..m).filter(|&r| !a[r][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| a[r][c].abs()).unwrap();
            a.swap(prow, best);
            u.swap(prow, best);
            let mut done = true;
            for r in prow + 1..m {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[prow][c]);
                sub_row(&mut a, r, prow, &q);
                sub_row(&mut u, r, prow, &q);
                if !a[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[prow][c].is_zero() {
            continue;
        }
        if a[prow][c].is_negative() {
            negate_row(&mut a, prow);
            negate_row(&mut u, prow);
        }
        for r in 0..prow {
            let q = a[r][c].div_floor(&a[prow][c]);
            if !q.is_zero() {
                sub_row(&mut a, r, prow, &q);
                sub_row(&mut u, r, prow, &q);
            }
        }
        prow += 1;
    }
    (a, u)
}

fn sub_row(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(a: &mut [Vec<BigInt>], r: usize) {
    for x in a[r].iter_mut() {
        *x = -&*x;
    }
}

/// Basis (in Hermite normal form) of `{x ∈ Zⁿ : M·x = 0}`.
pub fn integer_kernel(m: &ZMat) -> Vec<Vec<BigInt>> {
    let t = m.transpose().to_rows();
    let (h, u) = hermite_with_transform(&t);
    let ker: Vec<Vec<BigInt>> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect();
    hermite_rows(&ker)
}

/// Rank over the rationals.
pub fn rank(m: &ZMat) -> usize {
    hermite_rows(&m.to_rows()).len()
}

/// Coordinates of `v` in the basis `basis` (rows), if `v` lies in their
/// rational span.
pub fn rational_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    use crate::linalg::{solve_linear, LinearSolution};
    let a = Mat::from_cols(basis).to_rat();
    let b = Mat::from_cols(&[v.to_vec()]).to_rat();
    match solve_linear(&a, &b) {
        LinearSolution::Solved { particular, kernel } if kernel.is_empty() => {
            Some(particular.col(0))
        }
        _ => None,
    }
}

/// Integer coordinates of `v` in `basis`, if `v` lies in the lattice.
pub fn integer_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let q = rational_coordinates(basis, v)?;
    q.iter()
        .map(|x| {
            if x.is_integer() {
                Some(x.to_integer())
            } else {
                None
            }
        })
        .collect()
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

pub fn zmat_from_rows(rows: &[Vec<BigInt>]) -> ZMat {
    Mat::from_rows(rows.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_rows(&[v(&[2, 4, 4]), v(&[-6, 6, 12]), v(&[10, 4, 16])]);
        let b = hermite_rows(&[v(&[10, 4, 16]), v(&[2, 4, 4]), v(&[-4, 10, 16])]);
        // second set generates the same lattice (third row = second-set combination)
        let c = hermite_rows(&[a[0].clone(), a[1].clone(), a[2].clone(), v(&[2, 4, 4])]);
        assert_eq!(a, c);
        assert_eq!(a.len(), 3);
        assert!(b.len() == 3);
    }

    #[test]
    fn kernel_basis() {
        let m = ZMat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(m.mul_vec(x).iter().all(Zero::is_zero));
        }
        // saturated: [1,2,3]-orthogonal lattice has determinant sqrt(14) basis
        let g = Mat::from_rows(k.clone());
        let gram = g.mul(&g.transpose());
        assert_eq!(gram.det_int(), BigInt::from(14));
    }

    #[test]
    fn coordinates() {
        let basis = vec![v(&[2, 0]), v(&[1, 1])];
        assert_eq!(integer_coordinates(&basis, &v(&[3, 1])), Some(v(&[1, 1])));
        assert_eq!(integer_coordinates(&basis, &v(&[1, 0])), None);
    }
}
