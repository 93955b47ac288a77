//! Fincke–Pohst enumeration of short vectors of a positive definite integral
//! form, in exact rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::ZMat;

/// Completed-square decomposition `Q(x) = Σ d_i (x_i + Σ_{j>i} m_ij x_j)²`.
#[derive(Clone, Debug)]
struct Decomposition {
    d: Vec<BigRational>,
    m: Vec<Vec<BigRational>>,
}

fn decompose(q: &ZMat) -> Result<Decomposition> {
    let n = q.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| BigRational::from_integer(q.get(r, c).clone()))
                .collect()
        })
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        if !a[i][i].is_positive() {
            return Err(Error::Indefinite);
        }
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            m[i][j] = &a[i][j] / &a[i][i];
        }
        for j in i + 1..n {
            for k in j..n {
                let v = &a[j][k] - &m[i][j] * &a[i][k];
                a[j][k] = v.clone();
                a[k][j] = v;
            }
        }
    }
    Ok(Decomposition { d, m })
}

/// All `x ∈ Zⁿ` (including `0`) with `xᵀ·Q·x ≤ bound`, in a fixed
/// deterministic order.
pub fn short_vectors(q: &ZMat, bound: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    short_vectors_par(q, bound, 1)
}

/// As [`short_vectors`], splitting the outermost coordinate across `threads`
/// worker threads. The output order does not depend on `threads`.
pub fn short_vectors_par(q: &ZMat, bound: &BigInt, threads: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = q.rows();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    let dec = decompose(q)?;
    if bound.is_negative() {
        return Ok(Vec::new());
    }
    let total = BigRational::from_integer(bound.clone());
    let top = n - 1;
    let tops = coordinate_range(&BigRational::zero(), &(&total / &dec.d[top]));
    let run = |vals: &[BigInt]| -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        let mut x = vec![BigInt::zero(); n];
        for v in vals {
            let diff = BigRational::from_integer(v.clone());
            let rest = &total - &dec.d[top] * &diff * &diff;
            if rest.is_negative() {
                continue;
            }
            x[top] = v.clone();
            if top == 0 {
                out.push(x.clone());
            } else {
                descend(&dec, top - 1, rest, &mut x, &mut out);
            }
        }
        out
    };
    let threads = threads.max(1).min(tops.len().max(1));
    if threads == 1 {
        return Ok(run(&tops));
    }
    let chunk = tops.len().div_ceil(threads);
    let parts: Vec<Vec<Vec<BigInt>>> = std::thread::scope(|s| {
        let handles: Vec<_> = tops.chunks(chunk).map(|c| s.spawn(|| run(c))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    Ok(parts.into_iter().flatten().collect())
}

fn descend(
    dec: &Decomposition,
    i: usize,
    budget: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &dec.m[i][j] * BigRational::from_integer(x[j].clone());
        }
    }
    for v in coordinate_range(&center, &(&budget / &dec.d[i])) {
        let diff = BigRational::from_integer(v.clone()) - &center;
        let rest = &budget - &dec.d[i] * &diff * &diff;
        if rest.is_negative() {
            continue;
        }
        x[i] = v;
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(dec, i - 1, rest, x, out);
        }
    }
    x[i] = BigInt::zero();
}

/// Integers `v` with `(v - c)² ≤ s`, possibly with a few extra candidates at
/// the ends that the caller filters exactly.
fn coordinate_range(c: &BigRational, s: &BigRational) -> Vec<BigInt> {
    if s.is_negative() {
        return Vec::new();
    }
    let r: BigInt = s.floor().to_integer().sqrt() + 1;
    let lo: BigInt = c.floor().to_integer() - &r;
    let hi: BigInt = c.ceil().to_integer() + &r;
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        let diff = BigRational::from_integer(v.clone()) - c;
        if &(&diff * &diff) <= s {
            out.push(v.clone());
        }
        v += 1;
    }
    out
}

/// Vectors with `xᵀQx` exactly equal to `target`.
pub fn vectors_of_norm(q: &ZMat, target: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let all = short_vectors(q, target)?;
    Ok(all
        .into_iter()
        .filter(|x| &crate::matrix::bilinear_form(q, x, x) == target)
        .collect())
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
