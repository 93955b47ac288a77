//! Vinberg's algorithm for integral lattices of signature (1, n).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coxeter::{finite_volume_check, Bond, CoxeterDiagram, Node};
use crate::error::{Error, Result};
use crate::fixed_points::ZQuadraticLattice;
use crate::intmat::is_primitive;
use crate::matrix::{bilinear_form, Mat, ZMat};
use crate::shortvec::short_vectors_par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    #[serde(with = "crate::scalars::int_vec")]
    pub coords: Vec<BigInt>,
    pub norm: i64,
    /// `(r, v0)² / (−q(r))`
    #[serde(serialize_with = "ser_rat")]
    pub height: BigRational,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    ExpectedCount(usize),
    FiniteVolume,
    /// Process every root of height at most this value.
    HeightBound(u64),
}

impl std::str::FromStr for Stop {
    type Err = Error;

    fn from_str(s: &str) -> Result<Stop> {
        let bad = || Error::UnknownName(format!("stop criterion {s:?}"));
        if s == "volume" {
            return Ok(Stop::FiniteVolume);
        }
        if let Some(k) = s.strip_prefix("expected:") {
            return k.parse().map(Stop::ExpectedCount).map_err(|_| bad());
        }
        if let Some(h) = s.strip_prefix("height:") {
            return h.parse().map(Stop::HeightBound).map_err(|_| bad());
        }
        Err(bad())
    }
}

#[derive(Clone, Debug)]
pub struct VinbergOptions {
    pub stop: Stop,
    /// Largest height bound tried before giving up.
    pub ceiling: u64,
    pub threads: usize,
    pub v0: Option<Vec<BigInt>>,
    pub allowed_norms: Option<Vec<i64>>,
}

impl Default for VinbergOptions {
    fn default() -> Self {
        VinbergOptions {
            stop: Stop::FiniteVolume,
            ceiling: 256,
            threads: 1,
            v0: None,
            allowed_norms: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VinbergRun {
    #[serde(with = "crate::scalars::int_vec")]
    pub v0: Vec<BigInt>,
    /// Generic direction in `v0^⊥` breaking ties among equal heights.
    #[serde(with = "crate::scalars::int_vec")]
    pub w: Vec<BigInt>,
    pub allowed_norms: Vec<i64>,
    pub roots: Vec<Root>,
    /// Largest height bound whose batch was enumerated.
    pub searched_height: u64,
    pub candidates_seen: usize,
}

/// Exponent of the discriminant group: lcm of the denominators of `G⁻¹`.
pub fn discriminant_exponent(gram: &ZMat) -> Result<BigInt> {
    let inv = gram.to_rat().inverse().ok_or(Error::NotFullRank)?;
    Ok(inv
        .entries()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
}

/// Negative divisors of `2·exp(L*/L)`, in decreasing order (−1, −2, ...).
pub fn allowed_norms(l: &ZQuadraticLattice) -> Result<Vec<i64>> {
    let e: BigInt = discriminant_exponent(&l.gram)? * 2;
    let e = e.to_i64().ok_or(Error::NotFullRank)?;
    Ok((1..=e).filter(|d| e % d == 0).map(|d| -d).collect())
}

pub fn is_crystallographic(l: &ZQuadraticLattice, r: &[BigInt]) -> bool {
    let q = l.q(r);
    if q.is_zero() {
        return false;
    }
    l.gram
        .mul_vec(r)
        .iter()
        .all(|x| (x * 2i32).is_multiple_of(&q))
}

/// The first basis vector of positive norm, else the smallest positive norm
/// vector of the box `[−2, 2]ⁿ` (ties broken lexicographically).
pub fn find_v0(l: &ZQuadraticLattice) -> Result<Vec<BigInt>> {
    let n = l.rank();
    for i in 0..n {
        if l.gram.get(i, i).is_positive() {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            return Ok(v);
        }
    }
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut x = vec![-2i64; n];
    loop {
        let v: Vec<BigInt> = x.iter().map(|&t| BigInt::from(t)).collect();
        let q = l.q(&v);
        if q.is_positive() && best.as_ref().is_none_or(|(bq, bv)| (&q, &v) < (bq, bv)) {
            best = Some((q, v));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best
                    .map(|b| b.1)
                    .ok_or_else(|| Error::NotTimelike("no vector in the search box".into()));
            }
            x[k] += 1;
            if x[k] <= 2 {
                break;
            }
            x[k] = -2;
            k += 1;
        }
    }
}

/// Positive definite majorant `−q(v0)·G + 2(Gv0)(Gv0)ᵀ`.
pub fn majorant(l: &ZQuadraticLattice, v0: &[BigInt]) -> ZMat {
    let q0 = l.q(v0);
    let g = l.gram.mul_vec(v0);
    Mat::from_fn(l.rank(), l.rank(), |i, j| {
        -&q0 * l.gram.get(i, j) + &g[i] * &g[j] * 2i32
    })
}

/// All primitive crystallographic roots with norm in `allowed` and height at
/// most `height_bound`, normalized so that `(r, v0) ≤ 0`. Roots orthogonal to
/// `v0` appear once, with an arbitrary but fixed sign.
pub fn enumerate_roots(
    l: &ZQuadraticLattice,
    allowed: &[i64],
    height_bound: &BigRational,
    v0: &[BigInt],
    threads: usize,
) -> Result<Vec<Root>> {
    let q0 = l.q(v0);
    if !q0.is_positive() {
        return Err(Error::NotTimelike(q0.to_string()));
    }
    if allowed.is_empty() || allowed.iter().any(|&k| k >= 0) {
        return Err(Error::Data(
            "allowed norms must be negative and nonempty".into(),
        ));
    }
    let kmax = BigInt::from(allowed.iter().map(|k| k.abs()).max().unwrap());
    let bound = BigRational::from_integer(kmax)
        * (BigRational::from_integer(q0.clone()) + height_bound * BigInt::from(2));
    let p = majorant(l, v0);
    let lv0 = l.gram.mul_vec(v0);
    let mut roots = Vec::new();
    for x in short_vectors_par(&p, &bound.floor().to_integer(), threads)? {
        let q = l.q(&x);
        let Some(k) = q.to_i64() else { continue };
        if !allowed.contains(&k) {
            continue;
        }
        let a: BigInt = x.iter().zip(&lv0).map(|(s, t)| s * t).sum();
        if a.is_positive() || (a.is_zero() && !first_nonzero_positive(&x)) {
            continue;
        }
        let height = BigRational::new(&a * &a, BigInt::from(-k));
        if &height > height_bound || !is_primitive(&x) || !is_crystallographic(l, &x) {
            continue;
        }
        roots.push(Root {
            coords: x,
            norm: k,
            height,
        });
    }
    Ok(roots)
}

fn first_nonzero_positive(x: &[BigInt]) -> bool {
    x.iter()
        .find(|t| !t.is_zero())
        .is_some_and(|t| t.is_positive())
}

/// `w = q(v0)·u − (u, v0)·v0` for `u = (1, M, M², ...)`, with the smallest
/// `M ≥ 7` making `(r, w) ≠ 0` for every given root.
fn generic_direction(l: &ZQuadraticLattice, v0: &[BigInt], height_zero: &[Root]) -> Vec<BigInt> {
    let q0 = l.q(v0);
    let mut m = BigInt::from(7);
    loop {
        let mut u = Vec::with_capacity(l.rank());
        let mut p = BigInt::one();
        for _ in 0..l.rank() {
            u.push(p.clone());
            p *= &m;
        }
        let uv = l.inner(&u, v0);
        let w: Vec<BigInt> = u.iter().zip(v0).map(|(a, b)| &q0 * a - &uv * b).collect();
        if height_zero
            .iter()
            .all(|r| !l.inner(&r.coords, &w).is_zero())
        {
            return w;
        }
        m += 1;
    }
}

struct Keyed {
    key: [BigRational; 3],
    root: Root,
}

fn order(a: &Keyed, b: &Keyed) -> Ordering {
    a.key
        .cmp(&b.key)
        .then_with(|| a.root.coords.cmp(&b.root.coords))
}

fn keyed(l: &ZQuadraticLattice, v0: &[BigInt], w: &[BigInt], mut root: Root) -> Keyed {
    let mut a = l.inner(&root.coords, v0);
    let mut b = l.inner(&root.coords, w);
    if a.is_zero() && b.is_positive() {
        root.coords.iter_mut().for_each(|x| *x = -&*x);
        b = -b;
        a = -a;
    }
    let k = BigInt::from(-root.norm);
    let key = [
        BigRational::new(&a * &a, k.clone()),
        BigRational::new(&a * &b * 2i32, k.clone()),
        BigRational::new(&b * &b, k),
    ];
    Keyed { key, root }
}

/// Runs the algorithm until `opts.stop` is met, enlarging the height bound
/// by doubling.
pub fn vinberg(l: &ZQuadraticLattice, opts: &VinbergOptions) -> Result<VinbergRun> {
    let (pos, _) = l.signature();
    if pos != 1 {
        return Err(Error::Data(format!(
            "expected signature (1, n), found {:?}",
            l.signature()
        )));
    }
    let v0 = match &opts.v0 {
        Some(v) => v.clone(),
        None => find_v0(l)?,
    };
    let allowed = match &opts.allowed_norms {
        Some(a) => a.clone(),
        None => allowed_norms(l)?,
    };
    let n = l.rank() - 1;
    let mut accepted: Vec<Root> = Vec::new();
    let mut w: Option<Vec<BigInt>> = None;
    let mut done_height = BigRational::from_integer(BigInt::from(-1));
    let mut h = 1u64;
    let mut seen;
    loop {
        let batch_bound = match opts.stop {
            Stop::HeightBound(hb) => h.min(hb),
            _ => h,
        };
        let hb = BigRational::from_integer(BigInt::from(batch_bound));
        let batch = enumerate_roots(l, &allowed, &hb, &v0, opts.threads)?;
        seen = batch.len();
        let w = w.get_or_insert_with(|| {
            let zero: Vec<Root> = batch
                .iter()
                .filter(|r| r.height.is_zero())
                .cloned()
                .collect();
            generic_direction(l, &v0, &zero)
        });
        let mut fresh: Vec<Keyed> = batch
            .into_iter()
            .filter(|r| r.height > done_height)
            .map(|r| keyed(l, &v0, w, r))
            .collect();
        fresh.sort_by(order);
        for cand in fresh {
            let r = cand.root;
            if accepted
                .iter()
                .all(|s| !l.inner(&r.coords, &s.coords).is_negative())
            {
                accepted.push(r);
                let met = match opts.stop {
                    Stop::ExpectedCount(k) => accepted.len() >= k,
                    Stop::FiniteVolume => {
                        accepted.len() > n
                            && finite_volume_check(&coxeter_diagram(l, &accepted)?, n)
                    }
                    Stop::HeightBound(_) => false,
                };
                if met {
                    return Ok(VinbergRun {
                        v0,
                        w: w.clone(),
                        allowed_norms: allowed,
                        roots: accepted,
                        searched_height: batch_bound,
                        candidates_seen: seen,
                    });
                }
            }
        }
        done_height = hb;
        if let Stop::HeightBound(limit) = opts.stop {
            if batch_bound >= limit {
                return Ok(VinbergRun {
                    v0,
                    w: w.clone(),
                    allowed_norms: allowed,
                    roots: accepted,
                    searched_height: batch_bound,
                    candidates_seen: seen,
                });
            }
        }
        if h >= opts.ceiling {
            return Err(Error::NonTermination {
                ceiling: opts.ceiling.to_string(),
                diagnostics: format!("{} roots accepted from {} candidates", accepted.len(), seen),
            });
        }
        h = (h * 2).min(opts.ceiling);
    }
}

pub fn fundamental_roots(l: &ZQuadraticLattice, stop: Stop) -> Result<Vec<Root>> {
    let opts = VinbergOptions {
        stop,
        ..VinbergOptions::default()
    };
    Ok(vinberg(l, &opts)?.roots)
}

/// `c = (r_i, r_j)² / (q(r_i)·q(r_j))`
pub fn c_value(l: &ZQuadraticLattice, a: &[BigInt], b: &[BigInt]) -> BigRational {
    let ab = l.inner(a, b);
    BigRational::new(&ab * &ab, l.q(a) * l.q(b))
}

/// Diagram of an ordered root list; nodes are labelled `r1, r2, ...`.
pub fn coxeter_diagram(l: &ZQuadraticLattice, roots: &[Root]) -> Result<CoxeterDiagram> {
    let nodes = roots
        .iter()
        .enumerate()
        .map(|(i, r)| Node {
            label: format!("r{}", i + 1),
            norm: r.norm,
        })
        .collect();
    let mut d = CoxeterDiagram::new(nodes);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let c = c_value(l, &roots[i].coords, &roots[j].coords);
            let b = Bond::from_c(&c)?;
            if b != Bond::None {
                d.set_bond(i, j, b);
            }
        }
    }
    Ok(d)
}

/// Diagram of plain coordinate vectors (for externally supplied roots).
pub fn diagram_of_vectors(
    l: &ZQuadraticLattice,
    vectors: &[Vec<BigInt>],
) -> Result<CoxeterDiagram> {
    let roots: Vec<Root> = vectors
        .iter()
        .map(|v| {
            let q = l
                .q(v)
                .to_i64()
                .ok_or_else(|| Error::Data("root norm overflow".into()))?;
            Ok(Root {
                coords: v.clone(),
                norm: q,
                height: BigRational::zero(),
            })
        })
        .collect::<Result<_>>()?;
    coxeter_diagram(l, &roots)
}

/// `2(x, r)/q(r)·r` subtracted from `x`.
pub fn reflect(l: &ZQuadraticLattice, r: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
    let q = l.q(r);
    let f = BigRational::new(l.inner(x, r) * 2i32, q);
    assert!(f.is_integer(), "reflection does not preserve the lattice");
    let f = f.to_integer();
    x.iter().zip(r).map(|(a, b)| a - &f * b).collect()
}

pub fn inner(l: &ZQuadraticLattice, a: &[BigInt], b: &[BigInt]) -> BigInt {
    bilinear_form(&l.gram, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> ZQuadraticLattice {
        ZQuadraticLattice::new(ZMat::from_i64(rows))
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&t| BigInt::from(t)).collect()
    }

    #[test]
    fn toy_rank_two() {
        let l = lat(&[&[1, 0], &[0, -2]]);
        assert_eq!(allowed_norms(&l).unwrap(), vec![-1, -2, -4]);
        let opts = VinbergOptions {
            stop: Stop::HeightBound(4),
            ..Default::default()
        };
        let run = vinberg(&l, &opts).unwrap();
        let coords: Vec<Vec<BigInt>> = run.roots.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![v(&[0, 1]), v(&[-1, -1])]);
        let d = coxeter_diagram(&l, &run.roots).unwrap();
        assert_eq!(d.bond(0, 1), Bond::Ultraparallel);
    }

    #[test]
    fn stop_parsing() {
        assert_eq!("volume".parse::<Stop>().unwrap(), Stop::FiniteVolume);
        assert_eq!(
            "expected:7".parse::<Stop>().unwrap(),
            Stop::ExpectedCount(7)
        );
        assert_eq!("height:3".parse::<Stop>().unwrap(), Stop::HeightBound(3));
        assert!("sometimes".parse::<Stop>().is_err());
    }

    #[test]
    fn spacelike_v0_rejected() {
        let l = lat(&[&[1, 0], &[0, -2]]);
        assert!(enumerate_roots(&l, &[-2], &BigRational::one(), &v(&[0, 1]), 1).is_err());
    }
}
