use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use octica::coxeter::{classify_subdiagram, SubdiagramType};
use octica::data::reference_data;
use octica::fixed_points::ZQuadraticLattice;
use octica::lattices::symmetric_signature;
use octica::matrix::{Mat, ZMat};
use octica::vinberg::{
    allowed_norms, coxeter_diagram, enumerate_roots, find_v0, vinberg, Stop, VinbergOptions,
};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Every vector of `[-radius, radius]^n` that is a primitive
/// crystallographic root of an allowed norm, oriented against `v0`, with
/// `(r, v0)² ≤ h·(−q(r))`.
fn brute_force(
    gram: &[Vec<i64>],
    allowed: &[i64],
    h: i64,
    v0: &[i64],
    radius: i64,
) -> BTreeSet<Vec<i64>> {
    let n = gram.len();
    let mut out = BTreeSet::new();
    let total = (2 * radius + 1).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let d = c % (2 * radius + 1);
                c /= 2 * radius + 1;
                d - radius
            })
            .collect();
        let gx: Vec<i64> = gram
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        let q: i64 = gx.iter().zip(&x).map(|(a, b)| a * b).sum();
        if !allowed.contains(&q) {
            continue;
        }
        let a: i64 = gx.iter().zip(v0).map(|(s, t)| s * t).sum();
        let first = x.iter().copied().find(|&t| t != 0).unwrap_or(0);
        if a > 0 || (a == 0 && first < 0) || a * a > -h * q {
            continue;
        }
        if x.iter().fold(0, |g, &t| gcd(g, t)) != 1 || gx.iter().any(|t| (2 * t) % q != 0) {
            continue;
        }
        out.insert(x);
    }
    out
}

fn small(m: &ZMat) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

fn check_against_box(l: &ZQuadraticLattice, h: i64, radius: i64) -> usize {
    let v0 = find_v0(l).unwrap();
    let allowed = allowed_norms(l).unwrap();
    let fast: BTreeSet<Vec<i64>> = enumerate_roots(
        l,
        &allowed,
        &BigRational::from_integer(BigInt::from(h)),
        &v0,
        2,
    )
    .unwrap()
    .iter()
    .map(|r| r.coords.iter().map(|x| x.to_i64().unwrap()).collect())
    .collect();
    let v0s: Vec<i64> = v0.iter().map(|x| x.to_i64().unwrap()).collect();
    let slow = brute_force(&small(&l.gram), &allowed, h, &v0s, radius);
    let outside: Vec<_> = fast
        .iter()
        .filter(|x| x.iter().any(|t| t.abs() > radius))
        .collect();
    assert!(
        outside.is_empty(),
        "roots outside the oracle box: {outside:?} (gram {:?}, h {h}, v0 {v0s:?})",
        small(&l.gram)
    );
    assert_eq!(fast, slow);
    fast.len()
}

#[test]
fn enumeration_matches_box_on_fixed_lattices() {
    let d = reference_data().data;
    for i in [0usize, 1, 4] {
        let n = check_against_box(&d.fixed_lattice(i), 1, 3);
        assert!(n > 0);
    }
}

#[test]
fn enumeration_matches_box_on_small_lattices() {
    let cases: [&[&[i64]]; 3] = [
        &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
        &[&[2, 0, 0], &[0, -2, 1], &[0, 1, -2]],
        &[&[0, 2, 0, 0], &[2, 0, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -6]],
    ];
    for g in cases {
        let l = ZQuadraticLattice::new(ZMat::from_i64(g));
        for h in [1, 3, 6] {
            check_against_box(&l, h, 14);
        }
    }
}

/// Negative definite on a subset iff elliptic; negative semidefinite with one
/// null direction per component iff parabolic.
#[test]
fn subdiagram_catalog_agrees_with_root_grams() {
    let d = reference_data().data;
    let mut seen = [0usize; 3];
    for i in 0..5 {
        let li = d.fixed_lattice(i);
        let run = vinberg(&li, &d.vinberg_options(i, 1)).unwrap();
        let dia = coxeter_diagram(&li, &run.roots).unwrap();
        let n = run.roots.len();
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            let gram: Mat<BigRational> = Mat::from_fn(subset.len(), subset.len(), |a, b| {
                BigRational::from_integer(
                    li.inner(&run.roots[subset[a]].coords, &run.roots[subset[b]].coords),
                )
            });
            let sig = symmetric_signature(&gram);
            let comps = dia.components(&subset).len();
            let definite = sig.positive == 0 && sig.null == 0;
            let affine = sig.positive == 0
                && sig.null == comps
                && each_component_degenerate(&li, &run.roots, &dia, &subset);
            match classify_subdiagram(&dia, &subset) {
                SubdiagramType::Elliptic { rank, .. } => {
                    assert!(definite, "L{i} {subset:?} classified elliptic");
                    assert_eq!(rank, subset.len());
                    seen[0] += 1;
                }
                SubdiagramType::Parabolic { rank, .. } => {
                    assert!(affine, "L{i} {subset:?} classified parabolic");
                    assert_eq!(rank, subset.len() - comps);
                    seen[1] += 1;
                }
                SubdiagramType::Other => {
                    assert!(!definite && !affine, "L{i} {subset:?} left unclassified");
                    seen[2] += 1;
                }
            }
        }
    }
    assert!(seen.iter().all(|&k| k > 0));
}

fn each_component_degenerate(
    li: &ZQuadraticLattice,
    roots: &[octica::vinberg::Root],
    dia: &octica::coxeter::CoxeterDiagram,
    subset: &[usize],
) -> bool {
    dia.components(subset).iter().all(|c| {
        let g: Mat<BigRational> = Mat::from_fn(c.len(), c.len(), |a, b| {
            BigRational::from_integer(li.inner(&roots[c[a]].coords, &roots[c[b]].coords))
        });
        let s = symmetric_signature(&g);
        s.positive == 0 && s.null == 1
    })
}

#[test]
fn height_bound_stop_is_monotone() {
    let d = reference_data().data;
    let l0 = d.fixed_lattice(0);
    let opts = |h| VinbergOptions {
        stop: Stop::HeightBound(h),
        ..d.vinberg_options(0, 1)
    };
    let a = vinberg(&l0, &opts(2)).unwrap().roots;
    let b = vinberg(&l0, &opts(8)).unwrap().roots;
    assert!(b.starts_with(&a));
}
