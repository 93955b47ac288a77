//! Stabilizers of the real hyperbolic subspaces `Fix(χ)`: the unit `β`,
//! type I / type II elements, the type-II solver over `Q(i, √2)` and the
//! discriminant-wall test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coxeter::diagram_symmetries;
use crate::data::ReferenceData;
use crate::error::{Error, Result};
use crate::fixed_points::{fixed_basis, index_in_fix};
use crate::lattices::{check_isometry, scale_anti, AntiIsometry, HermitianGaussLattice, Isometry};
use crate::linalg::{ext_solve_linear, LinearSolution};
use crate::matrix::{GMat, Mat};
use crate::scalars::{ExtScalar, GaussInt, GaussRat};
use crate::vinberg::{coxeter_diagram, vinberg, Root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabType {
    I,
    II,
}

impl fmt::Display for StabType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabType::I => "I",
            StabType::II => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabElement {
    pub matrix: GMat,
    pub beta: GaussInt,
    pub kind: StabType,
}

/// Finds the unit `β` with `χ(A b) = β·A b` on a basis of `Fix(χ)` and
/// types `A` accordingly.
pub fn classify_stab_element(chi: &AntiIsometry, a: &Isometry) -> Result<StabElement> {
    let mut beta: Option<GaussInt> = None;
    for (k, b) in fixed_basis(chi).iter().enumerate() {
        let ab = a.apply(b);
        let image = chi.apply(&ab);
        let Some(t) = ab.iter().position(|z| !z.is_zero()) else {
            return Err(Error::NotStabilizing(format!("A kills basis vector {k}")));
        };
        let candidate = image[t]
            .div_exact(&ab[t])
            .filter(|u| u.is_unit())
            .ok_or_else(|| Error::NotStabilizing(format!("no unit β on basis vector {k}")))?;
        if ab.iter().map(|z| &candidate * z).collect::<Vec<_>>() != image {
            return Err(Error::NotStabilizing(format!(
                "χ(Ab) is not a multiple of Ab for basis vector {k}"
            )));
        }
        match &beta {
            None => beta = Some(candidate),
            Some(b0) if *b0 != candidate => {
                return Err(Error::NotStabilizing(format!(
                    "β changes from {b0} to {candidate}"
                )));
            }
            _ => {}
        }
    }
    let beta = beta.ok_or_else(|| Error::NotStabilizing("empty fixed lattice".into()))?;
    let kind = if beta.is_real() {
        StabType::I
    } else {
        StabType::II
    };
    Ok(StabElement {
        matrix: a.matrix.clone(),
        beta,
        kind,
    })
}

/// `1/(1−i) = (1+i)/2`
fn inv_one_minus_i() -> ExtScalar {
    ExtScalar::from_rat(GaussRat::new(GaussInt::new(1, 1), BigInt::from(2)))
}

fn ext(z: &GaussInt) -> ExtScalar {
    ExtScalar::from_gauss(z.clone())
}

/// `μ_j = sqrt(2·q(r_j) / q(r_{s(j)}))`
pub fn scale_factors(
    l: &HermitianGaussLattice,
    roots: &[Vec<GaussInt>],
    perm: &[usize],
) -> Result<Vec<ExtScalar>> {
    check_pairing(roots.len(), perm)?;
    (0..roots.len())
        .map(|j| {
            let q = BigRational::new(l.q_norm(&roots[j]) * 2, l.q_norm(&roots[perm[j]]));
            ExtScalar::sqrt_of_rational(&q).ok_or(Error::ScaleMismatch(j))
        })
        .collect()
}

fn check_pairing(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::MalformedPairing(format!(
            "{} entries for {} roots",
            perm.len(),
            n
        )));
    }
    for (j, &p) in perm.iter().enumerate() {
        if p >= n || perm[p] != j {
            return Err(Error::MalformedPairing(format!(
                "{perm:?} is not an involution"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeTwoWitness {
    pub t: GMat,
    pub epsilon: i8,
    pub pairing: Vec<usize>,
    pub scale_factors: Vec<ExtScalar>,
    /// `T² = square_unit·I`
    pub square_unit: GaussInt,
    pub det: GaussInt,
}

/// Why a sign choice produced no witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Certificate {
    /// The roots satisfy `Σ dependency_j r_j = 0`, so `T` would force
    /// `Σ relation_m r_m = 0`, which fails in Λ.
    Inconsistent {
        dependency: Vec<ExtScalar>,
        relation: Vec<ExtScalar>,
        relation_holds: bool,
    },
    /// The unique solution has an entry outside `Z[i]`.
    NonIntegral {
        row: usize,
        col: usize,
        entry: ExtScalar,
    },
    NotIsometry(String),
    NotProjectiveInvolution,
    /// The roots do not span, so the conditions do not determine `T`.
    Underdetermined {
        kernel_dim: usize,
    },
}

impl Certificate {
    /// Human readable form of an inconsistency, e.g. `2·r3 − r4 = 0`.
    pub fn describe(&self) -> String {
        match self {
            Certificate::Inconsistent {
                relation,
                relation_holds,
                ..
            } => {
                let s = format_relation(relation);
                if *relation_holds {
                    format!("forced relation {s} (holds)")
                } else {
                    format!("forced relation {s}, false in the lattice")
                }
            }
            Certificate::NonIntegral { row, col, entry } => {
                format!("T[{row}][{col}] = {entry} is not a Gaussian integer")
            }
            Certificate::NotIsometry(m) => format!("T is not an isometry: {m}"),
            Certificate::NotProjectiveInvolution => {
                "T² is not a unit multiple of the identity".into()
            }
            Certificate::Underdetermined { kernel_dim } => {
                format!("solution space has dimension {kernel_dim}")
            }
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self, Certificate::Inconsistent { .. })
    }
}

/// Renders `Σ c_m r_{m+1} = 0` with unit coefficients shown bare.
pub fn format_relation(coeffs: &[ExtScalar]) -> String {
    let mut s = String::new();
    for (m, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rat = c.b.is_zero().then(|| c.a.as_rational()).flatten();
        let (neg, mag) = match rat {
            Some(q) if q.is_negative() => (true, (-q).to_string()),
            Some(q) => (false, q.to_string()),
            None => (false, format!("({c})")),
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            s.push_str(&mag);
            s.push('·');
        }
        s.push_str(&format!("r{}", m + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s.push_str(" = 0");
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attempt {
    pub epsilon: i8,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeTwoOutcome {
    pub witness: Option<TypeTwoWitness>,
    pub attempts: Vec<Attempt>,
}

/// Tries to build `T` with `(1−i)·T(r_j) = ε·μ_j·r_{s(j)}` for both signs.
/// `mu` defaults to the values forced by the norms.
pub fn solve_type_two(
    l: &HermitianGaussLattice,
    roots: &[Vec<GaussInt>],
    perm: &[usize],
    mu: Option<&[ExtScalar]>,
) -> Result<TypeTwoOutcome> {
    let n = l.rank();
    check_pairing(roots.len(), perm)?;
    if roots.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: roots.iter().map(|r| r.len()).find(|&k| k != n).unwrap(),
        });
    }
    let forced = scale_factors(l, roots, perm)?;
    let mu: Vec<ExtScalar> = match mu {
        Some(m) => {
            if m.len() != roots.len() {
                return Err(Error::MalformedPairing("scale factor count".into()));
            }
            for (j, x) in m.iter().enumerate() {
                // 2·q(r_j) = μ_j²·q(r_{s(j)})
                let lhs = ExtScalar::from_gauss(GaussInt::real(l.q_norm(&roots[j]) * 2));
                let rhs = x * x * ExtScalar::from_gauss(GaussInt::real(l.q_norm(&roots[perm[j]])));
                if lhs != rhs {
                    return Err(Error::ScaleMismatch(j));
                }
            }
            m.to_vec()
        }
        None => forced,
    };
    // Rᵀ·Tᵀ = Sᵀ, one right-hand column per row of T
    let rt: Mat<ExtScalar> = Mat::from_fn(roots.len(), n, |j, t| ext(&roots[j][t]));
    let mut attempts = Vec::new();
    for epsilon in [1i8, -1] {
        let eps = ExtScalar::from_gauss(GaussInt::real(epsilon as i64));
        let st: Mat<ExtScalar> = Mat::from_fn(roots.len(), n, |j, t| {
            &eps * &mu[j] * ext(&roots[perm[j]][t]) * inv_one_minus_i()
        });
        let certificate = match ext_solve_linear(&rt, &st) {
            LinearSolution::Inconsistent { combination, .. } => {
                Some(inconsistency(roots, perm, &mu, &combination))
            }
            LinearSolution::Solved { kernel, .. } if !kernel.is_empty() => {
                Some(Certificate::Underdetermined {
                    kernel_dim: kernel.len(),
                })
            }
            LinearSolution::Solved { particular, .. } => {
                let tt = particular.transpose();
                match integral_witness(l, &tt) {
                    Ok(t) => {
                        let witness = verified_witness(l, roots, perm, &mu, epsilon, t)?;
                        attempts.push(Attempt {
                            epsilon,
                            certificate: None,
                        });
                        return Ok(TypeTwoOutcome {
                            witness: Some(witness),
                            attempts,
                        });
                    }
                    Err(c) => Some(c),
                }
            }
        };
        attempts.push(Attempt {
            epsilon,
            certificate,
        });
    }
    Ok(TypeTwoOutcome {
        witness: None,
        attempts,
    })
}

fn inconsistency(
    roots: &[Vec<GaussInt>],
    perm: &[usize],
    mu: &[ExtScalar],
    y: &[ExtScalar],
) -> Certificate {
    let k = roots.len();
    // applying T to Σ y_j r_j = 0 gives Σ y_j μ_j r_{s(j)} = 0
    let mut c = vec![ExtScalar::zero(); k];
    for j in 0..k {
        c[perm[j]] = &c[perm[j]] + &(&y[j] * &mu[j]);
    }
    let top = (0..k)
        .rev()
        .find(|&m| !y[m].is_zero())
        .expect("nonzero dependency");
    let lambda = &c[top] * &crate::scalars::FieldScalar::inv(&y[top]).expect("nonzero");
    let reduced: Vec<ExtScalar> = c.iter().zip(y).map(|(a, b)| a - &(&lambda * b)).collect();
    let relation = normalize_relation(&reduced);
    let relation_holds = (0..roots[0].len()).all(|t| {
        relation
            .iter()
            .zip(roots)
            .fold(ExtScalar::zero(), |acc, (a, r)| acc + a * &ext(&r[t]))
            .is_zero()
    });
    Certificate::Inconsistent {
        dependency: normalize_relation(y),
        relation,
        relation_holds,
    }
}

/// Scales a coefficient vector so the first nonzero entry is positive and,
/// when all ratios are rational, the entries are coprime integers.
pub fn normalize_relation(v: &[ExtScalar]) -> Vec<ExtScalar> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let inv = crate::scalars::FieldScalar::inv(first).expect("nonzero");
    let scaled: Vec<ExtScalar> = v.iter().map(|x| x * &inv).collect();
    let rats: Option<Vec<BigRational>> = scaled
        .iter()
        .map(|x| {
            if x.b.is_zero() {
                x.a.as_rational()
            } else {
                None
            }
        })
        .collect();
    let Some(rats) = rats else { return scaled };
    let den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| ExtScalar::from_rat(GaussRat::from_ratio(&BigRational::from_integer(x / &g))))
        .collect()
}

fn integral_witness(
    l: &HermitianGaussLattice,
    t: &Mat<ExtScalar>,
) -> std::result::Result<GMat, Certificate> {
    let mut out = GMat::zeros(t.rows(), t.cols());
    for r in 0..t.rows() {
        for c in 0..t.cols() {
            match t.get(r, c).as_gauss_int() {
                Some(z) => out.set(r, c, z),
                None => {
                    return Err(Certificate::NonIntegral {
                        row: r,
                        col: c,
                        entry: t.get(r, c).clone(),
                    })
                }
            }
        }
    }
    if let crate::lattices::Check::Fail(m) = check_isometry(l, &out) {
        return Err(Certificate::NotIsometry(m));
    }
    if projective_square(&out).is_none() {
        return Err(Certificate::NotProjectiveInvolution);
    }
    Ok(out)
}

/// `u` with `T² = u·I` for a unit `u`.
pub fn projective_square(t: &GMat) -> Option<GaussInt> {
    let sq = t.mul(t);
    let u = sq.get(0, 0).clone();
    (u.is_unit() && sq == GMat::identity(t.rows()).map(|z| z * &u)).then_some(u)
}

fn verified_witness(
    l: &HermitianGaussLattice,
    roots: &[Vec<GaussInt>],
    perm: &[usize],
    mu: &[ExtScalar],
    epsilon: i8,
    t: GMat,
) -> Result<TypeTwoWitness> {
    let witness = TypeTwoWitness {
        square_unit: projective_square(&t)
            .ok_or_else(|| Error::Data("witness is not a projective involution".into()))?,
        det: t.det_gauss(),
        t,
        epsilon,
        pairing: perm.to_vec(),
        scale_factors: mu.to_vec(),
    };
    if !witness_conditions_hold(l, &witness, roots) {
        return Err(Error::Data("witness fails its defining conditions".into()));
    }
    Ok(witness)
}

/// Re-checks every defining property of a witness from scratch.
pub fn witness_conditions_hold(
    l: &HermitianGaussLattice,
    w: &TypeTwoWitness,
    roots: &[Vec<GaussInt>],
) -> bool {
    if !check_isometry(l, &w.t).passed() || projective_square(&w.t).is_none() {
        return false;
    }
    let one_minus_i = ext(&GaussInt::new(1, -1));
    let eps = ext(&GaussInt::real(w.epsilon as i64));
    roots.iter().enumerate().all(|(j, r)| {
        let tr = w.t.mul_vec(r);
        let target = &roots[w.pairing[j]];
        tr.iter()
            .zip(target)
            .all(|(a, b)| &one_minus_i * &ext(a) == &eps * &w.scale_factors[j] * ext(b))
    })
}

/// Checks that `T` carries `Fix(χ)` onto `Fix(iχ)` (index one).
pub fn maps_fix_to_fix_i(chi: &AntiIsometry, t: &GMat) -> Result<bool> {
    let ichi = scale_anti(chi, &GaussInt::i())?;
    let images: Vec<Vec<GaussInt>> = fixed_basis(chi).iter().map(|b| t.mul_vec(b)).collect();
    if images.iter().any(|v| ichi.apply(v) != *v) {
        return Ok(false);
    }
    Ok(index_in_fix(&ichi, &images)? == BigInt::one())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum StabStructure {
    Equal,
    Semidirect(Box<TypeTwoWitness>),
}

impl StabStructure {
    pub fn name(&self) -> &'static str {
        match self {
            StabStructure::Equal => "equal",
            StabStructure::Semidirect(_) => "semidirect",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabReport {
    pub index: usize,
    pub structure: StabStructure,
    pub symmetries: usize,
    pub outcomes: Vec<TypeTwoOutcome>,
    pub roots: Vec<Root>,
}

/// Computes the fundamental roots of `L_i`, then tries every norm-ignoring
/// diagram involution as the pairing of a type-II element.
pub fn stab_structure(data: &ReferenceData, i: usize, threads: usize) -> Result<StabReport> {
    let lam = data.lambda()?;
    let li = data.fixed_lattice(i);
    let run = vinberg(&li, &data.vinberg_options(i, threads))?;
    let diagram = coxeter_diagram(&li, &run.roots)?;
    let lam_roots: Vec<Vec<GaussInt>> = run
        .roots
        .iter()
        .map(|r| {
            li.embed(&r.coords)
                .expect("fixed lattice carries its embedding")
        })
        .collect();
    let syms: Vec<_> = diagram_symmetries(&diagram, false)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();
    let mut outcomes = Vec::new();
    let mut structure = StabStructure::Equal;
    for s in &syms {
        if !s.is_involution() {
            continue;
        }
        let outcome = solve_type_two(&lam, &lam_roots, &s.permutation, None)?;
        if let Some(w) = &outcome.witness {
            if matches!(structure, StabStructure::Equal) {
                structure = StabStructure::Semidirect(Box::new(w.clone()));
            }
        }
        outcomes.push(outcome);
    }
    Ok(StabReport {
        index: i,
        structure,
        symmetries: syms.len(),
        outcomes,
        roots: run.roots,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WallHit {
    pub root: usize,
    pub w: Vec<GaussInt>,
}

/// Fundamental roots `r = (1+i)·w` with `w` primitive and `h(w, w) = −2`.
pub fn discriminant_walls(l: &HermitianGaussLattice, roots: &[Vec<GaussInt>]) -> Vec<WallHit> {
    let p = GaussInt::one_plus_i();
    let mut hits = Vec::new();
    for (k, r) in roots.iter().enumerate() {
        let w: Option<Vec<GaussInt>> = r.iter().map(|z| z.div_exact(&p)).collect();
        let Some(w) = w else { continue };
        let g = w.iter().fold(GaussInt::zero(), |acc, z| acc.gcd(z));
        if g.is_unit() && l.q_norm(&w) == BigInt::from(-2) {
            hits.push(WallHit { root: k, w });
        }
    }
    hits
}

pub fn discriminant_wall_check(l: &HermitianGaussLattice, roots: &[Vec<GaussInt>]) -> bool {
    discriminant_walls(l, roots).len() == 1
}
