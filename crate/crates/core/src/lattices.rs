//! Hermitian lattices over `Z[i]`, their isometries and anti-isometries.
//!
//! The form is `h(x, y) = x†·G·y`: conjugate-linear in the first slot.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hermitian_form, GMat, Mat, ZMat};
use crate::scalars::{FieldScalar, GaussInt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Signature {
    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct HermitianGaussLattice {
    gram: GMat,
    signature: (usize, usize),
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: GMat,
}

impl TryFrom<LatticeRepr> for HermitianGaussLattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        if r.gram.rows() != r.rank {
            return Err(Error::Dimension {
                expected: r.rank,
                got: r.gram.rows(),
            });
        }
        make_lattice(r.gram)
    }
}

impl From<HermitianGaussLattice> for LatticeRepr {
    fn from(l: HermitianGaussLattice) -> Self {
        LatticeRepr {
            rank: l.rank(),
            gram: l.gram,
        }
    }
}

/// Validates a Hermitian Gram matrix and computes its signature.
pub fn make_lattice(gram: GMat) -> Result<HermitianGaussLattice> {
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    let n = gram.rows();
    for r in 0..n {
        for c in r..n {
            if *gram.get(r, c) != gram.get(c, r).conj() {
                return Err(Error::NonHermitian { row: r, col: c });
            }
        }
    }
    let real = symmetric_signature(&realify_form(&gram).to_rat());
    Ok(HermitianGaussLattice {
        signature: (real.positive / 2, real.negative / 2),
        gram,
    })
}

impl HermitianGaussLattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &GMat {
        &self.gram
    }

    /// Hermitian signature `(p, q)`; the realified form has `(2p, 2q)`.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_definite(&self) -> bool {
        let (p, q) = self.signature;
        (p == 0 || q == 0) && p + q == self.rank()
    }

    pub fn inner(&self, v: &[GaussInt], w: &[GaussInt]) -> GaussInt {
        assert_eq!(v.len(), self.rank(), "vector length does not match rank");
        assert_eq!(w.len(), self.rank(), "vector length does not match rank");
        hermitian_form(&self.gram, v, w)
    }

    pub fn try_inner(&self, v: &[GaussInt], w: &[GaussInt]) -> Result<GaussInt> {
        for x in [v, w] {
            if x.len() != self.rank() {
                return Err(Error::Dimension {
                    expected: self.rank(),
                    got: x.len(),
                });
            }
        }
        Ok(hermitian_form(&self.gram, v, w))
    }

    /// `h(v, v)`, always a rational integer.
    pub fn q_norm(&self, v: &[GaussInt]) -> BigInt {
        let z = self.inner(v, v);
        debug_assert!(z.im.is_zero());
        z.re
    }

    /// Real symmetric form `Re h` on the realification `Z^{2n}`, coordinates
    /// ordered `(re_1..re_n, im_1..im_n)`.
    pub fn realified_gram(&self) -> ZMat {
        realify_form(&self.gram)
    }

    pub fn check_isometry(&self, a: &GMat) -> Check {
        check_isometry(self, a)
    }

    pub fn check_anti_involution(&self, c: &GMat) -> Check {
        check_anti_involution(self, c)
    }
}

/// `[[P, -Q], [Q, P]]` for `G = P + iQ`.
pub fn realify_form(g: &GMat) -> ZMat {
    let n = g.rows();
    Mat::from_fn(2 * n, 2 * n, |r, c| {
        let z = g.get(r % n, c % n);
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re.clone(),
            (true, false) => -&z.im,
            (false, true) => z.im.clone(),
        }
    })
}

/// Integer matrix of the antilinear map `v ↦ C·conj(v)` on the realification:
/// `[[P, Q], [Q, -P]]` for `C = P + iQ`.
pub fn realify_antilinear(c: &GMat) -> ZMat {
    let n = c.rows();
    Mat::from_fn(2 * n, 2 * n, |r, col| {
        let z = c.get(r % n, col % n);
        match (r < n, col < n) {
            (true, true) => z.re.clone(),
            (true, false) => z.im.clone(),
            (false, true) => z.im.clone(),
            (false, false) => -&z.re,
        }
    })
}

/// Integer matrix of the linear map `v ↦ A·v` on the realification.
pub fn realify_linear(a: &GMat) -> ZMat {
    realify_form(a)
}

pub fn to_real_coords(v: &[GaussInt]) -> Vec<BigInt> {
    v.iter()
        .map(|z| z.re.clone())
        .chain(v.iter().map(|z| z.im.clone()))
        .collect()
}

pub fn from_real_coords(x: &[BigInt]) -> Vec<GaussInt> {
    let n = x.len() / 2;
    (0..n)
        .map(|k| GaussInt {
            re: x[k].clone(),
            im: x[n + k].clone(),
        })
        .collect()
}

/// Exact signature of a symmetric rational matrix by congruence
/// diagonalization.
pub fn symmetric_signature(m: &Mat<BigRational>) -> Signature {
    let mut a = m.clone();
    let n = a.rows();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        null: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                match pair {
                    None => {
                        sig.null += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // e_i ← e_i + e_j makes the diagonal entry 2·a_ij
                        for k in 0..n {
                            let v = a.get(i, k) + a.get(j, k);
                            a.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = a.get(k, i) + a.get(k, j);
                            a.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let d = a.get(p, p).clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.retain(|&x| x != p);
        let dinv = d.inv().expect("nonzero pivot");
        for &r in &active {
            let f = a.get(r, p) * &dinv;
            if f.is_zero() {
                continue;
            }
            for &c in &active {
                let v = a.get(r, c) - &f * a.get(p, c);
                a.set(r, c, v);
            }
            a.set(r, p, BigRational::zero());
        }
        for &c in &active {
            a.set(p, c, BigRational::zero());
        }
    }
    sig
}

/// Outcome of a structural check, carrying a reason on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

pub fn check_isometry(l: &HermitianGaussLattice, a: &GMat) -> Check {
    let n = l.rank();
    if a.rows() != n || a.cols() != n {
        return Check::Fail(format!(
            "matrix is {}x{}, lattice rank {}",
            a.rows(),
            a.cols(),
            n
        ));
    }
    let lhs = a.dagger().mul(l.gram()).mul(a);
    for r in 0..n {
        for c in 0..n {
            if lhs.get(r, c) != l.gram().get(r, c) {
                return Check::Fail(format!(
                    "(A†GA)[{r}][{c}] = {} but G[{r}][{c}] = {}",
                    lhs.get(r, c),
                    l.gram().get(r, c)
                ));
            }
        }
    }
    let d = a.det_gauss();
    if !d.is_unit() {
        return Check::Fail(format!("determinant {d} is not a unit"));
    }
    Check::Pass
}

pub fn is_anti_isometry(l: &HermitianGaussLattice, c: &GMat) -> Check {
    let n = l.rank();
    if c.rows() != n || c.cols() != n {
        return Check::Fail(format!(
            "matrix is {}x{}, lattice rank {}",
            c.rows(),
            c.cols(),
            n
        ));
    }
    // h(Cx̄, Cȳ) = xᵀ C†GC ȳ must equal conj(x†Gy) = xᵀ conj(G) ȳ
    let lhs = c.dagger().mul(l.gram()).mul(c);
    let rhs = l.gram().conj();
    for r in 0..n {
        for col in 0..n {
            if lhs.get(r, col) != rhs.get(r, col) {
                return Check::Fail(format!(
                    "h(χe{r}, χe{col}) = {} but conj(h(e{r}, e{col})) = {}",
                    lhs.get(r, col),
                    rhs.get(r, col)
                ));
            }
        }
    }
    Check::Pass
}

pub fn is_involutive(c: &GMat) -> bool {
    c.mul(&c.conj()).is_identity()
}

pub fn check_anti_involution(l: &HermitianGaussLattice, c: &GMat) -> Check {
    if let Check::Fail(why) = is_anti_isometry(l, c) {
        return Check::Fail(why);
    }
    if !is_involutive(c) {
        return Check::Fail("C·conj(C) is not the identity".into());
    }
    Check::Pass
}

/// An antilinear map `v ↦ C·conj(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntiIsometry {
    pub matrix: GMat,
}

impl AntiIsometry {
    pub fn new(matrix: GMat) -> Self {
        AntiIsometry { matrix }
    }

    pub fn apply(&self, v: &[GaussInt]) -> Vec<GaussInt> {
        let cv: Vec<GaussInt> = v.iter().map(GaussInt::conj).collect();
        self.matrix.mul_vec(&cv)
    }

    pub fn is_involutive(&self) -> bool {
        is_involutive(&self.matrix)
    }

    pub fn realified(&self) -> ZMat {
        realify_antilinear(&self.matrix)
    }

    /// `χ ∘ χ'` as an antilinear∘antilinear = linear map.
    pub fn compose(&self, other: &AntiIsometry) -> GMat {
        self.matrix.mul(&other.matrix.conj())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Isometry {
    pub matrix: GMat,
}

impl Isometry {
    pub fn new(matrix: GMat) -> Self {
        Isometry { matrix }
    }

    pub fn apply(&self, v: &[GaussInt]) -> Vec<GaussInt> {
        self.matrix.mul_vec(v)
    }

    /// Inverse over `Z[i]`; `None` if the determinant is not a unit.
    pub fn inverse(&self) -> Option<Isometry> {
        gauss_inverse(&self.matrix).map(Isometry::new)
    }
}

pub fn gauss_inverse(a: &GMat) -> Option<GMat> {
    let inv = a.to_rat().inverse()?;
    let rows: Option<Vec<Vec<GaussInt>>> = inv
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(|x| x.as_gauss_int()).collect())
        .collect();
    rows.map(Mat::from_rows)
}

/// `v ↦ A·C·conj(v)`; involutivity is not automatic and must be checked.
pub fn compose_anti(a: &Isometry, chi: &AntiIsometry) -> AntiIsometry {
    AntiIsometry::new(a.matrix.mul(&chi.matrix))
}

/// `A ∘ χ ∘ A⁻¹`, matrix `A·C·conj(A⁻¹)`.
pub fn conjugate_anti(a: &Isometry, chi: &AntiIsometry) -> Option<AntiIsometry> {
    let ainv = a.inverse()?;
    Some(AntiIsometry::new(
        a.matrix.mul(&chi.matrix).mul(&ainv.matrix.conj()),
    ))
}

/// `u·χ` for a unit `u`.
///
/// Every associate of an involutive anti-isometry is again involutive, since
/// `(uC)·conj(uC) = |u|²·C·conj(C)`.
pub fn scale_anti(chi: &AntiIsometry, u: &GaussInt) -> Result<AntiIsometry> {
    if !u.is_unit() {
        return Err(Error::NotUnit(u.to_string()));
    }
    Ok(AntiIsometry::new(chi.matrix.map(|z| u * z)))
}

pub fn identity_anti(n: usize) -> AntiIsometry {
    AntiIsometry::new(Mat::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lz() -> GMat {
        GMat::from_pairs(&[&[(-2, 0), (1, -1)], &[(1, 1), (-2, 0)]])
    }

    #[test]
    fn lz_is_negative_definite() {
        let l = make_lattice(lz()).unwrap();
        assert_eq!(l.signature(), (0, 2));
        assert!(l.is_definite());
    }

    #[test]
    fn non_hermitian_rejected() {
        let g = GMat::from_pairs(&[&[(-2, 0), (1, 1)], &[(1, 1), (-2, 0)]]);
        assert!(matches!(
            make_lattice(g),
            Err(Error::NonHermitian { row: 0, col: 1 })
        ));
    }

    #[test]
    fn realified_antilinear_squares_to_identity() {
        let l = make_lattice(lz()).unwrap();
        let k1 = GMat::from_pairs(&[&[(0, 0), (-1, 0)], &[(-1, 0), (0, 0)]]);
        assert!(check_anti_involution(&l, &k1).passed());
        let r = realify_antilinear(&k1);
        assert!(r.mul(&r).is_identity());
        let j = realify_linear(&GMat::identity(2).scale(&GaussInt::i()));
        assert_eq!(j.mul(&j), ZMat::identity(4).neg());
    }

    #[test]
    fn associates_stay_involutive() {
        let k3 = AntiIsometry::new(GMat::from_pairs(&[&[(0, 1), (0, 0)], &[(0, 0), (-1, 0)]]));
        for u in GaussInt::units() {
            assert!(scale_anti(&k3, &u).unwrap().is_involutive());
        }
        assert!(scale_anti(&k3, &GaussInt::new(1, 1)).is_err());
    }

    #[test]
    fn indefinite_signature() {
        let h2 = GMat::from_pairs(&[&[(0, 0), (1, 1)], &[(1, -1), (0, 0)]]);
        assert_eq!(make_lattice(h2).unwrap().signature(), (1, 1));
    }
}
