//! Fixed Z-lattices of involutive anti-isometries.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{hermite_rows, integer_coordinates, integer_kernel};
use crate::lattices::{
    from_real_coords, realify_antilinear, symmetric_signature, to_real_coords, AntiIsometry, Check,
    HermitianGaussLattice,
};
use crate::matrix::{Mat, ZMat};
use crate::scalars::GaussInt;

/// An integral symmetric bilinear lattice, optionally embedded in a Hermitian
/// lattice through Gaussian coordinates of its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZQuadraticLattice {
    pub gram: ZMat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<Vec<GaussInt>>>,
}

impl ZQuadraticLattice {
    pub fn new(gram: ZMat) -> Self {
        assert!(gram.is_symmetric(), "gram matrix must be symmetric");
        ZQuadraticLattice {
            gram,
            embedding: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        crate::matrix::bilinear_form(&self.gram, x, y)
    }

    pub fn q(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }

    pub fn signature(&self) -> (usize, usize) {
        symmetric_signature(&self.gram.to_rat()).pair()
    }

    /// Image of a coordinate vector in the ambient Hermitian lattice.
    pub fn embed(&self, x: &[BigInt]) -> Option<Vec<GaussInt>> {
        let basis = self.embedding.as_ref()?;
        let n = basis.first().map_or(0, |b| b.len());
        let mut out = vec![GaussInt::zero(); n];
        for (c, b) in x.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (o, z) in out.iter_mut().zip(b) {
                *o = &*o + &z.scale(c);
            }
        }
        Some(out)
    }
}

/// The rank-2n integer lattice underlying a Hermitian lattice.
#[derive(Clone, Debug)]
pub struct Realification {
    pub gram: ZMat,
}

impl Realification {
    pub fn of(l: &HermitianGaussLattice) -> Self {
        Realification {
            gram: l.realified_gram(),
        }
    }

    pub fn antilinear(chi: &AntiIsometry) -> ZMat {
        realify_antilinear(&chi.matrix)
    }
}

/// Canonical (Hermite-reduced) basis of `Fix(χ)` as Gaussian vectors.
pub fn fixed_basis(chi: &AntiIsometry) -> Vec<Vec<GaussInt>> {
    let r = realify_antilinear(&chi.matrix);
    let m = r.sub(&ZMat::identity(r.rows()));
    integer_kernel(&m)
        .iter()
        .map(|x| from_real_coords(x))
        .collect()
}

/// Gram matrix of `h` restricted to `basis`; panics if a value is not real,
/// which cannot happen for vectors fixed by an anti-isometry.
pub fn induced_gram(l: &HermitianGaussLattice, basis: &[Vec<GaussInt>]) -> ZMat {
    Mat::from_fn(basis.len(), basis.len(), |r, c| {
        let z = l.inner(&basis[r], &basis[c]);
        assert!(z.im.is_zero(), "h is not real on the given vectors");
        z.re
    })
}

pub fn fix_lattice(l: &HermitianGaussLattice, chi: &AntiIsometry) -> Result<ZQuadraticLattice> {
    if !chi.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    if let Check::Fail(_) = crate::lattices::is_anti_isometry(l, &chi.matrix) {
        return Err(Error::NotAntiIsometry);
    }
    let basis = fixed_basis(chi);
    let gram = induced_gram(l, &basis);
    Ok(ZQuadraticLattice {
        gram,
        embedding: Some(basis),
    })
}

/// Index `[outer : inner]` of two lattices given by basis vectors in a common
/// integer ambient space.
pub fn sublattice_index(outer: &[Vec<BigInt>], inner: &[Vec<BigInt>]) -> Result<BigInt> {
    if inner.len() != outer.len() {
        return Err(Error::NotFullRank);
    }
    let coords: Option<Vec<Vec<BigInt>>> = inner
        .iter()
        .map(|v| integer_coordinates(outer, v))
        .collect();
    let coords = coords.ok_or(Error::NotInLattice)?;
    let det = Mat::from_rows(coords).det_int();
    if det.is_zero() {
        return Err(Error::NotFullRank);
    }
    Ok(det.abs())
}

/// Index of the Z-span of Gaussian vectors inside `Fix(χ)`.
pub fn index_in_fix(chi: &AntiIsometry, vectors: &[Vec<GaussInt>]) -> Result<BigInt> {
    let outer: Vec<Vec<BigInt>> = fixed_basis(chi).iter().map(|v| to_real_coords(v)).collect();
    let inner: Vec<Vec<BigInt>> = vectors.iter().map(|v| to_real_coords(v)).collect();
    sublattice_index(&outer, &inner)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub index: usize,
    pub columns_fixed: std::result::Result<(), String>,
    pub gram_matches: std::result::Result<(), String>,
    pub index_in_fix: std::result::Result<String, String>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.columns_fixed.is_ok()
            && self.gram_matches.is_ok()
            && self.index_in_fix.as_deref() == Ok("1")
    }
}

/// Checks a distinguished basis `b` (columns) of `Fix(χ)` against a Gram table.
pub fn verify_basis(
    index: usize,
    l: &HermitianGaussLattice,
    chi: &AntiIsometry,
    b: &[Vec<GaussInt>],
    expected: &ZMat,
) -> BasisReport {
    let columns_fixed = b
        .iter()
        .enumerate()
        .find(|(_, v)| chi.apply(v) != **v)
        .map_or(Ok(()), |(j, _)| Err(format!("column {j} is not fixed")));
    let gram_matches = (|| {
        if expected.rows() != b.len() {
            return Err(format!("expected a {}x{} table", b.len(), b.len()));
        }
        for r in 0..b.len() {
            for c in 0..b.len() {
                let z = l.inner(&b[r], &b[c]);
                if !z.im.is_zero() || &z.re != expected.get(r, c) {
                    return Err(format!(
                        "entry ({r}, {c}): computed {z}, expected {}",
                        expected.get(r, c)
                    ));
                }
            }
        }
        Ok(())
    })();
    let index_in_fix = index_in_fix(chi, b)
        .map(|d| d.to_string())
        .map_err(|e| e.to_string());
    BasisReport {
        index,
        columns_fixed,
        gram_matches,
        index_in_fix,
    }
}

/// Canonical Hermite form of a set of Gaussian vectors, via realification.
pub fn canonical_span(vectors: &[Vec<GaussInt>]) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| to_real_coords(v)).collect();
    hermite_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::make_lattice;
    use crate::matrix::GMat;

    #[test]
    fn index_examples() {
        let b = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(sublattice_index(&b, &b).unwrap(), BigInt::from(1));
        let d: Vec<Vec<BigInt>> = b
            .iter()
            .map(|v| v.iter().map(|x| x * 2).collect())
            .collect();
        assert_eq!(sublattice_index(&b, &d).unwrap(), BigInt::from(4));
        // span{(1+i)e} inside span{e}, realified: e ↦ (1,0), ie ↦ (0,1)
        let outer = vec![
            to_real_coords(&[GaussInt::new(1, 0)]),
            to_real_coords(&[GaussInt::new(0, 1)]),
        ];
        let inner = vec![
            to_real_coords(&[GaussInt::new(1, 1)]),
            to_real_coords(&[GaussInt::new(1, 1) * GaussInt::i()]),
        ];
        assert_eq!(sublattice_index(&outer, &inner).unwrap(), BigInt::from(2));
    }

    #[test]
    fn lz_fixed_lattices() {
        let l = make_lattice(GMat::from_pairs(&[&[(-2, 0), (1, -1)], &[(1, 1), (-2, 0)]])).unwrap();
        let k1 = AntiIsometry::new(GMat::from_pairs(&[&[(0, 0), (-1, 0)], &[(-1, 0), (0, 0)]]));
        let f = fix_lattice(&l, &k1).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.gram.det_int(), BigInt::from(8));
        let u1 = vec![GaussInt::new(-1, -1), GaussInt::new(1, -1)];
        let u2 = vec![GaussInt::new(0, 1), GaussInt::new(0, 1)];
        let rep = verify_basis(
            0,
            &l,
            &k1,
            &[u1, u2],
            &ZMat::from_i64(&[&[-4, 0], &[0, -2]]),
        );
        assert!(rep.passed(), "{rep:?}");
    }
}
