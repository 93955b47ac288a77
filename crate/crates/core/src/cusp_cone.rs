//! The rank-2 cuspidal lattice: its finite isometry group, involutive
//! anti-isometries, wedge quotients of their fixed planes and the glued cone.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{fixed_basis, induced_gram};
use crate::intmat::integer_coordinates;
use crate::lattices::{
    from_real_coords, gauss_inverse, to_real_coords, AntiIsometry, HermitianGaussLattice,
};
use crate::matrix::{GMat, Mat, ZMat};
use crate::scalars::GaussInt;
use crate::shortvec::vectors_of_norm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteIsometryGroup {
    /// Sorted by the realified entries, so the order is reproducible.
    pub elements: Vec<GMat>,
}

impl FiniteIsometryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &GMat) -> bool {
        self.elements.iter().any(|e| e == a)
    }

    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<Vec<BigInt>> = self.elements.iter().map(key).collect();
        self.elements.iter().all(|a| {
            self.elements.iter().all(|b| set.contains(&key(&a.mul(b))))
                && gauss_inverse(a).is_some_and(|inv| set.contains(&key(&inv)))
        })
    }
}

fn key(a: &GMat) -> Vec<BigInt> {
    a.entries()
        .flat_map(|z| [z.re.clone(), z.im.clone()])
        .collect()
}

/// All isometries of a definite lattice, by backtracking over basis images
/// of the right norms.
pub fn enumerate_isometries(l: &HermitianGaussLattice) -> Result<FiniteIsometryGroup> {
    if !l.is_definite() {
        return Err(Error::Indefinite);
    }
    let n = l.rank();
    let g = l.gram();
    let negative = g.get(0, 0).re.is_negative();
    let real = l.realified_gram();
    let form = if negative { real.neg() } else { real };
    let mut candidates = Vec::with_capacity(n);
    for j in 0..n {
        let target = if negative {
            -&g.get(j, j).re
        } else {
            g.get(j, j).re.clone()
        };
        let vs: Vec<Vec<GaussInt>> = vectors_of_norm(&form, &target)?
            .iter()
            .map(|x| from_real_coords(x))
            .collect();
        candidates.push(vs);
    }
    let mut found = Vec::new();
    let mut images: Vec<Vec<GaussInt>> = Vec::new();
    backtrack(l, &candidates, &mut images, &mut found);
    found.sort_by_key(key);
    Ok(FiniteIsometryGroup { elements: found })
}

fn backtrack(
    l: &HermitianGaussLattice,
    candidates: &[Vec<Vec<GaussInt>>],
    images: &mut Vec<Vec<GaussInt>>,
    found: &mut Vec<GMat>,
) {
    let j = images.len();
    if j == candidates.len() {
        let a = GMat::from_cols(images);
        if l.check_isometry(&a).passed() {
            found.push(a);
        }
        return;
    }
    for x in &candidates[j] {
        let ok = (0..j).all(|k| l.inner(&images[k], x) == *l.gram().get(k, j));
        if ok {
            images.push(x.clone());
            backtrack(l, candidates, images, found);
            images.pop();
        }
    }
}

/// `{A·κ : A ∈ Isom(L)}` filtered by involutivity: every involutive
/// anti-isometry has this form.
pub fn enumerate_anti_involutions(
    l: &HermitianGaussLattice,
    group: &FiniteIsometryGroup,
    seed: &AntiIsometry,
) -> Result<Vec<AntiIsometry>> {
    if !seed.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    if !crate::lattices::is_anti_isometry(l, &seed.matrix).passed() {
        return Err(Error::NotAntiIsometry);
    }
    Ok(group
        .elements
        .iter()
        .map(|a| AntiIsometry::new(a.mul(&seed.matrix)))
        .filter(|c| c.is_involutive())
        .collect())
}

/// `A ∘ κ ∘ A⁻¹`
pub fn conjugate(a: &GMat, kappa: &AntiIsometry) -> AntiIsometry {
    let inv = gauss_inverse(a).expect("group elements are invertible");
    AntiIsometry::new(a.mul(&kappa.matrix).mul(&inv.conj()))
}

/// Orbits of `κ ↦ A∘κ∘A⁻¹`, as index lists into `antis`, each sorted and
/// ordered by first element.
pub fn conjugacy_classes(group: &FiniteIsometryGroup, antis: &[AntiIsometry]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; antis.len()];
    let mut classes = Vec::new();
    for start in 0..antis.len() {
        if assigned[start] {
            continue;
        }
        let mut class = BTreeSet::new();
        for a in &group.elements {
            let c = conjugate(a, &antis[start]);
            if let Some(k) = antis.iter().position(|x| *x == c) {
                class.insert(k);
            }
        }
        for &k in &class {
            assigned[k] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// `cos²(π/m)` for the crystallographic orders where it is rational.
pub fn cos2_pi_over(m: u32) -> Option<BigRational> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match m {
        1 => Some(q(1, 1)),
        2 => Some(q(0, 1)),
        3 => Some(q(1, 4)),
        4 => Some(q(1, 2)),
        6 => Some(q(3, 4)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedgeQuotient {
    pub kappa: GMat,
    pub fixed_basis: Vec<Vec<GaussInt>>,
    pub gram: ZMat,
    /// Distinct 2×2 integer matrices by which stabilizer elements act on the
    /// fixed basis.
    pub image: Vec<ZMat>,
    pub rotations: usize,
    /// Wedge angle as a multiple of π.
    #[serde(serialize_with = "ser_rat")]
    pub angle: BigRational,
    pub edges: Option<[Vec<GaussInt>; 2]>,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn fix_coordinates(basis: &[Vec<GaussInt>], v: &[GaussInt]) -> Option<Vec<BigInt>> {
    let b: Vec<Vec<BigInt>> = basis.iter().map(|x| to_real_coords(x)).collect();
    integer_coordinates(&b, &to_real_coords(v))
}

/// Quotient of the fixed plane of `κ` by its stabilizer. `edges`, when
/// given, are checked to span the two mirror lines bounding the wedge.
pub fn wedge_quotient(
    l: &HermitianGaussLattice,
    group: &FiniteIsometryGroup,
    kappa: &AntiIsometry,
    edges: Option<[Vec<GaussInt>; 2]>,
) -> Result<WedgeQuotient> {
    if !kappa.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    let basis = fixed_basis(kappa);
    if basis.len() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: basis.len(),
        });
    }
    let basis = reduce_plane_basis(l, basis);
    let gram = induced_gram(l, &basis);
    let mut image: Vec<ZMat> = Vec::new();
    for a in &group.elements {
        let cols: Option<Vec<Vec<BigInt>>> = basis
            .iter()
            .map(|b| {
                let ab = a.mul_vec(b);
                if kappa.apply(&ab) != ab {
                    return None;
                }
                fix_coordinates(&basis, &ab)
            })
            .collect();
        if let Some(cols) = cols {
            let m = Mat::from_cols(&cols);
            if !image.contains(&m) {
                image.push(m);
            }
        }
    }
    image.sort_by_key(|m| m.entries().cloned().collect::<Vec<_>>());
    let rotations = image.iter().filter(|m| m.det_int().is_one()).count();
    let reflections: Vec<&ZMat> = image
        .iter()
        .filter(|m| m.det_int() == BigInt::from(-1))
        .collect();
    if reflections.len() != rotations || rotations == 0 {
        return Err(Error::NotDihedral);
    }
    let angle = BigRational::new(BigInt::one(), BigInt::from(rotations));
    if let Some(e) = &edges {
        let coords: Vec<Vec<BigInt>> = e
            .iter()
            .map(|v| fix_coordinates(&basis, v).ok_or(Error::NotInLattice))
            .collect::<Result<_>>()?;
        for c in &coords {
            if !reflections.iter().any(|m| m.mul_vec(c) == *c) {
                return Err(Error::NotDihedral);
            }
        }
        let (x, y) = (&coords[0], &coords[1]);
        let xy = crate::matrix::bilinear_form(&gram, x, y);
        let cos2 = BigRational::new(
            &xy * &xy,
            crate::matrix::bilinear_form(&gram, x, x) * crate::matrix::bilinear_form(&gram, y, y),
        );
        let m = u32::try_from(rotations).map_err(|_| Error::NotDihedral)?;
        if cos2_pi_over(m).as_ref() != Some(&cos2) {
            return Err(Error::NotDihedral);
        }
    }
    Ok(WedgeQuotient {
        kappa: kappa.matrix.clone(),
        fixed_basis: basis,
        gram,
        image,
        rotations,
        angle,
        edges,
    })
}

fn comb(a: &[GaussInt], k: &BigInt, b: &[GaussInt]) -> Vec<GaussInt> {
    let k = GaussInt::new(k.clone(), BigInt::zero());
    a.iter().zip(b).map(|(x, y)| x - &(&k * y)).collect()
}

/// Lagrange reduction of a definite rank-2 basis, returned with the larger
/// absolute norm first.
pub fn reduce_plane_basis(
    l: &HermitianGaussLattice,
    basis: Vec<Vec<GaussInt>>,
) -> Vec<Vec<GaussInt>> {
    let norm = |v: &[GaussInt]| l.q_norm(v).abs();
    let (mut a, mut b) = (basis[0].clone(), basis[1].clone());
    loop {
        if norm(&a) < norm(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        let ab = l.inner(&a, &b).re;
        let bb = l.q_norm(&b);
        if bb.is_zero() {
            break;
        }
        let two_bb: BigInt = &bb * 2;
        let num: BigInt = &ab * 2 + &bb;
        let k = num.div_floor(&two_bb);
        if k.is_zero() {
            break;
        }
        a = comb(&a, &k, &b);
        if norm(&a) >= norm(&b) {
            break;
        }
    }
    if norm(&a) < norm(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    vec![a, b]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Identification {
    pub from: String,
    pub to: String,
    pub witnesses: Vec<GMat>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluedCone {
    pub wedges: Vec<WedgeQuotient>,
    pub identifications: Vec<Identification>,
    #[serde(serialize_with = "ser_rat")]
    pub total_angle: BigRational,
}

impl GluedCone {
    /// In the wedge normalization an orbifold cone point has angle `π/k`.
    pub fn is_orbifold_angle(&self) -> bool {
        self.total_angle.numer().is_one()
    }
}

/// Group elements mapping `from` to `to`.
pub fn witnesses(group: &FiniteIsometryGroup, from: &[GaussInt], to: &[GaussInt]) -> Vec<GMat> {
    group
        .elements
        .iter()
        .filter(|a| a.mul_vec(from) == to)
        .cloned()
        .collect()
}

/// Glues wedges along named edge pairs `(from, to)`; each pair needs at
/// least one witness in the group.
pub fn glue_cone(
    group: &FiniteIsometryGroup,
    wedges: Vec<WedgeQuotient>,
    pairs: &[(&str, &[GaussInt], &str, &[GaussInt])],
) -> Result<GluedCone> {
    let mut identifications = Vec::new();
    for (fname, from, tname, to) in pairs {
        let w = witnesses(group, from, to);
        if w.is_empty() {
            return Err(Error::MissingWitness(format!("{fname} to {tname}")));
        }
        identifications.push(Identification {
            from: fname.to_string(),
            to: tname.to_string(),
            witnesses: w,
        });
    }
    let total_angle = wedges
        .iter()
        .fold(BigRational::zero(), |acc, w| acc + &w.angle);
    Ok(GluedCone {
        wedges,
        identifications,
        total_angle,
    })
}

/// Renders `p/q` of π as `"p/q π"`.
pub fn format_angle(a: &BigRational) -> String {
    if a.is_integer() {
        format!("{} π", a.numer())
    } else {
        format!("{}/{} π", a.numer(), a.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::make_lattice;

    #[test]
    fn unit_diagonal_lattice_has_monomial_group() {
        // diag(-1,-1) over Z[i]: monomial matrices with unit entries
        let l = make_lattice(GMat::from_pairs(&[&[(-1, 0), (0, 0)], &[(0, 0), (-1, 0)]])).unwrap();
        let g = enumerate_isometries(&l).unwrap();
        assert_eq!(g.order(), 32);
        assert!(g.is_closed());
    }

    #[test]
    fn indefinite_rejected() {
        let l = make_lattice(GMat::from_pairs(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]])).unwrap();
        assert!(matches!(enumerate_isometries(&l), Err(Error::Indefinite)));
    }

    #[test]
    fn angles() {
        assert_eq!(format_angle(&BigRational::new(3.into(), 4.into())), "3/4 π");
        assert_eq!(
            cos2_pi_over(4).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert!(cos2_pi_over(5).is_none());
    }
}
