//! The six-dimensional quadratic space `V = Λ/(1+i)Λ` over F2, involutions
//! induced by anti-involutions of Λ, and the even-subset model of `O(V, q)`.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattices::{AntiIsometry, HermitianGaussLattice};
use crate::scalars::GaussInt;

pub const DIM: usize = 6;
pub const SIZE: usize = 1 << DIM;

/// Vectors of `V` are bit masks; bit `j` is coordinate `j`.
pub type F2Vec = u8;

/// Coordinatewise `a + bi ↦ (a + b) mod 2`.
pub fn reduce_vector(v: &[GaussInt]) -> F2Vec {
    v.iter().enumerate().fold(0, |acc, (j, z)| {
        if z.mod_one_plus_i() == 1 {
            acc | (1 << j)
        } else {
            acc
        }
    })
}

/// The 0/1 lift of a vector of `V`.
pub fn lift(x: F2Vec, n: usize) -> Vec<GaussInt> {
    (0..n)
        .map(|j| GaussInt::new(((x >> j) & 1) as i64, 0))
        .collect()
}

pub fn popcount(x: F2Vec) -> u32 {
    x.count_ones()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2QuadraticSpace {
    q: [u8; SIZE],
}

impl F2QuadraticSpace {
    /// `q(x) = h(x̃, x̃)/2 mod 2` on the 0/1 lift `x̃`.
    pub fn from_lattice(l: &HermitianGaussLattice) -> Result<Self> {
        if l.rank() != DIM {
            return Err(Error::Dimension {
                expected: DIM,
                got: l.rank(),
            });
        }
        let mut q = [0u8; SIZE];
        for (x, slot) in q.iter_mut().enumerate() {
            let v = lift(x as u8, DIM);
            *slot = half_norm_mod2(l, &v)?;
        }
        Ok(F2QuadraticSpace { q })
    }

    pub fn q(&self, x: F2Vec) -> u8 {
        self.q[x as usize]
    }

    /// Polar form `B(x, y) = q(x+y) + q(x) + q(y)`.
    pub fn b(&self, x: F2Vec, y: F2Vec) -> u8 {
        self.q(x ^ y) ^ self.q(x) ^ self.q(y)
    }

    pub fn norm_one_vectors(&self) -> Vec<F2Vec> {
        (0..SIZE as u8).filter(|&x| self.q(x) == 1).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        (1..SIZE as u8).all(|x| (0..SIZE as u8).any(|y| self.b(x, y) == 1))
    }
}

fn half_norm_mod2(l: &HermitianGaussLattice, v: &[GaussInt]) -> Result<u8> {
    let h = l.q_norm(v);
    if h.is_odd() {
        return Err(Error::Data(format!("h(x, x) = {h} is odd")));
    }
    let half: num_bigint::BigInt = h / 2;
    Ok(if half.is_even() { 0 } else { 1 })
}

/// Checks that `q` does not depend on the lift, by comparing against lifts
/// shifted by `(1+i)` times each basis vector and by `2i` times it.
pub fn check_well_defined(l: &HermitianGaussLattice, space: &F2QuadraticSpace) -> Result<bool> {
    for x in 0..SIZE as u8 {
        let base = lift(x, DIM);
        for j in 0..DIM {
            for shift in [
                GaussInt::one_plus_i(),
                GaussInt::new(0, 2),
                GaussInt::new(1, -1),
            ] {
                let mut v = base.clone();
                v[j] = &v[j] + &shift;
                if half_norm_mod2(l, &v)? != space.q(x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Linear map of `V`, stored as the images of the six basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct F2Matrix(pub [F2Vec; DIM]);

impl F2Matrix {
    pub fn identity() -> Self {
        F2Matrix(std::array::from_fn(|j| 1 << j))
    }

    pub fn from_gauss(m: &crate::matrix::GMat) -> Result<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::Dimension {
                expected: DIM,
                got: m.rows(),
            });
        }
        Ok(F2Matrix(std::array::from_fn(|j| reduce_vector(&m.col(j)))))
    }

    pub fn apply(&self, x: F2Vec) -> F2Vec {
        (0..DIM)
            .filter(|j| (x >> j) & 1 == 1)
            .fold(0, |acc, j| acc ^ self.0[j])
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix(std::array::from_fn(|j| self.apply(other.0[j])))
    }

    pub fn is_identity(&self) -> bool {
        *self == F2Matrix::identity()
    }

    pub fn is_invertible(&self) -> bool {
        let images: HashSet<F2Vec> = (0..SIZE as u8).map(|x| self.apply(x)).collect();
        images.len() == SIZE
    }

    pub fn inverse(&self) -> Option<F2Matrix> {
        let mut inv = [0u8; DIM];
        for x in 0..SIZE as u8 {
            let y = self.apply(x);
            if y.is_power_of_two() {
                inv[y.trailing_zeros() as usize] = x;
            }
        }
        let m = F2Matrix(inv);
        m.compose(self).is_identity().then_some(m)
    }

    pub fn preserves(&self, space: &F2QuadraticSpace) -> bool {
        (0..SIZE as u8).all(|x| space.q(self.apply(x)) == space.q(x))
    }

    pub fn rows_string(&self) -> String {
        (0..DIM)
            .map(|r| {
                (0..DIM)
                    .map(|c| if (self.0[c] >> r) & 1 == 1 { '1' } else { '0' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The F2 matrix of `χ mod (1+i)`; complex conjugation is trivial modulo
/// `(1+i)`, so the reduction is linear.
pub fn induced_involution(chi: &AntiIsometry) -> Result<F2Matrix> {
    if !chi.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    F2Matrix::from_gauss(&chi.matrix)
}

/// `(dim Fix φ, #{x ∈ Fix φ : q(x) = 1})`
pub fn involution_invariants(space: &F2QuadraticSpace, phi: &F2Matrix) -> (usize, usize) {
    let fixed: Vec<F2Vec> = (0..SIZE as u8).filter(|&x| phi.apply(x) == x).collect();
    let dim = fixed.len().trailing_zeros() as usize;
    let ones = fixed.iter().filter(|&&x| space.q(x) == 1).count();
    (dim, ones)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OcticType {
    Type0,
    Type1,
    Type2,
    Type3,
    /// (4, 4) does not separate real type 4 from antipodal octics.
    Type4OrAntipodal,
}

impl OcticType {
    pub fn name(self) -> &'static str {
        match self {
            OcticType::Type0 => "type 0",
            OcticType::Type1 => "type 1",
            OcticType::Type2 => "type 2",
            OcticType::Type3 => "type 3",
            OcticType::Type4OrAntipodal => "type 4 or antipodal",
        }
    }
}

pub fn classify_octic_type(inv: (usize, usize)) -> Result<OcticType> {
    match inv {
        (6, 28) => Ok(OcticType::Type0),
        (5, 16) => Ok(OcticType::Type1),
        (4, 8) => Ok(OcticType::Type2),
        (3, 4) => Ok(OcticType::Type3),
        (4, 4) => Ok(OcticType::Type4OrAntipodal),
        other => Err(Error::UnknownInvariants(other)),
    }
}

/// Subsets of `P8 = {1..8}` are 8-bit masks, bit `k` standing for `k+1`.
pub type Subset = u8;

/// Canonical representative of `{S, P8 ∖ S}`: the one not containing 1.
pub fn w_class(s: Subset) -> Subset {
    if s & 1 == 1 {
        !s
    } else {
        s
    }
}

fn permute_subset(perm: &[usize; 8], s: Subset) -> Subset {
    (0..8)
        .filter(|k| (s >> k) & 1 == 1)
        .fold(0, |acc, k| acc | (1 << perm[k]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S8Invariants {
    pub dim_fix: usize,
    pub norm_one_fixed: usize,
    /// Even subsets `S` with `τS ∈ {S, P8 ∖ S}`.
    pub fixed_even_subsets: usize,
    /// Even subsets with `τS = S`.
    pub strictly_fixed_subsets: usize,
    pub fixed_classes: usize,
}

/// Permutation of `P8` with the given cycle type (cycles of length 1 or 2),
/// the transpositions being `(1 2)(3 4)...`.
pub fn permutation_of_cycle_type(cycle_type: &[usize]) -> Result<[usize; 8]> {
    let bad = || Error::MalformedCycleType(format!("{cycle_type:?}"));
    if cycle_type.iter().sum::<usize>() != 8 || cycle_type.iter().any(|&c| c != 1 && c != 2) {
        return Err(bad());
    }
    let twos = cycle_type.iter().filter(|&&c| c == 2).count();
    let mut perm: [usize; 8] = std::array::from_fn(|k| k);
    for t in 0..twos {
        perm.swap(2 * t, 2 * t + 1);
    }
    Ok(perm)
}

/// Invariants of `Φ(τ)` read off the even-subset model.
pub fn s8_invariants(cycle_type: &[usize]) -> Result<S8Invariants> {
    let perm = permutation_of_cycle_type(cycle_type)?;
    let even = (0..=255u8).filter(|s| s.count_ones() % 2 == 0);
    let mut fixed_even_subsets = 0;
    let mut strictly_fixed_subsets = 0;
    let mut classes = HashSet::new();
    let mut norm_one = HashSet::new();
    for s in even {
        let t = permute_subset(&perm, s);
        if t == s {
            strictly_fixed_subsets += 1;
        }
        if t == s || t == !s {
            fixed_even_subsets += 1;
            classes.insert(w_class(s));
            if s.count_ones() == 2 {
                norm_one.insert(w_class(s));
            }
        }
    }
    let fixed_classes = classes.len();
    Ok(S8Invariants {
        dim_fix: fixed_classes.trailing_zeros() as usize,
        norm_one_fixed: norm_one.len(),
        fixed_even_subsets,
        strictly_fixed_subsets,
        fixed_classes,
    })
}

/// Cycle type with `t` transpositions and `8 − 2t` fixed points.
pub fn cycle_type_with_transpositions(t: usize) -> Vec<usize> {
    let mut c = vec![2; t];
    c.extend(std::iter::repeat_n(1, 8 - 2 * t));
    c
}

/// A linear bijection `V ↔ W` carrying `q` to half the cardinality mod 2.
#[derive(Clone, Debug)]
pub struct WBijection {
    /// `v_{1j}` for `j = 2..8`.
    pub generators: [F2Vec; 7],
    v_to_w: [Subset; SIZE],
    w_to_v: [F2Vec; 256],
}

impl WBijection {
    pub fn to_w(&self, x: F2Vec) -> Subset {
        self.v_to_w[x as usize]
    }

    pub fn to_v(&self, s: Subset) -> F2Vec {
        self.w_to_v[w_class(s) as usize]
    }

    /// Action of a permutation of `P8` transported to `V`.
    pub fn transport(&self, perm: &[usize; 8]) -> F2Matrix {
        F2Matrix(std::array::from_fn(|j| {
            self.to_v(permute_subset(perm, self.to_w(1 << j)))
        }))
    }
}

/// Searches for `v_12, ..., v_18` of norm one, pairwise `B = 1`, summing to
/// zero, and labels `V` by even subsets of `{2..8}`.
pub fn build_w_bijection(space: &F2QuadraticSpace) -> Result<WBijection> {
    let ones = space.norm_one_vectors();
    let mut chosen = Vec::new();
    let found = search(space, &ones, 0, &mut chosen);
    let gens: [F2Vec; 7] = found
        .ok_or(Error::SearchFailed)?
        .try_into()
        .map_err(|_| Error::SearchFailed)?;
    let mut v_to_w = [0u8; SIZE];
    let mut w_to_v = [0u8; 256];
    let mut seen = HashSet::new();
    for s in 0..128u8 {
        if s.count_ones() % 2 != 0 {
            continue;
        }
        // bit k of s stands for element k+2
        let v = (0..7)
            .filter(|k| (s >> k) & 1 == 1)
            .fold(0u8, |acc, k| acc ^ gens[k]);
        let subset: Subset = s << 1;
        if !seen.insert(v) || space.q(v) as u32 != (subset.count_ones() / 2) % 2 {
            return Err(Error::SearchFailed);
        }
        v_to_w[v as usize] = subset;
        w_to_v[subset as usize] = v;
    }
    Ok(WBijection {
        generators: gens,
        v_to_w,
        w_to_v,
    })
}

fn search(
    space: &F2QuadraticSpace,
    ones: &[F2Vec],
    start: usize,
    chosen: &mut Vec<F2Vec>,
) -> Option<Vec<F2Vec>> {
    if chosen.len() == 6 {
        let last = chosen.iter().fold(0, |a, &b| a ^ b);
        let ok = space.q(last) == 1 && chosen.iter().all(|&c| space.b(c, last) == 1 && c != last);
        if ok {
            let mut out = chosen.clone();
            out.push(last);
            return Some(out);
        }
        return None;
    }
    for (k, &v) in ones.iter().enumerate().skip(start) {
        if chosen.iter().all(|&c| space.b(c, v) == 1) {
            chosen.push(v);
            if let Some(found) = search(space, ones, k + 1, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

pub fn transvection(space: &F2QuadraticSpace, v: F2Vec) -> F2Matrix {
    F2Matrix(std::array::from_fn(|j| {
        let x = 1u8 << j;
        if space.b(x, v) == 1 {
            x ^ v
        } else {
            x
        }
    }))
}

/// Closure of a generating set under composition.
pub fn generate_group(gens: &[F2Matrix]) -> HashSet<F2Matrix> {
    let mut group = HashSet::new();
    let mut queue = VecDeque::new();
    group.insert(F2Matrix::identity());
    queue.push_back(F2Matrix::identity());
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h) {
                queue.push_back(h);
            }
        }
    }
    group
}

/// `O(V, q)` generated by the transvections in norm-one vectors.
pub fn orthogonal_group(space: &F2QuadraticSpace) -> HashSet<F2Matrix> {
    let gens: Vec<F2Matrix> = space
        .norm_one_vectors()
        .into_iter()
        .map(|v| transvection(space, v))
        .collect();
    generate_group(&gens)
}

pub fn o_vq_order(space: &F2QuadraticSpace) -> usize {
    orthogonal_group(space).len()
}

/// The image of `S8` under the W-bijection, generated by adjacent
/// transpositions.
pub fn transported_s8(wb: &WBijection) -> Vec<F2Matrix> {
    (0..7)
        .map(|k| {
            let mut perm: [usize; 8] = std::array::from_fn(|i| i);
            perm.swap(k, k + 1);
            wb.transport(&perm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        let one_plus_i = GaussInt::one_plus_i();
        assert_eq!(
            reduce_vector(&[one_plus_i.clone(), one_plus_i * GaussInt::new(3, -2)]),
            0
        );
        let e1: Vec<GaussInt> = (0..6)
            .map(|j| GaussInt::new(if j == 0 { 1 } else { 0 }, 0))
            .collect();
        assert_eq!(reduce_vector(&e1), 0b000001);
        assert_eq!(
            reduce_vector(&[GaussInt::new(0, 1), GaussInt::new(2, 1)]),
            0b11
        );
    }

    #[test]
    fn s8_table() {
        let rows: Vec<(usize, usize)> = (0..5)
            .map(|t| {
                let inv = s8_invariants(&cycle_type_with_transpositions(t)).unwrap();
                (inv.dim_fix, inv.norm_one_fixed)
            })
            .collect();
        assert_eq!(rows, vec![(6, 28), (5, 16), (4, 8), (3, 4), (4, 4)]);
        let one = s8_invariants(&cycle_type_with_transpositions(1)).unwrap();
        assert_eq!(one.fixed_even_subsets, 2 * 32);
        assert!(s8_invariants(&[3, 3, 2]).is_err());
        assert!(s8_invariants(&[2, 2]).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_octic_type((4, 8)).unwrap(), OcticType::Type2);
        assert_eq!(classify_octic_type((6, 28)).unwrap(), OcticType::Type0);
        assert_eq!(
            classify_octic_type((4, 4)).unwrap(),
            OcticType::Type4OrAntipodal
        );
        assert!(classify_octic_type((2, 2)).is_err());
    }

    #[test]
    fn identity_reduces_to_identity() {
        let m = crate::matrix::GMat::identity(6);
        assert!(F2Matrix::from_gauss(&m).unwrap().is_identity());
    }
}
