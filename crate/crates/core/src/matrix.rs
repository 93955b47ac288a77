//! Dense matrices over exact scalars.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalars::{FieldScalar, GaussInt, JsonInt, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type GMat = Mat<GaussInt>;
pub type ZMat = Mat<BigInt>;

impl<T: Clone> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix rows");
        Mat {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let m = cols.len();
        let n = cols.first().map_or(0, |c| c.len());
        Mat::from_fn(n, m, |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn to_cols(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        Mat::from_fn(self.rows, o.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * o.get(k, c).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc + self.get(r, k).clone() * x.clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() + o.get(r, c).clone()
        })
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() - o.get(r, c).clone()
        })
    }

    pub fn scale(&self, k: &T) -> Mat<T> {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn neg(&self) -> Mat<T> {
        self.map(|x| -x.clone())
    }

    pub fn block_diag(blocks: &[Mat<T>]) -> Mat<T> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl<T: FieldScalar> Mat<T> {
    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                for k in 0..n {
                    let t = a.get(p, k).clone();
                    a.set(p, k, a.get(c, k).clone());
                    a.set(c, k, t);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = det * piv.clone();
            let pinv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Mat<T> = Mat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for k in 0..n {
                    let t = a.get(p, k).clone();
                    a.set(p, k, a.get(c, k).clone());
                    a.set(c, k, t);
                    let t = inv.get(p, k).clone();
                    inv.set(p, k, inv.get(c, k).clone());
                    inv.set(c, k, t);
                }
            }
            let pinv = a.get(c, c).inv()?;
            for k in 0..n {
                a.set(c, k, a.get(c, k).clone() * pinv.clone());
                inv.set(c, k, inv.get(c, k).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for k in 0..n {
                    a.set(r, k, a.get(r, k).clone() - f.clone() * a.get(c, k).clone());
                    inv.set(
                        r,
                        k,
                        inv.get(r, k).clone() - f.clone() * inv.get(c, k).clone(),
                    );
                }
            }
        }
        Some(inv)
    }
}

impl GMat {
    pub fn from_pairs(rows: &[&[(i64, i64)]]) -> GMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&p| GaussInt::from(p)).collect())
                .collect(),
        )
    }

    pub fn conj(&self) -> GMat {
        self.map(GaussInt::conj)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> GMat {
        self.conj().transpose()
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    /// Determinant computed over `Q(i)`; always a Gaussian integer.
    pub fn det_gauss(&self) -> GaussInt {
        let q = self.map(GaussInt::to_rat).det();
        q.as_gauss_int()
            .expect("determinant of an integral matrix is integral")
    }

    pub fn to_rat(&self) -> Mat<crate::scalars::GaussRat> {
        self.map(GaussInt::to_rat)
    }
}

impl ZMat {
    pub fn from_i64(rows: &[&[i64]]) -> ZMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> Mat<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn det_int(&self) -> BigInt {
        let d = self.to_rat().det();
        d.to_integer()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                let s = &cells[r * self.cols + c];
                let pad = width - s.chars().count();
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}{}", " ".repeat(pad), s)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl Serialize for GMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussInt>>::deserialize(d)?;
        check_rect(&rows).map_err(serde::de::Error::custom)?;
        Ok(Mat::from_rows(rows))
    }
}

impl Serialize for ZMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(JsonInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<JsonInt>>::deserialize(d)?;
        check_rect(&rows).map_err(serde::de::Error::custom)?;
        Ok(Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
        ))
    }
}

fn check_rect<T>(rows: &[Vec<T>]) -> Result<(), String> {
    let m = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != m) {
        return Err("ragged matrix".into());
    }
    Ok(())
}

/// `x† G y` for Gaussian vectors.
pub fn hermitian_form(g: &GMat, x: &[GaussInt], y: &[GaussInt]) -> GaussInt {
    let gy = g.mul_vec(y);
    let mut acc = GaussInt::zero();
    for (a, b) in x.iter().zip(&gy) {
        if a.is_zero() {
            continue;
        }
        acc = acc + a.conj() * b;
    }
    acc
}

/// `xᵀ G y` for integer vectors.
pub fn bilinear_form(g: &ZMat, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        let mut row = BigInt::zero();
        for j in 0..y.len() {
            if !y[j].is_zero() {
                row += g.get(i, j) * &y[j];
            }
        }
        acc += &x[i] * row;
    }
    acc
}
