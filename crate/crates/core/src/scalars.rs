//! Exact scalars: Gaussian integers, Gaussian rationals and the quadratic
//! extension `Q(i)(√2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Ring operations shared by every scalar type used in generic matrix code.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;
}

impl FieldScalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: BigInt::zero(),
        }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn one_plus_i() -> Self {
        GaussInt::new(1, 1)
    }

    /// The four units `1, i, -1, -i`, in that order.
    pub fn units() -> [GaussInt; 4] {
        [
            GaussInt::new(1, 0),
            GaussInt::new(0, 1),
            GaussInt::new(-1, 0),
            GaussInt::new(0, -1),
        ]
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn divisible_by_one_plus_i(&self) -> bool {
        (&self.re + &self.im).is_even()
    }

    /// Residue in `Z[i]/(1+i) = F2`.
    pub fn mod_one_plus_i(&self) -> u8 {
        if self.divisible_by_one_plus_i() {
            0
        } else {
            1
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussInt {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let p = self * &d.conj();
        if (&p.re % &n).is_zero() && (&p.im % &n).is_zero() {
            Some(GaussInt {
                re: p.re / &n,
                im: p.im / &n,
            })
        } else {
            None
        }
    }

    /// Euclidean division with the quotient rounded to the nearest lattice point,
    /// so that `norm(rem) <= norm(d) / 2`.
    pub fn div_rem(&self, d: &GaussInt) -> (GaussInt, GaussInt) {
        let n = d.norm();
        assert!(!n.is_zero(), "division by zero Gaussian integer");
        let p = self * &d.conj();
        let two_n: BigInt = &n * 2;
        let round = |x: &BigInt| -> BigInt { (x + x + &n).div_floor(&two_n) };
        let q = GaussInt {
            re: round(&p.re),
            im: round(&p.im),
        };
        let r = self - &(&q * d);
        (q, r)
    }

    /// A greatest common divisor, normalized to the associate in the first
    /// quadrant (`re > 0, im >= 0`) or zero.
    pub fn gcd(&self, other: &GaussInt) -> GaussInt {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.normalize_associate()
    }

    pub fn normalize_associate(&self) -> GaussInt {
        if self.is_zero() {
            return self.clone();
        }
        for u in GaussInt::units() {
            let z = self * &u;
            if z.re.is_positive() && !z.im.is_negative() {
                return z;
            }
        }
        unreachable!("some associate lies in the first quadrant")
    }

    pub fn to_rat(&self) -> GaussRat {
        GaussRat::from_int(self.clone())
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::real(v)
    }
}

impl From<(i64, i64)> for GaussInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussInt::new(re, im)
    }
}

impl From<BigInt> for GaussInt {
    fn from(v: BigInt) -> Self {
        GaussInt::real(v)
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
}

impl Add<&GaussInt> for &GaussInt {
    type Output = GaussInt;
    fn add(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub<&GaussInt> for &GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul<&GaussInt> for &GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl Add<&$t> for $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                &self + o
            }
        }
        impl Sub<&$t> for $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                &self - o
            }
        }
        impl Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                &self * o
            }
        }
    };
}

forward_owned_ops!(GaussInt);

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if self.im == -BigInt::one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_positive() {
            write!(f, "{}+{}", self.re, im)
        } else {
            write!(f, "{}{}", self.re, im)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `#[serde(with = "int_vec")]` for `Vec<BigInt>` fields.
pub mod int_vec {
    use super::JsonInt;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<JsonInt> = v.iter().cloned().map(JsonInt).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

/// JSON integer wrapper: plain numbers when they fit in 64 bits, decimal
/// strings otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse().map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (JsonInt(self.re.clone()), JsonInt(self.im.clone())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (re, im) = <(JsonInt, JsonInt)>::deserialize(d)?;
        Ok(GaussInt { re: re.0, im: im.0 })
    }
}

/// An element of `Q(i)`, kept as `num / den` with `den > 0` and
/// `gcd(re(num), im(num), den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    num: GaussInt,
    den: BigInt,
}

impl GaussRat {
    pub fn new(num: GaussInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = GaussRat { num, den };
        r.reduce();
        r
    }

    pub fn from_int(num: GaussInt) -> Self {
        GaussRat {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        GaussRat::new(GaussInt::real(q.numer().clone()), q.denom().clone())
    }

    pub fn numer(&self) -> &GaussInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = -&self.num;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = self.num.re.gcd(&self.num.im).gcd(&self.den);
        if !g.is_one() {
            self.num = GaussInt {
                re: &self.num.re / &g,
                im: &self.num.im / &g,
            };
            self.den = &self.den / &g;
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    pub fn as_gauss_int(&self) -> Option<GaussInt> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// The value as a rational number, when the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.im.is_zero() {
            Some(BigRational::new(self.num.re.clone(), self.den.clone()))
        } else {
            None
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::from_int(GaussInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_int(GaussInt::one())
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            self.num.scale(&o.den) + o.num.scale(&self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            self.num.scale(&o.den) - o.num.scale(&self.den),
            &self.den * &o.den,
        )
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned_ops!(GaussRat);

impl FieldScalar for GaussRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(z/d) = d·conj(z)/|z|²
        let n = self.num.norm();
        Some(GaussRat::new(self.num.conj().scale(&self.den), n))
    }
}

impl From<GaussInt> for GaussRat {
    fn from(z: GaussInt) -> Self {
        GaussRat::from_int(z)
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::from_int(GaussInt::real(v))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.re.is_zero() || self.num.im.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct GaussRatRepr {
    num: GaussInt,
    den: JsonInt,
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussRatRepr {
            num: self.num.clone(),
            den: JsonInt(self.den.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GaussRatRepr::deserialize(d)?;
        if !r.den.0.is_positive() {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(GaussRat::new(r.num, r.den.0))
    }
}

/// `a + b·√2` with `a, b` in `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtScalar {
    pub a: GaussRat,
    pub b: GaussRat,
}

impl ExtScalar {
    pub fn new(a: GaussRat, b: GaussRat) -> Self {
        ExtScalar { a, b }
    }

    pub fn sqrt2() -> Self {
        ExtScalar {
            a: GaussRat::zero(),
            b: GaussRat::one(),
        }
    }

    pub fn from_gauss(z: GaussInt) -> Self {
        ExtScalar {
            a: GaussRat::from_int(z),
            b: GaussRat::zero(),
        }
    }

    pub fn from_rat(a: GaussRat) -> Self {
        ExtScalar {
            a,
            b: GaussRat::zero(),
        }
    }

    /// The positive square root of a positive rational, provided it lies in
    /// `Q(√2)`, i.e. the rational is `m²` or `2·m²`.
    pub fn sqrt_of_rational(q: &BigRational) -> Option<ExtScalar> {
        if !q.is_positive() {
            return if q.is_zero() {
                Some(ExtScalar::zero())
            } else {
                None
            };
        }
        let exact_sqrt = |x: &BigRational| -> Option<BigRational> {
            let n = x.numer().sqrt();
            let d = x.denom().sqrt();
            if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
                Some(BigRational::new(n, d))
            } else {
                None
            }
        };
        if let Some(r) = exact_sqrt(q) {
            return Some(ExtScalar::from_rat(GaussRat::from_ratio(&r)));
        }
        let half = q / BigRational::from_integer(BigInt::from(2));
        exact_sqrt(&half).map(|r| ExtScalar {
            a: GaussRat::zero(),
            b: GaussRat::from_ratio(&r),
        })
    }

    pub fn is_rational_part_only(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_gauss_int(&self) -> Option<GaussInt> {
        if self.b.is_zero() {
            self.a.as_gauss_int()
        } else {
            None
        }
    }

    /// Galois conjugate `a - b√2`.
    pub fn sqrt2_conj(&self) -> Self {
        ExtScalar {
            a: self.a.clone(),
            b: -&self.b,
        }
    }
}

impl Zero for ExtScalar {
    fn zero() -> Self {
        ExtScalar {
            a: GaussRat::zero(),
            b: GaussRat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for ExtScalar {
    fn one() -> Self {
        ExtScalar {
            a: GaussRat::one(),
            b: GaussRat::zero(),
        }
    }
}

impl Add<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, o: &ExtScalar) -> ExtScalar {
        ExtScalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, o: &ExtScalar) -> ExtScalar {
        ExtScalar {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul<&ExtScalar> for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, o: &ExtScalar) -> ExtScalar {
        let two = GaussRat::from(2);
        ExtScalar {
            a: &self.a * &o.a + &two * &(&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

forward_owned_ops!(ExtScalar);

impl FieldScalar for ExtScalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√2)(a - b√2) = a² - 2b², nonzero since √2 ∉ Q(i)
        let two = GaussRat::from(2);
        let n = &self.a * &self.a - &two * &(&self.b * &self.b);
        let ni = n.inv()?;
        Some(ExtScalar {
            a: &self.a * &ni,
            b: -&(&self.b * &ni),
        })
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·√2", self.b),
            (false, false) => write!(f, "{} + {}·√2", self.a, self.b),
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn basic_gauss_arithmetic() {
        assert_eq!(g(1, 1) * g(1, -1), g(2, 0));
        assert_eq!(g(3, -2).conj(), g(3, 2));
        let units: Vec<_> = GaussInt::units()
            .into_iter()
            .filter(|u| u.norm().is_one())
            .collect();
        assert_eq!(units.len(), 4);
    }

    #[test]
    fn one_plus_i_divisibility() {
        assert!(g(1, 1).divisible_by_one_plus_i());
        assert!(!g(1, 0).divisible_by_one_plus_i());
        assert!(g(2, 0).divisible_by_one_plus_i());
        assert_eq!(g(0, -1) * g(1, 1) * g(1, 1), g(2, 0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(0, 0).to_string(), "0");
        assert_eq!(g(0, 1).to_string(), "i");
        assert_eq!(g(1, -1).to_string(), "1-i");
        assert_eq!(g(-3, 2).to_string(), "-3+2i");
        assert_eq!(
            GaussRat::new(g(1, 1), BigInt::from(2)).to_string(),
            "(1+i)/2"
        );
    }

    #[test]
    fn gcd_and_division() {
        let a = g(3, 1) * g(2, -1);
        let b = g(3, 1) * g(1, 4);
        let d = a.gcd(&b);
        assert!(a.div_exact(&d).is_some() && b.div_exact(&d).is_some());
        assert_eq!(d, g(3, 1).normalize_associate());
        let (q, r) = g(7, 3).div_rem(&g(2, 1));
        assert_eq!(q * g(2, 1) + r.clone(), g(7, 3));
        assert!(r.norm() * 2 <= g(2, 1).norm());
    }

    #[test]
    fn gauss_rat_canonical() {
        let x = GaussRat::new(g(2, 4), BigInt::from(-6));
        assert_eq!(x.numer(), &g(-1, -2));
        assert_eq!(x.denom(), &BigInt::from(3));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, GaussRat::one());
    }

    #[test]
    fn ext_scalar_inverse_and_sqrt() {
        let one = GaussRat::one();
        let x = ExtScalar::new(one.clone(), one.clone());
        let xi = x.inv().unwrap();
        assert_eq!(&x * &xi, ExtScalar::one());
        let s = ExtScalar::sqrt_of_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(
            &s * &s,
            ExtScalar::from_rat(GaussRat::new(g(1, 0), BigInt::from(2)))
        );
        assert!(ExtScalar::sqrt_of_rational(&BigRational::from_integer(3.into())).is_none());
    }

    #[test]
    fn serde_shapes() {
        let z = g(3, -2);
        assert_eq!(serde_json::to_string(&z).unwrap(), "[3,-2]");
        let r = GaussRat::new(g(1, 1), BigInt::from(2));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"num":[1,1],"den":2}"#
        );
        let e = ExtScalar::new(r.clone(), GaussRat::zero());
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"a":{"num":[1,1],"den":2},"b":{"num":[0,0],"den":1}}"#
        );
        let back: ExtScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
