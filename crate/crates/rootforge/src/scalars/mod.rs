//! Scalar backends: exact ℚ(√5) and tolerance-compared `f64`.

mod golden;
mod pointset;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use golden::{fmt_ratio, parse_ratio, GoldenNumber, TAU_F64};
pub use pointset::PointSet;

/// Tolerance of the Float backend.
pub const FLOAT_EPS: f64 = 1e-9;

/// Decimal digits kept in Float dedup keys.
const KEY_SCALE: f64 = 1e6;

/// Which arithmetic a computation runs on.
#[derive(Clone, Copy, Debug, PartialEq)]
#[derive(Default)]
pub enum ScalarBackend {
    #[default]
    ExactGolden,
    Float { eps: f64 },
}


/// Arithmetic shared by every algebraic module.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Hashable, totally ordered key; equal keys for equal values.
    type Key: Clone + Eq + Hash + Ord + Send + Sync + fmt::Debug;
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// −1, 0 or 1; 0 exactly when `is_zero`.
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    fn key(&self) -> Self::Key;
    /// Extra keys under which an approximately equal value may have been stored.
    fn alt_keys(&self) -> Vec<Self::Key> {
        Vec::new()
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
    fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
    /// Nearest integer when the value is (approximately) integral.
    fn to_integer(&self) -> Option<i64>;
}

impl Scalar for GoldenNumber {
    type Key = GoldenNumber;
    const EXACT: bool = true;

    fn zero() -> Self {
        GoldenNumber::zero()
    }
    fn one() -> Self {
        GoldenNumber::one()
    }
    fn from_i64(n: i64) -> Self {
        GoldenNumber::from_ints(n, 0)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        GoldenNumber::from_ratios(n, d, 0, 1)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        GoldenNumber::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        GoldenNumber::is_zero(self)
    }
    fn signum(&self) -> i32 {
        GoldenNumber::signum(self)
    }
    fn to_f64(&self) -> f64 {
        GoldenNumber::to_f64(self)
    }
    fn key(&self) -> Self::Key {
        self.clone()
    }
    fn to_integer(&self) -> Option<i64> {
        GoldenNumber::to_integer(self).and_then(|n| i64::try_from(n).ok())
    }
}

impl Scalar for f64 {
    type Key = i64;
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn is_zero(&self) -> bool {
        f64::abs(*self) <= FLOAT_EPS
    }
    fn signum(&self) -> i32 {
        if Scalar::is_zero(self) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn key(&self) -> i64 {
        (self * KEY_SCALE).round() as i64
    }
    fn alt_keys(&self) -> Vec<i64> {
        let s = self * KEY_SCALE;
        let frac = s - s.floor();
        let window = 2.0 * FLOAT_EPS * KEY_SCALE;
        if (frac - 0.5).abs() <= window {
            let k = s.round() as i64;
            let other = if s.round() > s { k - 1 } else { k + 1 };
            vec![other]
        } else {
            Vec::new()
        }
    }
    fn to_integer(&self) -> Option<i64> {
        let r = self.round();
        if (self - r).abs() <= 1e-6 {
            Some(r as i64)
        } else {
            None
        }
    }
}

/// Converts a rational to the nearest `f64`.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dot product of coordinate vectors; the one bilinear form used everywhere.
pub fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter().zip(y).fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

pub fn vec_add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

pub fn vec_sub<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

pub fn vec_scale<S: Scalar>(x: &[S], c: &S) -> Vec<S> {
    x.iter().map(|a| a.mul(c)).collect()
}

pub fn vec_neg<S: Scalar>(x: &[S]) -> Vec<S> {
    x.iter().map(|a| a.neg()).collect()
}

pub fn vec_is_zero<S: Scalar>(x: &[S]) -> bool {
    x.iter().all(|a| a.is_zero())
}

pub fn vec_approx_eq<S: Scalar>(x: &[S], y: &[S]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a.approx_eq(b))
}

pub fn vec_to_f64<S: Scalar>(x: &[S]) -> Vec<f64> {
    x.iter().map(|a| a.to_f64()).collect()
}

/// Total order on vectors by coordinate keys; canonical output ordering.
pub fn vec_key<S: Scalar>(x: &[S]) -> Vec<S::Key> {
    x.iter().map(|a| a.key()).collect()
}

/// Reflection of `x` in the hyperplane orthogonal to `alpha`:
/// `x − 2(x|α)/(α|α)·α`.
pub fn reflect_vec<S: Scalar>(alpha: &[S], x: &[S]) -> Option<Vec<S>> {
    let aa = dot(alpha, alpha);
    let c = dot(x, alpha).scale_i64(2).div(&aa)?;
    Some(vec_sub(x, &vec_scale(alpha, &c)))
}
