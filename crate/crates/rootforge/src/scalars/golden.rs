use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Golden ratio as a float, `(1+√5)/2`.
pub const TAU_F64: f64 = 1.618_033_988_749_895;

/// An exact element `a + bτ` of ℚ(√5), with `τ² = τ + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GoldenNumber {
    pub a: BigRational,
    pub b: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenNumber { a, b }
    }

    /// `a + bτ` from integers.
    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNumber::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `(an/ad) + (bn/bd)τ`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        GoldenNumber::new(ratio(an, ad), ratio(bn, bd))
    }

    pub fn rational(q: BigRational) -> Self {
        GoldenNumber::new(q, BigRational::zero())
    }

    pub fn zero() -> Self {
        GoldenNumber::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenNumber::from_ints(1, 0)
    }

    pub fn tau() -> Self {
        GoldenNumber::from_ints(0, 1)
    }

    /// `σ = 1 − τ = −1/τ`, the Galois conjugate of τ.
    pub fn sigma() -> Self {
        GoldenNumber::from_ints(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Coefficient of 1.
    pub fn rational_part(&self) -> BigRational {
        self.a.clone()
    }

    /// Coefficient of τ.
    pub fn tau_part(&self) -> BigRational {
        self.b.clone()
    }

    /// Ring automorphism τ ↦ 1−τ.
    pub fn galois_conjugate(&self) -> Self {
        GoldenNumber::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x·σ(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.galois_conjugate();
        Ok(GoldenNumber::new(c.a / &n, c.b / &n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GoldenNumber::new(&self.a * q, &self.b * q)
    }

    /// Exact sign (−1, 0, 1). Writes `x = p + q√5` with `p = a + b/2`, `q = b/2`
    /// and compares `p²` against `5q²` when the signs of `p` and `q` differ.
    pub fn signum(&self) -> i32 {
        let half = ratio(1, 2);
        let p = &self.a + &self.b * &half;
        let q = &self.b * &half;
        let sp = sgn(&p);
        let sq = sgn(&q);
        if sp >= 0 && sq >= 0 {
            return if sp == 0 && sq == 0 { 0 } else { 1 };
        }
        if sp <= 0 && sq <= 0 {
            return -1;
        }
        let lhs = &p * &p;
        let rhs = &q * &q * BigRational::from_integer(5.into());
        let d = sgn(&(lhs - rhs));
        if sp > 0 {
            d
        } else {
            -d
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Float embedding `a + b·(1+√5)/2`.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * TAU_F64
    }

    /// `Some(n)` when the value is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.b.is_zero() && self.a.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = GoldenNumber::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }
}

fn sgn(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, o: &GoldenNumber) -> GoldenNumber {
        let bb = &self.b * &o.b;
        GoldenNumber::new(&self.a * &o.a + &bb, &self.a * &o.b + &self.b * &o.a + bb)
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-&self.a, -&self.b)
    }
}

impl Add for GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, o: GoldenNumber) -> GoldenNumber {
        &self + &o
    }
}

impl Sub for GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, o: GoldenNumber) -> GoldenNumber {
        &self - &o
    }
}

impl Mul for GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, o: GoldenNumber) -> GoldenNumber {
        &self * &o
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

/// Formats a rational as `p/q` with an explicit denominator.
pub fn fmt_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for GoldenNumber {
    /// `p/q+r/s τ`, e.g. `1/2+-1/2 τ` is written `1/2-1/2 τ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{} τ", fmt_ratio(&self.a), sign, fmt_ratio(&self.b.abs()))
    }
}

impl FromStr for GoldenNumber {
    type Err = Error;

    /// Parses the `Display` form, or a bare rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(body) = t.strip_suffix('τ') else {
            return Ok(GoldenNumber::rational(parse_ratio(t)?));
        };
        let body = body.trim_end();
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::InvalidInput(format!("not a golden number: {s:?}")))?;
        let a = parse_ratio(&body[..split])?;
        let b_str = &body[split..];
        let b = parse_ratio(b_str.strip_prefix('+').unwrap_or(b_str))?;
        Ok(GoldenNumber::new(a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenJson {
    a: String,
    b: String,
}

impl Serialize for GoldenNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GoldenJson { a: fmt_ratio(&self.a), b: fmt_ratio(&self.b) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GoldenJson::deserialize(d)?;
        let a = parse_ratio(&j.a).map_err(D::Error::custom)?;
        let b = parse_ratio(&j.b).map_err(D::Error::custom)?;
        Ok(GoldenNumber::new(a, b))
    }
}

impl One for GoldenNumber {
    fn one() -> Self {
        GoldenNumber::one()
    }
}

impl Zero for GoldenNumber {
    fn zero() -> Self {
        GoldenNumber::zero()
    }
    fn is_zero(&self) -> bool {
        GoldenNumber::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_squared() {
        let t = GoldenNumber::tau();
        assert_eq!(&t * &t, GoldenNumber::from_ints(1, 1));
    }

    #[test]
    fn two_minus_tau_times_one_plus_tau() {
        let x = GoldenNumber::from_ints(2, -1);
        let y = GoldenNumber::from_ints(1, 1);
        assert_eq!(&x * &y, GoldenNumber::one());
    }

    #[test]
    fn conjugate_of_tau() {
        assert_eq!(GoldenNumber::tau().galois_conjugate(), GoldenNumber::sigma());
        assert_eq!(GoldenNumber::from_ints(3, 0).galois_conjugate(), GoldenNumber::from_ints(3, 0));
    }

    #[test]
    fn rational_part_examples() {
        assert!(GoldenNumber::tau().rational_part().is_zero());
        assert_eq!(GoldenNumber::from_ints(2, 3).rational_part(), ratio(2, 1));
    }

    #[test]
    fn signs() {
        assert_eq!(GoldenNumber::tau().signum(), 1);
        assert_eq!(GoldenNumber::sigma().signum(), -1);
        assert_eq!(GoldenNumber::from_ints(-1, 1).signum(), 1);
        assert_eq!(GoldenNumber::from_ints(2, -1).signum(), 1);
        assert_eq!(GoldenNumber::from_ints(-2, 1).signum(), -1);
        assert_eq!(GoldenNumber::zero().signum(), 0);
    }

    #[test]
    fn display_and_parse() {
        let x = GoldenNumber::from_ratios(1, 2, -3, 4);
        let s = x.to_string();
        assert_eq!(s, "1/2-3/4 τ");
        assert_eq!(s.parse::<GoldenNumber>().unwrap(), x);
        let y = GoldenNumber::from_ratios(-1, 2, 1, 1);
        assert_eq!(y.to_string().parse::<GoldenNumber>().unwrap(), y);
        assert_eq!("7/3".parse::<GoldenNumber>().unwrap(), GoldenNumber::from_ratios(7, 3, 0, 1));
    }

    #[test]
    fn json_round_trip() {
        let x = GoldenNumber::from_ratios(1, 2, 5, 1);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"a":"1/2","b":"5/1"}"#);
        let back: GoldenNumber = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn inverse() {
        let x = GoldenNumber::from_ratios(3, 2, -7, 5);
        assert_eq!(&x * &x.inv().unwrap(), GoldenNumber::one());
        assert!(GoldenNumber::zero().inv().is_err());
    }
}
