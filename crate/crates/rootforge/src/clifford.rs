//! Positive-definite Clifford algebra Cl(n), n ≤ 5, with dense blade storage.
//!
//! Blade `mask` bit `i` stands for `e_{i+1}`; blades are ascending products of
//! basis vectors and product signs come from counting transpositions.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{dot, Scalar, FLOAT_EPS};

pub const MAX_DIM: usize = 5;

/// Sign of `e_a e_b` for blade masks `a`, `b` (positive-definite metric).
pub fn blade_sign(a: usize, b: usize) -> i32 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Blade name such as `e13`; the empty mask is `1`.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut s = String::from("e");
    for i in 0..MAX_DIM {
        if mask & (1 << i) != 0 {
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<S: Scalar> {
    dim: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "Clifford dimension must be 1..=5");
        Multivector { dim, coeffs: vec![S::zero(); 1 << dim] }
    }

    pub fn scalar(dim: usize, s: S) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[0] = s;
        m
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn blade(dim: usize, mask: usize, s: S) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[mask] = s;
        m
    }

    /// Basis vector `e_{i+1}`.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::blade(dim, 1 << i, S::one())
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<S>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidInput(format!("Clifford dimension {dim} outside 1..=5")));
        }
        if coeffs.len() != 1 << dim {
            return Err(Error::DimensionMismatch(coeffs.len(), 1 << dim));
        }
        Ok(Multivector { dim, coeffs })
    }

    /// Grade-1 element with the given coordinates.
    pub fn vector(coords: &[S]) -> Result<Self> {
        let dim = coords.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidInput(format!("Clifford dimension {dim} outside 1..=5")));
        }
        let mut m = Self::zero(dim);
        for (i, c) in coords.iter().enumerate() {
            m.coeffs[1 << i] = c.clone();
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &S {
        &self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, s: S) {
        self.coeffs[mask] = s;
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0].clone()
    }

    /// Coordinates of the grade-1 part.
    pub fn vector_part(&self) -> Vec<S> {
        (0..self.dim).map(|i| self.coeffs[1 << i].clone()).collect()
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            Err(Error::DimensionMismatch(self.dim, o.dim))
        } else {
            Ok(())
        }
    }

    /// Geometric product.
    pub fn gp(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        Ok(self.mul(o))
    }

    /// Geometric product of elements known to share a dimension.
    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.dim, o.dim);
        let mut out = Self::zero(self.dim);
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x.mul(y);
                let k = i ^ j;
                out.coeffs[k] = if blade_sign(i, j) > 0 {
                    out.coeffs[k].add(&p)
                } else {
                    out.coeffs[k].sub(&p)
                };
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.dim, o.dim);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        Multivector { dim: self.dim, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.dim, o.dim);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        Multivector { dim: self.dim, coeffs }
    }

    pub fn scale(&self, s: &S) -> Self {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().map(|a| a.neg()).collect() }
    }

    fn map_by_mask(&self, f: impl Fn(usize) -> i32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| match f(m) {
                0 => S::zero(),
                s if s > 0 => c.clone(),
                _ => c.neg(),
            })
            .collect();
        Multivector { dim: self.dim, coeffs }
    }

    /// Reversion `Ã`: blade of grade k picks up `(−1)^{k(k−1)/2}`.
    pub fn reverse(&self) -> Self {
        self.map_by_mask(|m| {
            let k = grade_of(m);
            if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
    }

    /// Grade involution: blade of grade k picks up `(−1)^k`.
    pub fn involute(&self) -> Self {
        self.map_by_mask(|m| if grade_of(m).is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn grade(&self, k: usize) -> Self {
        self.map_by_mask(|m| (grade_of(m) == k) as i32)
    }

    pub fn even_part(&self) -> Self {
        self.map_by_mask(|m| grade_of(m).is_multiple_of(2) as i32)
    }

    pub fn odd_part(&self) -> Self {
        self.map_by_mask(|m| (grade_of(m) % 2 == 1) as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.approx_eq(b))
    }

    /// `Some(0)` for even, `Some(1)` for odd, `None` for mixed parity.
    pub fn parity(&self) -> Option<usize> {
        let even = self.even_part().is_zero();
        let odd = self.odd_part().is_zero();
        match (even, odd) {
            (true, true) => Some(0),
            (false, true) => Some(0),
            (true, false) => Some(1),
            (false, false) => None,
        }
    }

    pub fn is_vector(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(m, c)| grade_of(m) == 1 || c.is_zero())
    }

    /// Scalar part of `A Ã`; the squared norm for versors.
    pub fn norm2(&self) -> S {
        // ⟨A Ã⟩₀ = Σ_m c_m² because every blade satisfies e_m ẽ_m = 1.
        self.coeffs.iter().fold(S::zero(), |acc, c| acc.add(&c.mul(c)))
    }

    /// Inner product of two vectors, the scalar part of `x ỹ`; it is the same
    /// coordinate dot product used by root systems.
    pub fn vector_inner(&self, o: &Self) -> S {
        dot(&self.vector_part(), &o.vector_part())
    }

    /// Inverse of a versor, `Ã / (A Ã)`.
    pub fn versor_inverse(&self) -> Result<Self> {
        let n = self.versor_norm2()?;
        let inv = n.inv().ok_or(Error::NotAVersor)?;
        Ok(self.reverse().scale(&inv))
    }

    /// `A Ã` after checking that it is a nonzero scalar.
    fn versor_norm2(&self) -> Result<S> {
        let p = self.reverse().mul(self);
        let n = p.scalar_part();
        let tol_scale = n.to_f64().abs().max(1.0);
        for (m, c) in p.coeffs.iter().enumerate().skip(1) {
            let bad = if S::EXACT { !c.is_zero() } else { c.to_f64().abs() > FLOAT_EPS * tol_scale };
            if bad {
                let _ = m;
                return Err(Error::NotAVersor);
            }
        }
        if n.is_zero() {
            return Err(Error::NotAVersor);
        }
        Ok(n)
    }

    /// `(−1)^k A x Ã / (A Ã)` for a versor `A` built from `k` vectors.
    pub fn sandwich(&self, x: &Self) -> Result<Self> {
        self.check_dim(x)?;
        let k = self.parity().ok_or(Error::NotAVersor)?;
        let n = self.versor_norm2()?;
        let inv = n.inv().ok_or(Error::NotAVersor)?;
        let r = self.mul(x).mul(&self.reverse()).scale(&inv);
        Ok(if k == 1 { r.neg() } else { r })
    }

    /// Grade-1 coordinates of `self` reflected in the hyperplane orthogonal to
    /// `alpha`: `−α x α / (α|α)`.
    pub fn reflect(alpha: &Self, x: &Self) -> Result<Self> {
        alpha.check_dim(x)?;
        let aa = alpha.vector_inner(alpha);
        let inv = aa.inv().ok_or(Error::ZeroVector)?;
        Ok(alpha.mul(x).mul(alpha).scale(&inv).neg())
    }

    /// Orthogonal matrix (row-major, `dim × dim`) of `x ↦ sandwich(A, x)`.
    pub fn versor_matrix(&self) -> Result<Vec<Vec<S>>> {
        let mut cols = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            cols.push(self.sandwich(&Self::basis(self.dim, i))?.vector_part());
        }
        Ok((0..self.dim).map(|r| (0..self.dim).map(|c| cols[c][r].clone()).collect()).collect())
    }

    /// Product of vectors, left to right.
    pub fn product_of_vectors(vs: &[Vec<S>]) -> Result<Self> {
        let first = vs.first().ok_or_else(|| Error::InvalidInput("empty product".into()))?;
        let mut acc = Self::one(first.len());
        for v in vs {
            acc = acc.gp(&Self::vector(v)?)?;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect() }
    }

    /// Nonzero coefficients by blade mask.
    pub fn terms(&self) -> BTreeMap<usize, S> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }
}

impl Multivector<f64> {
    /// `cos θ + sin θ·B` for a unit bivector `B` (`B² = −1`).
    pub fn rotor_exp(b: &Self, theta: f64) -> Result<Self> {
        if !b.sub(&b.grade(2)).is_zero() {
            return Err(Error::NotUnitBivector);
        }
        let sq = b.mul(b);
        if !sq.approx_eq(&Self::scalar(b.dim, -1.0)) {
            return Err(Error::NotUnitBivector);
        }
        Ok(Self::scalar(b.dim, theta.cos()).add(&b.scale(&theta.sin())))
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(m, c)| if *m == 0 { format!("({c})") } else { format!("({c}){}", blade_name(*m)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar + Serialize> Serialize for Multivector<S> {
    /// `{"dim": n, "coeffs": {"mask": scalar, …}}` with masks as decimal strings.
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        struct Coeffs<'a, S: Scalar>(&'a Multivector<S>);
        impl<S: Scalar + Serialize> Serialize for Coeffs<'_, S> {
            fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
                let terms = self.0.terms();
                let mut m = s.serialize_map(Some(terms.len()))?;
                for (k, v) in &terms {
                    m.serialize_entry(&k.to_string(), v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("dim", &self.dim)?;
        m.serialize_entry("coeffs", &Coeffs(self))?;
        m.end()
    }
}
