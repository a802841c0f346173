//! Standard simple roots. H-family and ADE-family entries are exact; B3, F4
//! and generic I2(n) use floats because they need √2 or cos(π/n).

use crate::error::{Error, Result};
use crate::scalars::GoldenNumber;

/// Simple roots over either backend.
#[derive(Clone, Debug)]
pub enum Simples {
    Exact(Vec<Vec<GoldenNumber>>),
    Float(Vec<Vec<f64>>),
}

impl Simples {
    pub fn len(&self) -> usize {
        match self {
            Simples::Exact(v) => v.len(),
            Simples::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Simples::Exact(v) => v.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect(),
            Simples::Float(v) => v.clone(),
        }
    }
}

/// Parsed catalog name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogName {
    A1,
    I2(u32),
    H2,
    A3,
    B3,
    H3,
    A4,
    D4,
    D6,
    F4,
    H4,
    E8,
    A1xI2(u32),
}

impl CatalogName {
    pub fn parse(name: &str) -> Result<Self> {
        let n = name.trim().replace(['x', 'X', '*'], "×");
        let unknown = || Error::UnknownName(name.to_string());
        let i2 = |s: &str| -> Result<u32> {
            let inner = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
            let k: u32 = inner.trim().parse().map_err(|_| unknown())?;
            if k < 2 {
                return Err(Error::InvalidInput(format!("I2(n) needs n ≥ 2, got {k}")));
            }
            Ok(k)
        };
        Ok(match n.as_str() {
            "A1" => CatalogName::A1,
            "H2" => CatalogName::H2,
            "A3" => CatalogName::A3,
            "B3" => CatalogName::B3,
            "H3" => CatalogName::H3,
            "A4" => CatalogName::A4,
            "D4" => CatalogName::D4,
            "D6" => CatalogName::D6,
            "F4" => CatalogName::F4,
            "H4" => CatalogName::H4,
            "E8" => CatalogName::E8,
            "A1×A1" => CatalogName::I2(2),
            "A1×A1×A1" => CatalogName::A1xI2(2),
            s if s.starts_with("I2(") => CatalogName::I2(i2(s)?),
            s if s.starts_with("A1×I2(") => CatalogName::A1xI2(i2(&s["A1×".len()..])?),
            _ => return Err(unknown()),
        })
    }

    pub fn label(&self) -> String {
        match self {
            CatalogName::A1 => "A1".into(),
            CatalogName::I2(n) => format!("I2({n})"),
            CatalogName::H2 => "H2".into(),
            CatalogName::A3 => "A3".into(),
            CatalogName::B3 => "B3".into(),
            CatalogName::H3 => "H3".into(),
            CatalogName::A4 => "A4".into(),
            CatalogName::D4 => "D4".into(),
            CatalogName::D6 => "D6".into(),
            CatalogName::F4 => "F4".into(),
            CatalogName::H4 => "H4".into(),
            CatalogName::E8 => "E8".into(),
            CatalogName::A1xI2(n) => format!("A1×I2({n})"),
        }
    }

    /// Label `recognize` returns for the closure of these simples.
    pub fn recognized_label(&self) -> String {
        match self {
            CatalogName::H2 => "I2(5)".into(),
            CatalogName::I2(2) => "A1×A1".into(),
            CatalogName::A1xI2(2) => "A1×A1×A1".into(),
            other => other.label(),
        }
    }
}

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

fn half(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ratios(a, 2, b, 2)
}

fn int_vec(v: &[i64]) -> Vec<GoldenNumber> {
    v.iter().map(|&x| g(x, 0)).collect()
}

fn unit_diff(n: usize, i: usize, j: usize, sign: i64) -> Vec<GoldenNumber> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v[j] = sign;
    int_vec(&v)
}

/// H3 simples α1 = e2, α2 = ½(σ, −1, −τ), α3 = e3 with σ = 1 − τ; diagram
/// α1 –3– α2 –5– α3, all unit length.
fn h3() -> Vec<Vec<GoldenNumber>> {
    vec![
        int_vec(&[0, 1, 0]),
        vec![half(1, -1), half(-1, 0), half(0, -1)],
        int_vec(&[0, 0, 1]),
    ]
}

/// H4 simples, unit length, diagram α1 –3– α2 –3– α3 –5– α4.
fn h4() -> Vec<Vec<GoldenNumber>> {
    let s = |a: i64, b: i64| half(a, b);
    // σ = 1 − τ, so −σ/2 = (−1 + τ)/2 and −τ/2 = (0 − τ)/2.
    vec![
        vec![s(-1, 1), s(0, -1), s(0, 0), s(-1, 0)],
        vec![s(0, 0), s(-1, 1), s(0, -1), s(1, 0)],
        vec![s(0, 0), s(1, 0), s(-1, 1), s(0, -1)],
        vec![s(0, 0), s(-1, 0), s(-1, 1), s(0, 1)],
    ]
}

/// E8 simples labelled as a chain α1 … α7 with α8 attached to α5, so the
/// highest root is 2α1+3α2+4α3+5α4+6α5+4α6+2α7+3α8.
fn e8() -> Vec<Vec<GoldenNumber>> {
    let h = |v: [i64; 8]| -> Vec<GoldenNumber> { v.iter().map(|&x| GoldenNumber::from_ratios(x, 2, 0, 1)).collect() };
    let d = |i: usize, j: usize, s: i64| unit_diff(8, i, j, s);
    vec![
        d(6, 5, -1),                      // e7 − e6
        d(5, 4, -1),                      // e6 − e5
        d(4, 3, -1),                      // e5 − e4
        d(3, 2, -1),                      // e4 − e3
        d(2, 1, -1),                      // e3 − e2
        d(1, 0, -1),                      // e2 − e1
        h([1, -1, -1, -1, -1, -1, -1, 1]), // ½(e1 + e8 − e2 − … − e7)
        d(0, 1, 1),                       // e1 + e2
    ]
}

fn i2_float(n: u32) -> Vec<Vec<f64>> {
    let a = std::f64::consts::PI / n as f64;
    vec![vec![1.0, 0.0], vec![-a.cos(), a.sin()]]
}

/// Standard simple roots for a catalog name.
pub fn catalog(name: &str) -> Result<Simples> {
    catalog_of(&CatalogName::parse(name)?)
}

pub fn catalog_of(name: &CatalogName) -> Result<Simples> {
    Ok(match name {
        CatalogName::A1 => Simples::Exact(vec![int_vec(&[1])]),
        CatalogName::I2(n) => Simples::Float(i2_float(*n)),
        CatalogName::H2 => Simples::Exact(h3()[1..].to_vec()),
        CatalogName::A3 => Simples::Exact(vec![
            unit_diff(3, 1, 2, -1),
            unit_diff(3, 0, 1, -1),
            unit_diff(3, 1, 2, 1),
        ]),
        CatalogName::B3 => Simples::Float(vec![
            vec![1.0, -1.0, 0.0],
            vec![0.0, 1.0, -1.0],
            vec![0.0, 0.0, 1.0],
        ]),
        CatalogName::H3 => Simples::Exact(h3()),
        CatalogName::A4 => Simples::Exact((0..4).map(|i| unit_diff(5, i, i + 1, -1)).collect()),
        CatalogName::D4 => Simples::Exact(vec![
            unit_diff(4, 0, 1, -1),
            unit_diff(4, 1, 2, -1),
            unit_diff(4, 2, 3, -1),
            unit_diff(4, 2, 3, 1),
        ]),
        CatalogName::D6 => {
            let mut v: Vec<_> = (0..5).map(|i| unit_diff(6, i, i + 1, -1)).collect();
            v.push(unit_diff(6, 4, 5, 1));
            Simples::Exact(v)
        }
        CatalogName::F4 => Simples::Float(vec![
            vec![0.0, 1.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.5, -0.5, -0.5, -0.5],
        ]),
        CatalogName::H4 => Simples::Exact(h4()),
        CatalogName::E8 => Simples::Exact(e8()),
        CatalogName::A1xI2(n) => {
            let i2 = i2_float(*n);
            Simples::Float(vec![
                vec![0.0, 0.0, 1.0],
                vec![i2[0][0], i2[0][1], 0.0],
                vec![i2[1][0], i2[1][1], 0.0],
            ])
        }
    })
}

/// Names accepted by `catalog` (with `n` standing for any integer ≥ 2).
pub const CATALOG_NAMES: &[&str] =
    &["A1", "I2(n)", "H2", "A3", "B3", "H3", "A4", "D4", "D6", "F4", "H4", "E8", "A1×I2(n)"];
