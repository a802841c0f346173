//! Coxeter element, Coxeter number, exponents and the invariant-plane
//! factorization of the Coxeter versor.

use std::f64::consts::PI;

use serde::Serialize;

use crate::clifford::{Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, matrix_order, to_nalgebra, trace, transpose, Matrix};
use crate::scalars::{dot, reflect_vec, vec_to_f64, Scalar};

use super::{recognize::is_connected, RootSystem};

const ORDER_CAP: usize = 1000;

/// Coxeter versor `W = α1…αk` (unit simples, only for dim ≤ 5) and its matrix.
#[derive(Clone, Debug)]
pub struct CoxeterElement {
    pub versor: Option<Multivector<f64>>,
    pub matrix: Matrix<f64>,
    pub order: usize,
}

fn unit_simples<S: Scalar>(simples: &[Vec<S>]) -> Result<Vec<Vec<f64>>> {
    simples
        .iter()
        .map(|s| {
            let v = vec_to_f64(s);
            let n = dot(&v, &v).sqrt();
            if !(n > 1e-12) || !n.is_finite() {
                return Err(Error::NonUnitSimples);
            }
            Ok(v.iter().map(|x| x / n).collect())
        })
        .collect()
}

fn reflection_matrix(a: &[f64]) -> Matrix<f64> {
    let n = a.len();
    (0..n)
        .map(|r| {
            let mut e = vec![0.0; n];
            e[r] = 1.0;
            // Rows of a symmetric matrix equal its columns.
            reflect_vec(a, &e).expect("unit root")
        })
        .collect()
}

/// Coxeter element of the ordered simple roots: the geometric product of the
/// unit simples and the matrix `s_1 s_2 ⋯ s_k`.
pub fn coxeter_element<S: Scalar>(simples: &[Vec<S>]) -> Result<CoxeterElement> {
    let units = unit_simples(simples)?;
    let dim = units.first().map(|v| v.len()).ok_or(Error::NonUnitSimples)?;
    let mut matrix = identity::<f64>(dim);
    for a in &units {
        matrix = mat_mul(&matrix, &reflection_matrix(a));
    }
    let versor = if dim <= MAX_DIM {
        let w = Multivector::product_of_vectors(&units)?;
        let m2 = w.versor_matrix()?;
        let agree = m2.iter().zip(&matrix).all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).abs() < 1e-9));
        if !agree {
            return Err(Error::EigensolverFailure("versor and reflection-product matrices disagree".into()));
        }
        Some(w)
    } else {
        None
    };
    let order = matrix_order(&matrix, ORDER_CAP)
        .ok_or_else(|| Error::EigensolverFailure(format!("Coxeter element order exceeds {ORDER_CAP}")))?;
    Ok(CoxeterElement { versor, matrix, order })
}

/// Invariant plane of an orthogonal matrix: orthonormal `u`, `v` with
/// `M u = cos φ u + sin φ v`, `φ ∈ (0, π]`.
#[derive(Clone, Debug, Serialize)]
pub struct RotationPlane {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub angle: f64,
}

/// Exponent multiset of an orthogonal matrix of finite order `h`, read off
/// the traces of its powers:
/// `mult(m) = (1/h) Σ_k tr(M^k) cos(2π m k / h)`. Exponent 0 (fixed space)
/// is excluded.
pub fn exponents_of_matrix(m: &Matrix<f64>, h: usize) -> Result<Vec<u32>> {
    let mut traces = Vec::with_capacity(h);
    let mut p = identity::<f64>(m.len());
    for _ in 0..h {
        traces.push(trace(&p));
        p = mat_mul(&p, m);
    }
    let mut out = Vec::new();
    for e in 1..h {
        let s: f64 = traces
            .iter()
            .enumerate()
            .map(|(k, t)| t * (2.0 * PI * (e * k) as f64 / h as f64).cos())
            .sum::<f64>()
            / h as f64;
        let r = s.round();
        if (s - r).abs() > 1e-6 || r < 0.0 {
            return Err(Error::EigensolverFailure(format!("non-integral multiplicity {s} for exponent {e}")));
        }
        for _ in 0..r as usize {
            out.push(e as u32);
        }
    }
    Ok(out)
}

/// Coxeter number, exponents, degrees and invariant planes.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterElementReport {
    pub h: usize,
    pub exponents: Vec<u32>,
    pub degrees: Vec<u32>,
    pub eigenplanes: Vec<(Vec<f64>, u32)>,
}

pub fn exponents<S: Scalar>(rs: &RootSystem<S>) -> Result<CoxeterElementReport> {
    let ce = coxeter_element(&rs.simples)?;
    let h = ce.order;
    let exps = exponents_of_matrix(&ce.matrix, h)?;
    if exps.len() != rs.rank() {
        return Err(Error::EigensolverFailure(format!("{} exponents for rank {}", exps.len(), rs.rank())));
    }
    let sum: u32 = exps.iter().sum();
    if is_connected(&super::coxeter_matrix(&rs.simples)) && 2 * sum as usize != rs.len() {
        return Err(Error::EigensolverFailure("Σ m_i differs from the number of positive roots".into()));
    }
    let mut eigenplanes = Vec::new();
    if rs.dim <= MAX_DIM {
        for p in rotation_planes(&ce.matrix)? {
            let b = plane_bivector(&p.u, &p.v)?;
            let m = (p.angle * h as f64 / (2.0 * PI)).round() as u32;
            eigenplanes.push((b.coeffs().to_vec(), m));
        }
    }
    let degrees = exps.iter().map(|m| m + 1).collect();
    Ok(CoxeterElementReport { h, exponents: exps, degrees, eigenplanes })
}

fn normalize(v: &[f64]) -> Option<Vec<f64>> {
    let n = dot(v, v).sqrt();
    (n > 1e-9).then(|| v.iter().map(|x| x / n).collect())
}

fn project_out(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut w = v.to_vec();
    for b in basis {
        let c = dot(&w, b);
        for (x, y) in w.iter_mut().zip(b) {
            *x -= c * y;
        }
    }
    w
}

fn apply(m: &Matrix<f64>, v: &[f64]) -> Vec<f64> {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Invariant rotation planes of an orthogonal matrix from the eigenspaces of
/// its symmetric part `(M + Mᵀ)/2`, whose eigenvalue on a plane rotated by φ
/// is cos φ. Fixed directions (φ = 0) are skipped.
pub fn rotation_planes(m: &Matrix<f64>) -> Result<Vec<RotationPlane>> {
    let n = m.len();
    let mt = transpose(m);
    let sym: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| 0.5 * (m[i][j] + mt[i][j])).collect()).collect();
    let eig = nalgebra::SymmetricEigen::new(to_nalgebra(&sym));
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let mut groups: Vec<(f64, Vec<Vec<f64>>)> = Vec::new();
    for i in idx {
        let lam = eig.eigenvalues[i];
        let vec: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        match groups.last_mut() {
            Some((l, vs)) if (lam - *l).abs() < 1e-6 => vs.push(vec),
            _ => groups.push((lam, vec![vec])),
        }
    }
    let mut planes = Vec::new();
    for (lam, vs) in groups {
        if (lam - 1.0).abs() < 1e-6 {
            continue;
        }
        let half_turn = (lam + 1.0).abs() < 1e-6;
        if vs.len() % 2 != 0 && !half_turn {
            return Err(Error::FactorizationFailure(format!("odd-dimensional eigenspace for cos φ = {lam}")));
        }
        // An odd −1 eigenspace leaves one reversed direction without a plane.
        let target = vs.len() - vs.len() % 2;
        let phi = if half_turn { PI } else { lam.clamp(-1.0, 1.0).acos() };
        let mut used: Vec<Vec<f64>> = Vec::new();
        for cand in &vs {
            if used.len() == target {
                break;
            }
            let Some(u) = normalize(&project_out(cand, &used)) else { continue };
            let v = if half_turn {
                let mut b = used.clone();
                b.push(u.clone());
                vs.iter()
                    .find_map(|w| normalize(&project_out(w, &b)))
                    .ok_or_else(|| Error::FactorizationFailure("cannot pair a half-turn direction".into()))?
            } else {
                let mu = apply(m, &u);
                let w: Vec<f64> = mu.iter().zip(&u).map(|(a, b)| (a - phi.cos() * b) / phi.sin()).collect();
                normalize(&w).ok_or_else(|| Error::FactorizationFailure("degenerate plane".into()))?
            };
            used.push(u.clone());
            used.push(v.clone());
            planes.push(RotationPlane { u, v, angle: phi });
        }
        if used.len() != target {
            return Err(Error::FactorizationFailure("eigenspace not exhausted by planes".into()));
        }
    }
    Ok(planes)
}

/// Unit bivector `u ∧ v` for orthonormal `u`, `v`.
fn plane_bivector(u: &[f64], v: &[f64]) -> Result<Multivector<f64>> {
    let mu = Multivector::vector(u)?;
    let mv = Multivector::vector(v)?;
    Ok(mu.mul(&mv).grade(2))
}

/// One commuting rotor factor `exp(−φ/2 · B)` of the Coxeter versor.
#[derive(Clone, Debug, Serialize)]
pub struct RotorFactor {
    pub bivector: Multivector<f64>,
    pub angle: f64,
    pub exponent: u32,
    pub rotor: Multivector<f64>,
}

/// Factorization of a 4D Coxeter versor into commuting rotors on orthogonal
/// planes. Returns the factors and the overall sign `±1` with
/// `W = sign · Π factors`.
pub fn bivector_factorization(w: &Multivector<f64>, h: usize) -> Result<(Vec<RotorFactor>, i32)> {
    if w.dim() != 4 {
        return Err(Error::FactorizationFailure(format!("expected a 4D versor, got dim {}", w.dim())));
    }
    let m = w.versor_matrix()?;
    let planes = rotation_planes(&m)?;
    let mut factors = Vec::new();
    for p in planes {
        let b = plane_bivector(&p.u, &p.v)?;
        let rotor = Multivector::rotor_exp(&b, -p.angle / 2.0)?;
        let exponent = (p.angle * h as f64 / (2.0 * PI)).round() as u32;
        factors.push(RotorFactor { bivector: b, angle: p.angle, exponent, rotor });
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            let ab = a.bivector.mul(&b.bivector);
            let ba = b.bivector.mul(&a.bivector);
            if !ab.sub(&ba).is_zero() {
                return Err(Error::FactorizationFailure("plane bivectors do not commute".into()));
            }
        }
    }
    let mut prod = Multivector::one(4);
    for f in &factors {
        prod = prod.mul(&f.rotor);
    }
    let diff = |x: &Multivector<f64>| x.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
    if diff(&prod.sub(w)) <= 1e-9 {
        Ok((factors, 1))
    } else if diff(&prod.add(w)) <= 1e-9 {
        Ok((factors, -1))
    } else {
        Err(Error::FactorizationFailure("product of factors does not reconstruct ±W".into()))
    }
}
