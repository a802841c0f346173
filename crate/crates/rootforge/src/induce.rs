//! Induction of 4D root systems from 3D spinor groups, the self-dual 2D
//! family, and E8 from the 240 pinors of H3 under a reduced inner product.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::clifford::Multivector;
use crate::cover::{generate_pin, pin_of, AnyPinorGroup, PinorGroup};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::roots::{
    check_axioms, close_catalog, coxeter_matrix, match_cartan, recognize_with_simples, AnyRootSystem, RootSystem,
};
use crate::scalars::{dot, vec_key, GoldenNumber, Scalar};

/// Blade masks in flattening order: 1, e1, e2, e3, e1e2, e2e3, e3e1, e1e2e3.
/// The e3e1 entry is stored under mask e1e3 with a sign flip.
pub const FLAT_ORDER: [(usize, i64); 8] = [(0, 1), (1, 1), (2, 1), (4, 1), (3, 1), (6, 1), (5, -1), (7, 1)];

/// `(a₀, a₁, a₂, a₃)` of a 3D rotor `a₀ + a₁e₂e₃ + a₂e₃e₁ + a₃e₁e₂`.
pub fn spinor4<S: Scalar>(r: &Multivector<S>) -> Result<Vec<S>> {
    if r.dim() != 3 {
        return Err(Error::DimensionMismatch(3, r.dim()));
    }
    if r.parity() == Some(1) {
        return Err(Error::NotUnitRotor);
    }
    Ok(vec![r.coeff(0).clone(), r.coeff(0b110).clone(), r.coeff(0b101).neg(), r.coeff(0b011).clone()])
}

/// Rotor from its four components.
pub fn rotor_from4<S: Scalar>(a: &[S]) -> Multivector<S> {
    let mut r = Multivector::zero(3);
    r.set_coeff(0, a[0].clone());
    r.set_coeff(0b110, a[1].clone());
    r.set_coeff(0b101, a[2].neg());
    r.set_coeff(0b011, a[3].clone());
    r
}

/// `½(R₁R̃₂ + R₂R̃₁)`, a scalar for rotors.
pub fn spinor_inner<S: Scalar>(r1: &Multivector<S>, r2: &Multivector<S>) -> S {
    let s = r1.mul(&r2.reverse()).add(&r2.mul(&r1.reverse()));
    s.scalar_part().mul(&S::from_ratio(1, 2))
}

/// Induced system with its recognized type.
#[derive(Clone, Debug)]
pub struct Induced {
    pub system: AnyRootSystem,
    pub label: String,
}

fn build_system<S: Scalar>(mut roots: Vec<Vec<S>>) -> Result<(RootSystem<S>, String)> {
    check_axioms(&roots).map_err(|e| Error::AxiomViolation(format!("induced set: {e}")))?;
    roots.sort_by_key(|v| vec_key(v));
    let rec = recognize_with_simples(&roots)?;
    let dim = roots[0].len();
    Ok((RootSystem { dim, roots, simples: rec.simples, name: Some(rec.label.clone()) }, rec.label))
}

fn spin_vectors<S: Scalar>(pin: &PinorGroup<S>) -> Result<Vec<Vec<S>>> {
    pin.spin()?.elements().iter().map(spinor4).collect()
}

/// 3D root system → 4D root system of its spinors.
pub fn induce_4d(rs3: &AnyRootSystem) -> Result<Induced> {
    if rs3.dim() != 3 {
        return Err(Error::DimensionMismatch(3, rs3.dim()));
    }
    match pin_of(rs3)? {
        AnyPinorGroup::Exact(g) => {
            let (rs, label) = build_system(spin_vectors(&g)?)?;
            Ok(Induced { system: AnyRootSystem::Exact(rs), label })
        }
        AnyPinorGroup::Float(g) => {
            let (rs, label) = build_system(spin_vectors(&g)?)?;
            Ok(Induced { system: AnyRootSystem::Float(rs), label })
        }
    }
}

/// Rank-2 system → its spinors `a + b e₁e₂` read as points `(a, b)`.
pub fn induce_2d_selfdual(rs2: &AnyRootSystem) -> Result<Induced> {
    if rs2.dim() != 2 || rs2.rank() != 2 {
        return Err(Error::InvalidInput("induce_2d_selfdual needs a rank-2 system in 2D".into()));
    }
    fn pts<S: Scalar>(g: &PinorGroup<S>) -> Result<Vec<Vec<S>>> {
        Ok(g.spin()?.elements().iter().map(|r| vec![r.coeff(0).clone(), r.coeff(0b11).clone()]).collect())
    }
    match pin_of(rs2)? {
        AnyPinorGroup::Exact(g) => {
            let (rs, label) = build_system(pts(&g)?)?;
            Ok(Induced { system: AnyRootSystem::Exact(rs), label })
        }
        AnyPinorGroup::Float(g) => {
            let (rs, label) = build_system(pts(&g)?)?;
            Ok(Induced { system: AnyRootSystem::Float(rs), label })
        }
    }
}

/// Candidate reductions of the ℚ(√5)-valued form on pinors to a rational
/// form, tried in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionScheme {
    /// Rational part of `Σ xᵢyᵢ` over the 8 blade coefficients.
    BladeRationalPart,
    /// As above after doubling all coefficients into ℤ[τ].
    BladeRationalPartIntegral,
    /// Odd part folded onto the even part by `A ↦ −I·A`, scaled by τ, then
    /// the rational part of the form on the 4 resulting golden coordinates.
    HodgeFoldTau,
}

pub const REDUCTION_CHAIN: [ReductionScheme; 3] =
    [ReductionScheme::BladeRationalPart, ReductionScheme::BladeRationalPartIntegral, ReductionScheme::HodgeFoldTau];

impl fmt::Display for ReductionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionScheme::BladeRationalPart => "blade-rational-part",
            ReductionScheme::BladeRationalPartIntegral => "blade-rational-part-integral",
            ReductionScheme::HodgeFoldTau => "hodge-fold-tau",
        };
        f.write_str(s)
    }
}

/// The 8 blade coefficients of a 3D pinor in `FLAT_ORDER`.
pub fn flatten8(p: &Multivector<GoldenNumber>) -> Vec<GoldenNumber> {
    FLAT_ORDER.iter().map(|&(m, s)| if s < 0 { p.coeff(m).neg() } else { p.coeff(m).clone() }).collect()
}

/// Rational coordinates whose standard dot product is the reduced form:
/// `rational_part(xy) = a₁a₂ + b₁b₂` for `x = a₁ + b₁τ`, `y = a₂ + b₂τ`.
fn split_rational(v: &[GoldenNumber]) -> Vec<GoldenNumber> {
    v.iter().map(|g| GoldenNumber::rational(g.a.clone())).chain(v.iter().map(|g| GoldenNumber::rational(g.b.clone()))).collect()
}

fn reduce(p: &Multivector<GoldenNumber>, scheme: ReductionScheme) -> Vec<GoldenNumber> {
    match scheme {
        ReductionScheme::BladeRationalPart => split_rational(&flatten8(p)),
        ReductionScheme::BladeRationalPartIntegral => {
            let two = GoldenNumber::from_ints(2, 0);
            split_rational(&flatten8(p).iter().map(|x| x.mul(&two)).collect::<Vec<_>>())
        }
        ReductionScheme::HodgeFoldTau => {
            let q = if p.parity() == Some(0) {
                spinor4(p).expect("even pinor")
            } else {
                let i = Multivector::blade(3, 0b111, GoldenNumber::one());
                let r = i.neg().mul(p);
                spinor4(&r).expect("−I times an odd pinor is even").iter().map(|c| c.mul(&GoldenNumber::tau())).collect()
            };
            // (a, b) ↦ (a + b, a − b) doubles the form and keeps coordinates rational.
            q.iter()
                .flat_map(|g| {
                    let (a, b) = (GoldenNumber::rational(g.a.clone()), GoldenNumber::rational(g.b.clone()));
                    [a.add(&b), a.sub(&b)]
                })
                .collect()
        }
    }
}

/// Outcome of one reduction attempt.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionAttempt {
    pub scheme: ReductionScheme,
    pub rank: usize,
    pub gram_values: Vec<String>,
    pub accepted: bool,
}

/// E8 from the H3 pinors.
#[derive(Clone, Debug)]
pub struct E8Construction {
    pub system: RootSystem<GoldenNumber>,
    pub scheme: ReductionScheme,
    pub attempts: Vec<ReductionAttempt>,
    pub label: String,
    /// Permutation `p` with `C_catalog[i][j] = C_found[p[i]][p[j]]`.
    pub cartan_permutation: Vec<usize>,
}

/// The 240 elements of Pin(H3) on the exact backend.
pub fn pin_h3() -> Result<PinorGroup<GoldenNumber>> {
    let AnyRootSystem::Exact(h3) = close_catalog("H3")? else {
        return Err(Error::InvalidInput("H3 must be exact".into()));
    };
    generate_pin(&h3.roots)
}

fn attempt(vs: &[Vec<GoldenNumber>], scheme: ReductionScheme) -> ReductionAttempt {
    let r = rank(&vs.to_vec());
    let min = vs.iter().map(|v| dot(v, v)).min().expect("nonempty");
    let scale = GoldenNumber::from_ints(2, 0).div(&min).expect("nonzero norm");
    let mut vals = BTreeSet::new();
    let mut ok = r == 8;
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i..] {
            let g = dot(x, y).mul(&scale);
            match Scalar::to_integer(&g) {
                Some(k) if k.abs() <= 2 => {
                    vals.insert(k);
                }
                _ => ok = false,
            }
        }
        if !ok && vals.len() > 5 {
            break;
        }
    }
    let equal_norms = vs.iter().all(|v| dot(v, v) == min);
    ReductionAttempt {
        scheme,
        rank: r,
        gram_values: vals.iter().map(|k| k.to_string()).collect(),
        accepted: ok && equal_norms,
    }
}

/// Runs the reduction chain on Pin(H3) and returns the first scheme whose
/// reduced form is an E8 root system.
pub fn e8_from_h3() -> Result<E8Construction> {
    let pin = pin_h3()?;
    let mut attempts = Vec::new();
    for scheme in REDUCTION_CHAIN {
        let vs: Vec<Vec<GoldenNumber>> = pin.elements().iter().map(|p| reduce(p, scheme)).collect();
        let a = attempt(&vs, scheme);
        let accepted = a.accepted;
        attempts.push(a);
        if !accepted {
            continue;
        }
        let (system, label) = build_system(vs)?;
        let AnyRootSystem::Exact(e8) = close_catalog("E8")? else {
            return Err(Error::InvalidInput("E8 must be exact".into()));
        };
        let perm = match_cartan(&system.cartan_matrix(), &e8.cartan_matrix()).ok_or(Error::ReducedFormDegenerate)?;
        return Ok(E8Construction { system, scheme, attempts, label, cartan_permutation: perm });
    }
    Err(Error::ReducedFormDegenerate)
}

/// Under the unreduced ℚ(√5) form on the 8 blades, the even and odd pinors
/// are mutually orthogonal and each forms an H4 system.
#[derive(Clone, Debug)]
pub struct UnreducedSplit {
    pub even: RootSystem<GoldenNumber>,
    pub odd: RootSystem<GoldenNumber>,
    pub label: String,
    pub cross_orthogonal: bool,
}

pub fn unreduced_split() -> Result<UnreducedSplit> {
    let pin = pin_h3()?;
    let flat: Vec<Vec<GoldenNumber>> = pin.elements().iter().map(flatten8).collect();
    let (even, odd): (Vec<_>, Vec<_>) = pin.elements().iter().zip(&flat).partition(|(p, _)| p.parity() == Some(0));
    let cross_orthogonal = even.iter().all(|(_, x)| odd.iter().all(|(_, y)| dot(x, y).is_zero()));
    let label = recognize_with_simples(&flat)?.label;
    let even4: Vec<Vec<GoldenNumber>> = even.iter().map(|(p, _)| spinor4(p)).collect::<Result<_>>()?;
    // Odd blades e1, e2, e3, e1e2e3.
    let odd4: Vec<Vec<GoldenNumber>> =
        odd.iter().map(|(p, _)| vec![p.coeff(1).clone(), p.coeff(2).clone(), p.coeff(4).clone(), p.coeff(7).clone()]).collect();
    Ok(UnreducedSplit { even: build_system(even4)?.0, odd: build_system(odd4)?.0, label, cross_orthogonal })
}

/// Reduced Gram matrix (scaled to minimal norm 2) of the E8 simple roots.
pub fn e8_simple_gram(c: &E8Construction) -> Matrix<i64> {
    let s = &c.system.simples;
    s.iter().map(|x| s.iter().map(|y| Scalar::to_integer(&dot(x, y)).unwrap_or(i64::MAX)).collect()).collect()
}

/// Coxeter matrix of a set of simple roots, re-exported for reports.
pub fn simple_coxeter_matrix<S: Scalar>(simples: &[Vec<S>]) -> Vec<Vec<u32>> {
    coxeter_matrix(simples)
}
