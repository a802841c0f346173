//! Root systems: closure from simple roots, axioms, Cartan matrices, highest
//! roots, type recognition and Coxeter-element data.

mod catalog;
mod coxeter;
mod recognize;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{coords_in_basis, rank, Matrix};
use crate::scalars::{
    dot, reflect_vec, vec_is_zero, vec_key, vec_neg, vec_sub, GoldenNumber, PointSet, Scalar,
};

pub use catalog::{catalog, catalog_of, CatalogName, Simples, CATALOG_NAMES};
pub use coxeter::{
    bivector_factorization, coxeter_element, exponents, exponents_of_matrix, rotation_planes,
    CoxeterElement, CoxeterElementReport, RotationPlane, RotorFactor,
};
pub use recognize::{coxeter_matrix, diagram_dot, match_cartan, recognize, recognize_with_simples, Recognition};

/// Default cap on the number of roots produced by `close`.
pub const DEFAULT_ROOT_CAP: usize = 10_000;

/// A finite root system with an ordered list of simple roots.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem<S: Scalar> {
    pub dim: usize,
    pub roots: Vec<Vec<S>>,
    pub simples: Vec<Vec<S>>,
    pub name: Option<String>,
}

impl<S: Scalar> RootSystem<S> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn point_set(&self) -> PointSet<S> {
        PointSet::from_points(self.roots.iter().cloned())
    }

    /// Coefficients of `v` in the simple-root basis.
    pub fn simple_coords(&self, v: &[S]) -> Option<Vec<S>> {
        coords_in_basis(&self.simples, v)
    }

    pub fn cartan_matrix(&self) -> Matrix<S> {
        cartan_matrix(&self.simples)
    }

    pub fn to_f64(&self) -> RootSystem<f64> {
        let conv = |vs: &Vec<Vec<S>>| vs.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
        RootSystem { dim: self.dim, roots: conv(&self.roots), simples: conv(&self.simples), name: self.name.clone() }
    }

    /// Checks both root-system axioms and the same-sign expansion property.
    pub fn check_axioms(&self) -> Result<()> {
        check_axioms(&self.roots)?;
        for r in &self.roots {
            let c = self
                .simple_coords(r)
                .ok_or_else(|| Error::AxiomViolation("root outside the span of the simple roots".into()))?;
            let pos = c.iter().all(|x| x.signum() >= 0);
            let neg = c.iter().all(|x| x.signum() <= 0);
            if !pos && !neg {
                return Err(Error::AxiomViolation("root with mixed-sign simple coefficients".into()));
            }
        }
        Ok(())
    }

    /// Roots with nonnegative simple coefficients, with their coefficients.
    pub fn positive_roots(&self) -> Vec<(Vec<S>, Vec<S>)> {
        self.roots
            .iter()
            .filter_map(|r| {
                let c = self.simple_coords(r)?;
                c.iter().all(|x| x.signum() >= 0).then(|| (r.clone(), c))
            })
            .collect()
    }
}

/// Root system over either backend.
#[derive(Clone, Debug)]
pub enum AnyRootSystem {
    Exact(RootSystem<GoldenNumber>),
    Float(RootSystem<f64>),
}

impl AnyRootSystem {
    pub fn len(&self) -> usize {
        match self {
            AnyRootSystem::Exact(r) => r.len(),
            AnyRootSystem::Float(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyRootSystem::Exact(r) => r.dim,
            AnyRootSystem::Float(r) => r.dim,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AnyRootSystem::Exact(r) => r.rank(),
            AnyRootSystem::Float(r) => r.rank(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            AnyRootSystem::Exact(r) => r.name.as_deref(),
            AnyRootSystem::Float(r) => r.name.as_deref(),
        }
    }

    pub fn to_f64(&self) -> RootSystem<f64> {
        match self {
            AnyRootSystem::Exact(r) => r.to_f64(),
            AnyRootSystem::Float(r) => r.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyRootSystem::Exact(_))
    }

    pub fn check_axioms(&self) -> Result<()> {
        match self {
            AnyRootSystem::Exact(r) => r.check_axioms(),
            AnyRootSystem::Float(r) => r.check_axioms(),
        }
    }

    pub fn recognize(&self) -> Result<String> {
        match self {
            AnyRootSystem::Exact(r) => recognize(&r.roots),
            AnyRootSystem::Float(r) => recognize(&r.roots),
        }
    }

    pub fn simples_f64(&self) -> Vec<Vec<f64>> {
        self.to_f64().simples
    }
}

/// Closure of a catalog entry, labelled with its catalog name.
pub fn close_catalog(name: &str) -> Result<AnyRootSystem> {
    let parsed = CatalogName::parse(name)?;
    let label = Some(parsed.label());
    Ok(match catalog_of(&parsed)? {
        Simples::Exact(s) => {
            let mut rs = close(&s, DEFAULT_ROOT_CAP)?;
            rs.name = label;
            AnyRootSystem::Exact(rs)
        }
        Simples::Float(s) => {
            let mut rs = close(&s, DEFAULT_ROOT_CAP)?;
            rs.name = label;
            AnyRootSystem::Float(rs)
        }
    })
}

/// Smallest reflection-closed set containing `simples`: a worklist that
/// reflects every new root in each simple root. Output sorted by coordinate
/// keys.
pub fn close<S: Scalar>(simples: &[Vec<S>], cap: usize) -> Result<RootSystem<S>> {
    let dim = simples.first().map(|v| v.len()).ok_or_else(|| Error::InvalidInput("no simple roots".into()))?;
    if simples.iter().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(dim, simples.iter().map(|v| v.len()).find(|&l| l != dim).unwrap_or(dim)));
    }
    if simples.iter().any(|v| vec_is_zero(v)) {
        return Err(Error::ZeroVector);
    }
    if rank(&simples.to_vec()) != simples.len() {
        return Err(Error::InvalidInput("simple roots are linearly dependent".into()));
    }
    let mut set = PointSet::new();
    let mut queue = Vec::new();
    for s in simples {
        if set.insert(s.clone()).1 {
            queue.push(s.clone());
        }
    }
    while let Some(r) = queue.pop() {
        for s in simples {
            let img = reflect_vec(s, &r).ok_or(Error::ZeroVector)?;
            if set.insert(img.clone()).1 {
                if set.len() > cap {
                    return Err(Error::ClosureBudgetExceeded(cap));
                }
                queue.push(img);
            }
        }
    }
    let mut roots = set.into_items();
    roots.sort_by_key(|v| vec_key(v));
    Ok(RootSystem { dim, roots, simples: simples.to_vec(), name: None })
}

/// `C_ij = 2(α_i|α_j)/(α_j|α_j)`.
pub fn cartan_matrix<S: Scalar>(simples: &[Vec<S>]) -> Matrix<S> {
    simples
        .iter()
        .map(|a| {
            simples
                .iter()
                .map(|b| dot(a, b).scale_i64(2).div(&dot(b, b)).expect("nonzero simple root"))
                .collect()
        })
        .collect()
}

/// Direction key shared by `v` and every nonzero multiple of it.
fn direction_key<S: Scalar>(v: &[S]) -> Option<Vec<S::Key>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(v.iter().map(|x| x.mul(&inv).key()).collect())
}

/// Axiom 1 (only ±α among multiples of α) and Axiom 2 (closure under every
/// reflection s_α), checked exhaustively.
pub fn check_axioms<S: Scalar>(roots: &[Vec<S>]) -> Result<()> {
    let set = PointSet::from_points(roots.iter().cloned());
    if set.len() != roots.len() {
        return Err(Error::AxiomViolation("duplicate roots".into()));
    }
    let mut lines: HashMap<Vec<S::Key>, usize> = HashMap::new();
    for r in roots {
        if vec_is_zero(r) {
            return Err(Error::AxiomViolation("zero root".into()));
        }
        if !set.contains(&vec_neg(r)) {
            return Err(Error::AxiomViolation("negative of a root is missing".into()));
        }
        *lines.entry(direction_key(r).expect("nonzero")).or_default() += 1;
    }
    // A float direction key can split one line across buckets; the pairwise
    // check below then catches any third multiple.
    if lines.values().any(|&c| c > 2) {
        return Err(Error::AxiomViolation("a root has a multiple other than its negative".into()));
    }
    if !S::EXACT {
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                let aa = dot(a, a).to_f64();
                let bb = dot(b, b).to_f64();
                let ab = dot(a, b).to_f64();
                if (ab * ab - aa * bb).abs() <= 1e-9 * aa * bb && !crate::scalars::vec_approx_eq(b, &vec_neg(a)) {
                    return Err(Error::AxiomViolation("a root has a multiple other than its negative".into()));
                }
            }
        }
    }
    for a in roots {
        for x in roots {
            let img = reflect_vec(a, x).ok_or(Error::ZeroVector)?;
            if !set.contains(&img) {
                return Err(Error::AxiomViolation("set is not closed under a root reflection".into()));
            }
        }
    }
    Ok(())
}

/// The highest root and its simple-root coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct HighestRoot<S: Scalar> {
    pub root: Vec<S>,
    pub coefficients: Vec<S>,
}

/// Unique root maximal in the simple-root partial order.
pub fn highest_root<S: Scalar>(rs: &RootSystem<S>) -> Result<HighestRoot<S>> {
    let m = recognize::coxeter_matrix(&rs.simples);
    if !recognize::is_connected(&m) {
        return Err(Error::NotIrreducible);
    }
    let pos = rs.positive_roots();
    let candidates: Vec<_> = pos
        .iter()
        .filter(|(_, c)| pos.iter().all(|(_, d)| vec_sub(c, d).iter().all(|x| x.signum() >= 0)))
        .collect();
    match candidates.as_slice() {
        [(r, c)] => Ok(HighestRoot { root: r.clone(), coefficients: c.clone() }),
        _ => Err(Error::NotIrreducible),
    }
}
