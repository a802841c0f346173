//! Pin/Spin double covers as explicit versor groups, conjugacy classes and
//! rotation matrices from spinors.

use std::sync::OnceLock;

use serde::Serialize;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::linalg::{identity, is_identity, mat_mul, transpose, trace, Matrix};
use crate::roots::{close_catalog, AnyRootSystem};
use crate::scalars::{dot, GoldenNumber, PointSet, Scalar};

/// Default cap on group orders.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Element of a finite group with coordinates used for dedup.
pub trait GroupElement<S: Scalar>: Clone + Send + Sync {
    fn op(&self, o: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn coords(&self) -> Vec<S>;
    fn identity_like(&self) -> Self;
}

impl<S: Scalar> GroupElement<S> for Multivector<S> {
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    /// Unit versors are inverted by reversion.
    fn inverse(&self) -> Self {
        self.reverse()
    }
    fn coords(&self) -> Vec<S> {
        self.coeffs().to_vec()
    }
    fn identity_like(&self) -> Self {
        Multivector::one(self.dim())
    }
}

/// Orthogonal matrix as a group element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthoMatrix<S: Scalar>(pub Matrix<S>);

impl<S: Scalar> GroupElement<S> for OrthoMatrix<S> {
    fn op(&self, o: &Self) -> Self {
        OrthoMatrix(mat_mul(&self.0, &o.0))
    }
    fn inverse(&self) -> Self {
        OrthoMatrix(transpose(&self.0))
    }
    fn coords(&self) -> Vec<S> {
        self.0.iter().flatten().cloned().collect()
    }
    fn identity_like(&self) -> Self {
        OrthoMatrix(identity(self.0.len()))
    }
}

/// A finite group stored as an element list with a dedup index.
#[derive(Clone, Debug)]
pub struct FiniteGroup<S: Scalar, E: GroupElement<S>> {
    elements: Vec<E>,
    generators: Vec<E>,
    index: PointSet<S>,
}

/// One conjugacy class.
#[derive(Clone, Debug)]
pub struct ConjugacyClass<E> {
    pub representative: E,
    pub size: usize,
    pub order: usize,
    pub members: Vec<usize>,
}

impl<S: Scalar, E: GroupElement<S>> FiniteGroup<S, E> {
    /// Multiplicative closure of `generators`.
    pub fn generate(generators: Vec<E>, cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        let mut index = PointSet::new();
        let mut elements = Vec::new();
        let id = first.identity_like();
        index.insert(id.coords());
        elements.push(id);
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let y = x.op(g);
                if index.insert(y.coords()).1 {
                    elements.push(y);
                    if elements.len() > cap {
                        return Err(Error::ClosureBudgetExceeded(cap));
                    }
                }
            }
        }
        Ok(FiniteGroup { elements, generators, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn find(&self, e: &E) -> Option<usize> {
        self.index.find(&e.coords())
    }

    pub fn contains(&self, e: &E) -> bool {
        self.find(e).is_some()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Order of the element at `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let x = &self.elements[i];
        let mut p = x.clone();
        let mut k = 1;
        while self.find(&p) != Some(0) {
            p = p.op(x);
            k += 1;
            if k > self.order() {
                break;
            }
        }
        k
    }

    /// Conjugacy classes by orbit search under conjugation by the
    /// generators, ordered by (element order, size, first member).
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass<E>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let gens: Vec<(E, E)> = self.generators.iter().map(|g| (g.clone(), g.inverse())).collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            class_of[start] = cid;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let x = self.elements[members[k]].clone();
                for (g, gi) in &gens {
                    let y = g.op(&x).op(gi);
                    let j = self.find(&y).expect("group closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        let mut out: Vec<ConjugacyClass<E>> = classes
            .into_iter()
            .map(|members| ConjugacyClass {
                representative: self.elements[members[0]].clone(),
                size: members.len(),
                order: self.element_order(members[0]),
                members,
            })
            .collect();
        out.sort_by_key(|c| (c.order, c.size, c.members[0]));
        out
    }

    /// Subgroup of the elements satisfying `keep`, with generators chosen
    /// greedily from those elements.
    pub fn subgroup(&self, keep: impl Fn(&E) -> bool) -> Result<Self> {
        let members: Vec<&E> = self.elements.iter().filter(|e| keep(e)).collect();
        let mut gens: Vec<E> = Vec::new();
        let mut h = FiniteGroup::generate(vec![self.elements[0].clone()], self.order())?;
        for e in &members {
            if h.order() == members.len() {
                break;
            }
            if !h.contains(e) {
                gens.push((*e).clone());
                h = FiniteGroup::generate(gens.clone(), self.order())?;
            }
        }
        if h.order() != members.len() {
            return Err(Error::ValidationFailure("selected elements do not form a subgroup".into()));
        }
        Ok(h)
    }

    /// Checks associativity on sampled triples and the presence of inverses.
    pub fn check_axioms(&self, samples: usize) -> Result<()> {
        let n = self.order();
        for e in &self.elements {
            if !self.contains(&e.inverse()) {
                return Err(Error::ValidationFailure("inverse missing".into()));
            }
            let prod = e.op(&e.inverse());
            if self.find(&prod) != Some(0) {
                return Err(Error::ValidationFailure("x·x⁻¹ is not the identity".into()));
            }
        }
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        for _ in 0..samples {
            let (a, b, c) = (&self.elements[next()], &self.elements[next()], &self.elements[next()]);
            let l = a.op(b).op(c);
            let r = a.op(&b.op(c));
            if self.find(&l).is_none() || self.find(&l) != self.find(&r) {
                return Err(Error::ValidationFailure("associativity or closure fails".into()));
            }
        }
        Ok(())
    }
}

pub type PinorGroup<S> = FiniteGroup<S, Multivector<S>>;
pub type MatrixGroup<S> = FiniteGroup<S, OrthoMatrix<S>>;

/// Multiplicative closure of the unit root vectors: the Pin double cover of
/// the reflection group they generate.
pub fn generate_pin<S: Scalar>(roots: &[Vec<S>]) -> Result<PinorGroup<S>> {
    generate_pin_capped(roots, DEFAULT_GROUP_CAP)
}

pub fn generate_pin_capped<S: Scalar>(roots: &[Vec<S>], cap: usize) -> Result<PinorGroup<S>> {
    let mut gens = Vec::new();
    for r in roots {
        if !dot(r, r).approx_eq(&S::one()) {
            return Err(Error::NonUnitSimples);
        }
        gens.push(Multivector::vector(r)?);
    }
    PinorGroup::generate(gens, cap)
}

/// Unit-normalized float copies of vectors.
pub fn normalize_f64<S: Scalar>(vs: &[Vec<S>]) -> Vec<Vec<f64>> {
    vs.iter()
        .map(|v| {
            let f: Vec<f64> = v.iter().map(|x| x.to_f64()).collect();
            let n = dot(&f, &f).sqrt();
            f.iter().map(|x| x / n).collect()
        })
        .collect()
}

impl<S: Scalar> PinorGroup<S> {
    /// The even subgroup.
    pub fn spin(&self) -> Result<PinorGroup<S>> {
        self.subgroup(|e| e.parity() == Some(0))
    }

    pub fn even_elements(&self) -> Vec<Multivector<S>> {
        self.elements.iter().filter(|e| e.parity() == Some(0)).cloned().collect()
    }

    /// Image in the orthogonal group under `x ↦ (−1)^k V x Ṽ`: the reflection
    /// group for Pin, the rotation subgroup for Spin.
    pub fn orthogonal_image(&self) -> Result<MatrixGroup<S>> {
        let gens: Vec<OrthoMatrix<S>> = self
            .generators
            .iter()
            .map(|g| g.versor_matrix().map(OrthoMatrix))
            .collect::<Result<_>>()?;
        MatrixGroup::generate(gens, self.order())
    }
}

/// Pin group on whichever backend fits: exact when the simple roots are unit
/// vectors, otherwise the float backend on normalized roots.
#[derive(Clone, Debug)]
pub enum AnyPinorGroup {
    Exact(PinorGroup<GoldenNumber>),
    Float(PinorGroup<f64>),
}

impl AnyPinorGroup {
    pub fn order(&self) -> usize {
        match self {
            AnyPinorGroup::Exact(g) => g.order(),
            AnyPinorGroup::Float(g) => g.order(),
        }
    }

    pub fn spin(&self) -> Result<AnyPinorGroup> {
        Ok(match self {
            AnyPinorGroup::Exact(g) => AnyPinorGroup::Exact(g.spin()?),
            AnyPinorGroup::Float(g) => AnyPinorGroup::Float(g.spin()?),
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyPinorGroup::Exact(_))
    }

    pub fn class_summaries(&self) -> Vec<ClassSummary> {
        match self {
            AnyPinorGroup::Exact(g) => summarize_pinor_classes(&g.conjugacy_classes()),
            AnyPinorGroup::Float(g) => summarize_pinor_classes(&g.conjugacy_classes()),
        }
    }

    pub fn elements_f64(&self) -> Vec<Multivector<f64>> {
        match self {
            AnyPinorGroup::Exact(g) => g.elements().iter().map(|e| e.to_f64()).collect(),
            AnyPinorGroup::Float(g) => g.elements().to_vec(),
        }
    }
}

/// Pin group generated by all root vectors of a root system.
pub fn pin_of(rs: &AnyRootSystem) -> Result<AnyPinorGroup> {
    match rs {
        AnyRootSystem::Exact(r) if r.roots.iter().all(|s| dot(s, s) == GoldenNumber::one()) => {
            Ok(AnyPinorGroup::Exact(generate_pin(&r.roots)?))
        }
        other => Ok(AnyPinorGroup::Float(generate_pin(&normalize_f64(&other.to_f64().roots))?)),
    }
}

/// Reflection matrix `I − 2ααᵀ/(α|α)`.
pub fn reflection_matrix<S: Scalar>(alpha: &[S]) -> Result<Matrix<S>> {
    let inv = dot(alpha, alpha).inv().ok_or(Error::ZeroVector)?;
    let two = S::from_i64(2).mul(&inv);
    let n = alpha.len();
    let mut m: Matrix<S> = identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = m[i][j].sub(&two.mul(&alpha[i]).mul(&alpha[j]));
        }
    }
    Ok(m)
}

fn h3_simples() -> Vec<Vec<GoldenNumber>> {
    match close_catalog("H3") {
        Ok(AnyRootSystem::Exact(h3)) => h3.simples,
        _ => unreachable!("H3 is an exact catalog entry"),
    }
}

/// The full icosahedral reflection group H3 (order 120), exact.
pub fn icosahedral_group() -> &'static MatrixGroup<GoldenNumber> {
    static G: OnceLock<MatrixGroup<GoldenNumber>> = OnceLock::new();
    G.get_or_init(|| {
        let gens = h3_simples().iter().map(|a| OrthoMatrix(reflection_matrix(a).expect("nonzero root"))).collect();
        MatrixGroup::generate(gens, 120).expect("H3 has order 120")
    })
}

/// The icosahedral rotation group A5 (order 60), exact.
pub fn icosahedral_rotations() -> &'static MatrixGroup<GoldenNumber> {
    static G: OnceLock<MatrixGroup<GoldenNumber>> = OnceLock::new();
    G.get_or_init(|| {
        let r: Vec<OrthoMatrix<GoldenNumber>> =
            h3_simples().iter().map(|a| OrthoMatrix(reflection_matrix(a).expect("nonzero root"))).collect();
        let gens = vec![r[0].op(&r[1]), r[1].op(&r[2])];
        MatrixGroup::generate(gens, 60).expect("A5 has order 60")
    })
}

/// Float copies of the icosahedral rotation matrices.
pub fn icosahedral_rotations_f64() -> &'static Vec<Matrix<f64>> {
    static G: OnceLock<Vec<Matrix<f64>>> = OnceLock::new();
    G.get_or_init(|| icosahedral_rotations().elements().iter().map(|m| crate::linalg::to_f64_matrix(&m.0)).collect())
}

/// Rotation matrix `x ↦ R x R̃` of a unit rotor.
pub fn spinor_to_matrix<S: Scalar>(r: &Multivector<S>) -> Result<Matrix<S>> {
    if r.parity() != Some(0) {
        return Err(Error::NotUnitRotor);
    }
    let n = r.mul(&r.reverse());
    if !n.approx_eq(&Multivector::one(r.dim())) {
        return Err(Error::NotUnitRotor);
    }
    r.versor_matrix()
}

/// Per-class summary used for CSV export and table matching.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub size: usize,
    pub order: usize,
    pub scalar_part: f64,
    pub trace3: Option<f64>,
}

pub fn summarize_pinor_classes<S: Scalar>(classes: &[ConjugacyClass<Multivector<S>>]) -> Vec<ClassSummary> {
    classes
        .iter()
        .map(|c| {
            let rep = &c.representative;
            let trace3 = if rep.dim() == 3 && rep.parity() == Some(0) {
                spinor_to_matrix(rep).ok().map(|m| trace(&m).to_f64())
            } else {
                None
            };
            ClassSummary { size: c.size, order: c.order, scalar_part: rep.scalar_part().to_f64(), trace3 }
        })
        .collect()
}

/// Whether a matrix group element is the identity.
pub fn is_identity_matrix<S: Scalar>(m: &OrthoMatrix<S>) -> bool {
    is_identity(&m.0)
}
