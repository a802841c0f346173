//! Character tables of the icosahedral rotation group and of the finite
//! subgroups of SU(2), permutation and displacement characters, and
//! decomposition into irreducibles.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::Multivector;
use crate::cover::{icosahedral_rotations, FiniteGroup, PinorGroup};
use crate::error::{Error, Result};
use crate::induce::spinor4;
use crate::linalg::{mat_vec, to_f64_matrix, trace, Matrix};
use crate::roots::{catalog, close_catalog, AnyRootSystem};
use crate::scalars::{GoldenNumber, PointSet, Scalar};

const EPS: f64 = 1e-9;

/// Groups with a built-in character table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    /// Icosahedral rotation group, order 60.
    A5,
    /// Binary tetrahedral, order 24.
    BinaryTetrahedral,
    /// Binary octahedral, order 48.
    BinaryOctahedral,
    /// Binary icosahedral, order 120.
    BinaryIcosahedral,
    /// Cyclic subgroup of SU(2) of order n.
    Cyclic(usize),
    /// Binary dihedral (dicyclic) group of order 4n.
    Dicyclic(usize),
}

impl FromStr for GroupLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |p: &str| -> Option<usize> { t.strip_prefix(p).and_then(|r| r.parse().ok()) };
        match t {
            "A5" | "I" => Ok(GroupLabel::A5),
            "2T" => Ok(GroupLabel::BinaryTetrahedral),
            "2O" => Ok(GroupLabel::BinaryOctahedral),
            "2I" => Ok(GroupLabel::BinaryIcosahedral),
            _ => {
                if let Some(n) = num("Dic").filter(|&n| n >= 2) {
                    Ok(GroupLabel::Dicyclic(n))
                } else if let Some(n) = num("C").filter(|&n| n >= 1) {
                    Ok(GroupLabel::Cyclic(n))
                } else {
                    Err(Error::UnknownName(s.into()))
                }
            }
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::A5 => write!(f, "A5"),
            GroupLabel::BinaryTetrahedral => write!(f, "2T"),
            GroupLabel::BinaryOctahedral => write!(f, "2O"),
            GroupLabel::BinaryIcosahedral => write!(f, "2I"),
            GroupLabel::Cyclic(n) => write!(f, "C{n}"),
            GroupLabel::Dicyclic(n) => write!(f, "Dic{n}"),
        }
    }
}

impl GroupLabel {
    pub fn order(&self) -> usize {
        match self {
            GroupLabel::A5 => 60,
            GroupLabel::BinaryTetrahedral => 24,
            GroupLabel::BinaryOctahedral => 48,
            GroupLabel::BinaryIcosahedral => 120,
            GroupLabel::Cyclic(n) => *n,
            GroupLabel::Dicyclic(n) => 4 * n,
        }
    }

    /// Subgroups of SU(2), which act on the 2D spinor space.
    pub fn is_binary(&self) -> bool {
        !matches!(self, GroupLabel::A5)
    }
}

/// Conjugacy class of a table column.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub name: String,
    pub size: usize,
    pub order: usize,
    /// Spinor `(a₀, a₁, a₂, a₃)` for subgroups of SU(2), row-major rotation
    /// matrix for A5.
    pub representative: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
}

/// Character table with rows indexed by irreps and columns by classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: GroupLabel,
    pub order: usize,
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<Irrep>,
    pub values: Vec<Vec<Complex64>>,
    /// Values in ℚ(√5) for the real icosahedral tables.
    pub exact: Option<Vec<Vec<GoldenNumber>>>,
}

/// Multiplicities of the irreps in a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepDecomposition {
    pub multiplicities: Vec<(String, u64)>,
}

impl RepDecomposition {
    pub fn get(&self, name: &str) -> Option<u64> {
        self.multiplicities.iter().find(|(n, _)| n == name).map(|&(_, m)| m)
    }

    pub fn counts(&self) -> Vec<u64> {
        self.multiplicities.iter().map(|&(_, m)| m).collect()
    }

    /// `Σ mult · dim`.
    pub fn dimension(&self, table: &CharacterTable) -> u64 {
        self.multiplicities.iter().zip(&table.irreps).map(|((_, m), ir)| m * ir.dim as u64).sum()
    }
}

impl fmt::Display for RepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .multiplicities
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(n, m)| if *m == 1 { n.clone() } else { format!("{m}{n}") })
            .collect();
        write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join("+") })
    }
}

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

fn gh(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ratios(a, 2, b, 2)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ci(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// A5 columns, keyed by rotation trace: 1A, 2A, 3A, 5A, 5B.
fn a5_traces() -> [GoldenNumber; 5] {
    [g(3, 0), g(-1, 0), g(0, 0), g(0, 1), g(1, -1)]
}

fn a5_exact() -> Vec<Vec<GoldenNumber>> {
    vec![
        vec![g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0)],
        vec![g(3, 0), g(-1, 0), g(0, 0), g(0, 1), g(1, -1)],
        vec![g(3, 0), g(-1, 0), g(0, 0), g(1, -1), g(0, 1)],
        vec![g(4, 0), g(0, 0), g(1, 0), g(-1, 0), g(-1, 0)],
        vec![g(5, 0), g(1, 0), g(-1, 0), g(0, 0), g(0, 0)],
    ]
}

// 2I columns, keyed by spinor scalar part: 1, −1, 4A, 6A, 3A, 10A, 5A, 10B, 5B.
fn i2_scalars() -> [GoldenNumber; 9] {
    [g(1, 0), g(-1, 0), g(0, 0), gh(1, 0), gh(-1, 0), gh(0, 1), gh(-1, 1), gh(1, -1), gh(0, -1)]
}

fn i2_exact() -> Vec<Vec<GoldenNumber>> {
    vec![
        vec![g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0), g(1, 0)],
        vec![g(2, 0), g(-2, 0), g(0, 0), g(1, 0), g(-1, 0), g(0, 1), g(-1, 1), g(1, -1), g(0, -1)],
        vec![g(2, 0), g(-2, 0), g(0, 0), g(1, 0), g(-1, 0), g(1, -1), g(0, -1), g(0, 1), g(-1, 1)],
        vec![g(3, 0), g(3, 0), g(-1, 0), g(0, 0), g(0, 0), g(0, 1), g(1, -1), g(1, -1), g(0, 1)],
        vec![g(3, 0), g(3, 0), g(-1, 0), g(0, 0), g(0, 0), g(1, -1), g(0, 1), g(0, 1), g(1, -1)],
        vec![g(4, 0), g(4, 0), g(0, 0), g(1, 0), g(1, 0), g(-1, 0), g(-1, 0), g(-1, 0), g(-1, 0)],
        vec![g(4, 0), g(-4, 0), g(0, 0), g(-1, 0), g(1, 0), g(1, 0), g(-1, 0), g(1, 0), g(-1, 0)],
        vec![g(5, 0), g(5, 0), g(1, 0), g(-1, 0), g(-1, 0), g(0, 0), g(0, 0), g(0, 0), g(0, 0)],
        vec![g(6, 0), g(-6, 0), g(0, 0), g(0, 0), g(0, 0), g(-1, 0), g(1, 0), g(-1, 0), g(1, 0)],
    ]
}

fn t2_values() -> Vec<Vec<Complex64>> {
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    let one = c(1.0);
    vec![
        vec![one, one, one, one, one, one, one],
        vec![one, one, one, w, w2, w, w2],
        vec![one, one, one, w2, w, w2, w],
        vec![c(2.0), c(-2.0), c(0.0), one, one, -one, -one],
        vec![c(2.0), c(-2.0), c(0.0), w, w2, -w, -w2],
        vec![c(2.0), c(-2.0), c(0.0), w2, w, -w2, -w],
        vec![c(3.0), c(3.0), c(-1.0), c(0.0), c(0.0), c(0.0), c(0.0)],
    ]
}

fn o2_values() -> Vec<Vec<Complex64>> {
    let r = 2f64.sqrt();
    let rows: [[f64; 8]; 8] = [
        [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0],
        [2.0, -2.0, 0.0, r, -r, 1.0, -1.0, 0.0],
        [2.0, 2.0, 2.0, 0.0, 0.0, -1.0, -1.0, 0.0],
        [2.0, -2.0, 0.0, -r, r, 1.0, -1.0, 0.0],
        [3.0, 3.0, -1.0, 1.0, 1.0, 0.0, 0.0, -1.0],
        [3.0, 3.0, -1.0, -1.0, -1.0, 0.0, 0.0, 1.0],
        [4.0, -4.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0],
    ];
    rows.iter().map(|r| r.iter().map(|&x| c(x)).collect()).collect()
}

fn irreps(names: &[(&str, usize)]) -> Vec<Irrep> {
    names.iter().map(|&(n, d)| Irrep { name: n.into(), dim: d }).collect()
}

/// An explicit finite subgroup of SU(2) as unit spinors, with its classes in
/// table-column order.
#[derive(Clone, Debug)]
pub struct SpinorGroup {
    pub label: GroupLabel,
    pub elements: Vec<[f64; 4]>,
    pub classes: Vec<Vec<usize>>,
    pub class_orders: Vec<usize>,
}

impl SpinorGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn representative(&self, class: usize) -> [f64; 4] {
        self.elements[self.classes[class][0]]
    }
}

fn unit_simples(name: &str) -> Result<Vec<Vec<f64>>> {
    let s = catalog(name)?.to_f64();
    Ok(s.iter()
        .map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / n).collect()
        })
        .collect())
}

/// Spin group of a rank-3 reflection group, generated by products of
/// adjacent simple reflections.
fn spin_from_simples(name: &str, cap: usize) -> Result<PinorGroup<f64>> {
    let s = unit_simples(name)?;
    let v: Vec<Multivector<f64>> = s.iter().map(|x| Multivector::vector(x)).collect::<Result<_>>()?;
    FiniteGroup::generate(vec![v[0].mul(&v[1]), v[1].mul(&v[2]), v[0].mul(&v[2])], cap)
}

fn rotor(a: [f64; 4]) -> Multivector<f64> {
    crate::induce::rotor_from4(&a)
}

fn explicit_spinor_group(label: GroupLabel) -> Result<PinorGroup<f64>> {
    match label {
        GroupLabel::A5 => Err(Error::InvalidInput("A5 is not a subgroup of SU(2)".into())),
        GroupLabel::BinaryTetrahedral => spin_from_simples("A3", 24),
        GroupLabel::BinaryOctahedral => spin_from_simples("B3", 48),
        GroupLabel::BinaryIcosahedral => spin_from_simples("H3", 120),
        GroupLabel::Cyclic(n) => {
            let t = 2.0 * PI / n as f64;
            FiniteGroup::generate(vec![rotor([t.cos(), 0.0, 0.0, t.sin()])], n)
        }
        GroupLabel::Dicyclic(n) => {
            let t = PI / n as f64;
            FiniteGroup::generate(vec![rotor([t.cos(), 0.0, 0.0, t.sin()]), rotor([0.0, 1.0, 0.0, 0.0])], 4 * n)
        }
    }
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-7
}

/// Builds an explicit subgroup of SU(2) and orders its classes as the table
/// columns.
pub fn spinor_group(label: GroupLabel) -> Result<SpinorGroup> {
    let grp = explicit_spinor_group(label)?;
    if grp.order() != label.order() {
        return Err(Error::ValidationFailure(format!("{label} generated with order {}", grp.order())));
    }
    let elements: Vec<[f64; 4]> = grp
        .elements()
        .iter()
        .map(|e| spinor4(e).map(|v| [v[0], v[1], v[2], v[3]]))
        .collect::<Result<_>>()?;
    let classes = grp.conjugacy_classes();
    let find = |e: &[f64; 4]| elements.iter().position(|x| (0..4).all(|i| near(x[i], e[i])));
    let col = |k: usize| -> Option<usize> {
        let cl = &classes[k];
        let s = elements[cl.members[0]][0];
        let size = cl.size;
        match label {
            GroupLabel::BinaryIcosahedral => {
                i2_scalars().iter().position(|x| near(x.to_f64(), s))
            }
            GroupLabel::BinaryOctahedral => {
                let h = 0.5 * 2f64.sqrt();
                let keys = [(1.0, 1), (-1.0, 1), (0.0, 6), (h, 6), (-h, 6), (0.5, 8), (-0.5, 8), (0.0, 12)];
                keys.iter().position(|&(x, n)| near(x, s) && n == size)
            }
            GroupLabel::BinaryTetrahedral => {
                // Order-6 classes in class order become 6A, 6B; 3A = −6A.
                let six: Vec<usize> = (0..classes.len()).filter(|&j| classes[j].order == 6).collect();
                if near(s, 1.0) {
                    Some(0)
                } else if near(s, -1.0) {
                    Some(1)
                } else if near(s, 0.0) {
                    Some(2)
                } else if cl.order == 6 {
                    six.iter().position(|&j| j == k).map(|p| 3 + p)
                } else {
                    let neg = elements[cl.members[0]].map(|x| -x);
                    let i = find(&neg)?;
                    six.iter().position(|&j| classes[j].members.contains(&i)).map(|p| 5 + p)
                }
            }
            GroupLabel::Cyclic(n) => {
                let e = elements[cl.members[0]];
                let k = (e[3].atan2(e[0]) * n as f64 / (2.0 * PI)).round() as i64;
                Some(k.rem_euclid(n as i64) as usize)
            }
            GroupLabel::Dicyclic(n) => {
                let e = elements[cl.members[0]];
                let n2 = 2 * n as i64;
                if near(e[1], 0.0) && near(e[2], 0.0) {
                    let k = (e[3].atan2(e[0]) * n as f64 / PI).round() as i64;
                    let k = k.rem_euclid(n2);
                    Some(k.min(n2 - k) as usize)
                } else {
                    let k = (e[2].atan2(e[1]) * n as f64 / PI).round() as i64;
                    Some(n + 1 + k.rem_euclid(2) as usize)
                }
            }
            GroupLabel::A5 => None,
        }
    };
    let ncols = classes.len();
    let mut ordered: Vec<Option<Vec<usize>>> = vec![None; ncols];
    let mut orders = vec![0; ncols];
    for k in 0..ncols {
        let j = col(k)
            .filter(|&j| j < ncols)
            .ok_or_else(|| Error::ValidationFailure(format!("{label}: class {k} matches no table column")))?;
        if ordered[j].is_some() {
            return Err(Error::ValidationFailure(format!("{label}: two classes match column {j}")));
        }
        ordered[j] = Some(classes[k].members.clone());
        orders[j] = classes[k].order;
    }
    Ok(SpinorGroup {
        label,
        elements,
        classes: ordered.into_iter().map(|c| c.expect("all columns filled")).collect(),
        class_orders: orders,
    })
}

/// Class representatives of A5 (exact rotation matrices) in column order.
pub fn a5_class_representatives() -> &'static Vec<(Matrix<GoldenNumber>, usize, usize)> {
    static R: OnceLock<Vec<(Matrix<GoldenNumber>, usize, usize)>> = OnceLock::new();
    R.get_or_init(|| {
        let grp = icosahedral_rotations();
        let mut out: Vec<Option<(Matrix<GoldenNumber>, usize, usize)>> = vec![None; 5];
        for cl in grp.conjugacy_classes() {
            let t = trace(&cl.representative.0);
            let j = a5_traces().iter().position(|x| *x == t).expect("A5 traces are distinct");
            out[j] = Some((cl.representative.0.clone(), cl.size, cl.order));
        }
        out.into_iter().map(|x| x.expect("five classes")).collect()
    })
}

fn class_name(order: usize, seen: &mut Vec<(usize, usize)>) -> String {
    let k = match seen.iter_mut().find(|(o, _)| *o == order) {
        Some((_, n)) => {
            *n += 1;
            *n
        }
        None => {
            seen.push((order, 0));
            0
        }
    };
    format!("{order}{}", (b'A' + k as u8) as char)
}

fn spinor_class_infos(grp: &SpinorGroup) -> Vec<ClassInfo> {
    let mut seen = Vec::new();
    grp.classes
        .iter()
        .zip(&grp.class_orders)
        .map(|(cl, &o)| ClassInfo {
            name: class_name(o, &mut seen),
            size: cl.len(),
            order: o,
            representative: grp.elements[cl[0]].to_vec(),
        })
        .collect()
}

fn cyclic_table(n: usize) -> (Vec<Irrep>, Vec<Vec<Complex64>>) {
    let ir = (0..n).map(|j| Irrep { name: format!("χ{j}"), dim: 1 }).collect();
    let vals = (0..n)
        .map(|j| (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * (j * k % n) as f64 / n as f64)).collect())
        .collect();
    (ir, vals)
}

fn dicyclic_table(n: usize) -> (Vec<Irrep>, Vec<Vec<Complex64>>) {
    // Columns: a^0 … a^n, then b·a^even, b·a^odd.
    let beta = if n.is_multiple_of(2) { c(1.0) } else { ci(0.0, 1.0) };
    let one_dim: [(f64, Complex64); 4] = [(1.0, c(1.0)), (1.0, c(-1.0)), (-1.0, beta), (-1.0, -beta)];
    let mut ir = Vec::new();
    let mut vals = Vec::new();
    for (i, &(alpha, b)) in one_dim.iter().enumerate() {
        ir.push(Irrep { name: format!("1{}", "p".repeat(i)), dim: 1 });
        let mut row: Vec<Complex64> = (0..=n).map(|k| c(alpha.powi(k as i32))).collect();
        row.push(b);
        row.push(b * alpha);
        vals.push(row);
    }
    for j in 1..n {
        ir.push(Irrep { name: format!("2_{j}"), dim: 2 });
        let mut row: Vec<Complex64> = (0..=n).map(|k| c(2.0 * (PI * (j * k) as f64 / n as f64).cos())).collect();
        row.extend([c(0.0), c(0.0)]);
        vals.push(row);
    }
    (ir, vals)
}

fn golden_to_complex(t: &[Vec<GoldenNumber>]) -> Vec<Vec<Complex64>> {
    t.iter().map(|r| r.iter().map(|x| c(x.to_f64())).collect()).collect()
}

fn build_table(label: GroupLabel) -> Result<CharacterTable> {
    if label == GroupLabel::A5 {
        let reps = a5_class_representatives();
        let names = ["1A", "2A", "3A", "5A", "5B"];
        let classes = reps
            .iter()
            .zip(names)
            .map(|((m, size, order), n)| ClassInfo {
                name: n.into(),
                size: *size,
                order: *order,
                representative: to_f64_matrix(m).concat(),
            })
            .collect();
        let exact = a5_exact();
        return Ok(CharacterTable {
            group: label,
            order: 60,
            classes,
            irreps: irreps(&[("Γ1", 1), ("Γ3", 3), ("Γ3p", 3), ("Γ4", 4), ("Γ5", 5)]),
            values: golden_to_complex(&exact),
            exact: Some(exact),
        });
    }
    let grp = spinor_group(label)?;
    let classes = spinor_class_infos(&grp);
    let (irr, values, exact) = match label {
        GroupLabel::BinaryIcosahedral => {
            let e = i2_exact();
            let names = [("1", 1), ("2", 2), ("2p", 2), ("3", 3), ("3p", 3), ("4", 4), ("4p", 4), ("5", 5), ("6", 6)];
            (irreps(&names), golden_to_complex(&e), Some(e))
        }
        GroupLabel::BinaryOctahedral => {
            let names = [("1", 1), ("1p", 1), ("2", 2), ("2p", 2), ("2pp", 2), ("3", 3), ("3p", 3), ("4", 4)];
            (irreps(&names), o2_values(), None)
        }
        GroupLabel::BinaryTetrahedral => {
            let names = [("1", 1), ("1p", 1), ("1pp", 1), ("2", 2), ("2p", 2), ("2pp", 2), ("3", 3)];
            (irreps(&names), t2_values(), None)
        }
        GroupLabel::Cyclic(n) => {
            let (i, v) = cyclic_table(n);
            (i, v, None)
        }
        GroupLabel::Dicyclic(n) => {
            let (i, v) = dicyclic_table(n);
            (i, v, None)
        }
        GroupLabel::A5 => unreachable!(),
    };
    Ok(CharacterTable { group: label, order: label.order(), classes, irreps: irr, values, exact })
}

/// Built-in character table, validated on first use.
pub fn character_table(label: GroupLabel) -> Result<CharacterTable> {
    let t = build_table(label)?;
    t.validate()?;
    Ok(t)
}

/// Cached A5 table.
pub fn a5_table() -> &'static CharacterTable {
    static T: OnceLock<CharacterTable> = OnceLock::new();
    T.get_or_init(|| character_table(GroupLabel::A5).expect("built-in A5 table is valid"))
}

impl CharacterTable {
    /// `(1/|G|) Σ_C |C| χ(C) ψ(C)*`.
    pub fn inner(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let s: Complex64 =
            self.classes.iter().zip(x.iter().zip(y)).map(|(cl, (a, b))| c(cl.size as f64) * a * b.conj()).sum();
        s / self.order as f64
    }

    pub fn irrep_index(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|i| i.name == name)
    }

    /// The natural 2D spinor character `2·a₀` on each class.
    pub fn spinor_character(&self) -> Option<Vec<Complex64>> {
        self.group.is_binary().then(|| self.classes.iter().map(|cl| c(2.0 * cl.representative[0])).collect())
    }

    /// Orthogonality, dimensions, and agreement with explicit elements: the
    /// rotation trace for A5 and `2·a₀` for subgroups of SU(2).
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ValidationFailure(format!("{}: {m}", self.group)));
        let n = self.irreps.len();
        if n != self.classes.len() || self.values.iter().any(|r| r.len() != n) {
            return bad("table is not square".into());
        }
        if self.classes.iter().map(|c| c.size).sum::<usize>() != self.order {
            return bad("class sizes do not sum to the group order".into());
        }
        if self.irreps.iter().map(|i| i.dim * i.dim).sum::<usize>() != self.order {
            return bad("squared dimensions do not sum to the group order".into());
        }
        for i in 0..n {
            if (self.values[i][0] - c(self.irreps[i].dim as f64)).norm() > EPS {
                return bad(format!("{} has the wrong degree", self.irreps[i].name));
            }
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                if (self.inner(&self.values[i], &self.values[j]) - c(want)).norm() > EPS {
                    return bad(format!("rows {i} and {j} are not orthonormal"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let s: Complex64 = (0..n).map(|i| self.values[i][a] * self.values[i][b].conj()).sum();
                let want = if a == b { self.order as f64 / self.classes[a].size as f64 } else { 0.0 };
                if (s - c(want)).norm() > EPS * self.order as f64 {
                    return bad(format!("columns {a} and {b} are not orthogonal"));
                }
            }
        }
        if let Some(ex) = &self.exact {
            if golden_to_complex(ex).iter().flatten().zip(self.values.iter().flatten()).any(|(x, y)| (x - y).norm() > EPS)
            {
                return bad("exact and float values disagree".into());
            }
        }
        match self.group {
            GroupLabel::A5 => {
                let reps = a5_class_representatives();
                let g3 = &self.exact.as_ref().expect("A5 is exact")[1];
                for (k, (m, _, _)) in reps.iter().enumerate() {
                    if trace(m) != g3[k] {
                        return bad("Γ3 differs from the rotation trace".into());
                    }
                }
            }
            _ => {
                let chi2 = self.spinor_character().expect("binary group");
                let d = self.decompose_complex(&chi2)?;
                let want = match self.group {
                    GroupLabel::Cyclic(_) | GroupLabel::Dicyclic(_) => None,
                    _ => self.irrep_index("2"),
                };
                if let Some(i) = want {
                    if d.counts().iter().enumerate().any(|(k, &m)| m != u64::from(k == i)) {
                        return bad("row 2 differs from the spinor character".into());
                    }
                }
                if d.dimension(self) != 2 {
                    return bad("spinor character has the wrong degree".into());
                }
            }
        }
        Ok(())
    }

    /// Multiplicities of a complex class function, rounded within 1e-9.
    pub fn decompose_complex(&self, chi: &[Complex64]) -> Result<RepDecomposition> {
        if chi.len() != self.classes.len() {
            return Err(Error::DimensionMismatch(self.classes.len(), chi.len()));
        }
        let mut out = Vec::new();
        for (ir, row) in self.irreps.iter().zip(&self.values) {
            let m = self.inner(chi, row);
            let r = m.re.round();
            if (m - c(r)).norm() > EPS || r < 0.0 {
                return Err(Error::NonIntegralMultiplicity(format!("{}: {m}", ir.name)));
            }
            out.push((ir.name.clone(), r as u64));
        }
        Ok(RepDecomposition { multiplicities: out })
    }

    /// Exact decomposition of a class function with values in ℚ(√5).
    pub fn decompose(&self, chi: &[GoldenNumber]) -> Result<RepDecomposition> {
        let Some(ex) = &self.exact else {
            return self.decompose_complex(&chi.iter().map(|x| c(x.to_f64())).collect::<Vec<_>>());
        };
        if chi.len() != self.classes.len() {
            return Err(Error::DimensionMismatch(self.classes.len(), chi.len()));
        }
        let inv = GoldenNumber::from_ratios(1, self.order as i64, 0, 1);
        let mut out = Vec::new();
        for (ir, row) in self.irreps.iter().zip(ex) {
            let mut s = GoldenNumber::zero();
            for ((cl, x), y) in self.classes.iter().zip(chi).zip(row) {
                s = s.add(&x.mul(y).scale_i64(cl.size as i64));
            }
            let m = s.mul(&inv);
            match Scalar::to_integer(&m) {
                Some(k) if k >= 0 && m == GoldenNumber::from_ints(k, 0) => out.push((ir.name.clone(), k as u64)),
                _ => return Err(Error::NonIntegralMultiplicity(format!("{}: {m}", ir.name))),
            }
        }
        Ok(RepDecomposition { multiplicities: out })
    }

    /// CSV with a header of class names and one row per irrep.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("irrep");
        for cl in &self.classes {
            s.push_str(&format!(",{}", cl.name));
        }
        s.push('\n');
        for (i, ir) in self.irreps.iter().enumerate() {
            s.push_str(&ir.name);
            for k in 0..self.classes.len() {
                let v = match &self.exact {
                    Some(ex) => ex[i][k].to_string(),
                    None => fmt_complex(self.values[i][k]),
                };
                s.push_str(&format!(",{v}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Complex value with 12 significant digits; the imaginary part is omitted
/// when it vanishes.
pub fn fmt_complex(z: Complex64) -> String {
    let f = |x: f64| {
        let x = if x.abs() < 1e-12 { 0.0 } else { x };
        format!("{}", format!("{x:.12e}").parse::<f64>().unwrap_or(x))
    };
    if z.im.abs() < 1e-12 {
        f(z.re)
    } else {
        format!("{}{}{}i", f(z.re), if z.im < 0.0 { "-" } else { "+" }, f(z.im.abs()))
    }
}

/// Number of vertices fixed by a representative of each A5 class.
pub fn permutation_character<S: FromGolden>(vertices: &[Vec<S>]) -> Result<Vec<GoldenNumber>> {
    let set = PointSet::from_points(vertices.iter().cloned());
    let conv = |m: &Matrix<GoldenNumber>| -> Matrix<S> {
        m.iter().map(|r| r.iter().map(S::from_golden).collect()).collect()
    };
    for e in icosahedral_rotations().generators() {
        let m = conv(&e.0);
        if vertices.iter().any(|v| !set.contains(&mat_vec(&m, v))) {
            return Err(Error::NotInvariant);
        }
    }
    Ok(a5_class_representatives()
        .iter()
        .map(|(r, _, _)| {
            let m = conv(r);
            let fixed = vertices.iter().filter(|v| crate::scalars::vec_approx_eq(&mat_vec(&m, v), v)).count();
            GoldenNumber::from_ints(fixed as i64, 0)
        })
        .collect())
}

/// Backends that contain ℚ(√5).
pub trait FromGolden: Scalar {
    fn from_golden(x: &GoldenNumber) -> Self;
}

impl FromGolden for GoldenNumber {
    fn from_golden(x: &GoldenNumber) -> Self {
        x.clone()
    }
}

impl FromGolden for f64 {
    fn from_golden(x: &GoldenNumber) -> Self {
        x.to_f64()
    }
}

/// `χ_perm · χ₃` with χ₃ the rotation representation Γ3.
pub fn displacement_character(perm: &[GoldenNumber]) -> Vec<GoldenNumber> {
    perm.iter().zip(&a5_exact()[1]).map(|(p, t)| p.mul(t)).collect()
}

/// Displacement decomposition of an A5-invariant vertex set.
pub fn displacement_decomposition<S: FromGolden>(vertices: &[Vec<S>]) -> Result<RepDecomposition> {
    a5_table().decompose(&displacement_character(&permutation_character(vertices)?))
}

/// Vertex set of a catalog solid, exact when available.
pub fn solid_decomposition(name: &str) -> Result<RepDecomposition> {
    let s = crate::polyhedra::catalog_solid(name)?;
    match &s.exact {
        Some(ex) => displacement_decomposition(ex),
        None => displacement_decomposition(&s.vertices),
    }
}

/// Spin group of a 3D root system as an A5/2T/2O/2I label by its order.
pub fn binary_label_of(rs: &str) -> Result<GroupLabel> {
    let n = match close_catalog(rs)? {
        AnyRootSystem::Exact(r) => r.len(),
        AnyRootSystem::Float(r) => r.len(),
    };
    match n {
        12 => Ok(GroupLabel::BinaryTetrahedral),
        18 => Ok(GroupLabel::BinaryOctahedral),
        30 => Ok(GroupLabel::BinaryIcosahedral),
        _ => Err(Error::NoMatch(format!("{rs} has no polyhedral spin group"))),
    }
}
