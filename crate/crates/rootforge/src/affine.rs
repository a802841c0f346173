//! Affine extensions: affine reflections and translations, orbit-translate-
//! orbit point arrays, affine roots projected through diagram foldings, and
//! fullerene onions grown by a translation along a 5-fold axis.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{icosahedral_group, icosahedral_rotations, icosahedral_rotations_f64};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, Matrix};
use crate::polyhedra::{
    catalog_solid, five_fold_axis, is_caspar_klug_number, orbit, pentagon_circumradius, trace_faces, OrbitGroup,
};
use crate::roots::{close_catalog, highest_root, AnyRootSystem, RootSystem};
use crate::scalars::{dot, reflect_vec, vec_add, vec_is_zero, vec_key, vec_scale, GoldenNumber, PointSet, Scalar};

/// `s^aff(λ) = λ + α_H − 2(λ|α_H)/(α_H|α_H) α_H`.
pub fn affine_reflection<S: Scalar>(alpha_h: &[S], lambda: &[S]) -> Result<Vec<S>> {
    if alpha_h.len() != lambda.len() {
        return Err(Error::DimensionMismatch(alpha_h.len(), lambda.len()));
    }
    if vec_is_zero(alpha_h) {
        return Err(Error::ZeroVector);
    }
    let r = reflect_vec(alpha_h, lambda).ok_or(Error::ZeroVector)?;
    Ok(vec_add(&r, alpha_h))
}

/// `s^aff(s_α(λ))` with `α = α_H`; equals `λ + α_H`.
pub fn affine_translation<S: Scalar>(alpha_h: &[S], lambda: &[S]) -> Result<Vec<S>> {
    let r = reflect_vec(alpha_h, lambda).ok_or(Error::ZeroVector)?;
    affine_reflection(alpha_h, &r)
}

/// Point array with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct PointArray<S: Scalar> {
    pub points: Vec<Vec<S>>,
    pub group: String,
    pub seed_len: usize,
    pub translation: Vec<S>,
    pub max_cardinality: usize,
    pub degenerate: bool,
}

fn group_matrices(group: OrbitGroup) -> Vec<Matrix<GoldenNumber>> {
    let g = match group {
        OrbitGroup::Rotations => icosahedral_rotations(),
        OrbitGroup::Full => icosahedral_group(),
    };
    g.elements().iter().map(|m| m.0.clone()).collect()
}

/// `G·{p + t : p ∈ seed} ∪ seed`, ordered by (radius, coordinates).
pub fn extend_with<S: Scalar>(group: &[Matrix<S>], label: &str, seed: &[Vec<S>], t: &[S]) -> Result<PointArray<S>> {
    let mut set = PointSet::from_points(seed.iter().cloned());
    let seed_len = set.len();
    if !vec_is_zero(t) {
        for p in seed {
            if p.len() != t.len() {
                return Err(Error::DimensionMismatch(t.len(), p.len()));
            }
            let q = vec_add(p, t);
            for m in group {
                set.insert(mat_vec(m, &q));
            }
        }
    }
    let mut points = set.into_items();
    points.sort_by_key(|v| (dot(v, v).key(), vec_key(v)));
    let max_cardinality = if vec_is_zero(t) { seed_len } else { group.len() * seed_len + seed_len };
    Ok(PointArray {
        degenerate: points.len() < max_cardinality,
        points,
        group: label.into(),
        seed_len,
        translation: t.to_vec(),
        max_cardinality,
    })
}

/// Exact extension under the icosahedral group.
pub fn extend(seed: &[Vec<GoldenNumber>], t: &[GoldenNumber], group: OrbitGroup) -> Result<PointArray<GoldenNumber>> {
    let label = match group {
        OrbitGroup::Rotations => "H3+",
        OrbitGroup::Full => "H3",
    };
    extend_with(&group_matrices(group), label, seed, t)
}

/// Float extension under the icosahedral rotation group.
pub fn extend_f64(seed: &[Vec<f64>], t: &[f64]) -> Result<PointArray<f64>> {
    extend_with(icosahedral_rotations_f64(), "H3+", seed, t)
}

/// Crystallographic → non-crystallographic pairs with a 2-to-1 folding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FoldingPair {
    A4H2,
    D6H3,
    E8H4,
}

impl FoldingPair {
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace("->", "→").replace(['-', '>'], "").as_str() {
            "A4→H2" | "A4H2" => Ok(FoldingPair::A4H2),
            "D6→H3" | "D6H3" => Ok(FoldingPair::D6H3),
            "E8→H4" | "E8H4" => Ok(FoldingPair::E8H4),
            _ => Err(Error::UnknownName(s.into())),
        }
    }

    pub fn names(&self) -> (&'static str, &'static str) {
        match self {
            FoldingPair::A4H2 => ("A4", "H2"),
            FoldingPair::D6H3 => ("D6", "H3"),
            FoldingPair::E8H4 => ("E8", "H4"),
        }
    }
}

/// Node `i` of the crystallographic diagram folds onto `c_i · a_{target[i]}`
/// with `c_i ∈ {1, τ}`.
#[derive(Clone, Debug, Serialize)]
pub struct Folding {
    pub target: Vec<usize>,
    pub tau_scaled: Vec<bool>,
}

/// Direction class of a projected affine root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxisClass {
    /// Parallel to a root of the target system (a 2-fold axis in 3D).
    TwoFold,
    /// Parallel to an icosahedron vertex (3D only).
    FiveFold,
    ThreeFold,
    Other,
}

/// Projected affine root of a non-crystallographic system.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectedAffineRoot {
    pub pair: FoldingPair,
    pub folding: Folding,
    /// Highest-root coefficients over the crystallographic simples.
    pub input_coefficients: Vec<i64>,
    /// Image of the highest root over the target simples.
    pub coefficients: Vec<GoldenNumber>,
    pub vector: Vec<GoldenNumber>,
    pub axis: AxisClass,
}

fn exact(name: &str) -> Result<RootSystem<GoldenNumber>> {
    match close_catalog(name)? {
        AnyRootSystem::Exact(r) => Ok(r),
        AnyRootSystem::Float(_) => Err(Error::InvalidInput(format!("{name} has no exact catalog entry"))),
    }
}

/// Checks `C_ki + τ C_ki' = c_k A_{f(k) j}` for every pair `(i, i')` over
/// target node `j` and every node `k`: the product of the paired simple
/// reflections projects to the target reflection.
fn folding_valid(c: &Matrix<GoldenNumber>, a: &Matrix<GoldenNumber>, target: &[usize], tau: &[bool]) -> bool {
    let n = a.len();
    let tau_g = GoldenNumber::tau();
    let coef = |k: usize| if tau[k] { tau_g.clone() } else { GoldenNumber::one() };
    for j in 0..n {
        let i = (0..target.len()).find(|&i| target[i] == j && !tau[i]);
        let ip = (0..target.len()).find(|&i| target[i] == j && tau[i]);
        let (Some(i), Some(ip)) = (i, ip) else { return false };
        for k in 0..target.len() {
            let lhs = c[k][i].add(&tau_g.mul(&c[k][ip]));
            let rhs = coef(k).mul(&a[target[k]][j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Searches all assignments of crystallographic nodes to target nodes
/// scaled by 1 or τ.
pub fn find_folding(c: &Matrix<GoldenNumber>, a: &Matrix<GoldenNumber>) -> Option<Folding> {
    let n2 = c.len();
    let n = a.len();
    if n2 != 2 * n {
        return None;
    }
    // Slot s ↦ (target s / 2, scaled by τ when s is odd).
    let mut perm: Vec<usize> = Vec::with_capacity(n2);
    let mut used = vec![false; n2];
    fn rec(
        c: &Matrix<GoldenNumber>,
        a: &Matrix<GoldenNumber>,
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> Option<Folding> {
        let n2 = c.len();
        if perm.len() == n2 {
            let target: Vec<usize> = perm.iter().map(|s| s / 2).collect();
            let tau: Vec<bool> = perm.iter().map(|s| s % 2 == 1).collect();
            return folding_valid(c, a, &target, &tau).then_some(Folding { target, tau_scaled: tau });
        }
        let k = perm.len();
        for s in 0..n2 {
            if used[s] {
                continue;
            }
            // Nodes folded onto the same target must be orthogonal.
            if (0..k).any(|m| perm[m] / 2 == s / 2 && !c[m][k].is_zero()) {
                continue;
            }
            used[s] = true;
            perm.push(s);
            if let Some(f) = rec(c, a, perm, used) {
                return Some(f);
            }
            perm.pop();
            used[s] = false;
        }
        None
    }
    rec(c, a, &mut perm, &mut used)
}

fn parallel<S: Scalar>(x: &[S], y: &[S]) -> bool {
    let (xx, yy, xy) = (dot(x, x), dot(y, y), dot(x, y));
    xy.mul(&xy).approx_eq(&xx.mul(&yy))
}

fn classify_axis(v: &[GoldenNumber], target: &RootSystem<GoldenNumber>) -> AxisClass {
    if target.roots.iter().any(|r| parallel(r, v)) {
        return AxisClass::TwoFold;
    }
    if v.len() == 3 {
        let g = |a, b| GoldenNumber::from_ints(a, b);
        if let Ok(five) = orbit(&[g(0, 0), g(0, 1), g(1, 0)]) {
            if five.iter().any(|p| parallel(p, v)) {
                return AxisClass::FiveFold;
            }
        }
        if let Ok(three) = orbit(&[g(1, 0), g(1, 0), g(1, 0)]) {
            if three.iter().any(|p| parallel(p, v)) {
                return AxisClass::ThreeFold;
            }
        }
    }
    AxisClass::Other
}

/// Folds the crystallographic diagram onto the target and pushes the
/// highest root through by linearity.
pub fn project_affine_root(pair: FoldingPair) -> Result<ProjectedAffineRoot> {
    let (from, to) = pair.names();
    let big = exact(from)?;
    let small = exact(to)?;
    let c = big.cartan_matrix();
    let a = small.cartan_matrix();
    let folding = find_folding(&c, &a).ok_or_else(|| Error::FoldingNotFound(format!("{from} → {to}")))?;
    let h = highest_root(&big)?;
    let input: Vec<i64> = h
        .coefficients
        .iter()
        .map(|x| Scalar::to_integer(x).ok_or_else(|| Error::InvalidInput("non-integral highest root".into())))
        .collect::<Result<_>>()?;
    let mut coefficients = vec![GoldenNumber::zero(); a.len()];
    for (k, &m) in input.iter().enumerate() {
        let ck = if folding.tau_scaled[k] { GoldenNumber::tau() } else { GoldenNumber::one() };
        coefficients[folding.target[k]] = coefficients[folding.target[k]].add(&ck.scale_i64(m));
    }
    let mut vector = vec![GoldenNumber::zero(); small.dim];
    for (j, cj) in coefficients.iter().enumerate() {
        vector = vec_add(&vector, &vec_scale(&small.simples[j], cj));
    }
    let axis = classify_axis(&vector, &small);
    Ok(ProjectedAffineRoot { pair, folding, input_coefficients: input, coefficients, vector, axis })
}

/// One nested fullerene cage.
#[derive(Clone, Debug, Serialize)]
pub struct FullereneShell {
    pub atoms: Vec<[f64; 3]>,
    pub bonds: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
    pub t: u64,
    pub bond_spread: f64,
    pub max_angle_deviation_deg: f64,
    /// Translation length along the 5-fold axis that produced the shell.
    pub translation: Option<f64>,
}

/// Search record for one onion step.
#[derive(Clone, Debug, Serialize)]
pub struct OnionStep {
    pub step: usize,
    /// Grid points `m/q` (in units of the pentagon circumradius) whose
    /// candidate shell passes the validity predicate.
    pub grid_survivors: Vec<(u32, u32, usize)>,
    /// Distinct translation lengths after local refinement.
    pub refined: Vec<f64>,
    pub chosen: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Onion {
    pub start: String,
    pub shells: Vec<FullereneShell>,
    pub steps: Vec<OnionStep>,
}

/// Tolerances of the shell validity predicate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShellTolerances {
    /// Maximal `(max − min)/mean` bond length.
    pub bond_spread: f64,
    /// Maximal deviation of a face corner from the nearer of 108° and 120°.
    pub angle_deg: f64,
    /// Bonds join atoms within this factor of the minimal distance.
    pub bond_factor: f64,
}

pub const DEFAULT_SHELL_TOLERANCES: ShellTolerances =
    ShellTolerances { bond_spread: 0.05, angle_deg: 10.0, bond_factor: 1.2 };

type P3 = [f64; 3];

fn d2(a: &P3, b: &P3) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

/// Pairs within `factor` of the minimal distance, by a sweep along x.
fn bonds(pts: &[P3], factor: f64) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a][0].total_cmp(&pts[b][0]));
    let mut best = f64::INFINITY;
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k + 1..] {
            if pts[j][0] - pts[i][0] >= best {
                break;
            }
            best = best.min(d2(&pts[i], &pts[j]).sqrt());
        }
    }
    let cut = best * factor;
    let mut out = Vec::new();
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k + 1..] {
            if pts[j][0] - pts[i][0] > cut {
                break;
            }
            if d2(&pts[i], &pts[j]).sqrt() <= cut {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Validity predicate: trivalent connected cage of 12 pentagons and
/// hexagons, uniform bonds and corner angles within tolerance, and an atom
/// count of 20T with T a Caspar–Klug number.
pub fn validate_shell(atoms: &[P3], tol: &ShellTolerances) -> Option<FullereneShell> {
    let n = atoms.len();
    if n < 20 || !n.is_multiple_of(20) || !is_caspar_klug_number((n / 20) as u64) {
        return None;
    }
    let es = bonds(atoms, tol.bond_factor);
    let mut deg = vec![0usize; n];
    for &(a, b) in &es {
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d != 3) || !connected(n, &es) {
        return None;
    }
    let lens: Vec<f64> = es.iter().map(|&(a, b)| d2(&atoms[a], &atoms[b]).sqrt()).collect();
    let (lo, hi) = lens.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    let mean = lens.iter().sum::<f64>() / lens.len() as f64;
    let spread = (hi - lo) / mean;
    if spread > tol.bond_spread {
        return None;
    }
    let pv: Vec<Vec<f64>> = atoms.iter().map(|a| a.to_vec()).collect();
    let faces = trace_faces(&pv, &es);
    if n as i64 - es.len() as i64 + faces.len() as i64 != 2 {
        return None;
    }
    if faces.iter().any(|f| f.len() != 5 && f.len() != 6) || faces.iter().filter(|f| f.len() == 5).count() != 12 {
        return None;
    }
    let mut worst = 0.0f64;
    for f in &faces {
        for k in 0..f.len() {
            let (a, b, c) = (&atoms[f[(k + f.len() - 1) % f.len()]], &atoms[f[k]], &atoms[f[(k + 1) % f.len()]]);
            let u = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
            let v = [c[0] - b[0], c[1] - b[1], c[2] - b[2]];
            let cos = dot(&u, &v) / (dot(&u, &u) * dot(&v, &v)).sqrt();
            let a = cos.clamp(-1.0, 1.0).acos().to_degrees();
            worst = worst.max((a - 108.0).abs().min((a - 120.0).abs()));
        }
    }
    if worst > tol.angle_deg {
        return None;
    }
    Some(FullereneShell {
        atoms: atoms.to_vec(),
        bonds: es,
        faces,
        t: (n / 20) as u64,
        bond_spread: spread,
        max_angle_deviation_deg: worst,
        translation: None,
    })
}

fn orbit_p3(p: &P3) -> Vec<P3> {
    icosahedral_rotations_f64()
        .iter()
        .map(|m| {
            let v = mat_vec(m, p);
            [v[0], v[1], v[2]]
        })
        .collect()
}

/// Radius classes of a point list, outermost first, split where the gap
/// exceeds `1e-7` relative.
fn radius_classes(radii: &[f64]) -> Vec<(f64, Vec<usize>)> {
    let mut idx: Vec<usize> = (0..radii.len()).collect();
    idx.sort_by(|&a, &b| radii[b].total_cmp(&radii[a]));
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some((r, v)) if (*r - radii[i]).abs() <= 1e-7 * r.max(1.0) => v.push(i),
            _ => out.push((radii[i], vec![i])),
        }
    }
    out
}

/// Outermost union of radius classes of `P ∪ G(P + L·axis)` that forms a
/// valid shell with more than `prev` atoms, scanning up to `nmax` atoms.
pub fn outer_shell(cloud: &[P3], axis: &P3, len: f64, prev: usize, nmax: usize, tol: &ShellTolerances) -> Option<FullereneShell> {
    let shifted: Vec<P3> = cloud.iter().map(|p| [p[0] + len * axis[0], p[1] + len * axis[1], p[2] + len * axis[2]]).collect();
    let radii: Vec<f64> = cloud.iter().chain(&shifted).map(|p| dot(p, p).sqrt()).collect();
    let mut set: PointSet<f64> = PointSet::new();
    for (_, members) in radius_classes(&radii) {
        for i in members {
            if i < cloud.len() {
                set.insert(cloud[i].to_vec());
            } else {
                for q in orbit_p3(&shifted[i - cloud.len()]) {
                    set.insert(q.to_vec());
                }
            }
        }
        if set.len() > nmax {
            return None;
        }
        if set.len() > prev && set.len().is_multiple_of(20) {
            let atoms: Vec<P3> = set.items().iter().map(|v| [v[0], v[1], v[2]]).collect();
            if let Some(mut s) = validate_shell(&atoms, tol) {
                s.translation = Some(len);
                return Some(s);
            }
        }
    }
    None
}

/// Distinct rationals `m/q` with `q ≤ 8`, `m ≤ 64`, ascending.
pub fn translation_grid() -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = Vec::new();
    for q in 1..=8u32 {
        for m in 1..=64u32 {
            if num_integer::gcd(m, q) == 1 {
                v.push((m, q));
            }
        }
    }
    v.sort_by(|a, b| (a.0 as f64 / a.1 as f64).total_cmp(&(b.0 as f64 / b.1 as f64)));
    v
}

/// Minimizes the bond spread of valid shells near `center`: a scan of
/// `[c − w, c + w]` that recenters while the minimum sits on the window edge,
/// followed by golden-section search.
fn refine(cloud: &[P3], axis: &P3, center: f64, w: f64, prev: usize, nmax: usize, tol: &ShellTolerances) -> Option<f64> {
    let f = |l: f64| outer_shell(cloud, axis, l, prev, nmax, tol).map(|s| s.bond_spread).unwrap_or(f64::INFINITY);
    let samples = 32;
    let step = 2.0 * w / samples as f64;
    let (mut best, mut best_l, mut c0) = (f64::INFINITY, center, center);
    for _ in 0..8 {
        let mut at = 0;
        for k in 0..=samples {
            let l = c0 - w + step * k as f64;
            let v = f(l);
            if v < best {
                best = v;
                best_l = l;
                at = k;
            }
        }
        if !best.is_finite() || (at != 0 && at != samples) || (best_l - c0).abs() < step / 2.0 {
            break;
        }
        c0 = best_l;
    }
    if !best.is_finite() {
        return None;
    }
    let (mut a, mut b) = (best_l - step, best_l + step);
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - gr * (b - a), a + gr * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    let l = (a + b) / 2.0;
    let v = f(l);
    Some(if v <= best { l } else { best_l })
}

/// Start cages with bond length 2.
pub fn start_cage(name: &str) -> Result<Vec<P3>> {
    let solid = match name {
        "C60" => catalog_solid("truncated_icosahedron")?,
        "C80" => catalog_solid("C80_cage")?,
        other => return Err(Error::UnknownName(other.into())),
    };
    Ok(solid.vertices.iter().map(|v| [v[0], v[1], v[2]]).collect())
}

/// Grows `shells` nested cages from the start cage. Each step scans the
/// translation grid (and the translations chosen at earlier steps), refines
/// the survivors and applies the best translation to the whole point cloud.
pub fn fullerene_onion(start: &str, shells: usize) -> Result<Onion> {
    fullerene_onion_with(start, shells, &DEFAULT_SHELL_TOLERANCES)
}

pub fn fullerene_onion_with(start: &str, shells: usize, tol: &ShellTolerances) -> Result<Onion> {
    if shells == 0 {
        return Err(Error::InvalidInput("shells must be at least 1".into()));
    }
    let atoms = start_cage(start)?;
    let first = validate_shell(&atoms, tol)
        .ok_or_else(|| Error::ValidationFailure(format!("{start} fails its own validity test")))?;
    let rho = pentagon_circumradius(2.0);
    let axis = five_fold_axis();
    let grid = translation_grid();
    let mut cloud = atoms;
    let mut out = vec![first];
    let mut steps: Vec<OnionStep> = Vec::new();
    for step in 1..shells {
        let prev = out.last().expect("nonempty").atoms.len();
        let nmax = 5 * prev;
        let hits: Vec<(u32, u32, usize)> = grid
            .par_iter()
            .filter_map(|&(m, q)| {
                outer_shell(&cloud, &axis, rho * m as f64 / q as f64, prev, nmax, tol).map(|s| (m, q, s.atoms.len()))
            })
            .collect();
        let mut centers: Vec<f64> = hits.iter().map(|&(m, q, _)| rho * m as f64 / q as f64).collect();
        centers.extend(steps.iter().map(|s| s.chosen));
        let w = rho / 32.0;
        let mut refined: Vec<f64> = centers
            .par_iter()
            .filter_map(|&c| refine(&cloud, &axis, c, w, prev, nmax, tol))
            .collect();
        refined.sort_by(f64::total_cmp);
        refined.dedup_by(|a, b| (*a - *b).abs() < 1e-6 * rho);
        let best = refined
            .iter()
            .filter_map(|&l| outer_shell(&cloud, &axis, l, prev, nmax, tol).map(|s| (l, s)))
            .min_by(|a, b| a.1.bond_spread.total_cmp(&b.1.bond_spread));
        let Some((chosen, shell)) = best else {
            return Err(Error::NoValidShell { start: start.into(), step });
        };
        steps.push(OnionStep { step, grid_survivors: hits, refined, chosen });
        out.push(shell);
        if step + 1 < shells {
            let mut set = PointSet::from_points(cloud.iter().map(|p| p.to_vec()));
            for p in &cloud {
                for q in orbit_p3(&[p[0] + chosen * axis[0], p[1] + chosen * axis[1], p[2] + chosen * axis[2]]) {
                    set.insert(q.to_vec());
                }
            }
            cloud = set.items().iter().map(|v| [v[0], v[1], v[2]]).collect();
        }
    }
    Ok(Onion { start: start.into(), shells: out, steps })
}

/// Helper for callers holding `Vec<f64>` points.
pub fn to_p3(v: &[Vec<f64>]) -> Vec<P3> {
    v.iter().map(|p| [p[0], p[1], p[2]]).collect()
}

/// Distance between a point set and its image: zero when the set is
/// invariant under every rotation.
pub fn is_rotation_invariant<S: Scalar>(pts: &[Vec<S>], group: &[Matrix<S>]) -> bool {
    let set = PointSet::from_points(pts.iter().cloned());
    group.iter().all(|m| pts.iter().all(|p| set.contains(&mat_vec(m, p))))
}
