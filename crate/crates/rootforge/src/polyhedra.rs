//! Icosahedral solids as group orbits: vertices, edges, faces from a rotation
//! system, duals, OFF export and Caspar–Klug counting.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::{icosahedral_group, icosahedral_rotations, icosahedral_rotations_f64};
use crate::error::{Error, Result};
use crate::linalg::mat_vec;
use crate::scalars::{dot, vec_sub, vec_to_f64, GoldenNumber, PointSet, Scalar};

/// Site type of an orbit of the rotation group, by stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SiteType {
    FiveFold,
    ThreeFold,
    TwoFold,
    Generic,
}

impl SiteType {
    pub fn from_orbit_size(n: usize) -> Option<SiteType> {
        match n {
            12 => Some(SiteType::FiveFold),
            20 => Some(SiteType::ThreeFold),
            30 => Some(SiteType::TwoFold),
            60 => Some(SiteType::Generic),
            _ => None,
        }
    }
}

/// One orbit inside a solid's vertex list.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub site: SiteType,
    pub size: usize,
    pub start: usize,
}

/// A solid with float vertices, optional exact vertices, edges and faces.
#[derive(Clone, Debug, Serialize)]
pub struct Solid {
    pub name: String,
    pub vertices: Vec<Vec<f64>>,
    #[serde(skip)]
    pub exact: Option<Vec<Vec<GoldenNumber>>>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
    pub orbits: Vec<OrbitInfo>,
}

/// Which icosahedral group acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitGroup {
    /// Rotations only, order 60.
    Rotations,
    /// Rotations and reflections, order 120.
    Full,
}

fn sort_points<S: Scalar + Ord>(pts: &mut [Vec<S>]) {
    pts.sort_by(|a, b| dot(a, a).cmp(&dot(b, b)).then_with(|| a.cmp(b)));
}

/// Unit 5-fold axis through the icosahedron vertex (0, τ, 1) of the catalog
/// H3 frame.
pub fn five_fold_axis() -> [f64; 3] {
    let t = crate::scalars::TAU_F64;
    let n = (1.0 + t * t).sqrt();
    [0.0, t / n, 1.0 / n]
}

/// Exact orbit of `seed`, ordered by (radius, coordinates).
pub fn orbit_with(seed: &[GoldenNumber], group: OrbitGroup) -> Result<Vec<Vec<GoldenNumber>>> {
    if seed.len() != 3 {
        return Err(Error::DimensionMismatch(3, seed.len()));
    }
    if seed.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let g = match group {
        OrbitGroup::Rotations => icosahedral_rotations(),
        OrbitGroup::Full => icosahedral_group(),
    };
    let set = PointSet::from_points(g.elements().iter().map(|m| mat_vec(&m.0, seed)));
    let mut pts = set.into_items();
    sort_points(&mut pts);
    Ok(pts)
}

/// Orbit under the rotation group.
pub fn orbit(seed: &[GoldenNumber]) -> Result<Vec<Vec<GoldenNumber>>> {
    orbit_with(seed, OrbitGroup::Rotations)
}

/// Float orbit under the rotation group, deduplicated with ε.
pub fn orbit_f64(seed: &[f64]) -> Vec<Vec<f64>> {
    let set = PointSet::from_points(icosahedral_rotations_f64().iter().map(|m| mat_vec(m, seed)));
    set.into_items()
}

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

/// Pairs at minimal exact distance.
fn min_distance_edges(pts: &[Vec<GoldenNumber>]) -> Vec<(usize, usize)> {
    let mut best: Option<GoldenNumber> = None;
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = vec_sub(&pts[i], &pts[j]);
            let d2 = dot(&d, &d);
            match &best {
                Some(b) if d2 > *b => {}
                Some(b) if d2 == *b => edges.push((i, j)),
                _ => {
                    best = Some(d2);
                    edges = vec![(i, j)];
                }
            }
        }
    }
    edges
}

/// Pairs within `(1 + rel)` of the minimal float distance.
pub fn near_edges(pts: &[Vec<f64>], rel: f64) -> Vec<(usize, usize)> {
    let mut dmin = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = vec_sub(&pts[i], &pts[j]);
            dmin = dmin.min(dot(&d, &d).sqrt());
        }
    }
    let cut = dmin * (1.0 + rel);
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = vec_sub(&pts[i], &pts[j]);
            if dot(&d, &d).sqrt() <= cut {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn neighbors(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Neighbors of each vertex in counterclockwise order seen from outside,
/// using the radial direction as the local normal.
pub fn rotation_system(pts: &[Vec<f64>], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = neighbors(pts.len(), edges);
    for (v, nb) in adj.iter_mut().enumerate() {
        let p = &pts[v];
        let r = dot(p, p).sqrt();
        let nrm: Vec<f64> = p.iter().map(|x| x / r).collect();
        let q = nb.first().map(|&u| vec_sub(&pts[u], p)).unwrap_or_else(|| vec![1.0, 0.0, 0.0]);
        let qn = dot(&q, &nrm);
        let e1: Vec<f64> = q.iter().zip(&nrm).map(|(a, b)| a - qn * b).collect();
        let e1n = dot(&e1, &e1).sqrt();
        let e1: Vec<f64> = e1.iter().map(|x| x / e1n).collect();
        let e2 = cross(&nrm, &e1);
        let angle = |u: usize| {
            let d = vec_sub(&pts[u], p);
            dot(&d, &e2).atan2(dot(&d, &e1))
        };
        nb.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    }
    adj
}

/// Faces traced from the rotation system; each directed edge is used once.
/// Faces are oriented counterclockwise seen from outside.
pub fn trace_faces(pts: &[Vec<f64>], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let rot = rotation_system(pts, edges);
    let mut used = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for &(a, b) in edges {
        for (u0, v0) in [(a, b), (b, a)] {
            if used.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                used.insert((u, v));
                face.push(u);
                // Next neighbor after u in the counterclockwise order at v,
                // stepping backwards, keeps the face on the left.
                let nb = &rot[v];
                let k = nb.iter().position(|&w| w == u).expect("edge in rotation system");
                let w = nb[(k + nb.len() - 1) % nb.len()];
                u = v;
                v = w;
                if (u, v) == (u0, v0) || face.len() > pts.len() {
                    break;
                }
            }
            faces.push(face);
        }
    }
    for f in faces.iter_mut() {
        let c = centroid(pts, f);
        let n = face_normal(pts, f);
        if dot(&n, &c) < 0.0 {
            f.reverse();
        }
    }
    faces
}

fn centroid(pts: &[Vec<f64>], f: &[usize]) -> Vec<f64> {
    let mut c = vec![0.0; 3];
    for &i in f {
        for k in 0..3 {
            c[k] += pts[i][k] / f.len() as f64;
        }
    }
    c
}

/// Newell normal of a polygon.
fn face_normal(pts: &[Vec<f64>], f: &[usize]) -> Vec<f64> {
    let mut n = vec![0.0; 3];
    for k in 0..f.len() {
        let (a, b) = (&pts[f[k]], &pts[f[(k + 1) % f.len()]]);
        n[0] += (a[1] - b[1]) * (a[2] + b[2]);
        n[1] += (a[2] - b[2]) * (a[0] + b[0]);
        n[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    n
}

/// Every face planar within `eps` and every other vertex on its inner side.
pub fn faces_planar_convex(pts: &[Vec<f64>], faces: &[Vec<usize>], eps: f64) -> bool {
    faces.iter().all(|f| {
        let n = face_normal(pts, f);
        let nn = dot(&n, &n).sqrt();
        if nn == 0.0 {
            return false;
        }
        let n: Vec<f64> = n.iter().map(|x| x / nn).collect();
        let h = dot(&n, &pts[f[0]]);
        f.iter().all(|&i| (dot(&n, &pts[i]) - h).abs() <= eps) && pts.iter().all(|p| dot(&n, p) <= h + eps)
    })
}

impl Solid {
    /// Solid on the given vertices with edges at minimal distance and faces
    /// from the rotation system.
    pub fn from_exact(name: &str, mut pts: Vec<Vec<GoldenNumber>>, orbits: Vec<OrbitInfo>) -> Result<Solid> {
        if orbits.is_empty() {
            sort_points(&mut pts);
        }
        let vertices: Vec<Vec<f64>> = pts.iter().map(|v| vec_to_f64(v)).collect();
        let edges = min_distance_edges(&pts);
        let faces = trace_faces(&vertices, &edges);
        if !faces_planar_convex(&vertices, &faces, 1e-9) {
            return Err(Error::ValidationFailure(format!("{name}: traced faces are not planar and convex")));
        }
        Ok(Solid { name: name.into(), vertices, exact: Some(pts), edges, faces, orbits })
    }

    /// Float solid with edges within `(1 + rel)` of the minimal distance.
    /// Cages with puckered faces skip the planarity check.
    pub fn from_f64(
        name: &str,
        vertices: Vec<Vec<f64>>,
        rel: f64,
        orbits: Vec<OrbitInfo>,
        require_planar: bool,
    ) -> Result<Solid> {
        let edges = near_edges(&vertices, rel);
        let faces = trace_faces(&vertices, &edges);
        if require_planar && !faces_planar_convex(&vertices, &faces, 1e-6) {
            return Err(Error::ValidationFailure(format!("{name}: traced faces are not planar and convex")));
        }
        Ok(Solid { name: name.into(), vertices, exact: None, edges, faces, orbits })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Histogram of face sizes, `(size, count)` ascending.
    pub fn face_sizes(&self) -> Vec<(usize, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        neighbors(self.vertices.len(), &self.edges).iter().map(|n| n.len()).collect()
    }

    /// Site types of the vertex orbits with their sizes.
    pub fn site_counts(&self) -> Vec<(SiteType, usize)> {
        self.orbits.iter().map(|o| (o.site, o.size)).collect()
    }
}

fn orbits_union(seeds: &[Vec<GoldenNumber>]) -> Result<(Vec<Vec<GoldenNumber>>, Vec<OrbitInfo>)> {
    let mut pts = Vec::new();
    let mut infos = Vec::new();
    for s in seeds {
        let o = orbit(s)?;
        let site = SiteType::from_orbit_size(o.len())
            .ok_or_else(|| Error::ValidationFailure(format!("orbit of size {}", o.len())))?;
        infos.push(OrbitInfo { site, size: o.len(), start: pts.len() });
        pts.extend(o);
    }
    if PointSet::from_points(pts.iter().cloned()).len() != pts.len() {
        return Err(Error::ValidationFailure("orbits overlap".into()));
    }
    Ok((pts, infos))
}

pub const SOLID_NAMES: [&str; 7] = [
    "icosahedron",
    "dodecahedron",
    "icosidodecahedron",
    "rhombic_triacontahedron",
    "truncated_icosahedron",
    "C80_cage",
    "MS2_tiling_vertices",
];

/// Seeds of the two generic MS2 orbits: points on one rhombus edge of the
/// triacontahedron, a third and two thirds of the way from the 5-fold vertex
/// (0,τ,1) to the 3-fold vertex (1,1,1).
pub fn ms2_generic_seeds() -> [Vec<GoldenNumber>; 2] {
    let five = [g(0, 0), g(0, 1), g(1, 0)];
    let three = [g(1, 0), g(1, 0), g(1, 0)];
    let mix = |a: i64, b: i64| -> Vec<GoldenNumber> {
        (0..3)
            .map(|k| five[k].scale_i64(a).add(&three[k].scale_i64(b)).mul(&GoldenNumber::from_ratios(1, 3, 0, 1)))
            .collect()
    };
    [mix(2, 1), mix(1, 2)]
}

/// Equal-bond (bond 2) chamfered dodecahedron: pentagon atoms at height `h`
/// along a 5-fold axis and 3-fold atoms at radius `γ`, by Newton's method.
#[derive(Clone, Debug, Serialize)]
pub struct C80Parameters {
    pub h: f64,
    pub gamma: f64,
    pub pentagon_seed: Vec<f64>,
    pub threefold_seed: Vec<f64>,
}

pub fn c80_parameters() -> C80Parameters {
    let a5 = five_fold_axis();
    // 3-fold axis adjacent to a5: the dodecahedron vertex closest to it.
    let d3 = orbit_f64(&[1.0, 1.0, 1.0])
        .into_iter()
        .map(|v| {
            let n = dot(&v, &v).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        })
        .max_by(|a, b| dot(a, &a5).total_cmp(&dot(b, &a5)))
        .expect("20 points");
    let c = dot(&d3, &a5);
    let mut w = [d3[0] - c * a5[0], d3[1] - c * a5[1], d3[2] - c * a5[2]];
    let wn = dot(&w, &w).sqrt();
    w.iter_mut().for_each(|x| *x /= wn);
    let rho = pentagon_circumradius(2.0);
    let pt = |h: f64| [h * a5[0] + rho * w[0], h * a5[1] + rho * w[1], h * a5[2] + rho * w[2]];
    let f = |h: f64, gam: f64| {
        let x = pt(h);
        let d: Vec<f64> = (0..3).map(|k| x[k] - gam * d3[k]).collect();
        [dot(&d, &d).sqrt() - 2.0, dot(&x, &x).sqrt() - gam]
    };
    let (mut h, mut gam) = (5.0, 6.0);
    for _ in 0..100 {
        let f0 = f(h, gam);
        let e = 1e-7;
        let fh = f(h + e, gam);
        let fg = f(h, gam + e);
        let j = [[(fh[0] - f0[0]) / e, (fg[0] - f0[0]) / e], [(fh[1] - f0[1]) / e, (fg[1] - f0[1]) / e]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let dh = (f0[0] * j[1][1] - f0[1] * j[0][1]) / det;
        let dg = (j[0][0] * f0[1] - j[1][0] * f0[0]) / det;
        h -= dh;
        gam -= dg;
        if dh.abs() + dg.abs() < 1e-15 {
            break;
        }
    }
    C80Parameters { h, gamma: gam, pentagon_seed: pt(h).to_vec(), threefold_seed: d3.iter().map(|v| gam * v).collect() }
}

/// Circumradius of a regular pentagon with the given edge.
pub fn pentagon_circumradius(edge: f64) -> f64 {
    edge / (2.0 * (std::f64::consts::PI / 5.0).sin())
}

/// Named solid from the catalog.
pub fn catalog_solid(name: &str) -> Result<Solid> {
    let seeds: Vec<Vec<GoldenNumber>> = match name {
        "icosahedron" => vec![vec![g(0, 0), g(0, 1), g(1, 0)]],
        "dodecahedron" => vec![vec![g(1, 0), g(1, 0), g(1, 0)]],
        "icosidodecahedron" => vec![vec![g(1, 0), g(0, 0), g(0, 0)]],
        "rhombic_triacontahedron" => vec![vec![g(0, 0), g(0, 1), g(1, 0)], vec![g(1, 0), g(1, 0), g(1, 0)]],
        "truncated_icosahedron" => vec![vec![g(0, 0), g(0, 3), g(1, 0)]],
        "MS2_tiling_vertices" => {
            let [s1, s2] = ms2_generic_seeds();
            vec![vec![g(0, 0), g(0, 1), g(1, 0)], vec![g(1, 0), g(1, 0), g(1, 0)], s1, s2]
        }
        "C80_cage" => {
            let c = c80_parameters();
            let mut pts = orbit_f64(&c.pentagon_seed);
            let start = pts.len();
            pts.extend(orbit_f64(&c.threefold_seed));
            let orbits = vec![
                OrbitInfo { site: SiteType::Generic, size: start, start: 0 },
                OrbitInfo { site: SiteType::ThreeFold, size: pts.len() - start, start },
            ];
            return Solid::from_f64(name, pts, 1e-6, orbits, false);
        }
        other => return Err(Error::UnknownName(other.into())),
    };
    let (pts, orbits) = orbits_union(&seeds)?;
    if name == "MS2_tiling_vertices" {
        let vertices = pts.iter().map(|v| vec_to_f64(v)).collect();
        return Ok(Solid { name: name.into(), vertices, exact: Some(pts), edges: vec![], faces: vec![], orbits });
    }
    Solid::from_exact(name, pts, orbits)
}

/// Caspar–Klug counts `(T, subunits, pentamers, hexamers)`.
pub fn caspar_klug(h: u64, k: u64) -> Result<(u64, u64, u64, u64)> {
    if h == 0 && k == 0 {
        return Err(Error::InvalidInput("(h, k) must not be (0, 0)".into()));
    }
    let t = h * h + h * k + k * k;
    Ok((t, 60 * t, 12, 10 * (t - 1)))
}

/// Whether `t = h² + hk + k²` for some nonnegative `(h, k) ≠ (0, 0)`.
pub fn is_caspar_klug_number(t: u64) -> bool {
    (0..=t).take_while(|h| h * h <= t).any(|h| (0..=h).any(|k| h * h + h * k + k * k == t && (h, k) != (0, 0)))
}

/// Dual solid: face centroids become vertices, faces are the cycles of
/// faces around each original vertex.
pub fn dual(s: &Solid) -> Result<Solid> {
    if s.faces.is_empty() {
        return Err(Error::NoFaces);
    }
    let vertices: Vec<Vec<f64>> = s.faces.iter().map(|f| centroid(&s.vertices, f)).collect();
    let exact = s.exact.as_ref().map(|ex| {
        s.faces
            .iter()
            .map(|f| {
                let inv = GoldenNumber::from_ratios(1, f.len() as i64, 0, 1);
                (0..3).map(|k| f.iter().fold(GoldenNumber::zero(), |acc, &i| acc.add(&ex[i][k])).mul(&inv)).collect()
            })
            .collect()
    });
    // Directed edge (u, v) → face on its left.
    let mut left = std::collections::HashMap::new();
    for (fi, f) in s.faces.iter().enumerate() {
        for k in 0..f.len() {
            left.insert((f[k], f[(k + 1) % f.len()]), fi);
        }
    }
    let rot = rotation_system(&s.vertices, &s.edges);
    let mut faces = Vec::with_capacity(s.vertices.len());
    for (v, nb) in rot.iter().enumerate() {
        let cyc: Vec<usize> = nb.iter().map(|&u| left[&(v, u)]).collect();
        faces.push(cyc);
    }
    let mut edges: Vec<(usize, usize)> = s
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (left[&(a, b)], left[&(b, a)]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    for f in faces.iter_mut() {
        let c = centroid(&vertices, f);
        if dot(&face_normal(&vertices, f), &c) < 0.0 {
            f.reverse();
        }
    }
    Ok(Solid { name: format!("dual({})", s.name), vertices, exact, edges, faces, orbits: vec![] })
}

/// ASCII OFF mesh.
pub fn to_off(s: &Solid) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", s.vertices.len(), s.faces.len(), s.edges.len());
    for v in &s.vertices {
        let _ = writeln!(out, "{:.12} {:.12} {:.12}", v[0], v[1], v[2]);
    }
    for f in &s.faces {
        let idx: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{} {}", f.len(), idx.join(" "));
    }
    out
}

/// Parses an ASCII OFF mesh into vertices and faces.
pub fn parse_off(text: &str) -> Result<(Vec<Vec<f64>>, Vec<Vec<usize>>)> {
    let bad = |m: &str| Error::InvalidInput(format!("OFF: {m}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err(bad("missing header"));
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing counts"))?
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| bad("bad count")))
        .collect::<Result<_>>()?;
    if counts.len() < 2 {
        return Err(bad("bad counts line"));
    }
    let mut vs = Vec::with_capacity(counts[0]);
    for _ in 0..counts[0] {
        let v: Vec<f64> = lines
            .next()
            .ok_or_else(|| bad("missing vertex"))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad("bad coordinate")))
            .collect::<Result<_>>()?;
        vs.push(v);
    }
    let mut fs = Vec::with_capacity(counts[1]);
    for _ in 0..counts[1] {
        let f: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing face"))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad("bad index")))
            .collect::<Result<_>>()?;
        fs.push(f[1..].to_vec());
    }
    Ok((vs, fs))
}
