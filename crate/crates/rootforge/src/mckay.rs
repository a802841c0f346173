//! McKay graphs of the finite subgroups of SU(2), matching against affine
//! ADE diagrams, and the numerical coincidences between 3D root systems,
//! binary polyhedral groups and E-type diagrams.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::reptheory::{character_table, CharacterTable, GroupLabel, Irrep};
use crate::roots::{close_catalog, coxeter_matrix, match_cartan, AnyRootSystem};

/// Simply-laced diagram family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A Dynkin diagram of type `family` and rank `rank`, ordinary or affine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdeType {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        if self.affine {
            write!(f, "{l}{}~", self.rank)
        } else {
            write!(f, "{l}{}", self.rank)
        }
    }
}

/// McKay graph: irreps as nodes, `a_ij = ⟨χ₂χᵢ, χⱼ⟩` as edge multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct McKayGraph {
    pub group: GroupLabel,
    pub nodes: Vec<Irrep>,
    pub adjacency: Vec<Vec<u64>>,
    /// Affine diagram matched by shape and confirmed by Cartan-matrix equality.
    pub diagram: Option<AdeType>,
    /// Odd cyclic groups are not spin groups of a root system.
    pub outside_root_correspondence: bool,
}

/// Leg lengths of a tree diagram, counting the central node, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramLegs {
    pub legs: Vec<usize>,
}

fn edges_of(adj: &[Vec<u64>]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..adj.len() {
        for j in i + 1..adj.len() {
            for _ in 0..adj[i][j] {
                e.push((i, j));
            }
        }
    }
    e
}

fn degrees(adj: &[Vec<u64>]) -> Vec<usize> {
    (0..adj.len()).map(|i| (0..adj.len()).filter(|&j| j != i).map(|j| adj[i][j] as usize).sum()).collect()
}

fn connected(adj: &[Vec<u64>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v][w] > 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Leg lengths (including the centre) from a node of a tree.
fn legs_from(adj: &[Vec<u64>], centre: usize) -> Vec<usize> {
    let n = adj.len();
    let mut legs = Vec::new();
    for start in (0..n).filter(|&w| adj[centre][w] > 0) {
        let (mut prev, mut cur, mut len) = (centre, start, 2);
        loop {
            let next: Vec<usize> = (0..n).filter(|&w| w != prev && w != cur && adj[cur][w] > 0).collect();
            match next.as_slice() {
                [w] => {
                    prev = cur;
                    cur = *w;
                    len += 1;
                }
                _ => break,
            }
        }
        legs.push(len);
    }
    legs.sort_unstable();
    legs
}

fn is_simple_graph(adj: &[Vec<u64>]) -> bool {
    let n = adj.len();
    (0..n).all(|i| adj[i][i] == 0 && (0..n).all(|j| adj[i][j] == adj[j][i] && adj[i][j] <= 1))
}

/// Ordinary ADE type of a tree diagram by leg peeling.
pub fn classify_finite(adj: &[Vec<u64>]) -> Option<AdeType> {
    let n = adj.len();
    if !connected(adj) || !is_simple_graph(adj) || edges_of(adj).len() + 1 != n {
        return None;
    }
    let deg = degrees(adj);
    let branch: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
    let t = |family, rank| Some(AdeType { family, rank, affine: false });
    match branch.as_slice() {
        [] => t(Family::A, n),
        [b] if deg[*b] == 3 => match legs_from(adj, *b).as_slice() {
            [2, 2, k] => t(Family::D, k + 2),
            [2, 3, 3] => t(Family::E, 6),
            [2, 3, 4] => t(Family::E, 7),
            [2, 3, 5] => t(Family::E, 8),
            _ => None,
        },
        _ => None,
    }
}

/// Affine ADE type by degree sequence and leg peeling.
pub fn classify_affine(adj: &[Vec<u64>]) -> Option<AdeType> {
    let n = adj.len();
    let t = |family, rank| Some(AdeType { family, rank, affine: true });
    if n == 1 && adj[0][0] == 2 {
        return t(Family::A, 0);
    }
    if n == 2 && adj[0][1] == 2 && adj[1][0] == 2 && adj[0][0] == 0 && adj[1][1] == 0 {
        return t(Family::A, 1);
    }
    if !connected(adj) || !is_simple_graph(adj) {
        return None;
    }
    let deg = degrees(adj);
    let ne = edges_of(adj).len();
    if ne == n && n >= 3 && deg.iter().all(|&d| d == 2) {
        return t(Family::A, n - 1);
    }
    if ne + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
    let leaves = |b: usize| (0..n).filter(|&w| adj[b][w] > 0 && deg[w] == 1).count();
    match branch.as_slice() {
        [b] if deg[*b] == 4 && n == 5 => t(Family::D, 4),
        [b] if deg[*b] == 3 => match legs_from(adj, *b).as_slice() {
            [3, 3, 3] => t(Family::E, 6),
            [2, 4, 4] => t(Family::E, 7),
            [2, 3, 6] => t(Family::E, 8),
            _ => None,
        },
        [b1, b2] if deg[*b1] == 3 && deg[*b2] == 3 && leaves(*b1) == 2 && leaves(*b2) == 2 => t(Family::D, n - 1),
        _ => None,
    }
}

fn star(legs: &[usize]) -> Vec<Vec<u64>> {
    let n = 1 + legs.iter().map(|l| l - 1).sum::<usize>();
    let mut a = vec![vec![0u64; n]; n];
    let mut next = 1;
    for &l in legs {
        let mut prev = 0;
        for _ in 1..l {
            a[prev][next] = 1;
            a[next][prev] = 1;
            prev = next;
            next += 1;
        }
    }
    a
}

/// Adjacency matrix of a diagram.
pub fn diagram_adjacency(t: AdeType) -> Result<Vec<Vec<u64>>> {
    let bad = || Err(Error::NoMatch(format!("{t} is not a diagram")));
    Ok(match (t.family, t.affine) {
        (Family::A, false) if t.rank >= 1 => {
            let mut a = vec![vec![0; t.rank]; t.rank];
            for i in 1..t.rank {
                a[i - 1][i] = 1;
                a[i][i - 1] = 1;
            }
            a
        }
        (Family::A, true) if t.rank == 0 => vec![vec![2]],
        (Family::A, true) if t.rank == 1 => vec![vec![0, 2], vec![2, 0]],
        (Family::A, true) => {
            let n = t.rank + 1;
            let mut a = vec![vec![0; n]; n];
            for i in 0..n {
                a[i][(i + 1) % n] = 1;
                a[(i + 1) % n][i] = 1;
            }
            a
        }
        (Family::D, false) if t.rank >= 4 => star(&[2, 2, t.rank - 2]),
        (Family::D, true) if t.rank == 4 => star(&[2, 2, 2, 2]),
        (Family::D, true) if t.rank >= 5 => {
            // Chain c₀ … c_{m−1} with two leaves at each end.
            let m = t.rank - 3;
            let n = t.rank + 1;
            let mut a = vec![vec![0; n]; n];
            let mut link = |i: usize, j: usize| {
                a[i][j] = 1;
                a[j][i] = 1;
            };
            for i in 1..m {
                link(i - 1, i);
            }
            link(0, m);
            link(0, m + 1);
            link(m - 1, m + 2);
            link(m - 1, m + 3);
            a
        }
        (Family::E, false) => match t.rank {
            6 => star(&[2, 3, 3]),
            7 => star(&[2, 3, 4]),
            8 => star(&[2, 3, 5]),
            _ => return bad(),
        },
        (Family::E, true) => match t.rank {
            6 => star(&[3, 3, 3]),
            7 => star(&[2, 4, 4]),
            8 => star(&[2, 3, 6]),
            _ => return bad(),
        },
        _ => return bad(),
    })
}

/// `2·Id − A`.
pub fn cartan_of(adj: &[Vec<u64>]) -> Matrix<f64> {
    let n = adj.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { 2.0 } else { 0.0 } - adj[i][j] as f64).collect()).collect()
}

fn mckay_adjacency(table: &CharacterTable) -> Result<Vec<Vec<u64>>> {
    let chi2 = table
        .spinor_character()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not a subgroup of SU(2)", table.group)))?;
    let mut a = Vec::new();
    for row in &table.values {
        let prod: Vec<_> = row.iter().zip(&chi2).map(|(x, y)| x * y).collect();
        a.push(table.decompose_complex(&prod)?.counts());
    }
    Ok(a)
}

/// McKay graph with χ₂ taken from explicit spinors.
pub fn mckay_graph(label: GroupLabel) -> Result<McKayGraph> {
    let table = character_table(label)?;
    let adjacency = mckay_adjacency(&table)?;
    let diagram = classify_affine(&adjacency).filter(|t| {
        diagram_adjacency(*t)
            .map(|d| d.len() == adjacency.len() && match_cartan(&cartan_of(&adjacency), &cartan_of(&d)).is_some())
            .unwrap_or(false)
    });
    Ok(McKayGraph {
        group: label,
        nodes: table.irreps.clone(),
        adjacency,
        diagram,
        outside_root_correspondence: matches!(label, GroupLabel::Cyclic(n) if n % 2 == 1),
    })
}

impl McKayGraph {
    pub fn dims(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.dim).collect()
    }

    /// `(2·Id − A)·d = 0` for the dimension vector `d`.
    pub fn dims_in_kernel(&self) -> bool {
        let c = cartan_of(&self.adjacency);
        let d = self.dims();
        c.iter().all(|row| row.iter().zip(&d).map(|(x, &y)| x * y as f64).sum::<f64>().abs() < 1e-9)
    }

    /// Graph with the trivial irrep (node 0) removed.
    pub fn without_trivial(&self) -> Vec<Vec<u64>> {
        self.adjacency[1..].iter().map(|r| r[1..].to_vec()).collect()
    }

    /// Graphviz text with dimension labels.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"{}\" {{\n", self.group);
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{} ({})\"];\n", n.name, n.dim));
        }
        for (i, j) in edges_of(&self.adjacency) {
            s.push_str(&format!("  n{i} -- n{j};\n"));
        }
        for i in 0..self.nodes.len() {
            for _ in 0..self.adjacency[i][i] {
                s.push_str(&format!("  n{i} -- n{i};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Number of roots of a simply-laced diagram, by closing the simple roots
/// under simple reflections in root coordinates.
pub fn root_count(adj: &[Vec<u64>]) -> usize {
    let n = adj.len();
    let cartan: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -(adj[i][j] as i64) }).collect()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for q in &queue {
        seen.insert(q.clone());
    }
    let mut k = 0;
    while k < queue.len() {
        let b = queue[k].clone();
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
            let mut r = b.clone();
            r[i] -= pair;
            if seen.insert(r.clone()) {
                queue.push(r);
            }
        }
        k += 1;
        if queue.len() > 100_000 {
            break;
        }
    }
    queue.len()
}

/// `(Σ irrep dims, Coxeter number of the matched E-type, roots of the 3D system)`.
pub fn coxeter_number_identity(label: GroupLabel) -> Result<(usize, usize, usize)> {
    let rs3 = match label {
        GroupLabel::BinaryTetrahedral => "A3",
        GroupLabel::BinaryOctahedral => "B3",
        GroupLabel::BinaryIcosahedral => "H3",
        other => return Err(Error::NoMatch(format!("{other} has no 3D root system partner"))),
    };
    let g = mckay_graph(label)?;
    let finite = g.without_trivial();
    if classify_finite(&finite).is_none() {
        return Err(Error::IdentityViolation(format!("{label}: reduced McKay graph is not a Dynkin diagram")));
    }
    let h = root_count(&finite) / finite.len();
    let sum: usize = g.dims().iter().sum();
    let roots = match close_catalog(rs3)? {
        AnyRootSystem::Exact(r) => r.len(),
        AnyRootSystem::Float(r) => r.len(),
    };
    if sum != h || h != roots {
        return Err(Error::IdentityViolation(format!("{label}: ({sum}, {h}, {roots})")));
    }
    Ok((sum, h, roots))
}

/// Rotation orders read from the Coxeter diagram of a 3D (or planar) root
/// system, ascending.
pub fn rotation_orders(rs: &str) -> Result<Vec<usize>> {
    let simples = close_catalog(rs)?.simples_f64();
    let m = coxeter_matrix(&simples);
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[i][j] as usize);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Target diagram: the reduced McKay graph of the spin group for the
/// polyhedral and dihedral-prism systems, the path `Aₙ` for `I2(n)`.
fn target_diagram(rs: &str) -> Result<Vec<Vec<u64>>> {
    let poly = match rs {
        "A3" => Some(GroupLabel::BinaryTetrahedral),
        "B3" => Some(GroupLabel::BinaryOctahedral),
        "H3" => Some(GroupLabel::BinaryIcosahedral),
        _ => None,
    };
    if let Some(l) = poly {
        return Ok(mckay_graph(l)?.without_trivial());
    }
    let num = |p: &str| rs.strip_prefix(p).and_then(|r| r.strip_suffix(')')).and_then(|r| r.parse::<usize>().ok());
    if let Some(n) = num("A1×I2(").or_else(|| num("A1xI2(")) {
        // The rotation group is dihedral; its spin group is Dic_n.
        return Ok(mckay_graph(GroupLabel::Dicyclic(n))?.without_trivial());
    }
    if let Some(n) = num("I2(") {
        return diagram_adjacency(AdeType { family: Family::A, rank: n, affine: false });
    }
    Err(Error::NoMatch(format!("{rs} is not one of I2(n), A1×I2(n), A3, B3, H3")))
}

/// Rotation-order triple of `rs` against the legs of its ADE partner.
pub fn leg_triple_correspondence(rs: &str) -> Result<(Vec<usize>, DiagramLegs, AdeType)> {
    let orders = rotation_orders(rs)?;
    let adj = target_diagram(rs)?;
    let t = classify_finite(&adj).ok_or_else(|| Error::NoMatch(format!("{rs}: partner is not a Dynkin diagram")))?;
    let deg = degrees(&adj);
    let legs = match (0..adj.len()).find(|&i| deg[i] >= 3) {
        Some(b) => legs_from(&adj, b),
        None => vec![adj.len()],
    };
    if orders != legs {
        return Err(Error::NoMatch(format!("{rs}: orders {orders:?} vs legs {legs:?} of {t}")));
    }
    Ok((orders, DiagramLegs { legs }, t))
}
