//! Hamiltonian cycle and path enumeration on polyhedral graphs, with an
//! optional quotient by graph automorphisms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedra::Solid;

/// Default vertex cap.
pub const DEFAULT_VERTEX_CAP: usize = 100;
/// The unvisited subgraph is checked for connectivity every this many levels.
pub const CONNECTIVITY_INTERVAL: usize = 4;
/// Representatives kept per enumeration.
pub const DEFAULT_REPRESENTATIVE_CAP: usize = 1000;

/// Undirected simple connected graph.
#[derive(Clone, Debug, Serialize)]
pub struct PolyGraph {
    pub adjacency: Vec<Vec<usize>>,
    /// Vertex permutations preserving adjacency; the quotient uses the group
    /// they generate.
    pub automorphisms: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphJson {
    Object { adjacency: Vec<Vec<usize>> },
    Lists(Vec<Vec<usize>>),
}

impl PolyGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a}, {b}) outside {n} vertices")));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at {a}")));
            }
            if !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for l in &mut adjacency {
            l.sort_unstable();
        }
        let g = PolyGraph { adjacency, automorphisms: Vec::new() };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Symmetric adjacency lists.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = Vec::new();
        for (a, l) in adj.iter().enumerate() {
            for &b in l {
                if b >= adj.len() || !adj[b].contains(&a) {
                    return Err(Error::InvalidInput(format!("adjacency is not symmetric at ({a}, {b})")));
                }
                edges.push((a, b));
            }
        }
        Self::from_edges(adj.len(), &edges)
    }

    /// JSON adjacency (`[[…], …]` or `{"adjacency": …}`) or edge-list text
    /// with one `u v` pair per line and `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim_start();
        if t.starts_with('[') || t.starts_with('{') {
            let j: GraphJson = serde_json::from_str(t).map_err(|e| Error::InvalidInput(e.to_string()))?;
            let adj = match j {
                GraphJson::Object { adjacency } | GraphJson::Lists(adjacency) => adjacency,
            };
            return Self::from_adjacency(adj);
        }
        let mut edges = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| Error::InvalidInput(format!("bad edge line {line:?}"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [a, b] => edges.push((*a, *b)),
                _ => return Err(Error::InvalidInput(format!("bad edge line {line:?}"))),
            }
        }
        let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Self::from_edges(n, &edges)
    }

    /// Edge graph of a solid, with the vertex permutations induced by the
    /// icosahedral rotations when the vertex set is invariant.
    pub fn from_solid(s: &Solid) -> Result<Self> {
        let mut g = Self::from_edges(s.vertices.len(), &s.edges)?;
        g.automorphisms = solid_rotation_permutations(s);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (a, l) in self.adjacency.iter().enumerate() {
            e.extend(l.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        e
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let e: Vec<(usize, usize)> = self.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Self::from_edges(self.len(), &e)
    }

    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        p.len() == self.len() && self.edges().iter().all(|&(a, b)| self.has_edge(p[a], p[b]))
    }
}

fn solid_rotation_permutations(s: &Solid) -> Vec<Vec<usize>> {
    let set = crate::scalars::PointSet::from_points(s.vertices.iter().cloned());
    let mut out = Vec::new();
    for m in crate::cover::icosahedral_rotations_f64() {
        let p: Option<Vec<usize>> =
            s.vertices.iter().map(|v| set.find(&crate::linalg::mat_vec(m, v))).collect();
        match p {
            Some(p) => out.push(p),
            None => return Vec::new(),
        }
    }
    out
}

/// All automorphisms by backtracking in BFS order; for small graphs.
pub fn graph_automorphisms(g: &PolyGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut order = vec![0];
    let mut seen = vec![false; n];
    if n == 0 {
        return vec![vec![]];
    }
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        for &w in &g.adjacency[order[k]] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        k += 1;
    }
    let mut out = Vec::new();
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(g: &PolyGraph, order: &[usize], k: usize, p: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if k == order.len() {
            out.push(p.to_vec());
            return;
        }
        let v = order[k];
        for img in 0..g.len() {
            if used[img] || g.adjacency[img].len() != g.adjacency[v].len() {
                continue;
            }
            let ok = order[..k].iter().all(|&u| g.has_edge(u, v) == g.has_edge(p[u], img));
            if ok {
                p[v] = img;
                used[img] = true;
                rec(g, order, k + 1, p, used, out);
                used[img] = false;
                p[v] = usize::MAX;
            }
        }
    }
    rec(g, &order, 0, &mut p, &mut used, &mut out);
    out
}

/// Result of a cycle enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct HamiltonianCycles {
    /// Undirected cycles, each counted once.
    pub count: u64,
    /// Orbit count under the automorphism group when a quotient is requested.
    pub orbits: Option<u64>,
    /// Canonical vertex sequences (start at 0, second vertex below the last),
    /// in enumeration order, up to the representative cap.
    pub representatives: Vec<Vec<usize>>,
}

type Bits = u128;

struct Search<'a> {
    g: &'a PolyGraph,
    nbr: Vec<Bits>,
    n: usize,
    start: usize,
    /// Required final vertex for paths; cycles close back to `start`.
    target: Target,
    keep: usize,
    filter: Option<&'a (dyn Fn(&[usize]) -> bool + Sync)>,
}

#[derive(Clone, Copy)]
enum Target {
    Cycle,
    PathTo(usize),
    PathAny,
}

#[derive(Default)]
struct Tally {
    count: u64,
    reps: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Remaining vertices can still be threaded: each needs two usable
    /// neighbours (one for the path end), and the remainder is connected.
    fn feasible(&self, head: usize, visited: Bits, depth: usize) -> Option<Option<usize>> {
        let unvisited = !visited & self.full();
        let mut usable = unvisited | (1 << head);
        let closing = match self.target {
            Target::Cycle => {
                usable |= 1 << self.start;
                Some(self.start)
            }
            Target::PathTo(t) => Some(t),
            Target::PathAny => None,
        };
        let mut forced = None;
        let mut rest = unvisited;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let avail = self.nbr[v] & usable & !(1 << v);
            let need = if closing == Some(v) || matches!(self.target, Target::PathAny) { 1 } else { 2 };
            let k = avail.count_ones();
            if k < need {
                return None;
            }
            if k == need && need == 2 && avail & (1 << head) != 0 {
                // Edge head–v is forced, so v is the next vertex.
                if forced.is_some_and(|f| f != v) {
                    return None;
                }
                forced = Some(v);
            }
        }
        if depth.is_multiple_of(CONNECTIVITY_INTERVAL) && unvisited != 0 {
            let mut seen: Bits = 1 << head;
            let mut frontier: Bits = 1 << head;
            let region = unvisited | (1 << head);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.nbr[v] & region & !seen;
                seen |= new;
                frontier |= new;
            }
            if seen & unvisited != unvisited {
                return None;
            }
        }
        Some(forced)
    }

    fn full(&self) -> Bits {
        if self.n == 128 {
            Bits::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn record(&self, path: &[usize], t: &mut Tally) {
        if let Some(f) = self.filter {
            if !f(path) {
                return;
            }
        }
        t.count += 1;
        if t.reps.len() < self.keep {
            t.reps.push(path.to_vec());
        }
    }

    fn dfs(&self, path: &mut Vec<usize>, visited: Bits, t: &mut Tally) {
        let head = *path.last().expect("nonempty path");
        if path.len() == self.n {
            match self.target {
                Target::Cycle => {
                    if self.nbr[head] & (1 << self.start) != 0 && path[1] < head {
                        self.record(path, t);
                    }
                }
                Target::PathTo(e) => {
                    if head == e {
                        self.record(path, t);
                    }
                }
                Target::PathAny => self.record(path, t),
            }
            return;
        }
        let Some(forced) = self.feasible(head, visited, path.len()) else { return };
        let mut cand = self.nbr[head] & !visited;
        if let Some(f) = forced {
            cand &= 1 << f;
        }
        if let Target::PathTo(e) = self.target {
            if path.len() + 1 < self.n {
                cand &= !(1 << e);
            }
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            self.dfs(path, visited | (1 << w), t);
            path.pop();
        }
    }

    /// Parallel over the first step.
    fn run(&self) -> Tally {
        if self.n == 1 {
            let mut t = Tally::default();
            if !matches!(self.target, Target::Cycle) {
                self.record(&[self.start], &mut t);
            }
            return t;
        }
        let firsts: Vec<usize> = self.g.adjacency[self.start].clone();
        let parts: Vec<Tally> = firsts
            .par_iter()
            .map(|&w| {
                let mut t = Tally::default();
                if let Target::PathTo(e) = self.target {
                    if w == e && self.n > 2 {
                        return t;
                    }
                }
                let mut path = vec![self.start, w];
                self.dfs(&mut path, (1 << self.start) | (1 << w), &mut t);
                t
            })
            .collect();
        let mut out = Tally::default();
        for p in parts {
            out.count += p.count;
            for r in p.reps {
                if out.reps.len() < self.keep {
                    out.reps.push(r);
                }
            }
        }
        out
    }
}

fn check_size(g: &PolyGraph, cap: usize) -> Result<()> {
    let n = g.len();
    if n > cap.min(128) {
        return Err(Error::GraphTooLarge(n, cap.min(128)));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn nbr_bits(g: &PolyGraph) -> Vec<Bits> {
    g.adjacency.iter().map(|l| l.iter().fold(0, |acc, &w| acc | (1 << w))).collect()
}

/// Undirected Hamiltonian cycles passing `filter`.
pub fn enumerate_hamiltonian_cycles_filtered(
    g: &PolyGraph,
    quotient_symmetry: bool,
    cap: usize,
    filter: Option<&(dyn Fn(&[usize]) -> bool + Sync)>,
) -> Result<HamiltonianCycles> {
    check_size(g, cap)?;
    let n = g.len();
    if n < 3 {
        return Ok(HamiltonianCycles { count: 0, orbits: quotient_symmetry.then_some(0), representatives: vec![] });
    }
    let keep = if quotient_symmetry { usize::MAX } else { DEFAULT_REPRESENTATIVE_CAP };
    let s = Search { g, nbr: nbr_bits(g), n, start: 0, target: Target::Cycle, keep, filter };
    let t = s.run();
    let orbits = quotient_symmetry.then(|| cycle_orbits(g, &t.reps));
    let mut reps = t.reps;
    reps.truncate(DEFAULT_REPRESENTATIVE_CAP);
    Ok(HamiltonianCycles { count: t.count, orbits, representatives: reps })
}

pub fn enumerate_hamiltonian_cycles(g: &PolyGraph, quotient_symmetry: bool) -> Result<HamiltonianCycles> {
    enumerate_hamiltonian_cycles_filtered(g, quotient_symmetry, DEFAULT_VERTEX_CAP, None)
}

/// Directed Hamiltonian paths from `start`, ending at `end` when given.
pub fn enumerate_hamiltonian_paths(g: &PolyGraph, start: usize, end: Option<usize>) -> Result<u64> {
    check_size(g, DEFAULT_VERTEX_CAP)?;
    let n = g.len();
    if start >= n || end.is_some_and(|e| e >= n) {
        return Err(Error::InvalidInput("endpoint outside the graph".into()));
    }
    if end == Some(start) {
        return Ok(u64::from(n == 1));
    }
    let target = end.map_or(Target::PathAny, Target::PathTo);
    let s = Search { g, nbr: nbr_bits(g), n, start, target, keep: 0, filter: None };
    Ok(s.run().count)
}

/// Canonical edge set of a cycle.
fn edge_key(cycle: &[usize]) -> Vec<(usize, usize)> {
    let n = cycle.len();
    let mut e: Vec<(usize, usize)> =
        (0..n).map(|i| (cycle[i].min(cycle[(i + 1) % n]), cycle[i].max(cycle[(i + 1) % n]))).collect();
    e.sort_unstable();
    e
}

/// Closure of a set of permutations under composition.
pub fn generated_group(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let p: Vec<usize> = out[k].iter().map(|&i| g[i]).collect();
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        k += 1;
    }
    out
}

/// Orbits of the cycles under the group generated by the automorphisms.
fn cycle_orbits(g: &PolyGraph, cycles: &[Vec<usize>]) -> u64 {
    let group = generated_group(&g.automorphisms, g.len());
    let index: std::collections::HashMap<Vec<(usize, usize)>, usize> =
        cycles.iter().enumerate().map(|(i, c)| (edge_key(c), i)).collect();
    let mut seen = vec![false; cycles.len()];
    let mut orbits = 0;
    for i in 0..cycles.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for p in &group {
            let img: Vec<usize> = cycles[i].iter().map(|&v| p[v]).collect();
            if let Some(&j) = index.get(&edge_key(&img)) {
                seen[j] = true;
            }
        }
    }
    orbits
}

/// Orbit partition of the cycles: sizes of each orbit.
pub fn cycle_orbit_sizes(g: &PolyGraph, cycles: &[Vec<usize>]) -> Vec<usize> {
    let group = generated_group(&g.automorphisms, g.len());
    let index: std::collections::HashMap<Vec<(usize, usize)>, usize> =
        cycles.iter().enumerate().map(|(i, c)| (edge_key(c), i)).collect();
    let mut seen = vec![false; cycles.len()];
    let mut sizes = Vec::new();
    for i in 0..cycles.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = std::collections::BTreeSet::new();
        for p in &group {
            let img: Vec<usize> = cycles[i].iter().map(|&v| p[v]).collect();
            if let Some(&j) = index.get(&edge_key(&img)) {
                seen[j] = true;
                orbit.insert(j);
            }
        }
        sizes.push(orbit.len());
    }
    sizes
}

/// Named test graphs.
pub fn named_graph(name: &str) -> Result<PolyGraph> {
    let solid = |s: &str| -> Result<PolyGraph> { PolyGraph::from_solid(&crate::polyhedra::catalog_solid(s)?) };
    match name {
        "tetrahedron" | "K4" => PolyGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "cube" => {
            let e: Vec<(usize, usize)> = (0..8usize)
                .flat_map(|a| (0..3).map(move |k| (a, a ^ (1 << k))))
                .filter(|&(a, b)| a < b)
                .collect();
            PolyGraph::from_edges(8, &e)
        }
        "petersen" => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            PolyGraph::from_edges(10, &e)
        }
        "dodecahedron" | "icosahedron" | "icosidodecahedron" | "rhombic_triacontahedron" | "truncated_icosahedron" => {
            solid(name)
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}
