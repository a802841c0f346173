//! Type recognition of a root set: simple roots from a generic functional,
//! Coxeter matrix from angles, and diagram matching up to permutation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalars::{dot, reflect_vec, vec_to_f64, Scalar};

/// Recognized label and the extracted simple roots.
#[derive(Clone, Debug)]
pub struct Recognition<S: Scalar> {
    pub label: String,
    pub simples: Vec<Vec<S>>,
    pub coxeter_matrix: Vec<Vec<u32>>,
}

/// Generic linear functional `(1, π, π², …)`.
fn functional(v: &[f64]) -> f64 {
    let mut p = 1.0;
    let mut s = 0.0;
    for x in v {
        s += x * p;
        p *= PI;
    }
    s
}

fn positive<S: Scalar>(v: &[S]) -> Result<bool> {
    let f = functional(&vec_to_f64(v));
    let scale = vec_to_f64(v).iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
    if f.abs() <= 1e-9 * scale {
        return Err(Error::UnrecognizedType("generic functional vanishes on a root".into()));
    }
    Ok(f > 0.0)
}

/// Simple roots: positive roots α whose reflection sends no positive root
/// other than α itself to a negative one.
pub fn extract_simples<S: Scalar>(roots: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let mut pos = Vec::new();
    for r in roots {
        if positive(r)? {
            pos.push(r.clone());
        }
    }
    let mut simples = Vec::new();
    for (i, a) in pos.iter().enumerate() {
        let mut ok = true;
        for (j, b) in pos.iter().enumerate() {
            if i == j {
                continue;
            }
            let img = reflect_vec(a, b).ok_or(Error::ZeroVector)?;
            if !positive(&img)? {
                ok = false;
                break;
            }
        }
        if ok {
            simples.push(a.clone());
        }
    }
    Ok(simples)
}

/// `m_ij` with `cos(π/m_ij) = −(α_i|α_j)/(|α_i||α_j|)`; diagonal 1.
pub fn coxeter_matrix<S: Scalar>(simples: &[Vec<S>]) -> Vec<Vec<u32>> {
    let f: Vec<Vec<f64>> = simples.iter().map(|v| vec_to_f64(v)).collect();
    let n = f.len();
    let mut m = vec![vec![1u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = dot(&f[i], &f[j]) / (dot(&f[i], &f[i]) * dot(&f[j], &f[j])).sqrt();
            let theta = c.clamp(-1.0, 1.0).acos();
            let denom = PI - theta;
            m[i][j] = if denom <= 1e-12 { 0 } else { (PI / denom).round() as u32 };
        }
    }
    m
}

fn coxeter_matrix_checked<S: Scalar>(simples: &[Vec<S>]) -> Result<Vec<Vec<u32>>> {
    let m = coxeter_matrix(simples);
    let f: Vec<Vec<f64>> = simples.iter().map(|v| vec_to_f64(v)).collect();
    for i in 0..f.len() {
        for j in 0..f.len() {
            if i == j {
                continue;
            }
            let c = dot(&f[i], &f[j]) / (dot(&f[i], &f[i]) * dot(&f[j], &f[j])).sqrt();
            let expect = -(PI / m[i][j] as f64).cos();
            if m[i][j] < 2 || (c - expect).abs() > 1e-6 {
                return Err(Error::UnrecognizedType("angle between simple roots is not π − π/m".into()));
            }
        }
    }
    Ok(m)
}

pub(crate) fn is_connected(m: &[Vec<u32>]) -> bool {
    components(m).len() <= 1
}

fn components(m: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if !seen[w] && m[v][w] >= 3 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Coxeter matrix of a diagram given by labelled edges (unlisted pairs are 2).
fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(a, b, l) in edges {
        m[a][b] = l;
        m[b][a] = l;
    }
    m
}

fn path(n: usize, last: u32) -> Vec<(usize, usize, u32)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1, if i + 2 == n { last } else { 3 })).collect()
}

/// Candidate connected diagrams of rank `n ≥ 3`.
fn candidates(n: usize) -> Vec<(String, Vec<Vec<u32>>)> {
    let mut out = vec![(format!("A{n}"), from_edges(n, &path(n, 3))), (format!("B{n}"), from_edges(n, &path(n, 4)))];
    if n >= 4 {
        let mut e = path(n - 1, 3);
        e.push((n - 3, n - 1, 3));
        out.push((format!("D{n}"), from_edges(n, &e)));
    }
    if (6..=8).contains(&n) {
        let mut e = path(n - 1, 3);
        e.push((2, n - 1, 3));
        out.push((format!("E{n}"), from_edges(n, &e)));
    }
    if n == 4 {
        out.push(("F4".into(), from_edges(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)])));
        out.push(("H4".into(), from_edges(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)])));
    }
    if n == 3 {
        out.push(("H3".into(), from_edges(3, &[(0, 1, 5), (1, 2, 3)])));
    }
    out
}

/// Finds a permutation `p` with `target[i][j] = m[p[i]][p[j]]`.
pub(crate) fn match_permutation(m: &[Vec<u32>], target: &[Vec<u32>]) -> Option<Vec<usize>> {
    let n = m.len();
    if target.len() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(m: &[Vec<u32>], t: &[Vec<u32>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == t.len() {
            return true;
        }
        for c in 0..t.len() {
            if used[c] {
                continue;
            }
            if (0..i).all(|k| m[perm[k]][c] == t[k][i]) {
                used[c] = true;
                perm.push(c);
                if rec(m, t, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    rec(m, target, &mut perm, &mut used).then_some(perm)
}

/// Finds a permutation `p` with `target[i][j] = m[p[i]][p[j]]` for scalar
/// matrices such as Cartan matrices.
pub fn match_cartan<S: Scalar>(m: &[Vec<S>], target: &[Vec<S>]) -> Option<Vec<usize>> {
    let n = m.len();
    if target.len() != n {
        return None;
    }
    fn rec<S: Scalar>(m: &[Vec<S>], t: &[Vec<S>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == t.len() {
            return true;
        }
        for c in 0..t.len() {
            if used[c] || !m[c][c].approx_eq(&t[i][i]) {
                continue;
            }
            if (0..i).all(|k| m[perm[k]][c].approx_eq(&t[k][i]) && m[c][perm[k]].approx_eq(&t[i][k])) {
                used[c] = true;
                perm.push(c);
                if rec(m, t, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    rec(m, target, &mut perm, &mut used).then_some(perm)
}

fn label_component(sub: &[Vec<u32>]) -> Result<String> {
    match sub.len() {
        1 => Ok("A1".into()),
        2 => Ok(format!("I2({})", sub[0][1])),
        n => candidates(n)
            .into_iter()
            .find(|(_, t)| match_permutation(sub, t).is_some())
            .map(|(l, _)| l)
            .ok_or_else(|| Error::UnrecognizedType(format!("rank-{n} diagram not in the catalog"))),
    }
}

/// Label for a Coxeter matrix; components joined with "×", ordered by
/// (rank, label).
pub fn label_coxeter_matrix(m: &[Vec<u32>]) -> Result<String> {
    let mut parts = Vec::new();
    for comp in components(m) {
        let sub: Vec<Vec<u32>> = comp.iter().map(|&i| comp.iter().map(|&j| m[i][j]).collect()).collect();
        parts.push((comp.len(), label_component(&sub)?));
    }
    parts.sort();
    Ok(parts.into_iter().map(|(_, l)| l).collect::<Vec<_>>().join("×"))
}

/// Recognizes a root set and returns the extracted simples with the label.
pub fn recognize_with_simples<S: Scalar>(roots: &[Vec<S>]) -> Result<Recognition<S>> {
    if roots.is_empty() {
        return Err(Error::UnrecognizedType("empty root set".into()));
    }
    let simples = extract_simples(roots)?;
    let span = crate::linalg::rank(&roots.to_vec());
    if simples.len() != span {
        return Err(Error::UnrecognizedType(format!(
            "found {} simple roots for a rank-{span} set",
            simples.len()
        )));
    }
    let m = coxeter_matrix_checked(&simples)?;
    let label = label_coxeter_matrix(&m)?;
    Ok(Recognition { label, simples, coxeter_matrix: m })
}

/// Type label of a root set, e.g. "D4", "H4", "I2(5)×I2(5)".
pub fn recognize<S: Scalar>(roots: &[Vec<S>]) -> Result<String> {
    recognize_with_simples(roots).map(|r| r.label)
}

/// Coxeter diagram in DOT; edge labels 3 are suppressed.
pub fn diagram_dot(name: &str, m: &[Vec<u32>]) -> String {
    let mut s = format!("graph \"{name}\" {{\n");
    for i in 0..m.len() {
        s.push_str(&format!("  a{} [label=\"α{}\"];\n", i + 1, i + 1));
    }
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            match m[i][j] {
                2 => {}
                3 => s.push_str(&format!("  a{} -- a{};\n", i + 1, j + 1)),
                l => s.push_str(&format!("  a{} -- a{} [label=\"{l}\"];\n", i + 1, j + 1)),
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_diagrams_are_distinct() {
        for n in 3..=8 {
            let c = candidates(n);
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    assert!(match_permutation(&c[i].1, &c[j].1).is_none(), "{} vs {}", c[i].0, c[j].0);
                }
            }
        }
    }

    #[test]
    fn labels_sorted_by_rank() {
        let m = from_edges(3, &[(1, 2, 5)]);
        assert_eq!(label_coxeter_matrix(&m).unwrap(), "A1×I2(5)");
    }
}
