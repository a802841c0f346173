//! Dense matrices over a scalar backend, row-major `Vec<Vec<S>>`.

use crate::scalars::{dot, Scalar};

pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

pub fn transpose<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_approx_eq<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.approx_eq(y)))
}

pub fn is_identity<S: Scalar>(a: &Matrix<S>) -> bool {
    mat_approx_eq(a, &identity(a.len()))
}

pub fn trace<S: Scalar>(a: &Matrix<S>) -> S {
    (0..a.len()).fold(S::zero(), |acc, i| acc.add(&a[i][i]))
}

/// Gram matrix `(v_i | v_j)`.
pub fn gram<S: Scalar>(vs: &[Vec<S>]) -> Matrix<S> {
    vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
}

/// Row echelon form by Gaussian elimination; returns the reduced matrix and
/// its rank. Pivots are the entries of largest magnitude for stability on the
/// Float backend; exact backends only need them nonzero.
fn eliminate<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, usize, S) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut det = S::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for r in rank..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let mag = a[r][c].to_f64().abs();
            if best.is_none_or(|(_, m)| mag > m) {
                best = Some((r, mag));
            }
        }
        let Some((p, _)) = best else {
            det = S::zero();
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            det = det.neg();
        }
        let piv = a[rank][c].clone();
        det = det.mul(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for r in 0..rows {
            if r == rank || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..cols {
                let v = a[r][k].sub(&f.mul(&a[rank][k]));
                a[r][k] = v;
            }
        }
        rank += 1;
    }
    if rank < rows {
        det = S::zero();
    }
    (a, rank, det)
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    eliminate(m).1
}

pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    if m.is_empty() {
        return S::one();
    }
    eliminate(m).2
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let aug: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, rank, _) = eliminate(&aug);
    if rank < n {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for (i, row) in red.iter().enumerate().take(n) {
        if row[i].is_zero() {
            return None;
        }
        x[i] = row[n].div(&row[i])?;
    }
    Some(x)
}

/// Coordinates of `v` in the basis `basis` (linearly independent, possibly
/// spanning a proper subspace), via the Gram system. `None` when `v` is not in
/// the span.
pub fn coords_in_basis<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    let g = gram(basis);
    let rhs: Vec<S> = basis.iter().map(|b| dot(b, v)).collect();
    let c = solve(&g, &rhs)?;
    let mut back = vec![S::zero(); v.len()];
    for (ci, b) in c.iter().zip(basis) {
        for (k, bk) in b.iter().enumerate() {
            back[k] = back[k].add(&ci.mul(bk));
        }
    }
    if back.iter().zip(v).all(|(x, y)| x.approx_eq(y)) {
        Some(c)
    } else {
        None
    }
}

pub fn to_f64_matrix<S: Scalar>(m: &Matrix<S>) -> Matrix<f64> {
    m.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect()
}

pub fn to_nalgebra(m: &Matrix<f64>) -> nalgebra::DMatrix<f64> {
    let n = m.len();
    let c = if n == 0 { 0 } else { m[0].len() };
    nalgebra::DMatrix::from_fn(n, c, |i, j| m[i][j])
}

/// Smallest `k ≥ 1` with `m^k = I`, up to `cap`.
pub fn matrix_order<S: Scalar>(m: &Matrix<S>, cap: usize) -> Option<usize> {
    let mut p = m.clone();
    for k in 1..=cap {
        if is_identity(&p) {
            return Some(k);
        }
        p = mat_mul(&p, m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GoldenNumber;

    #[test]
    fn det_and_rank() {
        let m: Matrix<f64> = vec![vec![2.0, 1.0], vec![4.0, 2.0]];
        assert_eq!(rank(&m), 1);
        assert!(det(&m).abs() < 1e-12);
        let g: Matrix<GoldenNumber> = vec![
            vec![GoldenNumber::from_ints(2, 0), GoldenNumber::from_ints(0, -1)],
            vec![GoldenNumber::from_ints(0, -1), GoldenNumber::from_ints(2, 0)],
        ];
        // 4 − τ² = 3 − τ
        assert_eq!(det(&g), GoldenNumber::from_ints(3, -1));
    }

    #[test]
    fn solve_small() {
        let a: Matrix<f64> = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let x = solve(&a, &[5.0, 11.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
    }
}
