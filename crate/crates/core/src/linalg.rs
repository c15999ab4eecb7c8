//! Small dense helpers over `Vec<f64>` / complex vectors, plus the integer
//! lattice routines (kernel, Hermite normal form) used for winding sublattices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Real vector dotted into a complex one.
pub fn rdot(a: &[f64], z: &[C64]) -> C64 {
    a.iter().zip(z).map(|(x, y)| y * *x).sum()
}

/// Bilinear (not Hermitian) square of a complex vector.
pub fn cdot_bilinear(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_complex(a: &[f64]) -> Vec<C64> {
    a.iter().map(|&x| C64::new(x, 0.0)).collect()
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    let m = if n == 0 { 0 } else { rows[0].len() };
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v))
        .iter()
        .copied()
        .collect()
}

pub fn mat_cvec(m: &DMatrix<f64>, v: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| v[j] * m[(i, j)]).sum())
        .collect()
}

/// Lexicographic comparison with a tolerance on each component.
pub fn lex_cmp(a: &[f64], b: &[f64], tol: f64) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal);
        }
    }
    std::cmp::Ordering::Equal
}

/// Grid key used for deduplicating floating vectors/matrices.
pub fn grid_key(a: impl IntoIterator<Item = f64>, step: f64) -> Vec<i64> {
    a.into_iter().map(|x| (x / step).round() as i64).collect()
}

/// Express each real row as (integer row, scale) with `row ≈ scale * int_row`.
/// Fails when the row is not a rational multiple of a common scale.
pub fn rationalize_row(row: &[f64], tol: f64) -> Option<(Vec<i64>, f64)> {
    let smallest = row
        .iter()
        .map(|x| x.abs())
        .filter(|x| *x > tol)
        .fold(f64::INFINITY, f64::min);
    if !smallest.is_finite() {
        return Some((vec![0; row.len()], 1.0));
    }
    for q in 1..=24i64 {
        let s = smallest / q as f64;
        let ints: Vec<f64> = row.iter().map(|x| x / s).collect();
        if ints.iter().all(|v| (v - v.round()).abs() < 1e-7) {
            let mut out: Vec<i64> = ints.iter().map(|v| v.round() as i64).collect();
            let g = out.iter().fold(0i64, |g, &x| gcd(g, x));
            let g = g.max(1);
            for x in out.iter_mut() {
                *x /= g;
            }
            return Some((out, s * g as f64));
        }
    }
    None
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Column-style echelon reduction of an integer matrix `a` (k×r).
///
/// Returns `(h, u, rank)` where `a·u = h`, `u` is unimodular (r×r), the first
/// `rank` columns of `h` are in column echelon form and the remaining columns
/// are zero, so the last `r − rank` columns of `u` span the integer kernel.
pub fn column_echelon(a: &[Vec<i64>], r: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, usize) {
    let k = a.len();
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i64>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut col = 0;
    for row in 0..k {
        if col >= r {
            break;
        }
        loop {
            let best = (col..r)
                .filter(|&c| h[row][c] != 0)
                .min_by_key(|&c| h[row][c].abs());
            let Some(best) = best else { break };
            swap(&mut h, col, best);
            swap(&mut u, col, best);
            let mut done = true;
            for c in (col + 1)..r {
                if h[row][c] != 0 {
                    let f = h[row][c].div_euclid(h[row][col]);
                    col_op(&mut h, c, col, f);
                    col_op(&mut u, c, col, f);
                    if h[row][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][col] != 0 {
            if h[row][col] < 0 {
                for m in [&mut h, &mut u] {
                    for rr in m.iter_mut() {
                        rr[col] = -rr[col];
                    }
                }
            }
            col += 1;
        }
    }
    (h, u, col)
}

/// Integer kernel basis (as rows) of the integer matrix `a` with `r` columns.
pub fn integer_kernel(a: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let (_, u, rank) = column_echelon(a, r);
    (rank..r)
        .map(|c| (0..r).map(|i| u[i][c]).collect())
        .collect()
}

/// Row Hermite normal form: pivots positive, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let r = rows[0].len();
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut prow = 0;
    for col in 0..r {
        if prow >= m.len() {
            break;
        }
        loop {
            let best = (prow..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(best) = best else { break };
            m.swap(prow, best);
            let mut done = true;
            for i in (prow + 1)..m.len() {
                if m[i][col] != 0 {
                    let f = m[i][col].div_euclid(m[prow][col]);
                    let pivot_row = m[prow].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= f * p;
                    }
                    if m[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[prow][col] == 0 {
            continue;
        }
        if m[prow][col] < 0 {
            for x in m[prow].iter_mut() {
                *x = -*x;
            }
        }
        let pivot = m[prow][col];
        let pivot_row = m[prow].clone();
        for i in 0..prow {
            let f = m[i][col].div_euclid(pivot);
            for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
        }
        prow += 1;
    }
    m.truncate(prow);
    m.retain(|row| row.iter().any(|&x| x != 0));
    m
}

/// Solve `h·y = t` for integer `y` where `h` (k×rank) is the echelon block of
/// [`column_echelon`]. Returns `None` if no integer solution exists.
pub fn solve_echelon(h: &[Vec<i64>], rank: usize, t: &[i64]) -> Option<Vec<i64>> {
    let mut y = vec![0i64; rank];
    let mut col = 0;
    let mut residual: Vec<i64> = t.to_vec();
    for (row, hrow) in h.iter().enumerate() {
        if col < rank && hrow[col] != 0 {
            if residual[row] % hrow[col] != 0 {
                return None;
            }
            y[col] = residual[row] / hrow[col];
            for (rr, hh) in residual.iter_mut().zip(h.iter()) {
                *rr -= hh[col] * y[col];
            }
            col += 1;
        } else if residual[row] != 0 {
            return None;
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }
    Some(y)
}

/// Eigenvalues of a complex square matrix via the complex Schur form.
pub fn eigenvalues(m: &DMatrix<C64>) -> Option<Vec<C64>> {
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), 1e-15, 10_000)?;
    let (_, t) = schur.unpack();
    Some((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Greedy matching distance between two multisets of complex numbers.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for (j, y) in b.iter().enumerate() {
            if !used[j] {
                let d = (x - y).norm();
                if d < best_d {
                    best_d = d;
                    best = Some(j);
                }
            }
        }
        if let Some(j) = best {
            used[j] = true;
            worst = worst.max(best_d);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[vec![2, -1]], 2);
        assert_eq!(hermite_rows(&k), vec![vec![1, 2]]);
    }

    #[test]
    fn kernel_of_su31_row() {
        let k = integer_kernel(&[vec![2, -1, 0]], 3);
        assert_eq!(hermite_rows(&k), vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let k = integer_kernel(&[vec![2, -1], vec![0, 1]], 2);
        assert!(k.is_empty());
    }

    #[test]
    fn rationalize_surd_row() {
        let s3 = 3f64.sqrt();
        let (ints, s) = rationalize_row(&[0.0, s3], 1e-12).unwrap();
        assert_eq!(ints, vec![0, 1]);
        assert!((s - s3).abs() < 1e-12);
        let (ints, _) = rationalize_row(&[0.5, -1.0, 1.5], 1e-12).unwrap();
        assert_eq!(ints, vec![1, -2, 3]);
    }

    #[test]
    fn echelon_solve_roundtrip() {
        let a = vec![vec![2, -1, 0], vec![0, -1, 2]];
        let (h, u, rank) = column_echelon(&a, 3);
        assert_eq!(rank, 2);
        assert!(solve_echelon(&h, rank, &[1, 0]).is_none());
        for x0 in [[1i64, 0, 0], [0, 1, 0], [3, -2, 5]] {
            let target: Vec<i64> = a
                .iter()
                .map(|row| row.iter().zip(&x0).map(|(p, q)| p * q).sum())
                .collect();
            let y = solve_echelon(&h, rank, &target).unwrap();
            let x: Vec<i64> = (0..3)
                .map(|i| (0..rank).map(|c| u[i][c] * y[c]).sum())
                .collect();
            let back: Vec<i64> = a
                .iter()
                .map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum())
                .collect();
            assert_eq!(back, target);
        }
    }

    #[test]
    fn complex_eigenvalues() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        let ev = eigenvalues(&m).unwrap();
        let expect = [C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
        assert!(multiset_distance(&ev, &expect) < 1e-12);
    }
}
