//! Dense symmetric eigensolver.
//!
//! A symmetric matrix is reduced to tridiagonal form with Householder
//! reflections, then the tridiagonal problem is solved by implicit QL with
//! Wilkinson shifts. Two drivers sit on top:
//!
//! - [`symmetric_eig`] accumulates every rotation and returns the full
//!   decomposition.
//! - [`top_eigenpairs`] computes all eigenvalues without vectors, then
//!   recovers only the `d` largest-magnitude eigenvectors by inverse iteration
//!   on the tridiagonal matrix and maps them back through the reflectors.
//!   This is what the embeddings use; at `n = 1000` it is an order of
//!   magnitude faster than the full decomposition.
//!
//! Eigenvalues are ordered by decreasing magnitude, then by decreasing signed
//! value, then by position in the QL output. Every eigenvector is normalized
//! so that its largest-magnitude entry is positive, the lowest index winning
//! ties on magnitude.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{param, Error, Result};
use crate::matrix::{dot, Matrix};
use crate::rng::counter_uniform;

/// Default deflation tolerance of the QL iteration, relative to the matrix
/// scale.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Symmetry tolerance accepted on input, relative to `max |m_ij|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// QL iteration budget per unit of dimension.
const SWEEPS_PER_ROW: usize = 50;

/// Inverse iteration steps before giving up on a vector.
const MAX_INVERSE_STEPS: usize = 8;

/// Eigenvalues closer than this fraction of `‖T‖₁` are treated as one cluster
/// and their vectors reorthogonalized against each other.
const CLUSTER_TOL: f64 = 1e-3;

/// Eigenvalues with matching eigenvectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    /// Signed eigenvalues, sorted by decreasing magnitude.
    pub values: Vec<f64>,
    /// `n × k` matrix whose column `i` is the unit eigenvector of `values[i]`.
    pub vectors: Matrix,
}

impl EigenPairs {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `‖M v_i − λ_i v_i‖₂` over the stored pairs.
    pub fn max_residual(&self, m: &Matrix) -> f64 {
        let n = m.rows();
        let mut worst = 0.0f64;
        for (c, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(c);
            let mut r2 = 0.0;
            for i in 0..n {
                let r = dot(m.row(i), &v) - lambda * v[i];
                r2 += r * r;
            }
            worst = worst.max(libm::sqrt(r2));
        }
        worst
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn symmetric_eig(m: &Matrix, tol: f64) -> Result<EigenPairs> {
    check_input(m)?;
    let n = m.rows();
    let tri = Tridiagonal::reduce(m);
    let mut values = tri.diag.clone();
    let mut off = tri.off.clone();
    // Rows of `basis` hold the eigenvectors; rotations then touch two
    // contiguous rows.
    let mut basis = tri.transform_transposed();
    ql_implicit(&mut values, &mut off, Some(&mut basis), tol, SWEEPS_PER_ROW * n)?;

    let order = magnitude_order(&values);
    let mut vectors = Matrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (c, &src) in order.iter().enumerate() {
        sorted.push(values[src]);
        let mut v = basis.row(src).to_vec();
        fix_sign(&mut v);
        for (i, x) in v.into_iter().enumerate() {
            vectors[(i, c)] = x;
        }
    }
    Ok(EigenPairs {
        values: sorted,
        vectors,
    })
}

/// All eigenvalues of a symmetric matrix, sorted by decreasing magnitude.
pub fn symmetric_eigenvalues(m: &Matrix, tol: f64) -> Result<Vec<f64>> {
    check_input(m)?;
    let tri = Tridiagonal::reduce(m);
    let mut values = tri.diag.clone();
    let mut off = tri.off.clone();
    ql_implicit(&mut values, &mut off, None, tol, SWEEPS_PER_ROW * m.rows())?;
    Ok(magnitude_order(&values).into_iter().map(|i| values[i]).collect())
}

/// The `d` largest-magnitude eigenpairs of a symmetric matrix.
///
/// Column `i` of the result is the same vector that [`symmetric_eig`] would
/// place in column `i` (up to rounding), and the first `d` columns do not
/// depend on how many more are requested.
pub fn top_eigenpairs(m: &Matrix, d: usize, tol: f64) -> Result<EigenPairs> {
    top_eigenpairs_with_spectrum(m, d, tol).map(|(pairs, _)| pairs)
}

/// [`top_eigenpairs`] together with the whole spectrum in the same order.
pub fn top_eigenpairs_with_spectrum(m: &Matrix, d: usize, tol: f64) -> Result<(EigenPairs, Vec<f64>)> {
    check_input(m)?;
    let n = m.rows();
    if d > n {
        return Err(param(alloc::format!(
            "requested {d} eigenpairs of a {n}x{n} matrix"
        )));
    }
    let tri = Tridiagonal::reduce(m);
    let mut all = tri.diag.clone();
    let mut off = tri.off.clone();
    ql_implicit(&mut all, &mut off, None, tol, SWEEPS_PER_ROW * n)?;
    let order = magnitude_order(&all);
    let values: Vec<f64> = order[..d].iter().map(|&i| all[i]).collect();

    let t_norm = tri.one_norm();
    let accept = tol.max(64.0 * f64::EPSILON * n as f64) * t_norm.max(f64::MIN_POSITIVE);
    let mut tri_vectors: Vec<Vec<f64>> = Vec::with_capacity(d);
    for (j, &lambda) in values.iter().enumerate() {
        let cluster: Vec<usize> = (0..j)
            .filter(|&p| (values[p] - lambda).abs() <= CLUSTER_TOL * t_norm)
            .collect();
        let y = tri.inverse_iteration(lambda, j as u64, &cluster, &tri_vectors, accept)?;
        tri_vectors.push(y);
    }

    let mut vectors = Matrix::zeros(n, d);
    for (c, y) in tri_vectors.into_iter().enumerate() {
        let mut v = tri.apply_q(y);
        fix_sign(&mut v);
        for (i, x) in v.into_iter().enumerate() {
            vectors[(i, c)] = x;
        }
    }
    let spectrum = order.iter().map(|&i| all[i]).collect();
    Ok((EigenPairs { values, vectors }, spectrum))
}

/// Indices of `values` sorted by decreasing `|λ|`, then decreasing `λ`, then
/// increasing index.
pub fn magnitude_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (values[a], values[b]);
        y.abs()
            .partial_cmp(&x.abs())
            .unwrap_or(Ordering::Equal)
            .then(y.partial_cmp(&x).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });
    order
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn check_input(m: &Matrix) -> Result<()> {
    if m.rows() == 0 {
        return Err(param("eigendecomposition of an empty matrix"));
    }
    m.ensure_symmetric(SYMMETRY_TOL)?;
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(param("matrix has non-finite entries"));
    }
    Ok(())
}

struct Reflector {
    /// Acts on coordinates `start..n`.
    start: usize,
    v: Vec<f64>,
    beta: f64,
}

impl Reflector {
    #[inline]
    fn apply(&self, x: &mut [f64]) {
        let tail = &mut x[self.start..];
        let s = self.beta * dot(&self.v, tail);
        for (t, &v) in tail.iter_mut().zip(&self.v) {
            *t -= s * v;
        }
    }
}

/// `M = Q T Qᵀ` with `Q = H_0 H_1 ⋯` stored as Householder reflectors.
struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[i]` couples `i` and `i + 1`; the last entry is zero.
    off: Vec<f64>,
    reflectors: Vec<Reflector>,
}

impl Tridiagonal {
    fn reduce(m: &Matrix) -> Self {
        let n = m.rows();
        let mut a = m.clone();
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
        let mut p = vec![0.0; n];

        for k in 0..n.saturating_sub(2) {
            diag[k] = a[(k, k)];
            let start = k + 1;
            let mut v: Vec<f64> = (start..n).map(|i| a[(i, k)]).collect();
            let x_norm = libm::sqrt(dot(&v, &v));
            if x_norm == 0.0 {
                off[k] = 0.0;
                continue;
            }
            let alpha = if v[0] > 0.0 { -x_norm } else { x_norm };
            v[0] -= alpha;
            let beta = 2.0 / dot(&v, &v);
            off[k] = alpha;

            // Two-sided update of the trailing block: B <- B - v wᵀ - w vᵀ
            // with w = p - (β/2)(pᵀv) v and p = β B v.
            let width = n - start;
            let p = &mut p[..width];
            for (pi, i) in p.iter_mut().zip(start..) {
                *pi = beta * dot(&a.row(i)[start..], &v);
            }
            let half = 0.5 * beta * dot(p, &v);
            for (pi, &vi) in p.iter_mut().zip(&v) {
                *pi -= half * vi;
            }
            for r in 0..width {
                let (vr, wr) = (v[r], p[r]);
                let row = &mut a.row_mut(start + r)[start..];
                for ((x, &vc), &wc) in row.iter_mut().zip(&v).zip(p.iter()) {
                    *x -= vr * wc + wr * vc;
                }
            }
            reflectors.push(Reflector { start, v, beta });
        }
        if n >= 2 {
            diag[n - 2] = a[(n - 2, n - 2)];
            off[n - 2] = a[(n - 1, n - 2)];
        }
        diag[n - 1] = a[(n - 1, n - 1)];
        Tridiagonal {
            diag,
            off,
            reflectors,
        }
    }

    fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `Q y`.
    fn apply_q(&self, mut y: Vec<f64>) -> Vec<f64> {
        for r in self.reflectors.iter().rev() {
            r.apply(&mut y);
        }
        y
    }

    /// `Qᵀ`, built row by row (row `r` of `Qᵀ` is `Q e_r`).
    fn transform_transposed(&self) -> Matrix {
        let n = self.dim();
        let mut qt = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for r in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[r] = 1.0;
            // Reflectors starting after `r` leave e_r untouched.
            for refl in self.reflectors.iter().rev().filter(|h| h.start <= r) {
                refl.apply(&mut e);
            }
            qt.row_mut(r).copy_from_slice(&e);
        }
        qt
    }

    fn one_norm(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                left + self.diag[i].abs() + self.off[i].abs()
            })
            .fold(0.0, f64::max)
    }

    fn residual(&self, lambda: f64, y: &[f64]) -> f64 {
        let n = self.dim();
        let mut r2 = 0.0;
        for i in 0..n {
            let mut t = (self.diag[i] - lambda) * y[i];
            if i > 0 {
                t += self.off[i - 1] * y[i - 1];
            }
            if i + 1 < n {
                t += self.off[i] * y[i + 1];
            }
            r2 += t * t;
        }
        libm::sqrt(r2)
    }

    /// Eigenvector of the tridiagonal matrix for the (already accurate)
    /// eigenvalue `lambda`. Vectors in `cluster` are projected out after
    /// every solve.
    fn inverse_iteration(
        &self,
        lambda: f64,
        stream: u64,
        cluster: &[usize],
        previous: &[Vec<f64>],
        accept: f64,
    ) -> Result<Vec<f64>> {
        let n = self.dim();
        let lu = ShiftedLu::factor(self, lambda);
        let mut y: Vec<f64> = (0..n as u64)
            .map(|i| counter_uniform(stream, i) - 0.5)
            .collect();
        normalize(&mut y);
        let mut residual = f64::INFINITY;
        for step in 0..MAX_INVERSE_STEPS {
            lu.solve(&mut y);
            for &p in cluster {
                let q = &previous[p];
                let s = dot(q, &y);
                y.iter_mut().zip(q).for_each(|(a, b)| *a -= s * b);
            }
            if !normalize(&mut y) {
                // Projected onto the span of the cluster; restart elsewhere.
                y = (0..n as u64)
                    .map(|i| counter_uniform(stream.wrapping_add(step as u64 + 1) << 32, i) - 0.5)
                    .collect();
                normalize(&mut y);
                continue;
            }
            residual = self.residual(lambda, &y);
            if step >= 1 && residual <= accept {
                return Ok(y);
            }
        }
        if residual <= 1e3 * accept {
            return Ok(y);
        }
        Err(Error::NoConvergence {
            iterations: MAX_INVERSE_STEPS,
            residual,
        })
    }
}

/// LU factorization with partial pivoting of `T − λI`.
struct ShiftedLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &Tridiagonal, lambda: f64) -> Self {
        let n = t.dim();
        let mut diag: Vec<f64> = t.diag.iter().map(|d| d - lambda).collect();
        let mut lower: Vec<f64> = t.off[..n - 1].to_vec();
        let mut upper: Vec<f64> = t.off[..n - 1].to_vec();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if diag[i].abs() >= lower[i].abs() {
                if diag[i] != 0.0 {
                    let fact = lower[i] / diag[i];
                    lower[i] = fact;
                    diag[i + 1] -= fact * upper[i];
                }
            } else {
                let fact = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = fact;
                let temp = upper[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = temp - fact * diag[i + 1];
                if i + 2 < n {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // A singular shift is expected: that is what makes the solve grow
        // toward the eigenvector. Zero pivots are nudged off zero.
        let tiny = f64::EPSILON * t.one_norm().max(libm::sqrt(f64::MIN_POSITIVE));
        for d in diag.iter_mut() {
            if d.abs() < tiny {
                *d = if *d < 0.0 { -tiny } else { tiny };
            }
        }
        ShiftedLu {
            lower,
            diag,
            upper,
            upper2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.diag.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.lower[i] * b[i];
        }
        b[n - 1] /= self.diag[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.upper[n - 2] * b[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.upper[i] * b[i + 1] - self.upper2[i] * b[i + 2]) / self.diag[i];
        }
    }
}

fn normalize(v: &mut [f64]) -> bool {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= scale);
    let norm = libm::sqrt(dot(v, v));
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// Implicit QL with Wilkinson shifts on the symmetric tridiagonal matrix
/// `(diag, off)`. When `rows` is given its rows are rotated alongside, so a
/// matrix starting as `Qᵀ` ends holding the eigenvectors as rows.
fn ql_implicit(
    diag: &mut [f64],
    off: &mut [f64],
    mut rows: Option<&mut Matrix>,
    tol: f64,
    budget: usize,
) -> Result<()> {
    let n = diag.len();
    let eps = tol.max(f64::EPSILON);
    let mut iterations = 0usize;
    let mut shift_total = 0.0;
    let mut scale = 0.0f64;

    for l in 0..n {
        scale = scale.max(diag[l].abs() + off[l].abs());
        let mut m = l;
        while m < n - 1 && off[m].abs() > eps * scale {
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > budget {
                    return Err(Error::NoConvergence {
                        iterations: budget,
                        residual: off[l].abs(),
                    });
                }
                let g = diag[l];
                let mut p = (diag[l + 1] - g) / (2.0 * off[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                diag[l] = off[l] / (p + r);
                diag[l + 1] = off[l] * (p + r);
                let dl1 = diag[l + 1];
                let h = g - diag[l];
                for d in diag.iter_mut().skip(l + 2) {
                    *d -= h;
                }
                shift_total += h;

                p = diag[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = off[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * off[i];
                    let h = c * p;
                    let r = libm::hypot(p, off[i]);
                    off[i + 1] = s * r;
                    s = off[i] / r;
                    c = p / r;
                    p = c * diag[i] - s * g;
                    diag[i + 1] = h + s * (c * g + s * diag[i]);
                    if let Some(rows) = rows.as_deref_mut() {
                        rotate_rows(rows, i, c, s);
                    }
                }
                p = -s * s2 * c3 * el1 * off[l] / dl1;
                off[l] = s * p;
                diag[l] = c * p;
                if off[l].abs() <= eps * scale {
                    break;
                }
            }
        }
        diag[l] += shift_total;
        off[l] = 0.0;
    }
    Ok(())
}

#[inline]
fn rotate_rows(rows: &mut Matrix, i: usize, c: f64, s: f64) {
    let cols = rows.cols();
    let (head, tail) = rows.rows_mut_pair(i);
    let (upper, lower) = (&mut head[..cols], &mut tail[..cols]);
    for (a, b) in upper.iter_mut().zip(lower.iter_mut()) {
        let h = *b;
        *b = s * *a + c * h;
        *a = c * *a - s * h;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Matrix {
        Matrix::from_rows(&[[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).unwrap()
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = symmetric_eig(&Matrix::identity(3), DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn complete_graph_on_three_vertices() {
        // (λ − 2)(λ + 1)² = 0
        let e = symmetric_eig(&k3(), DEFAULT_TOL).unwrap();
        let expected = [2.0, -1.0, -1.0];
        for (v, x) in e.values.iter().zip(expected) {
            assert!((v - x).abs() < 1e-12, "{:?}", e.values);
        }
        let top = 1.0 / libm::sqrt(3.0);
        for i in 0..3 {
            assert!((e.vectors[(i, 0)] - top).abs() < 1e-12);
        }
        assert!(e.max_residual(&k3()) < 1e-12);
    }

    #[test]
    fn diagonal_sorted_by_magnitude() {
        let m = Matrix::from_diagonal(&[3.0, -5.0, 1.0]);
        let e = symmetric_eig(&m, DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![-5.0, 3.0, 1.0]);
        assert_eq!(e.vectors.column(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(symmetric_eigenvalues(&m, DEFAULT_TOL).unwrap(), vec![-5.0, 3.0, 1.0]);
    }

    #[test]
    fn rejects_asymmetric_and_empty() {
        let m = Matrix::from_rows(&[[0.0, 1.0], [0.5, 0.0]]).unwrap();
        assert!(matches!(symmetric_eig(&m, DEFAULT_TOL), Err(Error::Parameter(_))));
        assert!(symmetric_eig(&Matrix::zeros(0, 0), DEFAULT_TOL).is_err());
        assert!(top_eigenpairs(&Matrix::identity(2), 3, DEFAULT_TOL).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_residual() {
        let (mut d, mut e) = (vec![0.0, 0.0], vec![1.0, 0.0]);
        let err = ql_implicit(&mut d, &mut e, None, DEFAULT_TOL, 0).unwrap_err();
        assert_eq!(
            err,
            Error::NoConvergence {
                iterations: 0,
                residual: 1.0
            }
        );
        let (mut d, mut e) = (vec![0.0, 0.0], vec![1.0, 0.0]);
        ql_implicit(&mut d, &mut e, None, DEFAULT_TOL, 100).unwrap();
        assert!((d[0].abs() - 1.0).abs() < 1e-14 && (d[1].abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sign_convention_lowest_index_breaks_ties() {
        let mut v = vec![-0.5, 0.5, 0.1];
        fix_sign(&mut v);
        assert_eq!(v, vec![0.5, -0.5, -0.1]);
        let mut w = vec![0.1, -0.9];
        fix_sign(&mut w);
        assert_eq!(w, vec![-0.1, 0.9]);
    }

    #[test]
    fn small_sizes() {
        let one = Matrix::from_rows(&[[-4.0]]).unwrap();
        let e = symmetric_eig(&one, DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![-4.0]);
        assert_eq!(e.vectors[(0, 0)], 1.0);
        let top = top_eigenpairs(&one, 1, DEFAULT_TOL).unwrap();
        assert_eq!(top.values, vec![-4.0]);
        assert_eq!(top.vectors[(0, 0)], 1.0);

        let two = Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let e = top_eigenpairs(&two, 2, DEFAULT_TOL).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.max_residual(&two) < 1e-14);
    }

    #[test]
    fn zero_matrix_gives_orthonormal_vectors() {
        let z = Matrix::zeros(4, 4);
        let e = top_eigenpairs(&z, 3, DEFAULT_TOL).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let g = e.vectors.transpose_matmul(&e.vectors).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn repeated_eigenvalues_in_top_set_stay_orthogonal() {
        // K4 has spectrum (3, −1, −1, −1).
        let k4 = Matrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 1.0 });
        let e = top_eigenpairs(&k4, 4, DEFAULT_TOL).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        let g = e.vectors.transpose_matmul(&e.vectors).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - want).abs() < 1e-10, "{g:?}");
            }
        }
        assert!(e.max_residual(&k4) < 1e-10);
    }
}
