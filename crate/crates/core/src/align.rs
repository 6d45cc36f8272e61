//! Orthogonal Procrustes alignment.
//!
//! Latent positions are identifiable only up to an orthogonal transform, so
//! estimates are compared after solving `min_W ‖X̂ W − X‖_F` over orthogonal
//! `W` (reflections included). With `X̂ᵀX = U Σ Vᵀ` the minimizer is `W = U Vᵀ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Result};
use crate::matrix::{dot, Matrix};

const JACOBI_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    /// Orthogonal `d × d` matrix `W`.
    pub rotation: Matrix,
    /// `X̂ W`.
    pub aligned: Matrix,
    /// `‖X̂ W − X‖_F`.
    pub frobenius_error: f64,
    /// `X̂ᵀX` was rank deficient; `W` is one of several minimizers.
    pub degenerate: bool,
}

/// Orthogonal `W` minimizing `‖X̂ W − X‖_F`.
pub fn orthogonal_procrustes(xhat: &Matrix, x: &Matrix) -> Result<AlignmentResult> {
    xhat.check_same_shape(x)?;
    if xhat.cols() == 0 {
        return Err(param("alignment needs at least one dimension"));
    }
    let cross = xhat.transpose_matmul(x)?;
    let svd = jacobi_svd(&cross);
    let rotation = svd.u.matmul(&svd.v.transpose())?;
    let aligned = xhat.matmul(&rotation)?;
    let frobenius_error = aligned.sub(x)?.frobenius_norm();
    Ok(AlignmentResult {
        rotation,
        aligned,
        frobenius_error,
        degenerate: svd.rank_deficient,
    })
}

/// `‖aligned − X‖_F² / n`.
pub fn mse_per_vertex(aligned: &Matrix, x: &Matrix) -> Result<f64> {
    aligned.check_same_shape(x)?;
    if aligned.rows() == 0 {
        return Err(param("mean squared error of an empty matrix"));
    }
    let sq: f64 = aligned
        .as_slice()
        .iter()
        .zip(x.as_slice())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sq / aligned.rows() as f64)
}

pub(crate) struct Svd {
    pub u: Matrix,
    #[allow(dead_code)]
    pub singular_values: Vec<f64>,
    pub v: Matrix,
    pub rank_deficient: bool,
}

/// One-sided Jacobi SVD of a small square matrix.
///
/// Columns of `G = M V` are orthogonalized by plane rotations accumulated in
/// `V`; at convergence `G = U Σ`. Left singular vectors of negligible singular
/// values are completed from the standard basis in index order, each taken
/// with a positive sign.
pub(crate) fn jacobi_svd(m: &Matrix) -> Svd {
    let d = m.rows();
    debug_assert!(m.is_square());
    // Work column-major: cols[j] is column j of G.
    let mut cols: Vec<Vec<f64>> = (0..d).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..d)
        .map(|j| (0..d).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..d {
            for q in (p + 1)..d {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let singular_values: Vec<f64> = cols.iter().map(|c| libm::sqrt(dot(c, c))).collect();
    let largest = singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = d as f64 * f64::EPSILON * largest;

    let mut u: Vec<Option<Vec<f64>>> = cols
        .into_iter()
        .zip(&singular_values)
        .map(|(c, &s)| (s > cutoff && s > 0.0).then(|| c.into_iter().map(|x| x / s).collect()))
        .collect();
    let rank_deficient = u.iter().any(Option::is_none);
    if rank_deficient {
        complete_basis(&mut u, d);
    }

    let to_matrix = |vs: &[Vec<f64>]| Matrix::from_fn(d, d, |i, j| vs[j][i]);
    let u: Vec<Vec<f64>> = u.into_iter().map(|c| c.expect("basis completed")).collect();
    Svd {
        u: to_matrix(&u),
        singular_values,
        v: to_matrix(&v),
        rank_deficient,
    }
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(q);
    let (a, b) = (&mut head[p], &mut tail[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// Fills the missing columns with Gram–Schmidt residuals of `e_0, e_1, …`.
fn complete_basis(u: &mut [Option<Vec<f64>>], d: usize) {
    let mut candidate = 0;
    for slot in 0..d {
        if u[slot].is_some() {
            continue;
        }
        while candidate < d {
            let mut e = vec![0.0; d];
            e[candidate] = 1.0;
            candidate += 1;
            for _ in 0..2 {
                for q in u.iter().flatten() {
                    let s = dot(q, &e);
                    e.iter_mut().zip(q).for_each(|(a, b)| *a -= s * b);
                }
            }
            let norm = libm::sqrt(dot(&e, &e));
            if norm > 1e-8 {
                e.iter_mut().for_each(|x| *x /= norm);
                u[slot] = Some(e);
                break;
            }
        }
    }
}
