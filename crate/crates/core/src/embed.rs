//! Spectral embeddings of a graph.
//!
//! [`ase`] returns `U_A S_A^{1/2}`: `S_A` holds the `d` largest eigenvalue
//! magnitudes of `A` (the eigenvalues of `|A| = (AAᵀ)^{1/2}`) and `U_A` the
//! matching eigenvectors. [`lse`] does the same for
//! `L = D^{-1/2} A D^{-1/2}` with `D_ii = deg(i) / (n − 1)`, scaling by `S_L`
//! itself unless [`LaplacianScaling::Sqrt`] is requested.
//!
//! Both accept any real symmetric matrix, so `P` can be embedded directly.

use alloc::format;
use alloc::vec::Vec;

use crate::eigen::{top_eigenpairs_with_spectrum, DEFAULT_TOL};
use crate::error::{param, Error, Result};
use crate::matrix::Matrix;

/// Magnitudes of the `d`-th and `(d+1)`-th eigenvalues closer than this make
/// the selection ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingKind {
    Adjacency,
    Laplacian,
}

/// Power applied to the retained Laplacian eigenvalue magnitudes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LaplacianScaling {
    /// `U_L S_L`.
    #[default]
    Linear,
    /// `U_L S_L^{1/2}`, matching the adjacency embedding.
    Sqrt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    /// `n × d`, one row per vertex.
    pub coords: Matrix,
    /// `|λ_1| ≥ … ≥ |λ_d|`.
    pub retained_eigenvalues: Vec<f64>,
    /// The same eigenvalues with their signs.
    pub signed_eigenvalues: Vec<f64>,
    pub kind: EmbeddingKind,
    /// The `d`-th and `(d+1)`-th magnitudes tie within [`AMBIGUITY_TOL`]; the
    /// lower-index eigenpair was kept.
    pub ambiguous_cut: bool,
}

impl Embedding {
    pub fn n(&self) -> usize {
        self.coords.rows()
    }

    pub fn d(&self) -> usize {
        self.coords.cols()
    }

    /// First `d` dimensions. Equal to embedding directly at dimension `d`.
    pub fn truncate(&self, d: usize) -> Result<Embedding> {
        if d == 0 || d > self.d() {
            return Err(param(format!("cannot truncate a {}-dimensional embedding to {d}", self.d())));
        }
        Ok(Embedding {
            coords: self.coords.leading_columns(d),
            retained_eigenvalues: self.retained_eigenvalues[..d].to_vec(),
            signed_eigenvalues: self.signed_eigenvalues[..d].to_vec(),
            kind: self.kind,
            ambiguous_cut: if d == self.d() {
                self.ambiguous_cut
            } else {
                (self.retained_eigenvalues[d - 1] - self.retained_eigenvalues[d]).abs() <= AMBIGUITY_TOL
            },
        })
    }
}

/// Adjacency spectral embedding `U_A S_A^{1/2}`.
pub fn ase(a: &Matrix, d: usize) -> Result<Embedding> {
    embed(a, d, EmbeddingKind::Adjacency, 0.5)
}

/// Laplacian spectral embedding of `D^{-1/2} A D^{-1/2}`.
pub fn lse(a: &Matrix, d: usize, scaling: LaplacianScaling) -> Result<Embedding> {
    let l = normalized_laplacian(a)?;
    let power = match scaling {
        LaplacianScaling::Linear => 1.0,
        LaplacianScaling::Sqrt => 0.5,
    };
    embed(&l, d, EmbeddingKind::Laplacian, power)
}

/// `D^{-1/2} A D^{-1/2}` with `D_ii = (Σ_j A_ij) / (n − 1)`.
pub fn normalized_laplacian(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(param(format!("adjacency must be square, got {:?}", a.shape())));
    }
    let n = a.rows();
    if n < 2 {
        return Err(param("Laplacian needs at least two vertices"));
    }
    let scale = 1.0 / (n - 1) as f64;
    let mut inv_sqrt = Vec::with_capacity(n);
    for i in 0..n {
        let deg: f64 = a.row(i).iter().sum::<f64>() * scale;
        if deg <= 0.0 {
            return Err(Error::IsolatedVertex(i));
        }
        inv_sqrt.push(1.0 / libm::sqrt(deg));
    }
    Ok(Matrix::from_fn(n, n, |i, j| inv_sqrt[i] * a[(i, j)] * inv_sqrt[j]))
}

fn embed(m: &Matrix, d: usize, kind: EmbeddingKind, power: f64) -> Result<Embedding> {
    let n = m.rows();
    if d == 0 || d > n {
        return Err(param(format!("embedding dimension must be in 1..={n}, got {d}")));
    }
    let (pairs, spectrum) = top_eigenpairs_with_spectrum(m, d, DEFAULT_TOL)?;
    let ambiguous_cut = spectrum
        .get(d)
        .is_some_and(|next| (spectrum[d - 1].abs() - next.abs()).abs() <= AMBIGUITY_TOL);
    let retained: Vec<f64> = pairs.values.iter().map(|v| v.abs()).collect();
    let weights: Vec<f64> = retained
        .iter()
        .map(|&s| if power == 1.0 { s } else { libm::pow(s.max(0.0), power) })
        .collect();
    let coords = Matrix::from_fn(n, d, |i, j| pairs.vectors[(i, j)] * weights[j]);
    Ok(Embedding {
        coords,
        retained_eigenvalues: retained,
        signed_eigenvalues: pairs.values,
        kind,
        ambiguous_cut,
    })
}
