//! Latent-position inference for random dot product graphs.
//!
//! A random dot product graph draws latent vectors `X_i` from a distribution
//! on the unit ball and connects `i` and `j` independently with probability
//! `<X_i, X_j>`. This crate provides:
//!
//! - [`model`]: latent-position sampling (Dirichlet family), the probability
//!   matrix `P = X Xᵀ`, Bernoulli graph sampling and population second moments.
//! - [`eigen`]: a dense symmetric eigensolver (Householder tridiagonalization
//!   followed by implicit QL), with a partial top-`d` path.
//! - [`embed`]: the adjacency spectral embedding `U_A S_A^{1/2}` and the
//!   normalized Laplacian embedding.
//! - [`align`]: orthogonal Procrustes alignment against reference positions.
//! - [`knn`]: the k-nearest-neighbor rule with deterministic tie-breaking and
//!   leave-one-out error estimation.
//! - [`diagnostics`]: finite-sample concentration bounds evaluated on concrete
//!   instances.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the experiment
//! harness and the command-line interface live in the `rdpg` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod align;
pub mod diagnostics;
pub mod eigen;
pub mod embed;
mod error;
pub mod knn;
pub mod matrix;
pub mod model;
pub mod rng;

pub use error::{Error, Result};
pub use matrix::Matrix;
