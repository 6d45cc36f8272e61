#![allow(dead_code)]

use rand::Rng;
use rdpg_core::model::{sample_adjacency, sample_dirichlet_latents, AdjacencyMatrix};
use rdpg_core::rng::stream;
use rdpg_core::Matrix;

pub fn random_symmetric(n: usize, seed: u64) -> Matrix {
    let mut rng = stream(seed);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = stream(seed);
    Matrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// Random orthogonal matrix from modified Gram–Schmidt on a random matrix,
/// with a random column flip so reflections are covered.
pub fn random_orthogonal(d: usize, seed: u64) -> Matrix {
    let g = random_matrix(d, d, seed);
    let mut cols: Vec<Vec<f64>> = (0..d).map(|j| g.column(j)).collect();
    for j in 0..d {
        for p in 0..j {
            let s: f64 = cols[p].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
            let q = cols[p].clone();
            cols[j].iter_mut().zip(&q).for_each(|(a, b)| *a -= s * b);
        }
        let n = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|x| *x /= n);
    }
    if seed % 2 == 1 {
        cols[0].iter_mut().for_each(|x| *x = -*x);
    }
    Matrix::from_fn(d, d, |i, j| cols[j][i])
}

pub fn dirichlet_graph(n: usize, seed: u64) -> (Matrix, Matrix, AdjacencyMatrix) {
    let x = sample_dirichlet_latents(n, &[2.0, 2.0, 2.0], 2, seed).unwrap();
    let p = x.probability_matrix().unwrap();
    let a = sample_adjacency(&p, seed ^ 0xabcdef);
    (x.into_matrix(), p.as_matrix().clone(), a)
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = stream(seed);
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    v
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).unwrap().max_abs()
}
