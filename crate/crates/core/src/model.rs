//! The random dot product graph model.
//!
//! Latent positions `X` (one row per vertex) live in the unit ball with
//! pairwise inner products in `[0, 1]`. Edges are independent Bernoulli draws
//! with `Pr[A_ij = 1] = <X_i, X_j>`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_distr::{Distribution, Gamma};

use crate::eigen::{symmetric_eig, DEFAULT_TOL};
use crate::error::{param, Error, Result};
use crate::matrix::{dot, Matrix};
use crate::rng::{counter_uniform, stream};

/// Slack allowed on `‖x‖ ≤ 1` and `<x_i, x_j> ∈ [0, 1]`.
pub const LATENT_TOL: f64 = 1e-12;

/// `n × d` latent positions, one row per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentPositions(Matrix);

impl LatentPositions {
    /// Wraps a matrix after checking that every row lies in the unit ball.
    ///
    /// Pairwise inner products are checked when the probability matrix is
    /// formed.
    pub fn new(x: Matrix) -> Result<Self> {
        let (n, d) = x.shape();
        if n == 0 || d == 0 {
            return Err(param(format!("latent positions must be non-empty, got {n}x{d}")));
        }
        for i in 0..n {
            let r = x.row(i);
            if r.iter().any(|v| !v.is_finite()) {
                return Err(param(format!("latent row {i} has non-finite entries")));
            }
            let sq = dot(r, r);
            if sq > 1.0 + LATENT_TOL {
                return Err(Error::Invariant(format!(
                    "latent row {i} has norm {} > 1",
                    libm::sqrt(sq)
                )));
            }
        }
        Ok(LatentPositions(x))
    }

    /// Latent positions for a blockmodel: vertex `i` gets `block_vectors[blocks[i]]`.
    pub fn from_blocks(block_vectors: &Matrix, blocks: &[usize]) -> Result<Self> {
        if let Some(&b) = blocks.iter().find(|&&b| b >= block_vectors.rows()) {
            return Err(param(format!(
                "block index {b} out of range for {} blocks",
                block_vectors.rows()
            )));
        }
        LatentPositions::new(block_vectors.select_rows(blocks))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn d(&self) -> usize {
        self.0.cols()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `P = X Xᵀ`.
    ///
    /// The diagonal `P_ii = ‖x_i‖²` is stored even though graph sampling
    /// never reads it.
    pub fn probability_matrix(&self) -> Result<ProbabilityMatrix> {
        let p = self.0.gram_rows();
        let n = p.rows();
        for i in 0..n {
            for j in i..n {
                let v = p[(i, j)];
                if !(-LATENT_TOL..=1.0 + LATENT_TOL).contains(&v) {
                    return Err(Error::Invariant(format!(
                        "<x_{i}, x_{j}> = {v} lies outside [0, 1]"
                    )));
                }
            }
        }
        Ok(ProbabilityMatrix(p))
    }
}

/// Symmetric `n × n` matrix of edge probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix(Matrix);

impl ProbabilityMatrix {
    /// Accepts any symmetric matrix with entries in `[0, 1]`.
    pub fn new(p: Matrix) -> Result<Self> {
        if !p.is_square() {
            return Err(param(format!("probability matrix must be square, got {:?}", p.shape())));
        }
        if p.asymmetry().unwrap_or(0.0) > 0.0 {
            return Err(param("probability matrix is not symmetric"));
        }
        if let Some(v) = p.as_slice().iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(param(format!("probability {v} outside [0, 1]")));
        }
        Ok(ProbabilityMatrix(p))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }
}

/// Symmetric hollow 0/1 matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<u8>,
}

impl core::fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("AdjacencyMatrix")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl AdjacencyMatrix {
    pub fn empty(n: usize) -> Self {
        AdjacencyMatrix {
            n,
            bits: vec![0; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut a = AdjacencyMatrix::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                a.insert_edge(i, j);
            }
        }
        a
    }

    /// Builds an undirected graph from an edge list. Repeated edges collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut a = AdjacencyMatrix::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(param(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(param(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            a.insert_edge(u, v);
        }
        Ok(a)
    }

    /// Validates a dense real matrix as an adjacency matrix.
    pub fn from_dense(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(param(format!("adjacency must be square, got {:?}", m.shape())));
        }
        let n = m.rows();
        let mut a = AdjacencyMatrix::empty(n);
        for i in 0..n {
            if m[(i, i)] != 0.0 {
                return Err(Error::Invariant(format!("nonzero diagonal at vertex {i}")));
            }
            for j in (i + 1)..n {
                let (x, y) = (m[(i, j)], m[(j, i)]);
                if x != y {
                    return Err(Error::Invariant(format!("asymmetric entry ({i}, {j})")));
                }
                match x {
                    0.0 => {}
                    1.0 => a.insert_edge(i, j),
                    other => {
                        return Err(Error::Invariant(format!(
                            "entry ({i}, {j}) = {other} is not binary"
                        )))
                    }
                }
            }
        }
        Ok(a)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j] != 0
    }

    fn insert_edge(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = 1;
        self.bits[j * self.n + i] = 1;
    }

    pub fn degree(&self, i: usize) -> usize {
        self.bits[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&b| b as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j))))
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> AdjacencyMatrix {
        let m = vertices.len();
        let mut sub = AdjacencyMatrix::empty(m);
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sub.insert_edge(a, b);
                }
            }
        }
        sub
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| f64::from(self.bits[i * self.n + j]))
    }
}

impl From<&AdjacencyMatrix> for Matrix {
    fn from(a: &AdjacencyMatrix) -> Matrix {
        a.to_matrix()
    }
}

/// Class index per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<usize>,
    class_count: usize,
}

impl LabelVector {
    pub fn new(labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if let Some((i, &l)) = labels.iter().enumerate().find(|(_, &l)| l >= class_count) {
            return Err(param(format!(
                "vertex {i} has label {l}, expected < {class_count}"
            )));
        }
        Ok(LabelVector {
            labels,
            class_count,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    pub fn select(&self, indices: &[usize]) -> LabelVector {
        LabelVector {
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            class_count: self.class_count,
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.class_count];
        for &l in &self.labels {
            c[l] += 1;
        }
        c
    }

    /// Error of always guessing the most frequent class.
    pub fn chance_error(&self) -> f64 {
        if self.labels.is_empty() {
            return 0.0;
        }
        let max = self.counts().into_iter().max().unwrap_or(0);
        1.0 - max as f64 / self.labels.len() as f64
    }
}

/// Samples `n` latent positions as the first `keep_dims` coordinates of
/// independent Dirichlet(`alpha`) draws.
///
/// Each Dirichlet draw normalizes independent `Gamma(α_i, 1)` variates.
/// Output is a deterministic function of `seed`.
pub fn sample_dirichlet_latents(
    n: usize,
    alpha: &[f64],
    keep_dims: usize,
    seed: u64,
) -> Result<LatentPositions> {
    validate_dirichlet(alpha, keep_dims)?;
    if n == 0 {
        return Err(param("need at least one vertex"));
    }
    let gammas = alpha
        .iter()
        .map(|&a| Gamma::new(a, 1.0).map_err(|e| param(format!("alpha {a}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream(seed);
    let mut data = Vec::with_capacity(n * keep_dims);
    let mut draw = vec![0.0; alpha.len()];
    for _ in 0..n {
        let total = loop {
            for (g, x) in gammas.iter().zip(draw.iter_mut()) {
                *x = g.sample(&mut rng);
            }
            let total: f64 = draw.iter().sum();
            // All-zero draws underflow only for tiny alpha; redraw.
            if total > 0.0 {
                break total;
            }
        };
        data.extend(draw[..keep_dims].iter().map(|x| x / total));
    }
    LatentPositions::new(Matrix::from_vec(n, keep_dims, data)?)
}

/// Samples a graph with `Pr[A_ij = 1] = P_ij` independently for `i < j`.
///
/// The uniform variate for pair `(i, j)` is indexed by `i * n + j`, so the
/// result depends only on `(P, seed)`.
pub fn sample_adjacency(p: &ProbabilityMatrix, seed: u64) -> AdjacencyMatrix {
    let n = p.n();
    let pm = p.as_matrix();
    let mut a = AdjacencyMatrix::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if counter_uniform(seed, (i * n + j) as u64) < pm[(i, j)] {
                a.insert_edge(i, j);
            }
        }
    }
    a
}

/// Label 1 iff the first latent coordinate is strictly below the second.
pub fn assign_threshold_labels(x: &LatentPositions) -> Result<LabelVector> {
    if x.d() < 2 {
        return Err(param(format!("threshold labels need d >= 2, got {}", x.d())));
    }
    let m = x.as_matrix();
    let labels = (0..x.n()).map(|i| usize::from(m[(i, 0)] < m[(i, 1)])).collect();
    LabelVector::new(labels, 2)
}

/// `E[X Xᵀ]` with its spectrum and the eigengap parameter `δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondMomentSummary {
    pub moment: Matrix,
    /// Decreasing, all positive.
    pub eigenvalues: Vec<f64>,
    /// Supremum of admissible `δ`: half of the smaller of the minimum
    /// eigenvalue spacing and the smallest eigenvalue.
    pub delta: f64,
    working_delta: Option<f64>,
}

impl SecondMomentSummary {
    /// Relative threshold below which eigenvalues (or their gaps) count as zero.
    pub const DEGENERACY_TOL: f64 = 1e-12;

    pub fn from_moment(moment: Matrix) -> Result<Self> {
        let eig = symmetric_eig(&moment, DEFAULT_TOL)?;
        let mut eigenvalues = eig.values;
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let top = eigenvalues.first().copied().unwrap_or(0.0).abs();
        let smallest = eigenvalues.last().copied().unwrap_or(0.0);
        if smallest <= Self::DEGENERACY_TOL * top.max(f64::MIN_POSITIVE) {
            return Err(Error::RankDeficient(smallest));
        }
        let min_gap = eigenvalues
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min);
        if min_gap <= Self::DEGENERACY_TOL * top {
            return Err(Error::RepeatedEigenvalues(min_gap));
        }
        let delta = 0.5 * min_gap.min(smallest);
        Ok(SecondMomentSummary {
            moment,
            eigenvalues,
            delta,
            working_delta: None,
        })
    }

    /// The `δ` used by bound checks: the one set with
    /// [`SecondMomentSummary::with_working_delta`], otherwise the supremum
    /// shrunk by a relative `1e-9` so that the strict inequalities hold.
    pub fn admissible_delta(&self) -> f64 {
        self.working_delta.unwrap_or(self.delta * (1.0 - 1e-9))
    }

    /// Fixes a concrete `δ`, which must lie in `(0, sup δ)`.
    pub fn with_working_delta(mut self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < self.delta) {
            return Err(param(format!(
                "delta {delta} is not admissible (supremum {})",
                self.delta
            )));
        }
        self.working_delta = Some(delta);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Closed-form second moment of the first `keep_dims` Dirichlet coordinates:
/// `E[X_i X_j] = α_i α_j / (α₀(α₀+1))` and `E[X_i²] = α_i(α_i+1) / (α₀(α₀+1))`.
pub fn second_moment_summary(alpha: &[f64], keep_dims: usize) -> Result<SecondMomentSummary> {
    SecondMomentSummary::from_moment(dirichlet_second_moment(alpha, keep_dims)?)
}

pub fn dirichlet_second_moment(alpha: &[f64], keep_dims: usize) -> Result<Matrix> {
    validate_dirichlet(alpha, keep_dims)?;
    let a0: f64 = alpha.iter().sum();
    let denom = a0 * (a0 + 1.0);
    Ok(Matrix::from_fn(keep_dims, keep_dims, |i, j| {
        if i == j {
            alpha[i] * (alpha[i] + 1.0) / denom
        } else {
            alpha[i] * alpha[j] / denom
        }
    }))
}

/// Checks `α_i > 0`, at least two entries and `1 ≤ keep_dims < len(α)`.
pub fn validate_dirichlet(alpha: &[f64], keep_dims: usize) -> Result<()> {
    if alpha.len() < 2 {
        return Err(param("Dirichlet parameter needs at least two entries"));
    }
    if let Some(a) = alpha.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(param(format!("Dirichlet parameter entries must be positive, got {a}")));
    }
    if keep_dims == 0 || keep_dims >= alpha.len() {
        return Err(param(format!(
            "keep_dims must be in 1..={}, got {keep_dims}",
            alpha.len() - 1
        )));
    }
    Ok(())
}
