//! Synthetic labeled corpora from a stochastic blockmodel.
//!
//! Block probabilities are `B = q 11ᵀ + (p − q) I`, positive semidefinite for
//! `0 ≤ q ≤ p`, so the model is a random dot product graph whose latent
//! dimension equals the number of blocks.

use anyhow::{ensure, Result};
use rand::seq::SliceRandom;
use rdpg_core::model::{sample_adjacency, LabelVector, ProbabilityMatrix};
use rdpg_core::rng::{split, stream};
use rdpg_core::Matrix;

use crate::graph_io::LabeledCorpus;

/// Five classes over 1000 vertices; the largest holds 31.1%.
pub const DEFAULT_CLASS_SIZES: [usize; 5] = [86, 269, 196, 138, 311];
pub const DEFAULT_WITHIN: f64 = 0.5;
pub const DEFAULT_BETWEEN: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockModel {
    pub class_sizes: Vec<usize>,
    pub within: f64,
    pub between: f64,
}

impl Default for BlockModel {
    fn default() -> Self {
        BlockModel {
            class_sizes: DEFAULT_CLASS_SIZES.to_vec(),
            within: DEFAULT_WITHIN,
            between: DEFAULT_BETWEEN,
        }
    }
}

impl BlockModel {
    pub fn block_matrix(&self) -> Matrix {
        let c = self.class_sizes.len();
        Matrix::from_fn(c, c, |i, j| if i == j { self.within } else { self.between })
    }

    /// Class `c` gets vertices in shuffled positions; classes are named
    /// `class_0, class_1, …`.
    pub fn sample(&self, seed: u64) -> Result<LabeledCorpus> {
        ensure!(
            0.0 <= self.between && self.between <= self.within && self.within <= 1.0,
            "need 0 <= between <= within <= 1"
        );
        ensure!(!self.class_sizes.is_empty(), "no classes");
        let mut blocks: Vec<usize> = self
            .class_sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
            .collect();
        blocks.shuffle(&mut stream(split(seed, 0)));
        let b = self.block_matrix();
        let n = blocks.len();
        let p = ProbabilityMatrix::new(Matrix::from_fn(n, n, |i, j| b[(blocks[i], blocks[j])]))?;
        let adjacency = sample_adjacency(&p, split(seed, 1));
        let labels = LabelVector::new(blocks, self.class_sizes.len())?;
        let names = (0..self.class_sizes.len()).map(|c| format!("class_{c}")).collect();
        Ok(LabeledCorpus::new(adjacency, labels, names)?)
    }
}
