//! Experiment orchestration.
//!
//! Every replicate is an independent task seeded by
//! `derive_seed(master, experiment, n, replicate)`, run on the rayon pool, and
//! the rows are sorted afterwards, so output never depends on scheduling.
//! Replicates that fail numerically are dropped from the rows and reported in
//! [`RunOutput::failures`].

use rand::seq::index;
use rayon::prelude::*;
use rdpg_core::align::{mse_per_vertex, orthogonal_procrustes};
use rdpg_core::diagnostics::{vertex_exceedance, BoundReport, Diagnostics, ExceedanceReport};
use rdpg_core::embed::{ase, lse, Embedding, EmbeddingKind, LaplacianScaling};
use rdpg_core::knn::loo_cv_error;
use rdpg_core::model::{
    assign_threshold_labels, sample_adjacency, sample_dirichlet_latents, second_moment_summary,
};
use rdpg_core::rng::{derive_seed, split, stream};
use rdpg_core::Matrix;

use crate::config::SimulationConfig;
use crate::graph_io::LabeledCorpus;
use crate::output::ExperimentRow;

pub const SIMULATION: &str = "simulation";
pub const SUBGRAPH: &str = "subgraph";
pub const GRID: &str = "grid";
pub const DIAGNOSE: &str = "diagnose";

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub experiment: String,
    pub n: usize,
    pub replicate: usize,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutput {
    pub rows: Vec<ExperimentRow>,
    pub failures: Vec<RunFailure>,
}

impl RunOutput {
    fn collect(results: Vec<Result<ExperimentRow, RunFailure>>) -> Self {
        let mut out = RunOutput::default();
        for r in results {
            match r {
                Ok(row) => out.rows.push(row),
                Err(f) => out.failures.push(f),
            }
        }
        // Stable: grid rows keep their (d, k) order.
        out.rows
            .sort_by(|a, b| (&a.experiment, a.n, a.replicate).cmp(&(&b.experiment, b.n, b.replicate)));
        out
    }
}

fn run_tasks<T, F>(tasks: Vec<T>, f: F) -> Vec<Result<ExperimentRow, RunFailure>>
where
    T: Send,
    F: Fn(T) -> Result<ExperimentRow, RunFailure> + Sync + Send,
{
    tasks.into_par_iter().map(f).collect()
}

/// Dirichlet latent positions, threshold labels, a sampled graph, its
/// adjacency embedding aligned to the truth, and k-NN errors on both.
pub fn run_simulation(config: &SimulationConfig) -> anyhow::Result<RunOutput> {
    config.validate()?;
    let tasks: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.replicates).map(move |r| (n, r)))
        .collect();
    Ok(RunOutput::collect(run_tasks(tasks, |(n, replicate)| {
        let seed = derive_seed(config.seed, SIMULATION, n as u64, replicate as u64);
        simulate_replicate(config, n, seed)
            .map(|(mse, est, truth)| ExperimentRow {
                experiment: SIMULATION.into(),
                n,
                replicate,
                seed,
                mse_per_vertex: Some(mse),
                loo_error_estimated: est,
                loo_error_true: Some(truth),
                k: config.k_rule.k(n),
                d: config.keep_dims,
            })
            .map_err(|e| RunFailure {
                experiment: SIMULATION.into(),
                n,
                replicate,
                seed,
                message: e.to_string(),
            })
    })))
}

fn simulate_replicate(config: &SimulationConfig, n: usize, seed: u64) -> rdpg_core::Result<(f64, f64, f64)> {
    let x = sample_dirichlet_latents(n, &config.alpha, config.keep_dims, split(seed, 0))?;
    let labels = assign_threshold_labels(&x)?;
    let a = sample_adjacency(&x.probability_matrix()?, split(seed, 1));
    let xhat = ase(&a.to_matrix(), config.keep_dims)?.coords;
    let aligned = orthogonal_procrustes(&xhat, x.as_matrix())?.aligned;
    let k = config.k_rule.k(n);
    Ok((
        mse_per_vertex(&aligned, x.as_matrix())?,
        loo_cv_error(&xhat, labels.as_slice(), k)?,
        loo_cv_error(x.as_matrix(), labels.as_slice(), k)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingChoice {
    pub kind: EmbeddingKind,
    pub scaling: LaplacianScaling,
}

impl Default for EmbeddingChoice {
    fn default() -> Self {
        EmbeddingChoice {
            kind: EmbeddingKind::Adjacency,
            scaling: LaplacianScaling::Linear,
        }
    }
}

impl EmbeddingChoice {
    pub fn embed(self, a: &Matrix, d: usize) -> rdpg_core::Result<Embedding> {
        match self.kind {
            EmbeddingKind::Adjacency => ase(a, d),
            EmbeddingKind::Laplacian => lse(a, d, self.scaling),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphConfig {
    pub sizes: Vec<usize>,
    pub replicates: usize,
    pub k: usize,
    pub d: usize,
    pub embedding: EmbeddingChoice,
    pub seed: u64,
}

/// LOO k-NN error on embeddings of uniformly random induced subgraphs.
pub fn run_subgraph_experiment(corpus: &LabeledCorpus, config: &SubgraphConfig) -> anyhow::Result<RunOutput> {
    if let Some(&s) = config.sizes.iter().find(|&&s| s > corpus.n || s == 0) {
        anyhow::bail!("subgraph size {s} not in 1..={}", corpus.n);
    }
    anyhow::ensure!(config.replicates >= 1, "replicates must be at least 1");
    let tasks: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&s| (0..config.replicates).map(move |r| (s, r)))
        .collect();
    Ok(RunOutput::collect(run_tasks(tasks, |(size, replicate)| {
        let seed = derive_seed(config.seed, SUBGRAPH, size as u64, replicate as u64);
        let mut vertices = index::sample(&mut stream(seed), corpus.n, size).into_vec();
        vertices.sort_unstable();
        let sub = corpus.adjacency.induced_subgraph(&vertices);
        let labels = corpus.labels.select(&vertices);
        config
            .embedding
            .embed(&sub.to_matrix(), config.d)
            .and_then(|e| loo_cv_error(&e.coords, labels.as_slice(), config.k))
            .map(|err| ExperimentRow {
                experiment: SUBGRAPH.into(),
                n: size,
                replicate,
                seed,
                mse_per_vertex: None,
                loo_error_estimated: err,
                loo_error_true: None,
                k: config.k,
                d: config.d,
            })
            .map_err(|e| RunFailure {
                experiment: SUBGRAPH.into(),
                n: size,
                replicate,
                seed,
                message: e.to_string(),
            })
    })))
}

/// One row per `(d, k)`, from a single embedding at `max(d_values)`.
pub fn run_kd_grid(
    corpus: &LabeledCorpus,
    d_values: &[usize],
    k_values: &[usize],
    embedding: EmbeddingChoice,
) -> anyhow::Result<RunOutput> {
    let Some(&d_max) = d_values.iter().max() else {
        anyhow::bail!("d_values is empty");
    };
    anyhow::ensure!(d_max <= corpus.n, "d = {d_max} exceeds n = {}", corpus.n);
    let full = embedding.embed(&corpus.adjacency.to_matrix(), d_max)?;
    let tasks: Vec<(usize, usize)> = d_values
        .iter()
        .flat_map(|&d| k_values.iter().map(move |&k| (d, k)))
        .collect();
    Ok(RunOutput::collect(run_tasks(tasks, |(d, k)| {
        full.truncate(d)
            .and_then(|e| loo_cv_error(&e.coords, corpus.labels.as_slice(), k))
            .map(|err| ExperimentRow {
                experiment: GRID.into(),
                n: corpus.n,
                replicate: 0,
                seed: 0,
                mse_per_vertex: None,
                loo_error_estimated: err,
                loo_error_true: None,
                k,
                d,
            })
            .map_err(|e| RunFailure {
                experiment: GRID.into(),
                n: corpus.n,
                replicate: 0,
                seed: 0,
                message: format!("d={d} k={k}: {e}"),
            })
    })))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsConfig {
    pub n: usize,
    pub alpha: Vec<f64>,
    pub d: usize,
    /// Defaults to the largest admissible value.
    pub delta: Option<f64>,
    pub gammas: Vec<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsOutput {
    pub seed: u64,
    pub reports: Vec<BoundReport>,
    pub exceedance: Vec<ExceedanceReport>,
}

/// Samples one Dirichlet graph and evaluates every bound on it.
pub fn run_diagnostics(config: &DiagnosticsConfig) -> anyhow::Result<DiagnosticsOutput> {
    let seed = derive_seed(config.seed, DIAGNOSE, config.n as u64, 0);
    let mut summary = second_moment_summary(&config.alpha, config.d)?;
    if let Some(delta) = config.delta {
        summary = summary.with_working_delta(delta)?;
    }
    let x = sample_dirichlet_latents(config.n, &config.alpha, config.d, split(seed, 0))?;
    let p = x.probability_matrix()?;
    let a = sample_adjacency(&p, split(seed, 1)).to_matrix();
    let (p, x) = (p.as_matrix(), x.as_matrix());

    let diag = Diagnostics::default();
    let mut reports = vec![diag.check_frobenius_a2_p2(&a, p)?];
    reports.extend(diag.check_eigenvalue_concentration(p, &summary, config.d)?);
    let (theorem1, alignment) = diag.check_theorem1_with_alignment(&a, x, &summary, config.d)?;
    reports.push(theorem1);
    reports.extend(diag.check_eigenvector_bound(&a, p, &summary, config.d)?);
    let exceedance = config
        .gammas
        .iter()
        .map(|&g| vertex_exceedance(&alignment.aligned, x, g))
        .collect::<rdpg_core::Result<_>>()?;
    Ok(DiagnosticsOutput {
        seed,
        reports,
        exceedance,
    })
}
