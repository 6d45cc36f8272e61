use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rdpg::config::{parse_list, ConfigFile, KRule, SimulationConfig};
use rdpg::graph_io::{load_edge_list, LabeledCorpus};
use rdpg::harness::{
    run_diagnostics, run_kd_grid, run_simulation, run_subgraph_experiment, DiagnosticsConfig,
    EmbeddingChoice, RunOutput, SubgraphConfig,
};
use rdpg::output::{
    write_bound_reports, write_coordinates, write_exceedance, write_experiment_rows, ExperimentRow,
};
use rdpg::surrogate::BlockModel;
use rdpg_core::embed::{EmbeddingKind, LaplacianScaling};
use rdpg_core::knn::loo_cv_error;
use rdpg_core::rng::derive_seed;

#[derive(Parser)]
#[command(name = "rdpg", version, about = "Spectral embedding and k-NN vertex classification for random dot product graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dirichlet simulation sweep: embedding error and k-NN error per (n, replicate).
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex counts.
        #[arg(long)]
        n_values: Option<String>,
        #[arg(long)]
        replicates: Option<usize>,
        /// Comma-separated Dirichlet parameter.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Spectral embedding of an edge list, one CSV row per vertex.
    Embed {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        edges: PathBuf,
        /// Vertex count; defaults to one more than the largest id.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        embedding: EmbeddingArgs,
    },
    /// Leave-one-out k-NN error on the embedding of a labeled corpus.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        embedding: EmbeddingArgs,
    },
    /// Concentration bounds evaluated on one sampled Dirichlet graph.
    Diagnose {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long)]
        alpha: Option<String>,
        /// Eigengap parameter; defaults to the largest admissible value.
        #[arg(long)]
        delta: Option<f64>,
        /// Comma-separated exponents for per-vertex exceedance fractions.
        #[arg(long, default_value = "0.25,0.5,0.75")]
        gamma: String,
        /// Where to write exceedance fractions.
        #[arg(long)]
        exceedance_output: Option<PathBuf>,
    },
    /// LOO k-NN error on random induced subgraphs.
    Subgraph {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        embedding: EmbeddingArgs,
        /// Comma-separated subgraph sizes.
        #[arg(long, default_value = "100")]
        sizes: String,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
    },
    /// LOO k-NN error over a grid of embedding dimensions and neighbor counts.
    Grid {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        embedding: EmbeddingArgs,
        /// Comma-separated dimensions; defaults to 1..=min(50, n).
        #[arg(long)]
        d_values: Option<String>,
        #[arg(long, default_value = "1,5,9,13,17")]
        k_values: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Embedding dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Neighbor count, or `sqrt` for 2⌊√n/4⌋+1.
    #[arg(long)]
    k: Option<KRule>,
    /// Flat key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Resolved {
    sim: SimulationConfig,
    d: Option<usize>,
    k: Option<KRule>,
}

impl Common {
    fn resolve(&self) -> Result<Resolved> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let mut sim = SimulationConfig::default();
        sim.apply(&file)?;
        if let Some(seed) = self.seed {
            sim.seed = seed;
        }
        if let Some(out) = &self.output {
            sim.output_path = Some(out.clone());
        }
        let d = self.d.or(file.get("keep_dims").map(|_| sim.keep_dims));
        let k = self.k.or(file.get("k_rule").map(|_| sim.k_rule));
        if let Some(d) = d {
            sim.keep_dims = d;
        }
        if let Some(k) = k {
            sim.k_rule = k;
        }
        Ok(Resolved { sim, d, k })
    }
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, requires = "labels")]
    edges: Option<PathBuf>,
    #[arg(long, requires = "edges")]
    labels: Option<PathBuf>,
    /// Use the built-in five-class blockmodel corpus instead of files.
    #[arg(long, conflicts_with = "edges")]
    surrogate: bool,
}

impl CorpusArgs {
    fn load(&self, seed: u64) -> Result<LabeledCorpus> {
        match (&self.edges, &self.labels, self.surrogate) {
            (Some(e), Some(l), false) => LabeledCorpus::load(e, l).context("loading corpus"),
            (None, None, true) => {
                let model = BlockModel::default();
                let n = model.class_sizes.iter().sum::<usize>() as u64;
                model.sample(derive_seed(seed, "surrogate", n, 0))
            }
            _ => bail!("give --edges and --labels, or --surrogate"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ase,
    Lse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scaling {
    Linear,
    Sqrt,
}

#[derive(Args)]
struct EmbeddingArgs {
    #[arg(long, value_enum, default_value = "ase")]
    kind: Kind,
    /// Laplacian eigenvalue power.
    #[arg(long, value_enum, default_value = "linear")]
    scaling: Scaling,
}

impl EmbeddingArgs {
    fn choice(&self) -> EmbeddingChoice {
        EmbeddingChoice {
            kind: match self.kind {
                Kind::Ase => EmbeddingKind::Adjacency,
                Kind::Lse => EmbeddingKind::Laplacian,
            },
            scaling: match self.scaling {
                Scaling::Linear => LaplacianScaling::Linear,
                Scaling::Sqrt => LaplacianScaling::Sqrt,
            },
        }
    }
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_rows(out: RunOutput, path: &Option<PathBuf>) -> Result<()> {
    for f in &out.failures {
        eprintln!(
            "skipped {} n={} replicate={} seed={}: {}",
            f.experiment, f.n, f.replicate, f.seed, f.message
        );
    }
    write_experiment_rows(sink(path)?, &out.rows).context("writing rows")?;
    if !out.failures.is_empty() {
        eprintln!("{} of {} runs skipped", out.failures.len(), out.failures.len() + out.rows.len());
    }
    Ok(())
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    parse_list(s).with_context(|| format!("--{what}"))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Simulate {
            common,
            n_values,
            replicates,
            alpha,
        } => {
            let mut sim = common.resolve()?.sim;
            if let Some(v) = n_values {
                sim.n_values = list(&v, "n-values")?;
            }
            if let Some(r) = replicates {
                sim.replicates = r;
            }
            if let Some(a) = alpha {
                sim.alpha = list(&a, "alpha")?;
            }
            let out = run_simulation(&sim)?;
            emit_rows(out, &sim.output_path)
        }
        Command::Embed {
            common,
            edges,
            n,
            embedding,
        } => {
            let r = common.resolve()?;
            let a = load_edge_list(&edges, n).with_context(|| format!("loading {}", edges.display()))?;
            let e = embedding.choice().embed(&a.to_matrix(), r.d.unwrap_or(2))?;
            if e.ambiguous_cut {
                eprintln!("warning: eigenvalue tie at the embedding cut; lower-index eigenpair kept");
            }
            write_coordinates(sink(&r.sim.output_path)?, &e.coords).context("writing coordinates")
        }
        Command::Classify {
            common,
            corpus,
            embedding,
        } => {
            let r = common.resolve()?;
            let corpus = corpus.load(r.sim.seed)?;
            let d = r.d.unwrap_or(10);
            let k = r.k.unwrap_or(KRule::Sqrt).k(corpus.n);
            let e = embedding.choice().embed(&corpus.adjacency.to_matrix(), d)?;
            let err = loo_cv_error(&e.coords, corpus.labels.as_slice(), k)?;
            eprintln!("chance error {:.4}", corpus.chance_error());
            let row = ExperimentRow {
                experiment: "classify".into(),
                n: corpus.n,
                replicate: 0,
                seed: r.sim.seed,
                mse_per_vertex: None,
                loo_error_estimated: err,
                loo_error_true: None,
                k,
                d,
            };
            write_experiment_rows(sink(&r.sim.output_path)?, &[row]).context("writing row")
        }
        Command::Diagnose {
            common,
            n,
            alpha,
            delta,
            gamma,
            exceedance_output,
        } => {
            let r = common.resolve()?;
            let alpha = match alpha {
                Some(a) => list(&a, "alpha")?,
                None => r.sim.alpha.clone(),
            };
            let out = run_diagnostics(&DiagnosticsConfig {
                n,
                alpha,
                d: r.sim.keep_dims,
                delta,
                gammas: list(&gamma, "gamma")?,
                seed: r.sim.seed,
            })?;
            write_bound_reports(sink(&r.sim.output_path)?, &out.reports, out.seed).context("writing reports")?;
            if let Some(p) = exceedance_output {
                write_exceedance(sink(&Some(p))?, &out.exceedance, out.seed).context("writing exceedance")?;
            }
            Ok(())
        }
        Command::Subgraph {
            common,
            corpus,
            embedding,
            sizes,
            replicates,
        } => {
            let r = common.resolve()?;
            let corpus = corpus.load(r.sim.seed)?;
            let k = match r.k.unwrap_or(KRule::Fixed(9)) {
                KRule::Fixed(k) => k,
                KRule::Sqrt => bail!("subgraph experiments need a fixed --k"),
            };
            let config = SubgraphConfig {
                sizes: list(&sizes, "sizes")?,
                replicates,
                k,
                d: r.d.unwrap_or(10),
                embedding: embedding.choice(),
                seed: r.sim.seed,
            };
            emit_rows(run_subgraph_experiment(&corpus, &config)?, &r.sim.output_path)
        }
        Command::Grid {
            common,
            corpus,
            embedding,
            d_values,
            k_values,
        } => {
            let r = common.resolve()?;
            let corpus = corpus.load(r.sim.seed)?;
            let d_values = match d_values {
                Some(v) => list(&v, "d-values")?,
                None => (1..=corpus.n.min(50)).collect(),
            };
            let out = run_kd_grid(&corpus, &d_values, &list(&k_values, "k-values")?, embedding.choice())?;
            emit_rows(out, &r.sim.output_path)
        }
    }
}
