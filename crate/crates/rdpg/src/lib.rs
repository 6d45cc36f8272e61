//! File formats, experiment harness and command-line front end for
//! [`rdpg_core`].
//!
//! - [`graph_io`]: edge-list and label-file ingestion into a [`LabeledCorpus`].
//! - [`harness`]: the Dirichlet simulation sweep, random induced subgraph
//!   experiments, the `(d, k)` grid and bound diagnostics.
//! - [`output`]: CSV writers.
//! - [`config`]: simulation settings and the `key=value` config file.
//! - [`surrogate`]: synthetic blockmodel corpora.

pub mod config;
pub mod graph_io;
pub mod harness;
pub mod output;
pub mod surrogate;

pub use config::{KRule, SimulationConfig};
pub use graph_io::LabeledCorpus;
pub use output::ExperimentRow;
