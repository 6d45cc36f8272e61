//! CSV writers for experiment rows and bound reports.
//!
//! RFC 4180 quoting, LF line endings, floats in scientific notation with 17
//! significant digits (round-trippable), absent values as empty fields.

use std::io::Write;

use rdpg_core::diagnostics::{BoundReport, ExceedanceReport};

/// One `(experiment, n, replicate)` measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub experiment: String,
    pub n: usize,
    pub replicate: usize,
    pub seed: u64,
    /// Only when true latent positions are known.
    pub mse_per_vertex: Option<f64>,
    pub loo_error_estimated: f64,
    /// Only when true latent positions are known.
    pub loo_error_true: Option<f64>,
    pub k: usize,
    pub d: usize,
}

pub const EXPERIMENT_HEADER: [&str; 9] = [
    "experiment",
    "n",
    "replicate",
    "seed",
    "mse_per_vertex",
    "loo_error_estimated",
    "loo_error_true",
    "k",
    "d",
];

pub const BOUND_HEADER: [&str; 9] = [
    "name", "n", "d", "delta", "gamma", "observed", "bound", "satisfied", "seed",
];

pub const EXCEEDANCE_HEADER: [&str; 7] = ["n", "d", "gamma", "threshold", "exceed_count", "fraction", "seed"];

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(w)
}

pub fn write_experiment_rows<W: Write>(w: W, rows: &[ExperimentRow]) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(EXPERIMENT_HEADER)?;
    for r in rows {
        out.write_record([
            r.experiment.clone(),
            r.n.to_string(),
            r.replicate.to_string(),
            r.seed.to_string(),
            opt(r.mse_per_vertex),
            format_float(r.loo_error_estimated),
            opt(r.loo_error_true),
            r.k.to_string(),
            r.d.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_bound_reports<W: Write>(w: W, reports: &[BoundReport], seed: u64) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(BOUND_HEADER)?;
    for r in reports {
        out.write_record([
            r.name.clone(),
            r.n.to_string(),
            r.d.to_string(),
            opt(r.delta),
            opt(r.gamma),
            format_float(r.observed),
            format_float(r.bound),
            r.satisfied.to_string(),
            seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_exceedance<W: Write>(w: W, reports: &[ExceedanceReport], seed: u64) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(EXCEEDANCE_HEADER)?;
    for r in reports {
        out.write_record([
            r.n.to_string(),
            r.d.to_string(),
            format_float(r.gamma),
            format_float(r.threshold),
            r.exceed_count.to_string(),
            format_float(r.fraction),
            seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Rows of `(vertex, x_1, …, x_d)`.
pub fn write_coordinates<W: Write>(w: W, coords: &rdpg_core::Matrix) -> csv::Result<()> {
    let mut out = writer(w);
    let mut header = vec!["vertex".to_string()];
    header.extend((1..=coords.cols()).map(|j| format!("x{j}")));
    out.write_record(&header)?;
    for i in 0..coords.rows() {
        let mut rec = vec![i.to_string()];
        rec.extend(coords.row(i).iter().map(|&x| format_float(x)));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}
