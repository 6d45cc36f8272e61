//! Simulation settings and the flat `key=value` config file.
//!
//! ```text
//! # comments and blank lines are ignored
//! n_values = 100,200,300
//! replicates = 50
//! alpha = 2,2,2
//! keep_dims = 2
//! k_rule = sqrt        # or a fixed integer
//! seed = 1
//! output_path = sim.csv
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use rdpg_core::knn::sqrt_rule_k;
use rdpg_core::model::validate_dirichlet;

/// How `k` is chosen for an `n`-vertex sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    Fixed(usize),
    /// `2⌊√n / 4⌋ + 1`.
    Sqrt,
}

impl KRule {
    pub fn k(self, n: usize) -> usize {
        match self {
            KRule::Fixed(k) => k,
            KRule::Sqrt => sqrt_rule_k(n),
        }
    }
}

impl FromStr for KRule {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sqrt" => Ok(KRule::Sqrt),
            other => {
                let k: usize = other.parse().with_context(|| format!("invalid k rule {other:?}"))?;
                ensure!(k >= 1, "k must be positive");
                Ok(KRule::Fixed(k))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub n_values: Vec<usize>,
    pub replicates: usize,
    pub alpha: Vec<f64>,
    pub keep_dims: usize,
    pub k_rule: KRule,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            n_values: (1..=10).map(|i| 100 * i).collect(),
            replicates: 50,
            alpha: vec![2.0, 2.0, 2.0],
            keep_dims: 2,
            k_rule: KRule::Sqrt,
            seed: 1,
            output_path: None,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.n_values.is_empty(), "n_values is empty");
        if let Some(n) = self.n_values.iter().find(|&&n| n < 10) {
            bail!("every n must be at least 10, got {n}");
        }
        ensure!(self.replicates >= 1, "replicates must be at least 1");
        ensure!(self.keep_dims >= 2, "threshold labels need keep_dims >= 2");
        validate_dirichlet(&self.alpha, self.keep_dims)?;
        Ok(())
    }

    /// Overrides fields with every key present in `file`.
    pub fn apply(&mut self, file: &ConfigFile) -> Result<()> {
        for (key, value, line) in &file.entries {
            let ctx = || format!("config line {line}: {key}");
            match key.as_str() {
                "n_values" => self.n_values = parse_list(value).with_context(ctx)?,
                "replicates" => self.replicates = value.parse().with_context(ctx)?,
                "alpha" => self.alpha = parse_list(value).with_context(ctx)?,
                "keep_dims" => self.keep_dims = value.parse().with_context(ctx)?,
                "k_rule" => self.k_rule = value.parse().with_context(ctx)?,
                "seed" => self.seed = value.parse().with_context(ctx)?,
                "output_path" => self.output_path = Some(PathBuf::from(value)),
                _ => bail!("config line {line}: unknown key {key:?}"),
            }
        }
        Ok(())
    }
}

/// Parsed `key=value` lines, in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: Vec<(String, String, usize)>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        text.parse().with_context(|| format!("parsing {}", path.display()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().rev().find(|(k, _, _)| k == key).map(|(_, v, _)| v.as_str())
    }
}

impl FromStr for ConfigFile {
    type Err = anyhow::Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key=value", i + 1);
            };
            entries.push((k.trim().to_owned(), v.trim().to_owned(), i + 1));
        }
        Ok(ConfigFile { entries })
    }
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().with_context(|| format!("invalid list item {t:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let file: ConfigFile = "# sweep\nn_values = 100, 400,1000\nreplicates=3\nk_rule = 9 # fixed\nseed=42\n"
            .parse()
            .unwrap();
        let mut cfg = SimulationConfig::default();
        cfg.apply(&file).unwrap();
        assert_eq!(cfg.n_values, vec![100, 400, 1000]);
        assert_eq!(cfg.replicates, 3);
        assert_eq!(cfg.k_rule, KRule::Fixed(9));
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.alpha, vec![2.0, 2.0, 2.0]);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!("novalue\n".parse::<ConfigFile>().is_err());
        let mut cfg = SimulationConfig::default();
        assert!(cfg.apply(&"colour = red".parse().unwrap()).is_err());
        assert!(cfg.apply(&"replicates = many".parse().unwrap()).is_err());
        cfg.n_values = vec![5];
        assert!(cfg.validate().is_err());
        let cfg = SimulationConfig {
            replicates: 0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn k_rules() {
        assert_eq!("sqrt".parse::<KRule>().unwrap().k(2000), 23);
        assert_eq!("5".parse::<KRule>().unwrap().k(2000), 5);
        assert!("0".parse::<KRule>().is_err());
    }
}
