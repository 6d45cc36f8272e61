//! Edge-list and label-file ingestion.
//!
//! Edge lists hold one `u v` pair per line with 0-indexed vertex ids; edges
//! are undirected and repeats collapse. Label files hold `vertex_id class_name`
//! lines, and class indices follow first appearance. In both formats blank
//! lines and lines starting with `#` are skipped.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rdpg_core::model::{AdjacencyMatrix, LabelVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("vertices labeled more than once: {0:?}")]
    DuplicateLabels(Vec<usize>),
    #[error("expected labels for {expected} vertices, found {found}; unlabeled vertices: {missing:?}")]
    MissingLabels {
        expected: usize,
        found: usize,
        missing: Vec<usize>,
    },
    #[error("corpus is inconsistent: {0}")]
    Corpus(String),
}

type Result<T> = std::result::Result<T, LoadError>;

/// A graph with one class label per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCorpus {
    pub n: usize,
    pub adjacency: AdjacencyMatrix,
    pub labels: LabelVector,
    pub class_names: Vec<String>,
    pub class_counts: Vec<usize>,
}

impl LabeledCorpus {
    pub fn new(adjacency: AdjacencyMatrix, labels: LabelVector, class_names: Vec<String>) -> Result<Self> {
        let n = adjacency.n();
        if labels.len() != n {
            return Err(LoadError::Corpus(format!("{} labels for {n} vertices", labels.len())));
        }
        if class_names.len() != labels.class_count() {
            return Err(LoadError::Corpus(format!(
                "{} class names for {} classes",
                class_names.len(),
                labels.class_count()
            )));
        }
        let class_counts = labels.counts();
        Ok(LabeledCorpus {
            n,
            adjacency,
            labels,
            class_names,
            class_counts,
        })
    }

    /// Loads labels first; the vertex count is the number of labeled vertices.
    pub fn load(edges: &Path, labels: &Path) -> Result<Self> {
        let label_lines = read_lines(labels)?;
        let n = records(&label_lines).count();
        let (labels, class_names, _) = parse_labels(&label_lines, n)?;
        let adjacency = parse_edge_list(&read_lines(edges)?, Some(n))?;
        LabeledCorpus::new(adjacency, labels, class_names)
    }

    pub fn chance_error(&self) -> f64 {
        self.labels.chance_error()
    }

    pub fn save(&self, edges: &Path, labels: &Path) -> io::Result<()> {
        write_edge_list(&self.adjacency, &mut io::BufWriter::new(File::create(edges)?))?;
        let mut w = io::BufWriter::new(File::create(labels)?);
        for (v, &c) in self.labels.as_slice().iter().enumerate() {
            writeln!(w, "{v} {}", self.class_names[c])?;
        }
        w.flush()
    }
}

pub fn load_edge_list(path: &Path, n_declared: Option<usize>) -> Result<AdjacencyMatrix> {
    parse_edge_list(&read_lines(path)?, n_declared)
}

/// Returns the labels, the class names in index order and the class counts.
pub fn load_labels(path: &Path, n: usize) -> Result<(LabelVector, Vec<String>, Vec<usize>)> {
    parse_labels(&read_lines(path)?, n)
}

pub fn read_edge_list(reader: impl BufRead, n_declared: Option<usize>) -> Result<AdjacencyMatrix> {
    parse_edge_list(&collect_lines(reader, Path::new("<reader>"))?, n_declared)
}

pub fn read_labels(reader: impl BufRead, n: usize) -> Result<(LabelVector, Vec<String>, Vec<usize>)> {
    parse_labels(&collect_lines(reader, Path::new("<reader>"))?, n)
}

/// Writes each edge once as `u v` with `u < v`, in row-major order.
pub fn write_edge_list(a: &AdjacencyMatrix, w: &mut impl Write) -> io::Result<()> {
    for (u, v) in a.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    collect_lines(BufReader::new(file), path)
}

fn collect_lines(reader: impl BufRead, path: &Path) -> Result<Vec<String>> {
    reader.lines().collect::<io::Result<_>>().map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn records(lines: &[String]) -> impl Iterator<Item = (usize, &str)> {
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| LoadError::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

fn parse_edge_list(lines: &[String], n_declared: Option<usize>) -> Result<AdjacencyMatrix> {
    let mut edges = Vec::new();
    for (line, text) in records(lines) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(LoadError::Parse {
                line,
                message: format!("expected 2 vertex ids, found {} tokens", tokens.len()),
            });
        }
        let (u, v) = (parse_id(tokens[0], line)?, parse_id(tokens[1], line)?);
        if u == v {
            return Err(LoadError::SelfLoop { line, vertex: u });
        }
        if let Some(n) = n_declared {
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
                return Err(LoadError::OutOfRange { line, vertex, n });
            }
        }
        edges.push((u, v));
    }
    let n = n_declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(AdjacencyMatrix::from_edges(n, edges).expect("edges validated above"))
}

fn parse_labels(lines: &[String], n: usize) -> Result<(LabelVector, Vec<String>, Vec<usize>)> {
    let mut class_names: Vec<String> = Vec::new();
    let mut class_index: HashMap<String, usize> = HashMap::new();
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut duplicates = Vec::new();
    let mut found = 0;
    for (line, text) in records(lines) {
        let (id, name) = text.split_once(char::is_whitespace).ok_or_else(|| LoadError::Parse {
            line,
            message: "expected a vertex id and a class name".into(),
        })?;
        let vertex = parse_id(id, line)?;
        if vertex >= n {
            return Err(LoadError::OutOfRange { line, vertex, n });
        }
        let name = name.trim();
        let next = class_names.len();
        let class = *class_index.entry(name.to_owned()).or_insert_with(|| {
            class_names.push(name.to_owned());
            next
        });
        found += 1;
        if assigned[vertex].replace(class).is_some() && !duplicates.contains(&vertex) {
            duplicates.push(vertex);
        }
    }
    if !duplicates.is_empty() {
        duplicates.sort_unstable();
        return Err(LoadError::DuplicateLabels(duplicates));
    }
    let missing: Vec<usize> = (0..n).filter(|&v| assigned[v].is_none()).collect();
    if !missing.is_empty() {
        return Err(LoadError::MissingLabels {
            expected: n,
            found,
            missing,
        });
    }
    let labels = LabelVector::new(assigned.into_iter().flatten().collect(), class_names.len())
        .expect("class indices are dense");
    let counts = labels.counts();
    Ok((labels, class_names, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(text: &str, n: Option<usize>) -> Result<AdjacencyMatrix> {
        read_edge_list(text.as_bytes(), n)
    }

    fn labels(text: &str, n: usize) -> Result<(LabelVector, Vec<String>, Vec<usize>)> {
        read_labels(text.as_bytes(), n)
    }

    #[test]
    fn path_graph() {
        let a = edges("0 1\n1 2\n", None).unwrap();
        assert_eq!(a.n(), 3);
        assert_eq!(a.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn both_directions_collapse() {
        let a = edges("0 1\n1 0\n", None).unwrap();
        assert_eq!(a.edge_count(), 1);
    }

    #[test]
    fn self_loop_names_the_line() {
        let err = edges("2 2\n", None).unwrap_err();
        assert!(matches!(err, LoadError::SelfLoop { line: 1, vertex: 2 }));
        let err = edges("# header\n0 1\n\n3 3\n", None).unwrap_err();
        assert!(matches!(err, LoadError::SelfLoop { line: 4, .. }), "{err}");
    }

    #[test]
    fn bad_tokens_and_ranges() {
        assert!(matches!(edges("0 x\n", None), Err(LoadError::Parse { line: 1, .. })));
        assert!(matches!(edges("0 1\n0 1 2\n", None), Err(LoadError::Parse { line: 2, .. })));
        assert!(matches!(edges("0 -1\n", None), Err(LoadError::Parse { .. })));
        assert!(matches!(
            edges("0 1\n1 5\n", Some(4)),
            Err(LoadError::OutOfRange { line: 2, vertex: 5, n: 4 })
        ));
        assert_eq!(edges("0 1\n", Some(6)).unwrap().n(), 6);
        assert_eq!(edges("# nothing\n", None).unwrap().n(), 0);
    }

    #[test]
    fn single_class() {
        let (l, names, counts) = labels("0 A\n1 A\n2 A\n", 3).unwrap();
        assert_eq!(l.class_count(), 1);
        assert_eq!(names, vec!["A"]);
        assert_eq!(counts, vec![3]);
    }

    #[test]
    fn classes_follow_first_appearance() {
        let (l, names, counts) = labels("2 Person\n0 Math\n1 Person\n3 Date\n", 4).unwrap();
        assert_eq!(names, vec!["Person", "Math", "Date"]);
        assert_eq!(l.as_slice(), &[1, 0, 0, 2]);
        assert_eq!(counts, vec![2, 1, 1]);
    }

    #[test]
    fn duplicate_and_missing_vertices() {
        match labels("0 A\n1 A\n1 B\n2 A\n", 3) {
            Err(LoadError::DuplicateLabels(v)) => assert_eq!(v, vec![1]),
            other => panic!("{other:?}"),
        }
        match labels("0 A\n2 B\n", 4) {
            Err(LoadError::MissingLabels { expected: 4, found: 2, missing }) => {
                assert_eq!(missing, vec![1, 3])
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(labels("0 A\n3 B\n", 2), Err(LoadError::OutOfRange { line: 2, .. })));
        assert!(matches!(labels("0\n", 1), Err(LoadError::Parse { line: 1, .. })));
    }

    #[test]
    fn class_names_may_contain_spaces() {
        let (_, names, _) = labels("0 Named Person\n1  Math \n", 2).unwrap();
        assert_eq!(names, vec!["Named Person", "Math"]);
    }

    #[test]
    fn five_class_counts_and_chance() {
        let sizes = [("Category", 119), ("Person", 372), ("Location", 270), ("Date", 191), ("Math", 430)];
        let mut text = String::new();
        let mut v = 0;
        for (name, count) in sizes {
            for _ in 0..count {
                text.push_str(&format!("{v} {name}\n"));
                v += 1;
            }
        }
        assert_eq!(v, 1382);
        let (l, _, counts) = labels(&text, 1382).unwrap();
        assert_eq!(counts, vec![119, 372, 270, 191, 430]);
        assert!((l.chance_error() - (1.0 - 430.0 / 1382.0)).abs() < 1e-15);
        assert!((l.chance_error() - 0.689).abs() < 5e-4);
    }
}
