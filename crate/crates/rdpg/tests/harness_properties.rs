use rdpg::config::{KRule, SimulationConfig};
use rdpg::graph_io::LabeledCorpus;
use rdpg::harness::{
    run_diagnostics, run_kd_grid, run_simulation, run_subgraph_experiment, DiagnosticsConfig, EmbeddingChoice,
    SubgraphConfig,
};
use rdpg::output::write_experiment_rows;
use rdpg::surrogate::BlockModel;
use rdpg_core::embed::{EmbeddingKind, LaplacianScaling};
use rdpg_core::model::{AdjacencyMatrix, LabelVector};

fn small(n_values: Vec<usize>, replicates: usize, seed: u64) -> SimulationConfig {
    SimulationConfig {
        n_values,
        replicates,
        seed,
        ..Default::default()
    }
}

fn csv(cfg: &SimulationConfig) -> Vec<u8> {
    let mut buf = Vec::new();
    write_experiment_rows(&mut buf, &run_simulation(cfg).unwrap().rows).unwrap();
    buf
}

#[test]
fn two_replicates_give_two_rows_with_distinct_seeds() {
    let out = run_simulation(&small(vec![100], 2, 5)).unwrap();
    assert!(out.failures.is_empty());
    assert_eq!(out.rows.len(), 2);
    assert_ne!(out.rows[0].seed, out.rows[1].seed);
    for r in &out.rows {
        assert_eq!(r.k, 5);
        assert!(r.mse_per_vertex.unwrap() >= 0.0);
        assert!((0.0..=1.0).contains(&r.loo_error_estimated));
        assert!((0.0..=1.0).contains(&r.loo_error_true.unwrap()));
    }
}

#[test]
fn sqrt_rule_at_two_thousand() {
    let out = run_simulation(&small(vec![2000], 1, 1)).unwrap();
    assert_eq!(out.rows[0].k, 23);
}

#[test]
fn output_is_a_pure_function_of_the_seed() {
    let cfg = small(vec![60, 30], 3, 11);
    assert_eq!(csv(&cfg), csv(&cfg));
    assert_ne!(csv(&cfg), csv(&small(vec![60, 30], 3, 12)));
}

#[test]
fn rows_are_sorted_and_adding_n_values_keeps_existing_rows() {
    let a = run_simulation(&small(vec![50], 2, 3)).unwrap().rows;
    let b = run_simulation(&small(vec![80, 50], 2, 3)).unwrap().rows;
    assert_eq!(b.iter().map(|r| (r.n, r.replicate)).collect::<Vec<_>>(), vec![(50, 0), (50, 1), (80, 0), (80, 1)]);
    assert_eq!(&b[..2], &a[..]);
}

#[test]
fn numerical_failures_are_skipped_not_fatal() {
    // k = 40 exceeds the 29 candidates available at n = 30.
    let cfg = SimulationConfig {
        k_rule: KRule::Fixed(40),
        ..small(vec![30, 100], 1, 2)
    };
    let out = run_simulation(&cfg).unwrap();
    assert_eq!(out.rows.len(), 1);
    assert_eq!(out.rows[0].n, 100);
    assert_eq!(out.failures.len(), 1);
    assert_eq!(out.failures[0].n, 30);
}

#[test]
fn invalid_configs_are_rejected() {
    assert!(run_simulation(&small(vec![5], 1, 0)).is_err());
    assert!(run_simulation(&small(vec![50], 0, 0)).is_err());
}

fn surrogate() -> LabeledCorpus {
    BlockModel {
        class_sizes: vec![40, 70, 50],
        within: 0.6,
        between: 0.1,
    }
    .sample(4)
    .unwrap()
}

#[test]
fn full_size_subgraph_matches_the_grid_cell() {
    let corpus = surrogate();
    let sub = run_subgraph_experiment(
        &corpus,
        &SubgraphConfig {
            sizes: vec![corpus.n],
            replicates: 1,
            k: 9,
            d: 10,
            embedding: EmbeddingChoice::default(),
            seed: 1,
        },
    )
    .unwrap();
    assert_eq!(sub.rows.len(), 1);
    let grid = run_kd_grid(&corpus, &[10], &[9], EmbeddingChoice::default()).unwrap();
    assert_eq!(grid.rows.len(), 1);
    assert_eq!(sub.rows[0].loo_error_estimated, grid.rows[0].loo_error_estimated);
}

#[test]
fn grid_shape_and_order() {
    let corpus = surrogate();
    let out = run_kd_grid(&corpus, &[1, 2, 3], &[1, 5], EmbeddingChoice::default()).unwrap();
    let cells: Vec<_> = out.rows.iter().map(|r| (r.d, r.k)).collect();
    assert_eq!(cells, vec![(1, 1), (1, 5), (2, 1), (2, 5), (3, 1), (3, 5)]);
}

#[test]
fn identical_labels_give_zero_error() {
    let mut corpus = surrogate();
    corpus = LabeledCorpus::new(corpus.adjacency, LabelVector::new(vec![0; corpus.n], 1).unwrap(), vec!["all".into()])
        .unwrap();
    let out = run_kd_grid(&corpus, &[1, 4], &[1, 5, 9], EmbeddingChoice::default()).unwrap();
    assert!(out.rows.iter().all(|r| r.loo_error_estimated == 0.0));
}

#[test]
fn subgraph_replicates_are_deterministic_and_distinct() {
    let corpus = surrogate();
    let cfg = SubgraphConfig {
        sizes: vec![60, 100],
        replicates: 3,
        k: 5,
        d: 3,
        embedding: EmbeddingChoice::default(),
        seed: 9,
    };
    let a = run_subgraph_experiment(&corpus, &cfg).unwrap();
    assert_eq!(a, run_subgraph_experiment(&corpus, &cfg).unwrap());
    assert_eq!(a.rows.len(), 6);
    let seeds: std::collections::HashSet<_> = a.rows.iter().map(|r| r.seed).collect();
    assert_eq!(seeds.len(), 6);
    assert!(run_subgraph_experiment(&corpus, &SubgraphConfig { sizes: vec![corpus.n + 1], ..cfg }).is_err());
}

#[test]
fn laplacian_flags_isolated_vertices_but_adjacency_proceeds() {
    let mut edges: Vec<(usize, usize)> = (1..30).map(|i| (i - 1, i)).collect();
    edges.retain(|&(u, _)| u != 10);
    let adjacency = AdjacencyMatrix::from_edges(31, edges).unwrap();
    let labels = LabelVector::new((0..31).map(|i| i % 2).collect(), 2).unwrap();
    let corpus = LabeledCorpus::new(adjacency, labels, vec!["a".into(), "b".into()]).unwrap();
    let lse = EmbeddingChoice {
        kind: EmbeddingKind::Laplacian,
        scaling: LaplacianScaling::Linear,
    };
    let out = run_kd_grid(&corpus, &[2], &[3], EmbeddingChoice::default()).unwrap();
    assert_eq!(out.rows.len(), 1);
    assert!(run_kd_grid(&corpus, &[2], &[3], lse).is_err());
}

#[test]
fn diagnostics_reports_are_definitional() {
    let out = run_diagnostics(&DiagnosticsConfig {
        n: 200,
        alpha: vec![2.0, 2.0, 2.0],
        d: 2,
        delta: Some(0.0238),
        gammas: vec![0.3, 0.6],
        seed: 4,
    })
    .unwrap();
    assert_eq!(out.reports.len(), 1 + 4 + 1 + 2);
    for r in &out.reports {
        assert_eq!(r.satisfied, r.observed <= r.bound, "{r:?}");
        assert_eq!(r.n, 200);
    }
    assert_eq!(out.exceedance.len(), 2);
    assert!(out.exceedance[0].fraction <= out.exceedance[1].fraction);
    assert!(run_diagnostics(&DiagnosticsConfig {
        n: 200,
        alpha: vec![2.0, 2.0, 2.0],
        d: 2,
        delta: Some(0.5),
        gammas: vec![],
        seed: 4,
    })
    .is_err());
}
