mod common;

use common::*;
use proptest::prelude::*;
use rdpg_core::diagnostics::{
    check_eigenvalue_concentration, check_eigenvector_bound, check_frobenius_a2_p2,
    check_theorem1, theorem1_bound, BoundReport,
};
use rdpg_core::model::{second_moment_summary, SecondMomentSummary};
use rdpg_core::Matrix;

fn summary() -> SecondMomentSummary {
    second_moment_summary(&[2.0, 2.0, 2.0], 2).unwrap()
}

fn assert_definitional(r: &BoundReport) {
    assert_eq!(r.satisfied, r.observed <= r.bound, "{r:?}");
}

#[test]
fn exact_case_zeroes_every_observed_quantity() {
    let (x, p, _) = dirichlet_graph(80, 31);
    let s = summary();

    let r = check_frobenius_a2_p2(&p, &p).unwrap();
    assert_eq!(r.observed, 0.0);
    assert!(r.satisfied);

    let r = check_theorem1(&p, &x, &s, 2).unwrap();
    assert!(r.observed < 1e-9, "{r:?}");
    assert!(r.satisfied);

    for r in check_eigenvector_bound(&p, &p, &s, 2).unwrap() {
        assert_eq!(r.observed, 0.0);
        assert_definitional(&r);
    }
}

#[test]
fn rank_and_concentration_on_a_dirichlet_instance() {
    let (_, p, _) = dirichlet_graph(1000, 5);
    let reports = check_eigenvalue_concentration(&p, &summary(), 2).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert_definitional(r);
        assert!(r.satisfied, "{r:?}");
    }
    let null = reports.iter().find(|r| r.name == "null_eigenvalues").unwrap();
    assert!(null.observed < 1e-8 * 1000.0);
    assert!((reports[0].bound - 664.9033).abs() < 1e-3);
}

#[test]
fn zero_latents_report_the_full_deviation() {
    let p = Matrix::zeros(10, 10);
    let s = summary();
    let reports = check_eigenvalue_concentration(&p, &s, 2).unwrap();
    assert!((reports[0].observed - 10.0 * 5.0 / 21.0).abs() < 1e-12);
    assert!((reports[1].observed - 10.0 * 1.0 / 21.0).abs() < 1e-12);
}

#[test]
fn observed_graph_reports_are_definitional() {
    let (x, p, a) = dirichlet_graph(300, 8);
    let am = a.to_matrix();
    let s = summary();
    let mut all = vec![check_frobenius_a2_p2(&am, &p).unwrap(), check_theorem1(&am, &x, &s, 2).unwrap()];
    all.extend(check_eigenvector_bound(&am, &p, &s, 2).unwrap());
    all.extend(check_eigenvalue_concentration(&p, &s, 2).unwrap());
    for r in &all {
        assert_definitional(r);
    }
}

#[test]
fn shape_errors_propagate() {
    assert!(check_frobenius_a2_p2(&Matrix::zeros(3, 3), &Matrix::zeros(4, 4)).is_err());
    assert!(check_theorem1(&Matrix::zeros(3, 3), &Matrix::zeros(3, 1), &summary(), 2).is_err());
    assert!(check_eigenvalue_concentration(&Matrix::zeros(3, 3), &summary(), 3).is_err());
}

proptest! {
    #[test]
    fn theorem1_bound_monotonicity(n in 3usize..100_000, d in 1usize..20, delta in 1e-4f64..1.0) {
        let b = theorem1_bound(n, d, delta).unwrap();
        prop_assert!(theorem1_bound(n + 1, d, delta).unwrap() > b);
        prop_assert!(theorem1_bound(n, d + 1, delta).unwrap() > b);
        prop_assert!(theorem1_bound(n, d, delta * 1.01).unwrap() < b);
    }
}
