//! k-nearest-neighbor vertex classification.
//!
//! Neighbors are ranked by Euclidean distance, compared exactly; equal
//! distances go to the smaller training index. The prediction is the
//! plurality label among the `k` neighbors, vote ties going to the label that
//! comes first in the model's class order. With two classes and the default
//! order this is the majority rule "predict 1 iff more than half the
//! neighbors say 1".

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{param, Error, Result};
use crate::matrix::{squared_distance, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    points: Matrix,
    labels: Vec<usize>,
    k: usize,
    class_count: usize,
    /// `rank[c]` is the position of class `c` in the tie-breaking order.
    rank: Vec<usize>,
}

impl KnnModel {
    /// Model with the default class order `0, 1, …, class_count − 1`.
    pub fn new(points: Matrix, labels: Vec<usize>, k: usize, class_count: usize) -> Result<Self> {
        if points.rows() == 0 {
            return Err(param("k-NN needs at least one training point"));
        }
        if labels.len() != points.rows() {
            return Err(Error::Shape {
                expected: (points.rows(), 1),
                actual: (labels.len(), 1),
            });
        }
        if k == 0 || k > points.rows() {
            return Err(param(format!(
                "k must be in 1..={}, got {k}",
                points.rows()
            )));
        }
        if let Some(l) = labels.iter().find(|&&l| l >= class_count) {
            return Err(param(format!("label {l} out of range for {class_count} classes")));
        }
        if points.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(param("training points must be finite"));
        }
        Ok(KnnModel {
            points,
            labels,
            k,
            class_count,
            rank: (0..class_count).collect(),
        })
    }

    /// Replaces the tie-breaking order; `order` must be a permutation of the
    /// class indices, earliest winning.
    pub fn with_class_order(mut self, order: &[usize]) -> Result<Self> {
        self.rank = class_rank(order, self.class_count)?;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Indices of the `k` nearest training points, nearest first.
    pub fn neighbors(&self, query: &[f64]) -> Result<Vec<usize>> {
        self.check_query(query)?;
        let mut cand: Vec<(f64, usize)> = (0..self.points.rows())
            .map(|i| (squared_distance(self.points.row(i), query), i))
            .collect();
        Ok(nearest(&mut cand, self.k))
    }

    pub fn predict(&self, query: &[f64]) -> Result<usize> {
        let idx = self.neighbors(query)?;
        Ok(vote(idx.iter().map(|&i| self.labels[i]), &self.rank))
    }

    fn check_query(&self, query: &[f64]) -> Result<()> {
        if query.len() != self.points.cols() {
            return Err(Error::Shape {
                expected: (1, self.points.cols()),
                actual: (1, query.len()),
            });
        }
        Ok(())
    }
}

/// Leave-one-out error of the k-NN rule: each point is predicted from all
/// others (keeping original indices for tie-breaks) and the misclassified
/// fraction is returned.
pub fn loo_cv_error(points: &Matrix, labels: &[usize], k: usize) -> Result<f64> {
    let class_count = labels.iter().max().map_or(1, |m| m + 1);
    let order: Vec<usize> = (0..class_count).collect();
    loo_cv_error_with_order(points, labels, k, &order)
}

pub fn loo_cv_error_with_order(
    points: &Matrix,
    labels: &[usize],
    k: usize,
    class_order: &[usize],
) -> Result<f64> {
    let n = points.rows();
    if labels.len() != n {
        return Err(Error::Shape {
            expected: (n, 1),
            actual: (labels.len(), 1),
        });
    }
    if n < 2 {
        return Err(param("leave-one-out needs at least two points"));
    }
    if k == 0 || k >= n {
        return Err(param(format!("k must be in 1..={}, got {k}", n - 1)));
    }
    let class_count = class_order.len();
    let rank = class_rank(class_order, class_count)?;
    if let Some(l) = labels.iter().find(|&&l| l >= class_count) {
        return Err(param(format!("label {l} out of range for {class_count} classes")));
    }

    let mut cand: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
    let mut wrong = 0usize;
    for i in 0..n {
        cand.clear();
        let q = points.row(i);
        cand.extend(
            (0..n)
                .filter(|&j| j != i)
                .map(|j| (squared_distance(points.row(j), q), j)),
        );
        let idx = nearest(&mut cand, k);
        if vote(idx.iter().map(|&j| labels[j]), &rank) != labels[i] {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / n as f64)
}

/// `2⌊√n / 4⌋ + 1`.
pub fn sqrt_rule_k(n: usize) -> usize {
    // ⌊⌊√n⌋ / 4⌋ = ⌊√n / 4⌋, and the integer root is exact.
    2 * (n.isqrt() / 4) + 1
}

fn by_distance_then_index(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.partial_cmp(&b.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.cmp(&b.1))
}

fn nearest(cand: &mut [(f64, usize)], k: usize) -> Vec<usize> {
    if k < cand.len() {
        cand.select_nth_unstable_by(k - 1, by_distance_then_index);
    }
    let head = &mut cand[..k];
    head.sort_unstable_by(by_distance_then_index);
    head.iter().map(|&(_, i)| i).collect()
}

fn vote(labels: impl Iterator<Item = usize>, rank: &[usize]) -> usize {
    let mut counts = vec![0usize; rank.len()];
    for l in labels {
        counts[l] += 1;
    }
    let mut best = 0;
    for c in 1..counts.len() {
        if counts[c] > counts[best] || (counts[c] == counts[best] && rank[c] < rank[best]) {
            best = c;
        }
    }
    best
}

fn class_rank(order: &[usize], class_count: usize) -> Result<Vec<usize>> {
    if order.len() != class_count {
        return Err(param(format!(
            "class order has {} entries, expected {class_count}",
            order.len()
        )));
    }
    let mut rank = vec![usize::MAX; class_count];
    for (pos, &c) in order.iter().enumerate() {
        if c >= class_count || rank[c] != usize::MAX {
            return Err(param(format!("class order is not a permutation: {order:?}")));
        }
        rank[c] = pos;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[[f64; 2]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn nearest_point_wins_with_k_one() {
        let m = KnnModel::new(pts(&[[0.0, 0.0], [1.0, 1.0]]), vec![0, 1], 1, 2).unwrap();
        assert_eq!(m.predict(&[0.9, 0.9]).unwrap(), 1);
    }

    #[test]
    fn majority_of_three() {
        let m = KnnModel::new(
            pts(&[[0.0, 0.0], [0.1, 0.0], [0.0, 0.2], [5.0, 5.0]]),
            vec![0, 0, 1, 1],
            3,
            2,
        )
        .unwrap();
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 0);
    }

    #[test]
    fn equidistant_neighbors_prefer_smaller_index() {
        let mut rows = [[9.0, 9.0]; 6];
        rows[2] = [1.0, 0.0];
        rows[5] = [-1.0, 0.0];
        let m = KnnModel::new(pts(&rows), vec![0, 0, 1, 0, 0, 0], 1, 2).unwrap();
        assert_eq!(m.neighbors(&[0.0, 0.0]).unwrap(), vec![2]);
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 1);
    }

    #[test]
    fn vote_ties_follow_class_order() {
        let m = KnnModel::new(pts(&[[0.0, 0.0], [1.0, 0.0]]), vec![1, 0], 2, 2).unwrap();
        assert_eq!(m.predict(&[0.5, 0.0]).unwrap(), 0);
        let m = m.with_class_order(&[1, 0]).unwrap();
        assert_eq!(m.predict(&[0.5, 0.0]).unwrap(), 1);
    }

    #[test]
    fn parameter_errors() {
        assert!(KnnModel::new(pts(&[[0.0, 0.0]]), vec![0], 2, 2).is_err());
        assert!(KnnModel::new(Matrix::zeros(0, 2), vec![], 1, 2).is_err());
        let m = KnnModel::new(pts(&[[0.0, 0.0]]), vec![0], 1, 2).unwrap();
        assert!(m.predict(&[0.0]).is_err());
        assert!(m.clone().with_class_order(&[0, 0]).is_err());
        assert!(loo_cv_error(&pts(&[[0.0, 0.0], [1.0, 1.0]]), &[0, 1], 2).is_err());
    }

    #[test]
    fn loo_two_clusters() {
        let p = pts(&[[0.0, 0.0], [0.0, 0.1], [10.0, 10.0], [10.0, 10.1]]);
        let y = [0, 0, 1, 1];
        assert_eq!(loo_cv_error(&p, &y, 1).unwrap(), 0.0);
        assert_eq!(loo_cv_error(&p, &y, 3).unwrap(), 1.0);
    }

    #[test]
    fn loo_identical_points() {
        let p = Matrix::from_fn(5, 2, |_, _| 0.3);
        assert_eq!(loo_cv_error(&p, &[0; 5], 3).unwrap(), 0.0);
    }

    #[test]
    fn sqrt_rule_k_values() {
        assert_eq!(sqrt_rule_k(2000), 23);
        assert_eq!(sqrt_rule_k(100), 5);
        assert_eq!(sqrt_rule_k(1), 1);
        // Perfect squares at the boundaries of the floor.
        assert_eq!(sqrt_rule_k(16), 3);
        assert_eq!(sqrt_rule_k(15), 1);
    }
}
