//! Lloyd's K-Means consuming detected peaks as the initial centroids.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::PointSet;
use crate::peaks::PeakSet;

pub const DEFAULT_KMEANS_MAX_ITER: usize = 300;
pub const DEFAULT_KMEANS_TOL: f64 = 1e-6;

/// Outcome of a K-Means run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansResult {
    pub initial_centroids: Vec<(f64, f64)>,
    pub centroids: Vec<(f64, f64)>,
    /// Cluster index per input point, nearest final centroid.
    pub assignments: Vec<usize>,
    /// Sum of squared distances to the assigned centroids.
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia recorded after every completed assignment/update cycle.
    pub inertia_history: Vec<f64>,
}

impl KMeansResult {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }
}

fn squared_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

/// Nearest centroid index; exact ties break to the smallest index.
fn assign_one(p: (f64, f64), centroids: &[(f64, f64)]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, &c) in centroids.iter().enumerate() {
        let d = squared_distance(p, c);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    (best, best_d)
}

/// Standard Lloyd iteration from explicit initial centroids.
///
/// Alternates assignment and mean update until the largest centroid shift
/// drops below `tol` or `max_iter` is reached. A cluster left empty by an
/// update is re-seeded at the point currently farthest from its assigned
/// centroid.
pub fn kmeans(
    points: &PointSet,
    init: &[(f64, f64)],
    max_iter: usize,
    tol: f64,
) -> Result<KMeansResult> {
    let n = points.len();
    let k = init.len();
    if k == 0 {
        return Err(Error::NoClustersDetected);
    }
    if k > n {
        return Err(Error::TooManyClusters { k, n });
    }
    for i in 1..k {
        if init[..i].contains(&init[i]) {
            return Err(Error::DuplicateCentroids { index: i });
        }
    }

    let pts: Vec<(f64, f64)> = points.points().iter().map(|p| (p.x, p.y)).collect();
    let mut centroids: Vec<(f64, f64)> = init.to_vec();
    let mut assignments = vec![0usize; n];
    let mut iterations = 0;
    let mut inertia_history = Vec::new();

    for _ in 0..max_iter {
        // assignment step (parallel map, order-preserving)
        let assigned: Vec<(usize, f64)> = pts
            .par_iter()
            .map(|&p| assign_one(p, &centroids))
            .collect();
        for (i, &(j, _)) in assigned.iter().enumerate() {
            assignments[i] = j;
        }

        // mean update, sequential for determinism
        let mut sums = vec![(0.0f64, 0.0f64); k];
        let mut counts = vec![0usize; k];
        for (i, &p) in pts.iter().enumerate() {
            let j = assignments[i];
            sums[j].0 += p.0;
            sums[j].1 += p.1;
            counts[j] += 1;
        }

        let mut new_centroids = centroids.clone();
        for j in 0..k {
            if counts[j] > 0 {
                new_centroids[j] = (sums[j].0 / counts[j] as f64, sums[j].1 / counts[j] as f64);
            }
        }

        // re-seed empty clusters at the farthest point from its centroid
        let mut taken: Vec<usize> = Vec::new();
        for j in 0..k {
            if counts[j] > 0 {
                continue;
            }
            let mut far_idx = usize::MAX;
            let mut far_d = -1.0;
            for (i, &(_, d)) in assigned.iter().enumerate() {
                if taken.contains(&i) {
                    continue;
                }
                if d > far_d {
                    far_d = d;
                    far_idx = i;
                }
            }
            new_centroids[j] = pts[far_idx];
            taken.push(far_idx);
        }

        let shift = centroids
            .iter()
            .zip(&new_centroids)
            .map(|(&a, &b)| squared_distance(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = new_centroids;
        iterations += 1;

        // sequential sum: parallel reduction order would wobble the low bits
        let inertia: f64 = pts.iter().map(|&p| assign_one(p, &centroids).1).sum();
        inertia_history.push(inertia);

        if shift < tol {
            break;
        }
    }

    // final assignment against the final centroids
    let assigned: Vec<(usize, f64)> = pts
        .par_iter()
        .map(|&p| assign_one(p, &centroids))
        .collect();
    let assignments: Vec<usize> = assigned.iter().map(|&(j, _)| j).collect();
    let inertia: f64 = assigned.iter().map(|&(_, d)| d).sum();

    Ok(KMeansResult {
        initial_centroids: init.to_vec(),
        centroids,
        assignments,
        inertia,
        iterations,
        inertia_history,
    })
}

/// Runs K-Means with `k = |peaks|` and the peak coordinates as the initial
/// centroids.
pub fn seed_and_cluster(
    points: &PointSet,
    peaks: &PeakSet,
    max_iter: usize,
    tol: f64,
) -> Result<KMeansResult> {
    if peaks.is_empty() {
        return Err(Error::NoClustersDetected);
    }
    let init: Vec<(f64, f64)> = peaks.peaks.iter().map(|p| (p.x, p.y)).collect();
    kmeans(points, &init, max_iter, tol)
}
