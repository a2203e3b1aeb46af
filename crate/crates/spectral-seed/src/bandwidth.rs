//! Bandwidth schedule and the correlation-difference stopping rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::DensityField;
use crate::spectral::{smooth_unnormalized, SmoothedField};

/// One bandwidth iteration: `sigma_tilde = n / L`, the correlation between the
/// raw raster and the smoothed field, and the change from the previous step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub n: usize,
    pub sigma_tilde: f64,
    pub correlation: f64,
    /// `|c_n - c_{n-1}|`; absent for the first iteration.
    pub delta: Option<f64>,
}

/// Record of the bandwidth search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub entries: Vec<TraceEntry>,
    pub converged_n: usize,
    pub epsilon: f64,
}

impl ConvergenceTrace {
    /// Serializes the iteration log as a bare JSON array of entries.
    pub fn entries_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(&self.entries)
    }
}

/// Pearson product-moment correlation over all elements of two equally sized
/// arrays. Errors on constant input (zero variance).
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (&xa, &xb) in a.iter().zip(b.iter()) {
        let da = xa - mean_a;
        let db = xb - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0))
}

/// Iterates `sigma_tilde = n / L` until the correlation between raster and
/// smoothed field changes by less than `epsilon`, then returns the latest
/// smoothed field (shift-normalized) together with the full trace.
///
/// `L` is the larger grid extent. Exactly `converged_n` smoothing passes are
/// performed. Correlation is measured on the un-normalized field; Pearson is
/// affine-invariant so this choice does not affect the stop decision.
pub fn select_bandwidth(
    field: &DensityField,
    epsilon: f64,
    max_iter: usize,
) -> Result<(SmoothedField, ConvergenceTrace)> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let l = field.grid.extent_max();
    let mut entries = Vec::new();
    let mut previous: Option<f64> = None;

    for n in 1..=max_iter.max(1) {
        let sigma_tilde = n as f64 / l;
        let smoothed = smooth_unnormalized(field, sigma_tilde)?;
        let correlation = pearson_correlation(field.values(), smoothed.values())?;
        let delta = previous.map(|p| (correlation - p).abs());
        entries.push(TraceEntry {
            n,
            sigma_tilde,
            correlation,
            delta,
        });
        if let Some(d) = delta {
            if d < epsilon {
                let mut selected = smoothed;
                selected.normalize();
                let trace = ConvergenceTrace {
                    entries,
                    converged_n: n,
                    epsilon,
                };
                return Ok((selected, trace));
            }
        }
        previous = Some(correlation);
    }

    let last_delta = entries.last().and_then(|e| e.delta).unwrap_or(f64::NAN);
    Err(Error::NoConvergence {
        max_iter,
        last_delta,
        trace: ConvergenceTrace {
            entries,
            converged_n: 0,
            epsilon,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{rasterize, GridSpec, PointSet};
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_arrays(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        ((0..n).map(|_| draw()).collect(), (0..n).map(|_| draw()).collect())
    }

    fn cluster_field(seed: u64) -> DensityField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let mut pts = Vec::new();
        for &(cx, cy) in &[(0.25, 0.25), (0.75, 0.3), (0.5, 0.75)] {
            for _ in 0..60 {
                pts.push((cx + 0.08 * (draw() - 0.5), cy + 0.08 * (draw() - 0.5)));
            }
        }
        let points = PointSet::from_xy(&pts).unwrap();
        let grid = GridSpec::new(1.0 / 96.0, 0.0, 0.0, 96, 96).unwrap();
        rasterize(&points, &grid).unwrap()
    }

    #[test]
    fn self_correlation_is_one() {
        let (a, _) = random_arrays(64, 1);
        assert!((pearson_correlation(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_invariance() {
        let (a, _) = random_arrays(64, 2);
        let b: Vec<f64> = a.iter().map(|&v| 3.5 * v + 0.7).collect();
        assert!((pearson_correlation(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_two_pass_oracle() {
        let (a, b) = random_arrays(64, 3);
        // textbook two-pass mean / covariance formula
        let n = a.len() as f64;
        let (ma, mb) = (
            a.iter().sum::<f64>() / n,
            b.iter().sum::<f64>() / n,
        );
        let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let sa: f64 = a.iter().map(|x| (x - ma) * (x - ma)).sum();
        let sb: f64 = b.iter().map(|y| (y - mb) * (y - mb)).sum();
        let expected = cov / (sa * sb).sqrt();
        let got = pearson_correlation(&a, &b).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((-1.0..=1.0).contains(&got));
    }

    #[test]
    fn constant_input_errors() {
        let a = vec![2.0; 16];
        let (b, _) = random_arrays(16, 4);
        assert!(matches!(
            pearson_correlation(&a, &b),
            Err(Error::ZeroVariance)
        ));
    }

    #[test]
    fn length_mismatch_errors() {
        assert!(matches!(
            pearson_correlation(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { a: 2, b: 3 })
        ));
    }

    #[test]
    fn converges_and_trace_is_complete() {
        let field = cluster_field(5);
        let (selected, trace) = select_bandwidth(&field, 0.01, 64).unwrap();
        assert!(trace.converged_n >= 2);
        assert_eq!(trace.entries.len(), trace.converged_n);
        for (i, e) in trace.entries.iter().enumerate() {
            assert_eq!(e.n, i + 1);
            assert_eq!(e.sigma_tilde, (i + 1) as f64 / field.grid.extent_max());
            assert!((-1.0..=1.0).contains(&e.correlation));
            assert_eq!(e.delta.is_none(), i == 0);
        }
        let last = trace.entries.last().unwrap();
        assert!(last.delta.unwrap() < 0.01);
        assert!(selected.normalized);
        assert_eq!(selected.sigma_tilde, last.sigma_tilde);
    }

    #[test]
    fn correlation_monotone_on_corpus() {
        for seed in [5u64, 6, 7] {
            let field = cluster_field(seed);
            let (_, trace) = select_bandwidth(&field, 0.005, 64).unwrap();
            for pair in trace.entries.windows(2) {
                assert!(
                    pair[1].correlation >= pair[0].correlation - 1e-9,
                    "correlation decreased: {:?} -> {:?}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn earliest_stop_is_two_passes() {
        // single occupied pixel: correlations for n = 1, 2 are nearly equal,
        // so the first admissible stop (n = 2) fires
        let grid = GridSpec::new(1.0 / 32.0, 0.0, 0.0, 32, 32).unwrap();
        let points = PointSet::from_xy(&[(0.5, 0.5)]).unwrap();
        let field = rasterize(&points, &grid).unwrap();
        let (_, trace) = select_bandwidth(&field, 0.2, 64).unwrap();
        assert_eq!(trace.converged_n, 2);
        assert_eq!(trace.entries.len(), 2);
    }

    #[test]
    fn non_convergence_carries_trace() {
        let field = cluster_field(8);
        match select_bandwidth(&field, 1e-12, 3) {
            Err(Error::NoConvergence {
                max_iter, trace, ..
            }) => {
                assert_eq!(max_iter, 3);
                assert_eq!(trace.entries.len(), 3);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_trace() {
        let field = cluster_field(9);
        let (a, ta) = select_bandwidth(&field, 0.01, 64).unwrap();
        let (b, tb) = select_bandwidth(&field, 0.01, 64).unwrap();
        assert_eq!(ta, tb);
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn scripted_reference_run_agrees() {
        // independent step-by-step replay of the stopping rule
        let field = cluster_field(10);
        let epsilon = 0.01;
        let l = field.grid.extent_max();
        let mut previous: Option<f64> = None;
        let mut expected_n = 0;
        for n in 1..=64 {
            let s = smooth_unnormalized(&field, n as f64 / l).unwrap();
            let c = pearson_correlation(field.values(), s.values()).unwrap();
            if let Some(p) = previous {
                if (c - p).abs() < epsilon {
                    expected_n = n;
                    break;
                }
            }
            previous = Some(c);
        }
        let (_, trace) = select_bandwidth(&field, epsilon, 64).unwrap();
        assert_eq!(trace.converged_n, expected_n);
    }
}
