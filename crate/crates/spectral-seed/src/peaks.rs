//! Local-maxima detection on the smoothed density: thresholding plus a
//! union of coarse square tilings at three widths.

use serde::{Deserialize, Serialize};

use crate::bandwidth::{select_bandwidth, ConvergenceTrace};
use crate::error::{Error, Result};
use crate::grid::DensityField;
use crate::spectral::SmoothedField;

/// A detected local maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub ix: usize,
    pub iy: usize,
    /// Physical coordinates of the pixel center.
    pub x: f64,
    pub y: f64,
    /// Normalized density at the peak, in (0, 1].
    pub value: f64,
}

/// Detected maxima plus the window configuration that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSet {
    pub peaks: Vec<Peak>,
    pub window_widths_px: [usize; 3],
    pub threshold: f64,
    pub sigma_tilde: f64,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    /// Smallest pairwise physical distance, or `None` for fewer than 2 peaks.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        if self.peaks.len() < 2 {
            return None;
        }
        let mut best = f64::INFINITY;
        for (i, a) in self.peaks.iter().enumerate() {
            for b in &self.peaks[i + 1..] {
                best = best.min(((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt());
            }
        }
        Some(best)
    }
}

/// Minimum window width below which two equal Gaussians keep distinct maxima:
/// `w_c = 2 sigma = 1 / (pi sigma_tilde)`.
pub fn critical_width(sigma_tilde: f64) -> Result<f64> {
    if sigma_tilde <= 0.0 || !sigma_tilde.is_finite() {
        return Err(Error::InvalidSigmaTilde(sigma_tilde));
    }
    Ok(1.0 / (std::f64::consts::PI * sigma_tilde))
}

/// Three distinct integer widths `(W, W-1, W-2)` with `W = floor(w_c / dx)`,
/// so all three physical spans stay at or below `w_c`.
pub fn choose_window_widths(w_c: f64, dx: f64) -> Result<[usize; 3]> {
    if dx <= 0.0 || !dx.is_finite() {
        return Err(Error::InvalidSpacing(dx));
    }
    let w = (w_c / dx).floor() as usize;
    if w < 5 {
        return Err(Error::BandwidthTooCoarse { width_px: w });
    }
    Ok([w, w - 1, w - 2])
}

/// Zeroes all values below `tau`; the rest pass through unchanged.
pub fn threshold_field(field: &SmoothedField, tau: f64) -> SmoothedField {
    debug_assert!((0.0..1.0).contains(&tau), "tau must lie in [0, 1)");
    let mut out = field.clone();
    for v in out.values_mut() {
        if *v < tau {
            *v = 0.0;
        }
    }
    out.threshold = Some(tau);
    out
}

/// Finds local maxima by tiling the grid with non-overlapping square
/// segments at each of the three widths and testing each segment's argmax.
///
/// A candidate is accepted when its value is positive, it does not lie on the
/// outer grid boundary, and it strictly exceeds all 8 pixel neighbors. The
/// accepted pixels of the three tilings are unioned and de-duplicated.
/// Argmax ties break to the smallest `(iy, ix)` in row-major order.
pub fn find_peaks(field: &SmoothedField, widths_px: [usize; 3]) -> PeakSet {
    let grid = field.grid;
    let (n_x, n_y) = (grid.n_x, grid.n_y);
    let mut accepted: Vec<(usize, usize)> = Vec::new();

    for &w in &widths_px {
        let w = w.max(1);
        for y0 in (0..n_y).step_by(w) {
            for x0 in (0..n_x).step_by(w) {
                let y1 = (y0 + w).min(n_y);
                let x1 = (x0 + w).min(n_x);
                // segment argmax, first occurrence in row-major order wins
                let mut best = (x0, y0);
                let mut best_value = f64::NEG_INFINITY;
                for iy in y0..y1 {
                    for ix in x0..x1 {
                        let v = field.value(ix, iy);
                        if v > best_value {
                            best_value = v;
                            best = (ix, iy);
                        }
                    }
                }
                let (ix, iy) = best;
                if best_value <= 0.0 {
                    continue;
                }
                if ix == 0 || iy == 0 || ix == n_x - 1 || iy == n_y - 1 {
                    continue;
                }
                if is_strict_8_max(field, ix, iy) {
                    accepted.push((ix, iy));
                }
            }
        }
    }

    accepted.sort_by_key(|&(ix, iy)| (iy, ix));
    accepted.dedup();

    let peaks = accepted
        .into_iter()
        .map(|(ix, iy)| {
            let (x, y) = grid.pixel_center(ix, iy);
            Peak {
                ix,
                iy,
                x,
                y,
                value: field.value(ix, iy),
            }
        })
        .collect();

    PeakSet {
        peaks,
        window_widths_px: widths_px,
        threshold: field.threshold.unwrap_or(0.0),
        sigma_tilde: field.sigma_tilde,
    }
}

fn is_strict_8_max(field: &SmoothedField, ix: usize, iy: usize) -> bool {
    let v = field.value(ix, iy);
    for dy in -1i64..=1 {
        for dx in -1i64..=1 {
            if dx == 0 && dy == 0 {
                continue;
            }
            let nx = ix as i64 + dx;
            let ny = iy as i64 + dy;
            if nx < 0 || ny < 0 || nx >= field.grid.n_x as i64 || ny >= field.grid.n_y as i64 {
                continue;
            }
            if field.value(nx as usize, ny as usize) >= v {
                return false;
            }
        }
    }
    true
}

/// End-to-end detection: bandwidth search, thresholding, window sizing from
/// the converged bandwidth, then the three-tiling peak scan.
pub fn detect(
    field: &DensityField,
    epsilon: f64,
    tau: f64,
    max_iter: usize,
) -> Result<(PeakSet, ConvergenceTrace)> {
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::InvalidThreshold(tau));
    }
    let (smoothed, trace) = select_bandwidth(field, epsilon, max_iter)?;
    let thresholded = threshold_field(&smoothed, tau);
    let w_c = critical_width(smoothed.sigma_tilde)?;
    let widths = choose_window_widths(w_c, field.grid.dx)?;
    Ok((find_peaks(&thresholded, widths), trace))
}
