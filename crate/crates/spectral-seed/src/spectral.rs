//! Density smoothing in the frequency domain: forward DFT, Gaussian filter,
//! inverse DFT, plus the direct Gaussian-sum reference path.

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{DensityField, GridSpec};

/// Relative tolerance for the imaginary residue of the inverse transform.
pub const IMAG_RESIDUE_TOL: f64 = 1e-8;

/// Occupancy limit for the direct-sum oracle (it is O(occupied * pixels)).
pub const ORACLE_MAX_OCCUPIED: usize = 10_000;

/// Complex 2-D spectrum of a density raster. Row-major, index `ky * n_x + kx`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub grid: GridSpec,
    values: Vec<Complex<f64>>,
}

impl Spectrum {
    pub fn values(&self) -> &[Complex<f64>] {
        &self.values
    }

    pub fn value(&self, kx: usize, ky: usize) -> Complex<f64> {
        self.values[ky * self.grid.n_x + kx]
    }

    /// Physical frequency of bin `k` along an axis of `n` pixels spanning `l`.
    ///
    /// Bins below `n/2` map to `k / l`, the rest to `(k - n) / l`.
    pub fn frequency(k: usize, n: usize, l: f64) -> f64 {
        if 2 * k < n {
            k as f64 / l
        } else {
            (k as f64 - n as f64) / l
        }
    }
}

/// Real smoothed density on the same mesh as its source raster.
#[derive(Debug, Clone)]
pub struct SmoothedField {
    pub grid: GridSpec,
    values: Vec<f64>,
    /// Frequency-domain standard deviation, units 1/data-units.
    pub sigma_tilde: f64,
    /// Spatial kernel standard deviation, `1 / (2 pi sigma_tilde)`.
    pub sigma_spatial: f64,
    pub normalized: bool,
    /// Floor applied by `threshold_field`, if any.
    pub threshold: Option<f64>,
}

impl SmoothedField {
    /// Row-major values, index `iy * n_x + ix`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.n_x + ix]
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Shift-normalizes in place: minimum to zero, then divide by the maximum.
    /// A constant field becomes all zeros.
    pub fn normalize(&mut self) {
        let min = self.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = max - min;
        if span > 0.0 {
            for v in &mut self.values {
                *v = (*v - min) / span;
            }
        } else {
            self.values.fill(0.0);
        }
        self.normalized = true;
    }
}

fn run_fft_2d(values: &mut [Complex<f64>], n_x: usize, n_y: usize, direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft(n_x, direction);
    values.par_chunks_exact_mut(n_x).for_each_init(
        || vec![Complex::default(); row_fft.get_inplace_scratch_len()],
        |scratch, row| row_fft.process_with_scratch(row, scratch),
    );

    let mut transposed = transpose(values, n_x, n_y);
    let col_fft = planner.plan_fft(n_y, direction);
    transposed.par_chunks_exact_mut(n_y).for_each_init(
        || vec![Complex::default(); col_fft.get_inplace_scratch_len()],
        |scratch, col| col_fft.process_with_scratch(col, scratch),
    );
    let back = transpose(&transposed, n_y, n_x);
    values.copy_from_slice(&back);
}

fn transpose(values: &[Complex<f64>], n_x: usize, n_y: usize) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::default(); values.len()];
    for iy in 0..n_y {
        for ix in 0..n_x {
            out[ix * n_y + iy] = values[iy * n_x + ix];
        }
    }
    out
}

/// Discrete forward transform of the density raster.
///
/// Uses the `e^{-2 pi i (x f_x + y f_y)}` sign convention on pixel indices;
/// exactly invertible by [`inverse_dft`] up to floating round-off.
pub fn forward_dft(field: &DensityField) -> Spectrum {
    let grid = field.grid;
    let mut values: Vec<Complex<f64>> = field
        .values()
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    run_fft_2d(&mut values, grid.n_x, grid.n_y, FftDirection::Forward);
    Spectrum { grid, values }
}

/// Multiplies each frequency bin by the Gaussian gain
/// `(1 / (2 pi s^2)) * exp(-(f_x^2 + f_y^2) / (2 s^2))` with `s = sigma_tilde`.
pub fn apply_gaussian_filter(spectrum: &Spectrum, sigma_tilde: f64) -> Result<Spectrum> {
    if sigma_tilde <= 0.0 || !sigma_tilde.is_finite() {
        return Err(Error::InvalidSigmaTilde(sigma_tilde));
    }
    let grid = spectrum.grid;
    let (l_x, l_y) = (grid.extent_x(), grid.extent_y());
    let prefactor = 1.0 / (2.0 * std::f64::consts::PI * sigma_tilde * sigma_tilde);
    let inv_two_var = 1.0 / (2.0 * sigma_tilde * sigma_tilde);

    let mut values = spectrum.values.clone();
    for ky in 0..grid.n_y {
        let fy = Spectrum::frequency(ky, grid.n_y, l_y);
        for kx in 0..grid.n_x {
            let fx = Spectrum::frequency(kx, grid.n_x, l_x);
            let gain = prefactor * (-(fx * fx + fy * fy) * inv_two_var).exp();
            values[ky * grid.n_x + kx] *= gain;
        }
    }
    Ok(Spectrum { grid, values })
}

/// Inverse transform back to a real field.
///
/// The imaginary residue is asserted below `IMAG_RESIDUE_TOL` relative to the
/// largest modulus before it is discarded; a violation signals a filter or
/// indexing bug upstream.
pub fn inverse_dft(spectrum: &Spectrum) -> Result<Vec<f64>> {
    let grid = spectrum.grid;
    let mut values = spectrum.values.clone();
    run_fft_2d(&mut values, grid.n_x, grid.n_y, FftDirection::Inverse);
    let scale = 1.0 / (grid.n_x * grid.n_y) as f64;
    for v in &mut values {
        *v *= scale;
    }

    let max_mod = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let max_imag = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let tolerance = IMAG_RESIDUE_TOL * max_mod;
    if max_mod > 0.0 && max_imag > tolerance {
        return Err(Error::NonRealInverse {
            residue: max_imag,
            tolerance,
        });
    }
    Ok(values.into_iter().map(|v| v.re).collect())
}

fn smoothed(grid: GridSpec, values: Vec<f64>, sigma_tilde: f64) -> SmoothedField {
    SmoothedField {
        grid,
        values,
        sigma_tilde,
        sigma_spatial: 1.0 / (2.0 * std::f64::consts::PI * sigma_tilde),
        normalized: false,
        threshold: None,
    }
}

/// Forward transform, Gaussian filter, inverse transform — without the final
/// shift-normalization. The bandwidth search correlates against this raw form.
pub fn smooth_unnormalized(field: &DensityField, sigma_tilde: f64) -> Result<SmoothedField> {
    let spectrum = forward_dft(field);
    let filtered = apply_gaussian_filter(&spectrum, sigma_tilde)?;
    let values = inverse_dft(&filtered)?;
    Ok(smoothed(field.grid, values, sigma_tilde))
}

/// Full smoothing pass: FFT, Gaussian filter, inverse FFT, shift-normalize
/// to [0, 1].
pub fn smooth(field: &DensityField, sigma_tilde: f64) -> Result<SmoothedField> {
    let mut out = smooth_unnormalized(field, sigma_tilde)?;
    out.normalize();
    Ok(out)
}

/// Direct Gaussian-sum reference: evaluates
/// `sum_i exp(-2 pi^2 s^2 [(x - x_i)^2 + (y - y_i)^2])` at every pixel center
/// and applies the same shift-normalization as [`smooth`].
///
/// This is the linear-convolution counterpart of the circular FFT path and is
/// intended for test-scale inputs (`occupied_count <= ORACLE_MAX_OCCUPIED`).
pub fn smooth_direct_oracle(field: &DensityField, sigma_tilde: f64) -> Result<SmoothedField> {
    if sigma_tilde <= 0.0 || !sigma_tilde.is_finite() {
        return Err(Error::InvalidSigmaTilde(sigma_tilde));
    }
    if field.occupied_count() > ORACLE_MAX_OCCUPIED {
        return Err(Error::OracleTooLarge {
            got: field.occupied_count(),
            max: ORACLE_MAX_OCCUPIED,
        });
    }
    let grid = field.grid;
    let sources = field.occupied_centers();
    let coef = 2.0 * std::f64::consts::PI.powi(2) * sigma_tilde * sigma_tilde;

    let values: Vec<f64> = (0..grid.n_x * grid.n_y)
        .into_par_iter()
        .map(|idx| {
            let (ix, iy) = (idx % grid.n_x, idx / grid.n_x);
            let (x, y) = grid.pixel_center(ix, iy);
            sources
                .iter()
                .map(|&(sx, sy)| {
                    let dx = x - sx;
                    let dy = y - sy;
                    (-coef * (dx * dx + dy * dy)).exp()
                })
                .sum()
        })
        .collect();

    let mut out = smoothed(grid, values, sigma_tilde);
    if field.occupied_count() == 0 {
        // constant-field guard: already identically zero, skip normalization
        out.normalized = true;
        return Ok(out);
    }
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{rasterize, PointSet};
    use approx::assert_abs_diff_eq;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field_from_pixels(n: usize, pixels: &[(usize, usize)]) -> DensityField {
        let grid = GridSpec::new(1.0 / n as f64, 0.0, 0.0, n, n).unwrap();
        let pts: Vec<(f64, f64)> = pixels
            .iter()
            .map(|&(ix, iy)| grid.pixel_center(ix, iy))
            .collect();
        rasterize(&PointSet::from_xy(&pts).unwrap(), &grid).unwrap()
    }

    fn random_field(n: usize, occupied: usize, seed: u64) -> DensityField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pixels = std::collections::HashSet::new();
        while pixels.len() < occupied {
            let ix = (rng.next_u64() % n as u64) as usize;
            let iy = (rng.next_u64() % n as u64) as usize;
            pixels.insert((ix, iy));
        }
        let pixels: Vec<(usize, usize)> = {
            let mut v: Vec<_> = pixels.into_iter().collect();
            v.sort();
            v
        };
        field_from_pixels(n, &pixels)
    }

    /// Quadratic-time reference DFT with the same sign convention.
    fn naive_dft(field: &DensityField) -> Vec<Complex<f64>> {
        let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
        let mut out = vec![Complex::new(0.0, 0.0); n_x * n_y];
        for ky in 0..n_y {
            for kx in 0..n_x {
                let mut acc = Complex::new(0.0, 0.0);
                for iy in 0..n_y {
                    for ix in 0..n_x {
                        let phase = -2.0
                            * std::f64::consts::PI
                            * (kx as f64 * ix as f64 / n_x as f64
                                + ky as f64 * iy as f64 / n_y as f64);
                        acc += field.value(ix, iy) * Complex::new(phase.cos(), phase.sin());
                    }
                }
                out[ky * n_x + kx] = acc;
            }
        }
        out
    }

    fn count_interior_strict_maxima(field: &SmoothedField) -> usize {
        let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
        let mut count = 0;
        for iy in 1..n_y - 1 {
            for ix in 1..n_x - 1 {
                let v = field.value(ix, iy);
                let mut strict = true;
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let nb =
                            field.value((ix as i64 + dx) as usize, (iy as i64 + dy) as usize);
                        if nb >= v {
                            strict = false;
                        }
                    }
                }
                if strict {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn zero_field_zero_spectrum() {
        let grid = GridSpec::new(0.1, 0.0, 0.0, 16, 16).unwrap();
        let field = DensityField::empty(grid);
        let spectrum = forward_dft(&field);
        assert!(spectrum.values().iter().all(|v| v.norm() == 0.0));
        // and the all-zero spectrum inverts to an all-zero field
        let back = inverse_dft(&spectrum).unwrap();
        assert!(back.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn oracle_empty_field_identically_zero() {
        let grid = GridSpec::new(0.1, 0.0, 0.0, 16, 16).unwrap();
        let field = DensityField::empty(grid);
        let out = smooth_direct_oracle(&field, 2.0).unwrap();
        assert!(out.normalized);
        assert!(out.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_origin_pixel_unit_modulus() {
        let grid = GridSpec::new(0.125, 0.0, 0.0, 8, 8).unwrap();
        let pts = PointSet::from_xy(&[(0.0, 0.0)]).unwrap();
        let field = rasterize(&pts, &grid).unwrap();
        assert_eq!(field.value(0, 0), 1.0);
        let spectrum = forward_dft(&field);
        for v in spectrum.values() {
            assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fft_matches_naive_dft() {
        let field = random_field(16, 40, 31);
        let spectrum = forward_dft(&field);
        let reference = naive_dft(&field);
        for (a, b) in spectrum.values().iter().zip(reference.iter()) {
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn spectrum_conjugate_symmetry_from_real_field() {
        let field = random_field(12, 20, 8);
        let spectrum = forward_dft(&field);
        let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
        for ky in 0..n_y {
            for kx in 0..n_x {
                let mirror = spectrum.value((n_x - kx) % n_x, (n_y - ky) % n_y);
                let here = spectrum.value(kx, ky);
                assert!((here - mirror.conj()).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn roundtrip_identity() {
        for seed in [1u64, 2, 3] {
            let field = random_field(16, 30, seed);
            let spectrum = forward_dft(&field);
            let back = inverse_dft(&spectrum).unwrap();
            for (a, b) in back.iter().zip(field.values().iter()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn filter_zero_frequency_gain() {
        let field = random_field(16, 10, 4);
        let spectrum = forward_dft(&field);
        let st = 0.7;
        let filtered = apply_gaussian_filter(&spectrum, st).unwrap();
        let expected = spectrum.value(0, 0) / (2.0 * std::f64::consts::PI * st * st);
        assert!((filtered.value(0, 0) - expected).norm() < 1e-12);
    }

    #[test]
    fn filter_matches_per_bin_oracle() {
        let field = random_field(16, 25, 12);
        let spectrum = forward_dft(&field);
        let st = 1.0;
        let filtered = apply_gaussian_filter(&spectrum, st).unwrap();
        let grid = spectrum.grid;
        let (l_x, l_y) = (grid.extent_x(), grid.extent_y());
        // independent per-bin recomputation
        let freq = |k: usize, n: usize, l: f64| -> f64 {
            if 2 * k < n {
                k as f64 / l
            } else {
                (k as f64 - n as f64) / l
            }
        };
        for ky in 0..grid.n_y {
            for kx in 0..grid.n_x {
                let (fx, fy) = (freq(kx, grid.n_x, l_x), freq(ky, grid.n_y, l_y));
                let gain = (1.0 / (2.0 * std::f64::consts::PI * st * st))
                    * (-(fx * fx + fy * fy) / (2.0 * st * st)).exp();
                let expected = spectrum.value(kx, ky) * gain;
                assert!((filtered.value(kx, ky) - expected).norm() < 1e-12);
            }
        }
        // e^{-1} attenuation where f^2 = 2 sigma^2, relative to the DC gain
        let f2 = 2.0 * st * st;
        let gain_dc = 1.0 / (2.0 * std::f64::consts::PI * st * st);
        let gain_at = gain_dc * (-f2 / (2.0 * st * st)).exp();
        assert_abs_diff_eq!(gain_at / gain_dc, (-1.0f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn filter_rejects_nonpositive_sigma() {
        let field = random_field(8, 4, 1);
        let spectrum = forward_dft(&field);
        assert!(matches!(
            apply_gaussian_filter(&spectrum, 0.0),
            Err(Error::InvalidSigmaTilde(_))
        ));
        assert!(matches!(
            apply_gaussian_filter(&spectrum, -2.0),
            Err(Error::InvalidSigmaTilde(_))
        ));
    }

    #[test]
    fn filtered_point_matches_analytic_gaussian() {
        let n = 16;
        let field = field_from_pixels(n, &[(8, 8)]);
        let st = 2.0;
        let out = smooth(&field, st).unwrap();

        let (cx, cy) = field.grid.pixel_center(8, 8);
        let coef = 2.0 * std::f64::consts::PI.powi(2) * st * st;
        let mut analytic = Vec::with_capacity(n * n);
        let mut numeric = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let (x, y) = field.grid.pixel_center(ix, iy);
                analytic.push((-coef * ((x - cx).powi(2) + (y - cy).powi(2))).exp());
                numeric.push(out.value(ix, iy));
            }
        }
        let corr = crate::bandwidth::pearson_correlation(&numeric, &analytic).unwrap();
        assert!(corr > 0.9999, "correlation {corr}");
    }

    #[test]
    fn smooth_single_pixel_unique_max() {
        let n = 32;
        let field = field_from_pixels(n, &[(16, 16)]);
        let out = smooth(&field, 1.5).unwrap();
        assert!(out.normalized);
        assert_abs_diff_eq!(out.value(16, 16), 1.0, epsilon = 1e-12);
        assert_eq!(count_interior_strict_maxima(&out), 1);
        // radially decreasing along the axis
        for ix in 17..n - 1 {
            assert!(out.value(ix, 16) < out.value(ix - 1, 16));
        }
    }

    #[test]
    fn close_pair_merges_to_single_max() {
        let n = 48;
        let field = field_from_pixels(n, &[(22, 24), (26, 24)]);
        let st = 2.0; // sigma_spatial ~ 0.08 = 3.8 px, separation 4 px < 2 sigma
        let out = smooth(&field, st).unwrap();
        assert!(4.0 / n as f64 <= 2.0 * out.sigma_spatial);
        assert_eq!(count_interior_strict_maxima(&out), 1);
    }

    #[test]
    fn oracle_matches_fft_on_interior() {
        for seed in 0..3u64 {
            let n = 64;
            // keep sources central so linear and circular convolutions agree
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pixels = std::collections::HashSet::new();
            while pixels.len() < 30 {
                let ix = 16 + (rng.next_u64() % 32) as usize;
                let iy = 16 + (rng.next_u64() % 32) as usize;
                pixels.insert((ix, iy));
            }
            let mut pixels: Vec<_> = pixels.into_iter().collect();
            pixels.sort();
            let field = field_from_pixels(n, &pixels);
            let st = 4.0;
            let fft = smooth(&field, st).unwrap();
            let direct = smooth_direct_oracle(&field, st).unwrap();

            let band = (3.0 * fft.sigma_spatial / field.grid.dx).ceil() as usize;
            let mut max_dev: f64 = 0.0;
            for iy in band..n - band {
                for ix in band..n - band {
                    max_dev = max_dev.max((fft.value(ix, iy) - direct.value(ix, iy)).abs());
                }
            }
            assert!(max_dev <= 1e-3, "seed {seed}: interior deviation {max_dev}");
        }
    }

    #[test]
    fn oracle_single_point_close_everywhere_interior() {
        let n = 40;
        let field = field_from_pixels(n, &[(20, 20)]);
        let st = 2.0;
        let fft = smooth(&field, st).unwrap();
        let direct = smooth_direct_oracle(&field, st).unwrap();
        let band = (3.0 * fft.sigma_spatial / field.grid.dx).ceil() as usize;
        for iy in band..n - band {
            for ix in band..n - band {
                assert!((fft.value(ix, iy) - direct.value(ix, iy)).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn oracle_rejects_oversized_field() {
        let field = random_field(128, 11_000, 2);
        assert!(matches!(
            smooth_direct_oracle(&field, 2.0),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn dc_mass_preserved_before_normalization() {
        let field = random_field(32, 60, 9);
        for st in [1.0, 2.5, 6.0] {
            let raw = smooth_unnormalized(&field, st).unwrap();
            let total: f64 = raw.values().iter().sum();
            let expected =
                field.occupied_count() as f64 / (2.0 * std::f64::consts::PI * st * st);
            assert!(
                (total - expected).abs() <= 1e-6 * expected.abs(),
                "sum {total} vs {expected}"
            );
        }
    }

    #[test]
    fn normalization_idempotent() {
        let field = random_field(24, 30, 14);
        let mut once = smooth(&field, 2.0).unwrap();
        let reference = once.values().to_vec();
        once.normalize();
        assert_eq!(once.values(), &reference[..]);
        let min = reference.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = reference.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(min, 0.0);
        assert_eq!(max, 1.0);
    }

    #[test]
    fn prefactor_has_no_effect_after_normalization() {
        let field = random_field(24, 30, 21);
        let st = 2.0;
        let with_prefactor = smooth(&field, st).unwrap();

        // same pipeline with the bare exponential gain
        let spectrum = forward_dft(&field);
        let grid = spectrum.grid;
        let (l_x, l_y) = (grid.extent_x(), grid.extent_y());
        let mut vals = spectrum.values().to_vec();
        for ky in 0..grid.n_y {
            let fy = Spectrum::frequency(ky, grid.n_y, l_y);
            for kx in 0..grid.n_x {
                let fx = Spectrum::frequency(kx, grid.n_x, l_x);
                vals[ky * grid.n_x + kx] *=
                    (-(fx * fx + fy * fy) / (2.0 * st * st)).exp();
            }
        }
        let bare = Spectrum { grid, values: vals };
        let raw = inverse_dft(&bare).unwrap();
        let mut no_prefactor = SmoothedField {
            grid,
            values: raw,
            sigma_tilde: st,
            sigma_spatial: 1.0 / (2.0 * std::f64::consts::PI * st),
            normalized: false,
            threshold: None,
        };
        no_prefactor.normalize();

        for (a, b) in with_prefactor
            .values()
            .iter()
            .zip(no_prefactor.values().iter())
        {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn monotone_peak_count_in_sigma() {
        // coarser filters merge peaks: strict maxima count is non-decreasing
        // in sigma_tilde on cluster-style fields
        let n = 64;
        let field = field_from_pixels(
            n,
            &[
                (12, 12),
                (13, 14),
                (40, 16),
                (41, 14),
                (24, 44),
                (25, 46),
                (48, 48),
            ],
        );
        let l = field.grid.extent_max();
        let mut previous = 0;
        for k in 1..=6 {
            let st = k as f64 / l;
            let out = smooth(&field, st).unwrap();
            let count = count_interior_strict_maxima(&out);
            assert!(
                count + 1 > previous,
                "peak count dropped from {previous} to {count} at n={k}"
            );
            previous = count;
        }
    }

    #[test]
    fn sigma_relation_exact() {
        let field = random_field(16, 10, 3);
        let out = smooth(&field, 3.5).unwrap();
        assert_eq!(
            out.sigma_spatial * out.sigma_tilde * 2.0 * std::f64::consts::PI,
            1.0
        );
    }
}
