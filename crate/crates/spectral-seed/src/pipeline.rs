//! End-to-end command implementations behind the CLI: generate, detect,
//! kmeans, oracle-check. The binary is a thin argument parser over these.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bandwidth::ConvergenceTrace;
use crate::datagen::{generate, ClusterSpec};
use crate::error::{Error, Result};
use crate::grid::{
    build_grid, build_grid_with_margin, estimate_spacing, rasterize, GridSpec, PointSet,
    DEFAULT_MARGIN_PX,
};
use crate::io;
use crate::peaks::{choose_window_widths, critical_width, find_peaks, threshold_field, PeakSet};
use crate::seeding::{kmeans, KMeansResult};
use crate::spectral::{smooth, smooth_direct_oracle, SmoothedField, ORACLE_MAX_OCCUPIED};

/// Worker-count cap honored by the process-wide thread pool.
pub const THREADS_ENV_VAR: &str = "SPECTRAL_SEED_THREADS";

/// Interior-band agreement bound for the oracle check.
pub const ORACLE_DEVIATION_LIMIT: f64 = 1e-3;

/// Tunable pipeline parameters; the defaults are the recommended values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub peak_threshold: f64,
    pub gap_fraction: f64,
    pub max_iter_bandwidth: usize,
    pub grid_cap: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            peak_threshold: 0.1,
            gap_fraction: 0.05,
            max_iter_bandwidth: 64,
            grid_cap: 1024,
            seed: 0,
        }
    }
}

/// Raster export format for `detect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterFormat {
    Csv,
    Pgm,
}

/// Builds the global thread pool, capped by `SPECTRAL_SEED_THREADS` if set.
/// Results are identical for any worker count.
pub fn init_thread_pool() {
    if let Ok(raw) = std::env::var(THREADS_ENV_VAR) {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerateReport {
    pub n_points: usize,
    pub n_clusters: usize,
    pub seed: u64,
    pub output: PathBuf,
}

/// Reads a cluster-spec JSON file, draws the sample and writes the CSV.
pub fn run_generate(spec_path: &Path, output: &Path, seed: u64) -> Result<GenerateReport> {
    let raw = fs::read_to_string(spec_path)?;
    let specs: Vec<ClusterSpec> = serde_json::from_str(&raw)?;
    let points = generate(&specs, seed)?;
    let file = fs::File::create(output)?;
    let mut writer = BufWriter::new(file);
    io::write_points_csv(&mut writer, &points)?;
    writer.flush()?;
    Ok(GenerateReport {
        n_points: points.len(),
        n_clusters: specs.len(),
        seed,
        output: output.to_path_buf(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeakJson {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// The peaks JSON document written by `detect`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectReport {
    pub k: usize,
    pub peaks: Vec<PeakJson>,
    pub sigma_tilde: f64,
    pub window_widths_px: [usize; 3],
    pub threshold: f64,
    pub converged_n: usize,
    pub grid: GridSpec,
    pub occupied_pixels: usize,
    pub collapsed_points: usize,
    pub spacing_estimate: f64,
    pub config: RunConfig,
}

/// Everything `detect` produces, for callers that want the field as well.
pub struct Detection {
    pub report: DetectReport,
    pub peaks: PeakSet,
    pub trace: ConvergenceTrace,
    pub field: SmoothedField,
}

/// Rebuild attempts when the converged bandwidth reveals the mesh as too
/// coarse for the sliding windows or the guard band as too narrow.
const MAX_GRID_REFINEMENTS: usize = 6;

/// Largest normalized density tolerated on the outer grid boundary, as a
/// fraction of the peak threshold. Anything higher means the wrap-around
/// seam carries real mass and the guard band must widen.
const BOUNDARY_LEAK_FRACTION: f64 = 0.5;

fn boundary_ring_max(field: &SmoothedField) -> f64 {
    let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
    let mut max = f64::NEG_INFINITY;
    for ix in 0..n_x {
        max = max.max(field.value(ix, 0)).max(field.value(ix, n_y - 1));
    }
    for iy in 0..n_y {
        max = max.max(field.value(0, iy)).max(field.value(n_x - 1, iy));
    }
    max
}

/// Runs the full detection pipeline on a point set already in memory.
///
/// The spacing estimate targets typical point gaps; for very small or sparse
/// inputs the resulting mesh can be too coarse for the 5-pixel minimum
/// window, and a fixed pixel margin can fall short of the converged kernel's
/// physical reach. Both conditions are checked after the bandwidth search and
/// repaired by rebuilding the mesh (spacing `w_c / 8`, guard band widened to
/// `3 sigma_spatial`) and rerunning, a few times at most. The bundled
/// cluster-style data never triggers a rebuild.
pub fn detect_points(points: &PointSet, config: &RunConfig, use_margin: bool) -> Result<Detection> {
    let spacing = estimate_spacing(points, config.gap_fraction)?;
    if !(0.0..1.0).contains(&config.peak_threshold) {
        return Err(Error::InvalidThreshold(config.peak_threshold));
    }

    let mut dx = spacing;
    let mut margin_px = if use_margin { DEFAULT_MARGIN_PX } else { 0 };
    let mut attempt = 0;
    let (grid, raster, smoothed, trace, widths) = loop {
        let grid = build_grid_with_margin(points, dx, config.grid_cap, margin_px)?;
        let raster = rasterize(points, &grid)?;
        let (smoothed, trace) = crate::bandwidth::select_bandwidth(
            &raster,
            config.epsilon,
            config.max_iter_bandwidth,
        )?;
        let w_c = critical_width(smoothed.sigma_tilde)?;

        if use_margin && attempt < MAX_GRID_REFINEMENTS {
            let leak = boundary_ring_max(&smoothed);
            if leak >= BOUNDARY_LEAK_FRACTION * config.peak_threshold {
                attempt += 1;
                let reach = (3.0 * smoothed.sigma_spatial / grid.dx).ceil() as usize;
                margin_px = margin_px.max(reach).max(DEFAULT_MARGIN_PX);
                continue;
            }
        }

        match choose_window_widths(w_c, grid.dx) {
            Ok(widths) => break (grid, raster, smoothed, trace, widths),
            Err(Error::BandwidthTooCoarse { .. }) if attempt < MAX_GRID_REFINEMENTS => {
                attempt += 1;
                dx = w_c / 8.0;
            }
            Err(e) => return Err(e),
        }
    };

    let thresholded = threshold_field(&smoothed, config.peak_threshold);
    let peaks = find_peaks(&thresholded, widths);

    let report = DetectReport {
        k: peaks.len(),
        peaks: peaks
            .peaks
            .iter()
            .map(|p| PeakJson {
                x: p.x,
                y: p.y,
                value: p.value,
            })
            .collect(),
        sigma_tilde: peaks.sigma_tilde,
        window_widths_px: peaks.window_widths_px,
        threshold: peaks.threshold,
        converged_n: trace.converged_n,
        grid,
        occupied_pixels: raster.occupied_count(),
        collapsed_points: points.len() - raster.occupied_count(),
        spacing_estimate: spacing,
        config: *config,
    };
    Ok(Detection {
        report,
        peaks,
        trace,
        field: thresholded,
    })
}

/// CSV in, peaks JSON + trace JSON (+ optional raster) out.
pub fn run_detect(
    input: &Path,
    output: &Path,
    trace_output: Option<&Path>,
    raster: Option<RasterFormat>,
    config: &RunConfig,
    use_margin: bool,
) -> Result<DetectReport> {
    let points = io::read_points_csv_path(input)?;
    let detection = detect_points(&points, config, use_margin)?;

    write_json(output, &detection.report)?;
    let trace_path = match trace_output {
        Some(p) => p.to_path_buf(),
        None => default_trace_path(output),
    };
    fs::write(&trace_path, detection.trace.entries_json()?)?;

    if let Some(format) = raster {
        let raster_path = match format {
            RasterFormat::Pgm => output.with_extension("raster.pgm"),
            RasterFormat::Csv => output.with_extension("raster.csv"),
        };
        let file = fs::File::create(&raster_path)?;
        let mut writer = BufWriter::new(file);
        match format {
            RasterFormat::Pgm => io::write_pgm(&mut writer, &detection.field)?,
            RasterFormat::Csv => io::write_raster_csv(&mut writer, &detection.field)?,
        }
        writer.flush()?;
    }
    Ok(detection.report)
}

/// Trace path derived from the peaks output path: `<stem>.trace.json`.
pub fn default_trace_path(output: &Path) -> PathBuf {
    output.with_extension("trace.json")
}

#[derive(Debug, Clone, Serialize)]
pub struct KMeansReport {
    pub k: usize,
    pub initial_centroids: Vec<(f64, f64)>,
    pub centroids: Vec<(f64, f64)>,
    pub inertia: f64,
    pub iterations: usize,
    pub max_iter: usize,
    pub tol: f64,
}

impl KMeansReport {
    fn from_result(result: &KMeansResult, max_iter: usize, tol: f64) -> Self {
        Self {
            k: result.k(),
            initial_centroids: result.initial_centroids.clone(),
            centroids: result.centroids.clone(),
            inertia: result.inertia,
            iterations: result.iterations,
            max_iter,
            tol,
        }
    }
}

#[derive(Debug, Deserialize)]
struct PeaksFile {
    peaks: Vec<PeakJson>,
}

/// Points CSV + peaks JSON in, K-Means result JSON (+ optional assignment
/// CSV) out.
pub fn run_kmeans(
    input: &Path,
    peaks_path: &Path,
    output: &Path,
    assignments_output: Option<&Path>,
    max_iter: usize,
    tol: f64,
) -> Result<KMeansReport> {
    let points = io::read_points_csv_path(input)?;
    let raw = fs::read_to_string(peaks_path)?;
    let peaks: PeaksFile = serde_json::from_str(&raw)?;
    if peaks.peaks.is_empty() {
        return Err(Error::NoClustersDetected);
    }
    let init: Vec<(f64, f64)> = peaks.peaks.iter().map(|p| (p.x, p.y)).collect();
    let result = kmeans(&points, &init, max_iter, tol)?;
    let report = KMeansReport::from_result(&result, max_iter, tol);
    write_json(output, &report)?;

    if let Some(path) = assignments_output {
        let file = fs::File::create(path)?;
        let mut writer = BufWriter::new(file);
        io::write_assignments_csv(&mut writer, &points, &result.assignments)?;
        writer.flush()?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub max_interior_deviation: f64,
    pub limit: f64,
    pub band_px: usize,
    pub grid: GridSpec,
    pub occupied_pixels: usize,
    pub pass: bool,
}

/// Compares the FFT smoothing path against the direct Gaussian-sum path on
/// interior pixels (a band of `3 sigma_spatial` at the grid edge is excluded,
/// where circular and linear convolution legitimately differ).
pub fn run_oracle_check(
    input: &Path,
    sigma_tilde: f64,
    gap_fraction: f64,
    grid_cap: usize,
    use_margin: bool,
) -> Result<OracleReport> {
    let points = io::read_points_csv_path(input)?;
    let spacing = estimate_spacing(&points, gap_fraction)?;
    let grid = if use_margin {
        build_grid(&points, spacing, grid_cap)?
    } else {
        build_grid_with_margin(&points, spacing, grid_cap, 0)?
    };
    let raster = rasterize(&points, &grid)?;
    if raster.occupied_count() > ORACLE_MAX_OCCUPIED {
        return Err(Error::OracleTooLarge {
            got: raster.occupied_count(),
            max: ORACLE_MAX_OCCUPIED,
        });
    }
    let fft_path = smooth(&raster, sigma_tilde)?;
    let direct_path = smooth_direct_oracle(&raster, sigma_tilde)?;

    let report = oracle_deviation(&fft_path, &direct_path)?;
    Ok(OracleReport {
        occupied_pixels: raster.occupied_count(),
        ..report
    })
}

/// Max per-pixel deviation between two smoothed fields on the shared
/// interior band. `occupied_pixels` is left at 0 for the caller to fill.
pub fn oracle_deviation(fft_path: &SmoothedField, direct_path: &SmoothedField) -> Result<OracleReport> {
    let grid = fft_path.grid;
    let band = (3.0 * fft_path.sigma_spatial / grid.dx).ceil() as usize;
    if 2 * band + 1 >= grid.n_x.min(grid.n_y) {
        return Err(Error::BandwidthTooCoarse { width_px: band });
    }
    let mut max_deviation: f64 = 0.0;
    for iy in band..grid.n_y - band {
        for ix in band..grid.n_x - band {
            let d = (fft_path.value(ix, iy) - direct_path.value(ix, iy)).abs();
            max_deviation = max_deviation.max(d);
        }
    }
    Ok(OracleReport {
        max_interior_deviation: max_deviation,
        limit: ORACLE_DEVIATION_LIMIT,
        band_px: band,
        grid,
        occupied_pixels: 0,
        pass: max_deviation <= ORACLE_DEVIATION_LIMIT,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, value)?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}
