//! Estimate the number and positions of cluster centroids in 2-D point data,
//! then seed K-Means with them.
//!
//! The pipeline rasterizes scattered points onto an equidistant mesh as a 0/1
//! density, smooths that density with a Gaussian low-pass filter applied in
//! the frequency domain (FFT, filter, inverse FFT), selects the filter
//! bandwidth by a correlation-convergence rule, and reads cluster centroids
//! off the local maxima of the smoothed density. Detected peaks both count
//! the clusters and initialize Lloyd's K-Means, removing the usual guesswork
//! around `k` and the starting centroids.
//!
//! The `examples/` directory walks through each capability; the
//! `spectral-seed` binary wires the same steps into `generate`, `detect`,
//! `kmeans` and `oracle-check` subcommands.

pub mod bandwidth;
pub mod datagen;
pub mod error;
pub mod grid;
pub mod io;
pub mod peaks;
pub mod pipeline;
pub mod seeding;
pub mod spectral;

pub use bandwidth::{pearson_correlation, select_bandwidth, ConvergenceTrace, TraceEntry};
pub use datagen::{generate, six_cluster_demo, ClusterSpec, COORD_RESOLUTION};
pub use error::{Error, Result};
pub use grid::{
    build_grid, build_grid_with_margin, estimate_spacing, rasterize, DensityField, GridSpec,
    Point, PointSet,
};
pub use peaks::{
    choose_window_widths, critical_width, detect, find_peaks, threshold_field, Peak, PeakSet,
};
pub use pipeline::{detect_points, Detection, RasterFormat, RunConfig};
pub use seeding::{kmeans, seed_and_cluster, KMeansResult};
pub use spectral::{
    apply_gaussian_filter, forward_dft, inverse_dft, smooth, smooth_direct_oracle,
    smooth_unnormalized, SmoothedField, Spectrum,
};
