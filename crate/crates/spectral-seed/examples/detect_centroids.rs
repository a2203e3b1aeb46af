//! Estimate the number and positions of cluster centroids from raw points.
//!
//! ```bash
//! cargo run --release --example detect_centroids
//! ```

use spectral_seed::datagen::{generate, six_cluster_demo};
use spectral_seed::pipeline::{detect_points, RunConfig};

fn main() -> spectral_seed::Result<()> {
    let specs = six_cluster_demo();
    let points = generate(&specs, 42)?;
    let config = RunConfig::default();

    let started = std::time::Instant::now();
    let detection = detect_points(&points, &config, true)?;
    let report = &detection.report;

    println!(
        "mesh: {}x{} pixels, dx = {:.4} (estimated from {:.0}% of the gaps)",
        report.grid.n_x,
        report.grid.n_y,
        report.grid.dx,
        config.gap_fraction * 100.0
    );
    println!(
        "raster: {} occupied pixels, {} points collapsed onto shared pixels",
        report.occupied_pixels, report.collapsed_points
    );
    println!(
        "bandwidth: converged at n = {} (sigma_tilde = {:.3}), windows {:?} px",
        report.converged_n, report.sigma_tilde, report.window_widths_px
    );
    println!("detected k = {} centroids in {:.1?}:", report.k, started.elapsed());
    println!("  {:>10} {:>10} {:>8}", "x", "y", "value");
    for p in &report.peaks {
        println!("  {:>10.4} {:>10.4} {:>8.3}", p.x, p.y, p.value);
    }

    println!("\ntrue cluster centers for comparison:");
    for s in &specs {
        println!("  ({:.2}, {:.2})", s.mu_x, s.mu_y);
    }
    Ok(())
}
