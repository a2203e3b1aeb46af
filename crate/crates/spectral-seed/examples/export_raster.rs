//! Export the smoothed density as an 8-bit PGM image and a CSV raster.
//!
//! The PGM can be opened by most image viewers; row 0 is the maximum-y
//! grid line. The CSV raster has one row per y-line, ascending.
//!
//! ```bash
//! cargo run --release --example export_raster
//! ```

use spectral_seed::datagen::{generate, six_cluster_demo};
use spectral_seed::io::{write_pgm, write_raster_csv};
use spectral_seed::pipeline::{detect_points, RunConfig};

fn main() -> spectral_seed::Result<()> {
    let points = generate(&six_cluster_demo(), 42)?;
    let detection = detect_points(&points, &RunConfig::default(), true)?;

    // the exported field is the thresholded one the peak scan saw
    let dir = std::env::temp_dir();
    let pgm_path = dir.join("spectral_seed_density.pgm");
    let csv_path = dir.join("spectral_seed_density.csv");

    write_pgm(
        std::io::BufWriter::new(std::fs::File::create(&pgm_path)?),
        &detection.field,
    )?;
    write_raster_csv(
        std::io::BufWriter::new(std::fs::File::create(&csv_path)?),
        &detection.field,
    )?;

    println!(
        "smoothed density: {}x{} pixels, sigma_spatial = {:.4}",
        detection.field.grid.n_x, detection.field.grid.n_y, detection.field.sigma_spatial
    );
    println!("wrote {}", pgm_path.display());
    println!("wrote {}", csv_path.display());
    println!("{} peaks survive the {:.2} threshold", detection.peaks.len(), detection.report.threshold);
    Ok(())
}
