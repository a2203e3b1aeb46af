//! Watch the bandwidth search iterate `sigma_tilde = n / L` until the
//! correlation between the raw raster and the smoothed density stabilizes.
//!
//! ```bash
//! cargo run --release --example bandwidth_trace
//! ```

use spectral_seed::bandwidth::select_bandwidth;
use spectral_seed::datagen::{generate, six_cluster_demo};
use spectral_seed::grid::{build_grid, estimate_spacing, rasterize};

fn main() -> spectral_seed::Result<()> {
    let points = generate(&six_cluster_demo(), 42)?;
    let spacing = estimate_spacing(&points, 0.05)?;
    let grid = build_grid(&points, spacing, 1024)?;
    let raster = rasterize(&points, &grid)?;

    let epsilon = 0.01;
    let (selected, trace) = select_bandwidth(&raster, epsilon, 64)?;

    println!("epsilon = {epsilon}, L = {:.4}", grid.extent_max());
    println!("{:>3} {:>12} {:>12} {:>12}", "n", "sigma_tilde", "correlation", "delta");
    for e in &trace.entries {
        match e.delta {
            Some(d) => println!(
                "{:>3} {:>12.4} {:>12.6} {:>12.6}",
                e.n, e.sigma_tilde, e.correlation, d
            ),
            None => println!("{:>3} {:>12.4} {:>12.6} {:>12}", e.n, e.sigma_tilde, e.correlation, "-"),
        }
    }
    println!(
        "stopped at n = {} (spatial kernel sigma = {:.4} data units)",
        trace.converged_n, selected.sigma_spatial
    );
    println!("trace as JSON:\n{}", trace.entries_json()?);
    Ok(())
}
