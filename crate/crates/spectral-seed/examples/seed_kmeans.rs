//! Use detected peaks to seed K-Means and compare against random restarts.
//!
//! The peak set fixes both `k` and the starting centroids, so a single
//! Lloyd run suffices; random initialization needs restarts and still only
//! matches the seeded result at best.
//!
//! ```bash
//! cargo run --release --example seed_kmeans
//! ```

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_seed::datagen::{generate, six_cluster_demo};
use spectral_seed::pipeline::{detect_points, RunConfig};
use spectral_seed::seeding::{kmeans, seed_and_cluster};

fn main() -> spectral_seed::Result<()> {
    let points = generate(&six_cluster_demo(), 42)?;
    let detection = detect_points(&points, &RunConfig::default(), true)?;
    println!("detected k = {}", detection.peaks.len());

    let seeded = seed_and_cluster(&points, &detection.peaks, 300, 1e-6)?;
    println!(
        "peak-seeded:   inertia {:.6} after {} iterations",
        seeded.inertia, seeded.iterations
    );

    let ((min_x, min_y), (max_x, max_y)) = points.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let k = detection.peaks.len();

    let mut best = f64::INFINITY;
    for trial in 0..10 {
        let init: Vec<(f64, f64)> = (0..k)
            .map(|_| {
                (
                    min_x + (max_x - min_x) * uniform(),
                    min_y + (max_y - min_y) * uniform(),
                )
            })
            .collect();
        let run = kmeans(&points, &init, 300, 1e-6)?;
        println!(
            "random init {trial}: inertia {:.6} after {} iterations",
            run.inertia, run.iterations
        );
        best = best.min(run.inertia);
    }

    println!(
        "\nbest of 10 random inits: {:.6}; seeded run is {}",
        best,
        if seeded.inertia <= best * (1.0 + 1e-9) {
            "at least as good"
        } else {
            "worse (unexpected on this data)"
        }
    );

    println!("\nfinal centroids (seeded run):");
    for (i, c) in seeded.centroids.iter().enumerate() {
        let size = seeded.assignments.iter().filter(|&&a| a == i).count();
        println!("  #{i}: ({:.4}, {:.4})  {} points", c.0, c.1, size);
    }
    Ok(())
}
