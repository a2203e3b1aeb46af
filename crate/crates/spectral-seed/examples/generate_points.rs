//! Draw a synthetic six-cluster sample and write it as a points CSV.
//!
//! ```bash
//! cargo run --example generate_points
//! ```

use spectral_seed::datagen::{generate, six_cluster_demo};
use spectral_seed::io::write_points_csv;

fn main() -> spectral_seed::Result<()> {
    let specs = six_cluster_demo();
    let seed = 42;
    let points = generate(&specs, seed)?;

    println!("cluster configuration:");
    for (i, s) in specs.iter().enumerate() {
        println!(
            "  #{i}: mu=({:.2}, {:.2})  sigma=({:.3}, {:.3})  count={}",
            s.mu_x, s.mu_y, s.sigma_x, s.sigma_y, s.count
        );
    }
    println!("drew {} points with seed {seed}", points.len());

    let path = std::env::temp_dir().join("spectral_seed_points.csv");
    let file = std::fs::File::create(&path)?;
    write_points_csv(std::io::BufWriter::new(file), &points)?;
    println!("wrote {}", path.display());

    println!("first rows:");
    for p in &points.points()[..5] {
        println!("  {}, {}", p.x, p.y);
    }
    Ok(())
}
