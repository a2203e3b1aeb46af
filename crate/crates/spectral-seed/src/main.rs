use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spectral_seed::pipeline::{
    self, init_thread_pool, RasterFormat, RunConfig, ORACLE_DEVIATION_LIMIT,
};

#[derive(Parser)]
#[command(name = "spectral-seed", version, about = "Cluster centroid estimation via FFT-smoothed density peaks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RasterArg {
    Csv,
    Pgm,
}

impl From<RasterArg> for RasterFormat {
    fn from(value: RasterArg) -> Self {
        match value {
            RasterArg::Csv => RasterFormat::Csv,
            RasterArg::Pgm => RasterFormat::Pgm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw a synthetic sample from a cluster-spec JSON file
    Generate {
        /// Cluster spec: JSON list of {mu_x, mu_y, sigma_x, sigma_y, count}
        #[arg(long)]
        spec: PathBuf,
        /// Output CSV path
        #[arg(long)]
        output: PathBuf,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Estimate cluster count and centroids from a points CSV
    Detect {
        /// Input CSV with x,y columns (optional header)
        #[arg(long)]
        input: PathBuf,
        /// Peaks JSON output path
        #[arg(long)]
        output: PathBuf,
        /// Trace JSON output path (default: <output>.trace.json)
        #[arg(long)]
        trace_output: Option<PathBuf>,
        /// Convergence parameter for the bandwidth search
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Normalized density floor for valid maxima
        #[arg(long, default_value_t = 0.1)]
        peak_threshold: f64,
        /// Fraction of points used for the spacing estimate
        #[arg(long, default_value_t = 0.05)]
        gap_fraction: f64,
        /// Maximum pixels per grid axis
        #[arg(long, default_value_t = 1024)]
        grid_cap: usize,
        /// Maximum bandwidth iterations
        #[arg(long, default_value_t = 64)]
        max_iter: usize,
        /// Also write the smoothed (thresholded) density raster
        #[arg(long, value_enum)]
        emit_raster: Option<RasterArg>,
        /// Disable the wrap-around guard band (testing only)
        #[arg(long)]
        no_margin: bool,
    },
    /// Run Lloyd's K-Means seeded by a detected peak set
    Kmeans {
        /// Input CSV with x,y columns
        #[arg(long)]
        input: PathBuf,
        /// Peaks JSON produced by `detect`
        #[arg(long)]
        peaks: PathBuf,
        /// Result JSON output path
        #[arg(long)]
        output: PathBuf,
        /// Also write per-point cluster assignments as CSV
        #[arg(long)]
        assignments: Option<PathBuf>,
        /// Maximum Lloyd iterations
        #[arg(long, default_value_t = 300)]
        max_iter: usize,
        /// Centroid-shift stopping tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Compare FFT smoothing against the direct Gaussian-sum reference
    OracleCheck {
        /// Input CSV with x,y columns
        #[arg(long)]
        input: PathBuf,
        /// Frequency-domain standard deviation to test (1/data-units)
        #[arg(long)]
        sigma_tilde: f64,
        /// Fraction of points used for the spacing estimate
        #[arg(long, default_value_t = 0.05)]
        gap_fraction: f64,
        /// Maximum pixels per grid axis
        #[arg(long, default_value_t = 1024)]
        grid_cap: usize,
        /// Disable the wrap-around guard band (demonstrates leakage)
        #[arg(long)]
        no_margin: bool,
    },
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> spectral_seed::Result<ExitCode> {
    match cli.command {
        Command::Generate { spec, output, seed } => {
            let report = pipeline::run_generate(&spec, &output, seed)?;
            println!(
                "wrote {} points ({} clusters, seed {}) to {}",
                report.n_points,
                report.n_clusters,
                report.seed,
                report.output.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect {
            input,
            output,
            trace_output,
            epsilon,
            peak_threshold,
            gap_fraction,
            grid_cap,
            max_iter,
            emit_raster,
            no_margin,
        } => {
            let config = RunConfig {
                epsilon,
                peak_threshold,
                gap_fraction,
                max_iter_bandwidth: max_iter,
                grid_cap,
                seed: 0,
            };
            let report = pipeline::run_detect(
                &input,
                &output,
                trace_output.as_deref(),
                emit_raster.map(Into::into),
                &config,
                !no_margin,
            )?;
            println!(
                "k = {} (sigma_tilde {:.6}, converged at n = {}, grid {}x{}, dx {:.6})",
                report.k,
                report.sigma_tilde,
                report.converged_n,
                report.grid.n_x,
                report.grid.n_y,
                report.grid.dx
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Kmeans {
            input,
            peaks,
            output,
            assignments,
            max_iter,
            tol,
        } => {
            let report = pipeline::run_kmeans(
                &input,
                &peaks,
                &output,
                assignments.as_deref(),
                max_iter,
                tol,
            )?;
            println!(
                "k = {}, inertia {:.6}, {} iterations",
                report.k, report.inertia, report.iterations
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCheck {
            input,
            sigma_tilde,
            gap_fraction,
            grid_cap,
            no_margin,
        } => {
            let report = pipeline::run_oracle_check(
                &input,
                sigma_tilde,
                gap_fraction,
                grid_cap,
                !no_margin,
            )?;
            println!(
                "max interior deviation {:.3e} (limit {:.1e}, band {} px, grid {}x{})",
                report.max_interior_deviation,
                ORACLE_DEVIATION_LIMIT,
                report.band_px,
                report.grid.n_x,
                report.grid.n_y
            );
            if report.pass {
                println!("oracle check: PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("oracle check: FAIL");
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
