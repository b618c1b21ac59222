//! Command-line front end: solve a problem file, run a synthetic benchmark,
//! or check the solver against the brute-force oracle.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use posegravity::{estimate_pose, SolverOptions};
use posegravity_bench::io::{csv_row, ProblemFile, SolutionsFile, CSV_HEADER};
use posegravity_bench::{oracle_check, run_experiment, Configuration, SceneConfig};

#[derive(Parser)]
#[command(
    name = "posegravity",
    about = "Camera pose estimation with an axis prior",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigArg {
    #[value(name = "ImagePlane", alias = "image-plane", alias = "imageplane")]
    ImagePlane,
    #[value(name = "Spherical", alias = "spherical")]
    Spherical,
    #[value(name = "Planar", alias = "planar")]
    Planar,
}

impl From<ConfigArg> for Configuration {
    fn from(c: ConfigArg) -> Configuration {
        match c {
            ConfigArg::ImagePlane => Configuration::ImagePlane,
            ConfigArg::Spherical => Configuration::Spherical,
            ConfigArg::Planar => Configuration::Planar,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single problem from a JSON file.
    Solve {
        /// Problem JSON: {"gravity": [...], "points": [...], "lines": [...]}
        #[arg(long)]
        input: PathBuf,
        /// Scale of the line-direction residual.
        #[arg(long, default_value_t = 100.0)]
        delta: f64,
        /// Write solutions JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a synthetic benchmark and report median errors.
    Bench {
        #[arg(long, value_enum)]
        config: ConfigArg,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        lines: usize,
        /// Per-component Gaussian σ on 2D detections.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// σ (degrees) of gravity measurement noise.
        #[arg(long = "grav-noise-deg", default_value_t = 0.0)]
        grav_noise_deg: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append a CSV row (with header when the file is new) here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Count recovered minimal solutions as failures.
        #[arg(long = "no-recovery")]
        no_recovery: bool,
        /// Perturb line normals directly instead of endpoint bearings.
        #[arg(long = "line-noise-on-normal")]
        line_noise_on_normal: bool,
        /// Re-normalize spherical bearings after adding noise.
        #[arg(long = "renormalize-bearings")]
        renormalize_bearings: bool,
    },
    /// Compare solver losses against the brute-force oracle; nonzero exit on
    /// any violation.
    OracleCheck {
        /// Trials per configuration × noise-level cell.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Solve {
            input,
            delta,
            output,
        } => {
            let problem: ProblemFile = serde_json::from_str(&fs::read_to_string(&input)?)?;
            let (points, lines, gravity) = problem.to_inputs();
            let options = SolverOptions {
                delta,
                ..SolverOptions::default()
            };
            let set = estimate_pose(&points, &lines, &gravity, &options)?;
            let out = serde_json::to_string_pretty(&SolutionsFile::from(&set))?;
            match output {
                Some(path) => fs::write(path, out)?,
                None => println!("{out}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            config,
            points,
            lines,
            eps,
            grav_noise_deg,
            trials,
            seed,
            csv,
            no_recovery,
            line_noise_on_normal,
            renormalize_bearings,
        } => {
            let mut cfg = SceneConfig::new(config.into(), points, lines);
            cfg.epsilon_noise = eps;
            cfg.gravity_noise_deg = grav_noise_deg;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.line_noise_on_normal = line_noise_on_normal;
            cfg.renormalize_bearings = renormalize_bearings;
            let (summary, _records) = run_experiment(&cfg, !no_recovery)?;
            println!(
                "{} n={} m={} eps={} grav={}°: {}/{} solved, median rot {:.6}°, median trans {:.6}, median {:.3} µs",
                cfg.configuration.name(),
                cfg.n_points,
                cfg.m_lines,
                cfg.epsilon_noise,
                cfg.gravity_noise_deg,
                summary.trials_with_solution,
                cfg.trials,
                summary.median_rot_err_deg,
                summary.median_trans_err,
                summary.median_runtime_us,
            );
            if let Some(path) = csv {
                let mut text = String::new();
                if !path.exists() {
                    text.push_str(CSV_HEADER);
                    text.push('\n');
                }
                text.push_str(&csv_row(&summary));
                text.push('\n');
                use std::io::Write;
                let mut file = fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)?;
                file.write_all(text.as_bytes())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCheck { trials, seed } => {
            let report = oracle_check(trials, seed)?;
            for cell in &report.cells {
                println!(
                    "{} eps={}: {} trials, {} violations, {} grid fallbacks, worst gap {:.3e}",
                    cell.configuration.name(),
                    cell.epsilon_noise,
                    cell.trials,
                    cell.violations,
                    cell.grid_fallbacks,
                    cell.worst_gap,
                );
            }
            if report.passed() {
                println!("oracle-check: PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "oracle-check: FAIL ({} violations, {} grid fallbacks)",
                    report.violations(),
                    report.grid_fallbacks()
                );
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
