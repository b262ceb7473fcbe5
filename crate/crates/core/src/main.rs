use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fairrank::cli::experiment::{render_sample_dump, write_all};
use fairrank::cli::{
    bench, run_bench, run_experiment, verify, CliError, Experiment, ExperimentConfig, VerifyParams,
};
use fairrank::{Backend, Error, FairnessConstraints};

#[derive(Parser)]
#[command(name = "fairrank", version, about = "Sample group-fair top-k rankings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw rankings for a config and write them as CSV.
    Sample {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's sample count.
        #[arg(long)]
        samples: Option<usize>,
        /// Output CSV; defaults to samples.csv in the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a sampler against the brute-force oracle.
    Verify {
        #[arg(long)]
        k: usize,
        /// Comma-separated lower bounds.
        #[arg(long, value_delimiter = ',')]
        lower: Vec<usize>,
        /// Comma-separated upper bounds.
        #[arg(long, value_delimiter = ',')]
        upper: Vec<usize>,
        #[arg(long, default_value = "dp")]
        backend: Backend,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        tv_delta: f64,
        #[arg(long, default_value_t = 50)]
        windows: usize,
    },
    /// Write representation, fraction-of-rankings, nDCG and timing CSVs.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Time both samplers over a grid of k and group counts.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_KS)]
        ks: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_ELLS)]
        ells: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [Backend::Dp, Backend::Walk])]
        backends: Vec<Backend>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample {
            config,
            samples,
            out,
        } => {
            let config = ExperimentConfig::load(&config)?;
            let experiment = Experiment::prepare(&config)?;
            let rankings = experiment.sample_rankings(samples.unwrap_or(config.samples))?;
            if let Some(sample) = experiment.first_violation(&rankings) {
                return Err(CliError::ExPost { sample });
            }
            let dump = render_sample_dump(&rankings, &experiment.dataset.labels);
            let path = out.unwrap_or_else(|| config.output.join("samples.csv"));
            let dir = path.parent().map(PathBuf::from).unwrap_or_default();
            let name = path
                .file_name()
                .ok_or_else(|| CliError::Io("output path has no file name".into()))?;
            write_all(&dir, &[(name.to_string_lossy().into_owned(), dump)])?;
            eprintln!("wrote {} rankings to {}", rankings.len(), path.display());
        }
        Command::Verify {
            k,
            lower,
            upper,
            backend,
            samples,
            seed,
            tv_delta,
            windows,
        } => {
            let constraints = FairnessConstraints::new(k, lower, upper)?;
            let report = verify(&VerifyParams {
                constraints,
                backend,
                samples,
                seed,
                tv_delta,
                windows,
            })?;
            println!("{report}");
            if !report.passed() {
                return Err(CliError::VerificationFailed);
            }
        }
        Command::Experiment { config } => {
            let config = ExperimentConfig::load(&config)?;
            let outcome = run_experiment(&config)?;
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
        }
        Command::Bench {
            ks,
            ells,
            backends,
            runs,
            seed,
            out,
        } => {
            let rows = run_bench(&ks, &ells, &backends, runs, seed)?;
            let text = bench::render_timing(&rows);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(Error::InfeasibleConstraints(_)) = &e {
                eprintln!(
                    "hint: lower bounds must sum to at most k and upper bounds to at least k"
                );
            }
            ExitCode::from(e.exit_code())
        }
    }
}
