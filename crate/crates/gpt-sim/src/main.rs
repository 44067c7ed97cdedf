use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gpt_sim::{
    build_report, export_scheme, run_selftest, run_sweep, to_csv, to_json, ExperimentConfig,
    Result, SimError,
};

#[derive(Parser)]
#[command(name = "gpt", version, about = "Polar-coded modulation simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo SNR sweep and report BLER/BER per point.
    Sim(SimArgs),
    /// Build a scheme from a config and write it as JSON, without simulating.
    Construct(ConstructArgs),
    /// Check the harness against the closed-form uncoded bit error rate.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SimArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker thread count (default: all cores). Results are
    /// identical for any value.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Experiment config (JSON); only the scheme section is used.
    #[arg(long)]
    config: PathBuf,
    /// Write the scheme here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per SNR point.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn set_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        // A second build_global in one process is harmless here: the
        // pool only affects wall time, never results.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn read_config(path: &PathBuf) -> Result<(ExperimentConfig, String)> {
    let text = fs::read_to_string(path)
        .map_err(|e| SimError::Io(format!("{}: {e}", path.display())))?;
    let config = ExperimentConfig::from_json(&text)?;
    Ok((config, text))
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| SimError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cmd_sim(args: SimArgs) -> Result<()> {
    set_threads(args.threads);
    let (mut config, text) = read_config(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.validate_for_sim()?;
    let (scheme, points) = run_sweep(&config)?;
    let report = build_report(&config, &text, &scheme, points);
    let body = match args.format {
        Format::Csv => to_csv(&report),
        Format::Json => to_json(&report),
    };
    emit(args.out.as_ref(), &body)
}

fn cmd_construct(args: ConstructArgs) -> Result<()> {
    let (config, _) = read_config(&args.config)?;
    let scheme = config.build_scheme()?;
    let file = export_scheme(&scheme, config.scheme.construction.clone());
    let mut body = serde_json::to_string_pretty(&file).map_err(SimError::from)?;
    body.push('\n');
    emit(args.out.as_ref(), &body)
}

fn cmd_selftest(args: SelftestArgs) -> Result<()> {
    set_threads(args.threads);
    let report = run_selftest(args.seed, args.trials)?;
    for p in &report.points {
        println!(
            "snr_db={:>4.1} trials={} ber={:.6e} theory={:.6e} z={:+.3}",
            p.snr_db, p.trials, p.ber, p.theory, p.z
        );
    }
    if report.pass {
        println!("selftest: PASS");
        Ok(())
    } else {
        Err(SimError::Numeric(
            "selftest: measured BER deviates from theory by more than 3 standard errors".into(),
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sim(args) => cmd_sim(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
