use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use gurlab_cli::campaign::{replay, run_campaign, run_oracle};
use gurlab_cli::config::{
    all_experiments_plan, load_config, parse_dims, CampaignConfig, ExperimentPlan, OutputFormat,
};
use gurlab_cli::emit::{
    write_convergence_curves, write_csv, write_jsonl, write_slack_histogram,
};
use gurlab_cli::experiments::registry;
use gurlab_cli::summary::{render_table, summarize};
use std::path::PathBuf;

/// Certification campaigns for two-state uncertainty bounds on
/// finite-dimensional models.
#[derive(Parser)]
#[command(name = "gurlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a campaign and emit reports.
    Run {
        /// Campaign config file (flat key-value with [experiment] sections).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for report files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format: json (lines) or csv.
        #[arg(long)]
        format: Option<String>,
        /// Trials per (experiment, dim); overrides config.
        #[arg(long)]
        trials: Option<usize>,
        /// Comma/range dim list, e.g. 2,4,8..12; overrides config.
        #[arg(long)]
        dims: Option<String>,
        /// Master seed; falls back to GURLAB_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for dispatch.
        #[arg(long)]
        jobs: Option<usize>,
        /// Comma list of experiments (default: all).
        #[arg(long)]
        experiments: Option<String>,
    },
    /// Re-run a single instance from a recorded seed.
    Replay {
        /// The recorded instance seed.
        seed: u64,
        /// Experiment name the record came from.
        #[arg(long)]
        experiment: String,
        /// Dim of the record.
        #[arg(long)]
        dim: usize,
        /// Fail unless the reproduced slack matches within 1e-12.
        #[arg(long)]
        expect_slack: Option<f64>,
    },
    /// List every experiment with its default dims.
    ListExperiments,
    /// Run one experiment with the brute-force grid oracle forced on.
    Oracle {
        /// Experiment name (must support the oracle path).
        experiment: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn env_seed() -> Option<u64> {
    std::env::var("GURLAB_SEED").ok().and_then(|s| s.parse().ok())
}

/// Write the report files (or stdout); IO failures are exit-code-2 events.
fn emit_files(cfg: &CampaignConfig, records: &[gurlab_core::report::ExperimentRecord]) -> Result<()> {
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        match cfg.format {
            OutputFormat::JsonLines => {
                let f = std::fs::File::create(dir.join("records.jsonl"))?;
                write_jsonl(records, std::io::BufWriter::new(f))?;
            }
            OutputFormat::Csv => {
                let f = std::fs::File::create(dir.join("records.csv"))?;
                write_csv(records, std::io::BufWriter::new(f))?;
            }
        }
        let f = std::fs::File::create(dir.join("slack_histogram.csv"))?;
        write_slack_histogram(records, std::io::BufWriter::new(f))?;
        let f = std::fs::File::create(dir.join("convergence.csv"))?;
        write_convergence_curves(records, std::io::BufWriter::new(f))?;
    } else {
        match cfg.format {
            OutputFormat::JsonLines => write_jsonl(records, std::io::stdout().lock())?,
            OutputFormat::Csv => write_csv(records, std::io::stdout().lock())?,
        }
    }
    Ok(())
}

fn exit_config_error(e: impl std::fmt::Display) -> ! {
    eprintln!("config error: {e}");
    std::process::exit(2);
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            out,
            format,
            trials,
            dims,
            seed,
            jobs,
            experiments,
        } => {
            let mut cfg = match config {
                Some(path) => match load_config(&path) {
                    Ok(c) => c,
                    Err(e) => exit_config_error(e),
                },
                None => CampaignConfig {
                    experiments: all_experiments_plan(None, 25, None),
                    ..CampaignConfig::default()
                },
            };
            if let Some(s) = seed.or_else(env_seed) {
                cfg.master_seed = s;
            }
            if let Some(j) = jobs {
                cfg.jobs = j.max(1);
            }
            if let Some(f) = format {
                match OutputFormat::parse(&f) {
                    Some(f) => cfg.format = f,
                    None => exit_config_error(format!("unknown format '{f}'")),
                }
            }
            if let Some(dir) = out {
                cfg.out_dir = Some(dir);
            }
            if let Some(list) = experiments {
                let names: Vec<String> = list
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                cfg.experiments = names
                    .into_iter()
                    .map(|name| ExperimentPlan {
                        name,
                        dims: Vec::new(),
                        trials: 25,
                        tolerance: None,
                    })
                    .collect();
            }
            if let Some(t) = trials {
                if t == 0 {
                    exit_config_error("trials must be ≥ 1");
                }
                for plan in &mut cfg.experiments {
                    plan.trials = t;
                }
            }
            if let Some(d) = dims {
                let dims = match parse_dims(&d, 0) {
                    Ok(d) => d,
                    Err(e) => exit_config_error(e),
                };
                for plan in &mut cfg.experiments {
                    plan.dims = dims.clone();
                }
            }

            let records = match run_campaign(&cfg) {
                Ok(r) => r,
                Err(e) => exit_config_error(e),
            };

            if let Err(e) = emit_files(&cfg, &records) {
                exit_config_error(e);
            }

            let rows = summarize(&records);
            eprint!("{}", render_table(&rows));
            let failed = records.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                eprintln!("{failed} record(s) FAILED");
                std::process::exit(1);
            }
            Ok(())
        }
        Command::Replay {
            seed,
            experiment,
            dim,
            expect_slack,
        } => {
            let record = match replay(&experiment, dim, seed) {
                Ok(r) => r,
                Err(e) => exit_config_error(e),
            };
            write_jsonl(std::slice::from_ref(&record), std::io::stdout().lock())?;
            if let Some(expected) = expect_slack {
                let gap = (record.slack - expected).abs();
                if gap > 1e-12 {
                    eprintln!("slack mismatch: reproduced {} vs expected {expected} (gap {gap:.3e})",
                        record.slack);
                    std::process::exit(1);
                }
            }
            if !record.passed {
                std::process::exit(1);
            }
            Ok(())
        }
        Command::ListExperiments => {
            println!("{:<18} {:<12} description", "name", "default_dims");
            for e in registry() {
                let dims: Vec<String> = e.default_dims.iter().map(|d| d.to_string()).collect();
                println!("{:<18} {:<12} {}", e.name, dims.join(","), e.description);
            }
            Ok(())
        }
        Command::Oracle {
            experiment,
            trials,
            dims,
            seed,
        } => {
            let dims = match dims {
                Some(d) => match parse_dims(&d, 0) {
                    Ok(d) => d,
                    Err(e) => exit_config_error(e),
                },
                None => Vec::new(),
            };
            let master = seed.or_else(env_seed).unwrap_or(42);
            let records = match run_oracle(&experiment, &dims, trials, master) {
                Ok(r) => r,
                Err(e) => exit_config_error(e),
            };
            write_jsonl(&records, std::io::stdout().lock())?;
            let rows = summarize(&records);
            eprint!("{}", render_table(&rows));
            if records.iter().any(|r| !r.passed) {
                std::process::exit(1);
            }
            Ok(())
        }
    }
}
