use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{self, CliError, Completion, Context, FetchOptions};
use crate::config::Config;
use crate::store::Store;

#[derive(Debug, Parser)]
#[command(
    name = "hallugraph",
    version,
    about = "Measure graph hallucinations in language model answers"
)]
pub struct Cli {
    /// Transcript store directory.
    #[arg(long, global = true, default_value = "store")]
    pub store: PathBuf,
    /// Seed for label propagation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prompt endpoints (or replay the store) for each model and target.
    Fetch {
        #[arg(long, value_delimiter = ',', required = true)]
        models: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
        /// Never touch the network; pairs missing from the store fail.
        #[arg(long)]
        replay: bool,
    },
    /// Structural statistics of every answer against a ground truth.
    Stats {
        #[arg(long)]
        reference: String,
        #[arg(long, value_delimiter = ',')]
        models: Vec<String>,
    },
    /// Intersection, added and missing edges of one answer.
    Diff {
        #[arg(long)]
        model: String,
        #[arg(long)]
        reference: String,
    },
    /// Graph Atlas Distance over the first k connected atlas graphs.
    Gad {
        #[arg(long, default_value_t = 5)]
        resolution: usize,
        #[arg(long, value_delimiter = ',')]
        models: Vec<String>,
    },
    /// Spearman correlation between the GAD ranking and a reference ranking.
    RankCompare {
        #[arg(long)]
        reference: PathBuf,
        /// Computed ranking; defaults to ranking.csv in the output directory.
        #[arg(long)]
        ranking: Option<PathBuf>,
    },
    /// Adjacency-spectrum distance of every answer to a ground truth.
    Spectral {
        #[arg(long)]
        reference: String,
        #[arg(long, value_delimiter = ',')]
        models: Vec<String>,
    },
    /// Heat-trace signatures and their pairwise distances.
    Embed {
        /// Targets to embed; defaults to every target present in the store.
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        models: Vec<String>,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(completion) => completion.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<Completion, CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(|e| CliError::usage(e.to_string()))?,
        None => Config::default(),
    };
    let store = Store::open(&cli.store).map_err(|e| CliError::usage(e.to_string()))?;
    let mut ctx = Context::new(store, config, cli.seed, &cli.out);

    match cli.command {
        Command::Fetch {
            models,
            targets,
            replay,
        } => {
            let opts = FetchOptions {
                models,
                targets,
                replay,
                ..FetchOptions::default()
            };
            let (manifest, completion) = commands::cmd_fetch(&mut ctx, &opts)?;
            println!(
                "{} pairs, {} new fetches, {} failed; manifest at {}",
                manifest.entries.len(),
                manifest.new_fetches,
                manifest.failures(),
                ctx.store.manifest_path().display()
            );
            Ok(completion)
        }
        Command::Stats { reference, models } => {
            let (report, completion) = commands::cmd_stats(&ctx, &reference, &models)?;
            print!("{}", commands::stats_csv(&report)?);
            for s in &report.skipped {
                println!("skipped {}: {}", s.model_id, s.reason);
            }
            Ok(completion)
        }
        Command::Diff { model, reference } => {
            let s = commands::cmd_diff(&ctx, &model, &reference)?;
            println!(
                "intersection {}, added {}, missing {}; written to {}",
                s.intersection,
                s.added,
                s.missing,
                s.dir.display()
            );
            Ok(Completion::Complete)
        }
        Command::Gad { resolution, models } => {
            let (report, completion) = commands::cmd_gad(&ctx, resolution, &models)?;
            print!("{}", commands::ranking_csv(&report.scores)?);
            for s in &report.excluded {
                println!("excluded {}: {}", s.model_id, s.reason);
            }
            Ok(completion)
        }
        Command::RankCompare { reference, ranking } => {
            let c = commands::cmd_rank_compare(&ctx, &reference, ranking.as_deref())?;
            println!("position,computed,reference");
            for (i, (a, b)) in c.computed.iter().zip(&c.reference).enumerate() {
                println!("{},{a},{b}", i + 1);
            }
            println!("spearman_rho,{}", c.spearman_rho);
            Ok(Completion::Complete)
        }
        Command::Spectral { reference, models } => {
            let (rows, completion) = commands::cmd_spectral(&ctx, &reference, &models)?;
            for r in rows {
                println!(
                    "{},{}",
                    r.model_id,
                    commands::two_decimals(r.spectral_distance)
                );
            }
            Ok(completion)
        }
        Command::Embed { targets, models } => {
            let (summary, completion) = commands::cmd_embed(&ctx, &targets, &models)?;
            println!(
                "{} signatures written to {}",
                summary.graphs.len(),
                ctx.out.display()
            );
            Ok(completion)
        }
    }
}
