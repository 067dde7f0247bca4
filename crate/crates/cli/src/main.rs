use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use twistcat::field::EllSpec;
use twistcat::group::DEFAULT_ORDER_CAP;
use twistcat::suites::{run, RunConfig, Task};

#[derive(Parser)]
#[command(name = "twistcat", version, about = "Verification suites for twisted biset algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification tasks and emit a report.
    Run {
        /// Group specs, e.g. C2 S3 C2xC2 D8.
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        groups: Vec<String>,
        /// generic, power:d, unit or assign:p=v,...
        #[arg(long, default_value = "generic")]
        ell: String,
        #[arg(long, num_args = 1.., value_delimiter = ',', default_value = "all")]
        tasks: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
        #[arg(long, env = "TWISTCAT_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Describe what a task checks.
    Explain { task: String },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    match Cli::parse().command {
        Command::Explain { task } => {
            let t: Task = task.parse()?;
            println!("{}", t.explain());
            Ok(true)
        }
        Command::Run { groups, ell, tasks, format, output, seed, order_cap, cache_dir } => {
            let ell: EllSpec = ell.parse().context("parsing --ell")?;
            let tasks = Task::parse_list(&tasks)?;
            let mut cfg = RunConfig::new(groups, ell, tasks);
            cfg.seed = seed;
            cfg.order_cap = order_cap;
            cfg.cache_dir = cache_dir;
            let report = run(&cfg)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => report.to_text(),
            };
            match output {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(report.passed)
        }
    }
}
