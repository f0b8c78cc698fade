use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use grasshopper::census::{run_census, CensusConfig, DEFAULT_CAP};
use grasshopper::closure::{counting_probe, g_preserving_closure, ClosureMode};
use grasshopper::experiments::random_lemma_batch;
use grasshopper::generator::{random_instance, GenConfig, MPolicy};
use grasshopper::io::{instance_to_json, instance_to_text, read_instance};
use grasshopper::lemmas::{lemma_sweep, SweepConfig};
use grasshopper::report;
use grasshopper::scoring::score_g;
use grasshopper::search::{
    g_maximal_exact, solve, SolveConfig, DEFAULT_BUDGET, DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_RESTARTS,
};
use grasshopper::{Error, Instance, Mode, Permutation};

#[derive(Parser)]
#[command(version, about = "Grasshopper jump-ordering solver and verification lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SearchFlags {
    /// Largest n handled by exhaustive enumeration
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
    exhaustive_bound: usize,
    /// Random hill-climb restarts after the descending seed
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Improving-swap budget per hill climb
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SearchFlags {
    fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            exhaustive_bound: self.exhaustive_bound,
            restarts: self.restarts,
            budget: self.budget,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Classic,
    Generalized,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Classic => Mode::Classic,
            ModeArg::Generalized => Mode::Generalized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Uniform,
    Adversarial,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Find a safe ordering for an instance file
    Solve {
        file: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
        /// Write the structured report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the lemma checks on an instance file or on random instances
    CheckLemmas {
        #[arg(required_unless_present = "random")]
        file: Option<PathBuf>,
        /// Number of random instances
        #[arg(long, conflicts_with = "file")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n of random instances
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        exhaustive_bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive small-case census
    Census {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Jumps are drawn from 1..=n+v_offset
        #[arg(long, default_value_t = 3)]
        v_offset: u64,
        #[arg(long, value_enum, default_value = "classic")]
        mode: ModeArg,
        #[arg(long, env = "GRASSHOPPER_JOBS", default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        search: SearchFlags,
        /// Largest n for the lemma sweep and counting probe
        #[arg(long, default_value_t = 4)]
        probe_n_max: usize,
        /// Refuse to run above this many instances
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Forced-count histogram as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Explore the closure under G-preserving swaps
    Closure {
        file: PathBuf,
        #[arg(long, conflicts_with = "exploratory")]
        strict: bool,
        #[arg(long)]
        exploratory: bool,
        /// Start ordering as comma-separated 0-based jump indices
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        exhaustive_bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate random instance files
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_jump: u64,
        #[arg(long, value_enum, default_value = "generalized")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        policy: PolicyArg,
        /// Number of instances; seeds are seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output file (count = 1) or directory (count > 1); stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let raw = read_instance(path)?;
    Ok(Instance::validate(&raw)?)
}

fn parse_start(text: &str) -> anyhow::Result<Permutation> {
    let order = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .context("start ordering must be comma-separated indices")?;
    Ok(Permutation::from_order(order)?)
}

fn cmd_solve(file: &Path, search: SearchFlags, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let inst = load(file)?;
    match solve(&inst, &search.solve_config()) {
        Ok(outcome) => {
            let card = match &outcome.witness {
                Some(w) => Some(score_g(&inst, w)?),
                None => None,
            };
            print!("{}", report::render_outcome(&inst, &outcome, card.as_ref()));
            if let Some(path) = out {
                write_json(path, &json!({ "instance": inst, "outcome": outcome, "score": card }))?;
            }
            Ok(if outcome.witness.is_some() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Err(Error::Unsolved {
            best,
            unsafe_positions,
        }) => {
            println!("unsolved: best ordering {best:?} unsafe at {unsafe_positions:?}");
            if let Some(path) = out {
                write_json(
                    path,
                    &json!({ "instance": inst, "unsolved": { "best": best, "unsafe_positions": unsafe_positions } }),
                )?;
            }
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gen(
    cfg: GenConfig,
    count: u64,
    format: FormatArg,
    out: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    let render = |inst: &Instance| match format {
        FormatArg::Json => instance_to_json(inst),
        FormatArg::Text => instance_to_text(inst),
    };
    let ext = match format {
        FormatArg::Json => "json",
        FormatArg::Text => "txt",
    };
    if count > 1 {
        if let Some(dir) = out {
            fs::create_dir_all(dir)?;
        }
    }
    for i in 0..count {
        let inst = random_instance(&GenConfig {
            seed: cfg.seed.wrapping_add(i),
            ..cfg
        })?;
        let text = render(&inst);
        match out {
            None => print!("{text}"),
            Some(path) if count == 1 => fs::write(path, text)?,
            Some(dir) => fs::write(dir.join(format!("instance-{i:05}.{ext}")), text)?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve { file, search, out } => cmd_solve(&file, search, out.as_deref()),
        Command::CheckLemmas {
            file,
            random,
            seed,
            n_max,
            exhaustive_bound,
            out,
        } => {
            let cfg = SweepConfig {
                exhaustive_bound,
                seed,
                ..SweepConfig::default()
            };
            let (source, summary) = match (file, random) {
                (Some(file), _) => (
                    json!({ "file": file.display().to_string() }),
                    lemma_sweep(&load(&file)?, &cfg)?,
                ),
                (None, Some(count)) => (
                    json!({ "random": count, "seed": seed, "n_max": n_max }),
                    random_lemma_batch(count, seed, n_max, &cfg)?,
                ),
                (None, None) => bail!("give an instance file or --random COUNT"),
            };
            print!("{}", report::render_sweep(&summary));
            if let Some(path) = out {
                write_json(&path, &json!({ "source": source, "summary": summary }))?;
            }
            Ok(if summary.failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Census {
            n_max,
            v_offset,
            mode,
            jobs,
            search,
            probe_n_max,
            cap,
            out,
            csv,
        } => {
            let cfg = CensusConfig {
                n_max,
                v_offset,
                mode: mode.into(),
                jobs,
                solve: search.solve_config(),
                lemma_n_max: probe_n_max,
                probe_n_max,
                cap,
                ..CensusConfig::default()
            };
            let census = match run_census(&cfg) {
                Ok(r) => r,
                Err(e @ Error::BudgetExceeded { .. }) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(3));
                }
                Err(e) => return Err(e.into()),
            };
            print!("{}", report::render_census(&census));
            eprintln!("wall time {:.2?}", census.wall_time);
            if let Some(path) = out {
                write_json(&path, &census)?;
            }
            if let Some(path) = csv {
                let file = fs::File::create(&path)?;
                report::write_histogram_csv(&census, file)?;
            }
            Ok(if census.is_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Closure {
            file,
            strict: _,
            exploratory,
            start,
            exhaustive_bound,
            out,
        } => {
            let inst = load(&file)?;
            let start = start.as_deref().map(parse_start).transpose()?;
            let reports = if exploratory {
                let start = start.unwrap_or_else(|| Permutation::identity(inst.n()));
                vec![g_preserving_closure(&inst, &start, ClosureMode::Exploratory, None)?]
            } else {
                match start {
                    Some(start) => {
                        let maximal = g_maximal_exact(&inst, exhaustive_bound)?;
                        vec![g_preserving_closure(&inst, &start, ClosureMode::Strict, Some(&maximal))?]
                    }
                    None => counting_probe(&inst, exhaustive_bound)?.components,
                }
            };
            for r in &reports {
                print!("{}", report::render_closure(r));
            }
            if let Some(path) = out {
                write_json(&path, &reports)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            n,
            max_jump,
            mode,
            seed,
            policy,
            count,
            format,
            out,
        } => {
            let cfg = GenConfig {
                n,
                max_jump,
                mode: mode.into(),
                seed,
                m_policy: match policy {
                    PolicyArg::Uniform => MPolicy::Uniform,
                    PolicyArg::Adversarial => MPolicy::Adversarial,
                },
            };
            cmd_gen(cfg, count, format, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
