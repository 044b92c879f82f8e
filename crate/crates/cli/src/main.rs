use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use physarum::io::{compare_dir, run_to_dir, write_file, OracleKind};
use physarum::params::PARAM_KEYS;
use physarum::scenario::{find_preset, preset_catalogue, Scenario};
use physarum::Error;

#[derive(Parser)]
#[command(name = "physarum", version, about = "Multi-agent Physarum hull experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or scenario file for one or more seeds.
    Run(RunArgs),
    /// List the built-in presets.
    Presets,
    /// Compare a result directory against a classical construction.
    Compare(CompareArgs),
    /// Run a G_max sweep over seeds and write sweep_summary.csv.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Built-in preset name.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// Scenario JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parameter override, e.g. `--set G_max=25`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    steps: Option<u64>,
    /// Write trail and occupancy frames every N steps.
    #[arg(long)]
    frames_every: Option<u64>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Inclusive seed range `a..b`.
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, default_value = "1..10")]
    seeds: String,
    /// Comma-separated G_max values (default: the preset's own sweep).
    #[arg(long, value_delimiter = ',')]
    gmax: Vec<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// Result directory written by `run`.
    dir: PathBuf,
    #[arg(long, default_value = "convex")]
    oracle: String,
    /// Distance (cells) within which a node counts as covered.
    #[arg(long, default_value_t = 3.0)]
    tolerance: f64,
    /// Disc radius for the alpha oracle (default: point-set diameter).
    #[arg(long)]
    alpha_radius: Option<f64>,
    /// Fail (exit 4) above this Hausdorff distance.
    #[arg(long)]
    max_hausdorff: Option<f64>,
    /// Fail (exit 4) below this node coverage.
    #[arg(long)]
    min_coverage: Option<f64>,
}

/// Exit status by failure class.
enum Failure {
    Config(String),
    Runtime(String),
    Comparison(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } | Error::Geometry(_) | Error::InsufficientCapacity { .. } => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Config(format!("bad seed range `{s}` (expected a..b)"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn parse_overrides(set: &[String]) -> Result<Vec<(String, String)>, Failure> {
    set.iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Failure::Config(format!("override `{kv}` is not KEY=VALUE")))?;
            if !PARAM_KEYS.contains(&k) {
                return Err(Failure::Config(format!("unknown parameter `{k}` in --set")));
            }
            Ok((k.to_string(), v.to_string()))
        })
        .collect()
}

fn load(args: &ScenarioArgs) -> Result<(Scenario, Vec<(String, String)>), Failure> {
    let base = match (&args.preset, &args.config) {
        (Some(name), _) => find_preset(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            Scenario::parse(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(Failure::Config("need --preset or --config".into())),
    };
    let overrides = parse_overrides(&args.set)?;
    let mut s = base.with_overrides(&overrides)?;
    if let Some(steps) = args.steps {
        s.run.steps = steps;
        if let Some(sw) = s.sweep.as_mut() {
            sw.steps.iter_mut().for_each(|x| *x = steps);
        }
    }
    if args.frames_every.is_some() {
        s.output.frames_every = args.frames_every;
    }
    s.validate()?;
    Ok((s, overrides))
}

struct Job {
    scenario: Scenario,
    seed: u64,
    dir: PathBuf,
}

/// One directory per (expanded scenario, seed); a single run writes
/// straight into `out`.
fn jobs(s: &Scenario, seeds: &[u64], out: &Path) -> Vec<Job> {
    let expanded = s.expand_sweep();
    let single = expanded.len() == 1 && seeds.len() == 1;
    let mut jobs = Vec::new();
    for sc in &expanded {
        for &seed in seeds {
            let dir = if single {
                out.to_path_buf()
            } else {
                out.join(format!("{}_seed{seed}", sc.name))
            };
            jobs.push(Job {
                scenario: sc.clone(),
                seed,
                dir,
            });
        }
    }
    jobs
}

fn execute(jobs: Vec<Job>, overrides: &[(String, String)], out: &Path, summary: bool) -> Result<(), Failure> {
    let outcomes: Vec<_> = jobs
        .par_iter()
        .map(|j| {
            let r = run_to_dir(&j.scenario, j.seed, &j.dir, overrides);
            match &r {
                Ok(res) => eprintln!(
                    "{} seed {}: {} steps, population {} -> {}",
                    j.scenario.name,
                    j.seed,
                    res.steps_run,
                    res.population[0],
                    res.population.last().unwrap()
                ),
                Err(e) => eprintln!("{} seed {}: {e}", j.scenario.name, j.seed),
            }
            r
        })
        .collect();
    if summary {
        let mut csv = String::from("gmax,seed,final_population,concavity\n");
        for (j, r) in jobs.iter().zip(&outcomes) {
            if let Ok(r) = r {
                let gmax = j.scenario.params.growth.map_or(String::new(), |g| g.max.to_string());
                let conc = r.metrics.map_or(String::new(), |m| format!("{:.6}", m.concavity));
                csv.push_str(&format!("{gmax},{},{},{conc}\n", j.seed, r.population.last().unwrap()));
            }
        }
        write_file(&out.join("sweep_summary.csv"), csv)?;
    }
    match outcomes.into_iter().find_map(Result::err) {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let (s, overrides) = load(&args.scenario)?;
    let seeds = match (&args.seeds, args.seed) {
        (Some(r), _) => parse_seeds(r)?,
        (None, Some(seed)) => vec![seed],
        (None, None) => vec![1],
    };
    let jobs = jobs(&s, &seeds, &args.scenario.out);
    let summary = jobs.len() > 1 && s.sweep.is_some();
    execute(jobs, &overrides, &args.scenario.out, summary)
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let (mut s, overrides) = load(&args.scenario)?;
    if !args.gmax.is_empty() {
        let steps = s.run.steps;
        s.sweep = Some(physarum::scenario::GmaxSweep {
            steps: vec![steps; args.gmax.len()],
            values: args.gmax.clone(),
        });
        s.validate()?;
    }
    if s.sweep.is_none() {
        return Err(Failure::Config(format!(
            "scenario `{}` has no G_max sweep; pass --gmax",
            s.name
        )));
    }
    let seeds = parse_seeds(&args.seeds)?;
    let jobs = jobs(&s, &seeds, &args.scenario.out);
    execute(jobs, &overrides, &args.scenario.out, true)
}

fn compare(args: CompareArgs) -> Result<(), Failure> {
    let oracle: OracleKind = args.oracle.parse()?;
    let report = compare_dir(&args.dir, oracle, args.tolerance, args.alpha_radius)?;
    let json = serde_json::to_string_pretty(&report).expect("serialisable");
    write_file(&args.dir.join(format!("compare_{}.json", args.oracle)), format!("{json}\n"))?;
    println!("{}", report.summary());
    if let Some(h) = args.max_hausdorff {
        if report.hausdorff > h {
            return Err(Failure::Comparison(format!(
                "hausdorff {:.3} exceeds {h}",
                report.hausdorff
            )));
        }
    }
    if let Some(c) = args.min_coverage {
        if report.node_coverage < c {
            return Err(Failure::Comparison(format!(
                "node coverage {:.3} below {c}",
                report.node_coverage
            )));
        }
    }
    Ok(())
}

fn presets() {
    for s in preset_catalogue() {
        let runs = s
            .sweep
            .as_ref()
            .map_or(format!("{} steps", s.run.steps), |sw| format!("G_max {:?}", sw.values));
        println!(
            "{:<20} {}x{}  p={:<6} {}",
            s.name, s.width, s.height, s.params.population, runs
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Presets => {
            presets();
            Ok(())
        }
        Command::Compare(a) => compare(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Comparison(m)) => {
            eprintln!("comparison failed: {m}");
            ExitCode::from(4)
        }
    }
}
