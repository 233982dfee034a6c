//! `qbaf`: solve, analyze and benchmark quantitative bipolar argumentation
//! frameworks from the command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a solve did
//! not converge.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qbaf::engine::write_trajectory_csv;
use qbaf::genbench::{
    cyclic_density, exp_distance_vs_n, exp_gamma_sweep, exp_runtime_convergence, gen_ladder, gen_one_cycle,
    gen_random_acyclic, gen_random_cyclic, ladder_dataset, random_acyclic_dataset, write_rows_csv, ExperimentRow,
    LadderTau,
};
use qbaf::postulates::reports_to_json;
use qbaf::{
    analyze_graph, convergence_bound, parse_qbaf, run_postulate_suite, serialize_qbaf, solve, Mode, Norm, Qbaf,
    SemanticsSpec, SolveConfig,
};

#[derive(Parser)]
#[command(
    name = "qbaf",
    version,
    about = "Gradual semantics for quantitative bipolar argumentation frameworks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SemanticsArgs {
    /// Semantics, e.g. `ddrl`, `mqe:q=max` or `drl:gamma=0.5`.
    #[arg(long, default_value = "ddrl")]
    semantics: String,
    /// Overrides the norm of the semantics.
    #[arg(long)]
    q: Option<Norm>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Smoothing parameter of the smooth clamp.
    #[arg(long)]
    k: Option<f64>,
}

impl SemanticsArgs {
    fn spec(&self) -> Result<SemanticsSpec> {
        apply_overrides(self.semantics.parse()?, self.q, self.gamma, self.k)
    }
}

fn apply_overrides(
    mut spec: SemanticsSpec,
    q: Option<Norm>,
    gamma: Option<f64>,
    k: Option<f64>,
) -> Result<SemanticsSpec> {
    if let Some(q) = q {
        spec = spec.with_q(q);
    }
    if let Some(g) = gamma {
        spec = spec.with_gamma(g);
    }
    if let Some(k) = k {
        spec = spec.with_k(k);
    }
    spec.validate()?;
    Ok(spec)
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Discrete,
    Continuous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::AcyclicAuto,
            ModeArg::Discrete => Mode::Discrete,
            ModeArg::Continuous => Mode::Continuous,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ladder,
    RandomAcyclic,
    RandomCyclic,
    OneCycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    /// Mean goal distance on ladders of growing size.
    Distance,
    /// Mean distance as the weight `gamma` varies.
    Gamma,
    /// Convergence rate and runtime on random cyclic frameworks.
    Runtime,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dataset {
    Ladders,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TauArg {
    Ones,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Print final strengths, sorted by id.
    Solve {
        /// Framework JSON, or `-` for stdin.
        file: String,
        #[command(flatten)]
        semantics: SemanticsArgs,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Euler step for continuous mode.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Write every iterate as CSV to this path.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Print acyclicity, max in-degree, the one-cycle flag and the SCC count.
    Analyze { file: String },
    /// Print the largest gamma that guarantees convergence.
    Bound {
        file: String,
        #[arg(long, default_value = "sum")]
        q: Norm,
    },
    /// Check the twelve principles on random acyclic frameworks.
    Postulates {
        #[command(flatten)]
        semantics: SemanticsArgs,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the full reports, with witnesses, as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a framework as JSON.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Supporters for ladders, arguments otherwise.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Edge density for cyclic kinds (default: the benchmark density).
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment and write CSV rows.
    Bench {
        #[arg(long, value_enum)]
        exp: Experiment,
        /// Comma-separated semantics, e.g. `mqe,drl:q=max`.
        #[arg(long, default_value = "mqe,drl,ddrl")]
        semantics: String,
        /// Ladder sizes or framework sizes, comma-separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Frameworks per size.
        #[arg(long, default_value_t = 10)]
        per: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gamma values for the sweep.
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "ladders")]
        dataset: Dataset,
        /// Initial strengths of ladder arguments in the distance experiment.
        #[arg(long, value_enum, default_value = "ones")]
        tau: TauArg,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Write 0 in the runtime column so output is byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Success,
    NotConverged,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::NotConverged) => ExitCode::from(2),
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Solve {
            file,
            semantics,
            mode,
            eps,
            max_iter,
            step,
            trajectory,
        } => {
            let q = read_framework(&file)?;
            let spec = semantics.spec()?;
            let cfg = SolveConfig::default()
                .with_mode(mode.into())
                .with_epsilon(eps)
                .with_max_iter(max_iter)
                .with_step(step)
                .with_trajectory(trajectory.is_some());
            let result = solve(&q, &spec, &cfg)?;
            let mut out = String::new();
            for (id, rho) in result.strengths.sorted_by_id(&q) {
                out.push_str(&format!("{id} {rho:.6}\n"));
            }
            out.push_str(&format!("status {}\n", result.status));
            if let Some(p) = result.oscillation_period {
                out.push_str(&format!("period {p}\n"));
            }
            out.push_str(&format!("iterations {}\n", result.iterations));
            io::stdout().write_all(out.as_bytes())?;
            if let (Some(path), Some(traj)) = (trajectory, &result.trajectory) {
                let mut buf = Vec::new();
                write_trajectory_csv(&q, traj, &mut buf)?;
                write_output(Some(&path), &buf)?;
            }
            Ok(if result.converged() {
                Outcome::Success
            } else {
                Outcome::NotConverged
            })
        }
        Command::Analyze { file } => {
            let q = read_framework(&file)?;
            let info = analyze_graph(&q);
            println!(
                "acyclic={} d={} one_cycle={} sccs={}",
                info.acyclic,
                info.max_in_degree,
                info.at_most_one_cycle,
                info.sccs.len()
            );
            Ok(Outcome::Success)
        }
        Command::Bound { file, q: norm } => {
            let q = read_framework(&file)?;
            let d = analyze_graph(&q).max_in_degree;
            let bound = convergence_bound(&q, norm);
            if bound.is_finite() {
                println!("d={d} gamma<{bound:.6}");
            } else {
                println!("d={d} gamma<inf");
            }
            Ok(Outcome::Success)
        }
        Command::Postulates {
            semantics,
            n,
            seed,
            report,
        } => {
            let spec = semantics.spec()?;
            let reports = run_postulate_suite(&spec, n, seed)?;
            let color = io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
            let mut header = format!("{:<10}", "semantics");
            let mut row = format!("{:<10}", spec.label());
            for r in &reports {
                header.push_str(&format!(" {}", r.principle.abbrev()));
                let mark = match (r.passed, color) {
                    (true, false) => "✓".to_string(),
                    (false, false) => "×".to_string(),
                    (true, true) => "\x1b[32m✓\x1b[0m".to_string(),
                    (false, true) => "\x1b[31m×\x1b[0m".to_string(),
                };
                row.push_str(&format!("  {mark}"));
            }
            println!("{header}\n{row}");
            if let Some(path) = report {
                write_output(Some(&path), reports_to_json(&reports).as_bytes())?;
            }
            Ok(if reports.iter().all(|r| r.passed) {
                Outcome::Success
            } else {
                Outcome::Failed
            })
        }
        Command::Gen {
            kind,
            n,
            density,
            seed,
            out,
        } => {
            let density = match density {
                Some(d) if !(0.0..=1.0).contains(&d) => bail!("density must lie in [0, 1], got {d}"),
                Some(d) => d,
                None => cyclic_density(n),
            };
            let q = match kind {
                Kind::Ladder => gen_ladder(n, seed),
                Kind::RandomAcyclic => gen_random_acyclic(seed),
                Kind::RandomCyclic => gen_random_cyclic(n, density, seed),
                Kind::OneCycle => gen_one_cycle(n, density, seed),
            };
            let mut text = serialize_qbaf(&q);
            text.push('\n');
            write_output(out.as_deref(), text.as_bytes())?;
            Ok(Outcome::Success)
        }
        Command::Bench {
            exp,
            semantics,
            sizes,
            per,
            seed,
            gammas,
            dataset,
            tau,
            eps,
            max_iter,
            no_timing,
            out,
        } => {
            let specs = parse_spec_list(&semantics)?;
            let mut rows = bench_rows(exp, &specs, sizes, per, seed, gammas, dataset, tau, eps, max_iter)?;
            if no_timing {
                rows.iter_mut().for_each(|r| r.runtime_ms = 0.0);
            }
            let mut buf = Vec::new();
            write_rows_csv(&rows, &mut buf)?;
            write_output(out.as_deref(), &buf)?;
            Ok(Outcome::Success)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn bench_rows(
    exp: Experiment,
    specs: &[SemanticsSpec],
    sizes: Option<Vec<usize>>,
    per: usize,
    seed: u64,
    gammas: Option<Vec<f64>>,
    dataset: Dataset,
    tau: TauArg,
    eps: f64,
    max_iter: usize,
) -> Result<Vec<ExperimentRow>> {
    Ok(match exp {
        Experiment::Distance => {
            let sizes = sizes.unwrap_or_else(|| vec![1, 2, 5, 10, 20, 50, 100]);
            let mode = match tau {
                TauArg::Ones => LadderTau::Ones,
                TauArg::Random => LadderTau::Random,
            };
            exp_distance_vs_n(specs, &sizes, per, seed, mode)?
        }
        Experiment::Gamma => {
            let gammas = gammas.unwrap_or_else(|| (0..=12).map(|i| i as f64 * 0.25).collect());
            let (data, id) = match dataset {
                Dataset::Ladders => {
                    let sizes = sizes.unwrap_or_else(|| vec![1, 2, 5, 10, 20, 50, 100]);
                    (ladder_dataset(&sizes, per, seed), "ladders")
                }
                Dataset::Random => (random_acyclic_dataset(per, seed), "random_acyclic"),
            };
            let mut rows = Vec::new();
            for spec in specs {
                rows.extend(exp_gamma_sweep(spec.family, spec.q, &gammas, &data, id)?);
            }
            rows
        }
        Experiment::Runtime => {
            let sizes = sizes.unwrap_or_else(|| (1..=30).map(|i| i * 100).collect());
            let cfg = SolveConfig::default()
                .with_mode(Mode::Discrete)
                .with_epsilon(eps)
                .with_max_iter(max_iter);
            exp_runtime_convergence(specs, &sizes, per, &cfg, seed)?
        }
    })
}

/// Splits `mqe,drl:q=max,gamma=2` into `mqe` and `drl:q=max,gamma=2`:
/// items containing `=` belong to the preceding semantics.
fn parse_spec_list(text: &str) -> Result<Vec<SemanticsSpec>> {
    let mut groups: Vec<String> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match groups.last_mut() {
            Some(last) if item.contains('=') && !item.contains(':') => {
                last.push(',');
                last.push_str(item);
            }
            _ => groups.push(item.to_string()),
        }
    }
    if groups.is_empty() {
        bail!("no semantics given");
    }
    groups
        .iter()
        .map(|g| g.parse::<SemanticsSpec>().with_context(|| format!("semantics `{g}`")))
        .collect()
}

fn read_framework(file: &str) -> Result<Qbaf> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(file).with_context(|| format!("reading {file}"))?
    };
    parse_qbaf(&text).with_context(|| format!("parsing {file}"))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        _ => io::stdout().write_all(bytes).context("writing stdout"),
    }
}
