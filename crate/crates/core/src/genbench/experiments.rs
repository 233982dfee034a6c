use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{format_float, solve, solve_acyclic, SolveConfig};
use crate::error::{Error, Result};
use crate::framework::Qbaf;
use crate::semantics::{Family, Norm, SemanticsSpec};

use super::generators::{gen_random_acyclic, gen_random_cyclic, Ladder, LadderTau};
use super::rng::stream;

/// Mean number of incoming edges per argument in the cyclic benchmark.
pub const CYCLIC_MEAN_IN_DEGREE: f64 = 4.0;

/// Edge density giving [`CYCLIC_MEAN_IN_DEGREE`] at size `n`.
pub fn cyclic_density(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    (CYCLIC_MEAN_IN_DEGREE / (n as f64 - 1.0)).min(1.0)
}

/// One line of an experiment CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub framework_id: String,
    pub semantics: String,
    /// Empty for families without a normalization.
    pub q: String,
    /// `None` for families without `γ`.
    pub gamma: Option<f64>,
    pub n: usize,
    pub metric: String,
    pub value: f64,
    pub runtime_ms: f64,
}

pub const CSV_HEADER: [&str; 8] = [
    "framework_id",
    "semantics",
    "q",
    "gamma",
    "n",
    "metric",
    "value",
    "runtime_ms",
];

impl ExperimentRow {
    fn new(framework_id: String, spec: &SemanticsSpec, n: usize, metric: &str, value: f64, runtime_ms: f64) -> Self {
        Self {
            framework_id,
            semantics: spec.family.name().to_string(),
            q: if spec.family.uses_norm() {
                spec.q.name().to_string()
            } else {
                String::new()
            },
            gamma: spec.family.uses_gamma().then_some(spec.gamma),
            n,
            metric: metric.to_string(),
            value,
            runtime_ms,
        }
    }
}

/// Writes rows with the fixed header; floats carry 17 significant digits.
pub fn write_rows_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Csv(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.framework_id.clone(),
            r.semantics.clone(),
            r.q.clone(),
            r.gamma.map(format_float).unwrap_or_default(),
            r.n.to_string(),
            r.metric.clone(),
            format_float(r.value),
            format_float(r.runtime_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn sorted_sizes(ns: &[usize]) -> Result<Vec<usize>> {
    if ns.is_empty() {
        return Err(Error::InvalidConfig("list of sizes is empty".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    Ok(ns)
}

fn validate_specs(specs: &[SemanticsSpec]) -> Result<()> {
    if specs.is_empty() {
        return Err(Error::InvalidConfig("no semantics given".into()));
    }
    specs.iter().try_for_each(SemanticsSpec::validate)
}

/// Mean `|ρ(g) − τ(g)|` over `per_n` nested ladder sequences, for every
/// size in `ns` and every semantics. Ladder `i` is grown from the smallest
/// size by augmentation, so larger ladders extend smaller ones.
pub fn exp_distance_vs_n(
    specs: &[SemanticsSpec],
    ns: &[usize],
    per_n: usize,
    seed: u64,
    mode: LadderTau,
) -> Result<Vec<ExperimentRow>> {
    validate_specs(specs)?;
    let ns = sorted_sizes(ns)?;
    if per_n == 0 {
        return Err(Error::InvalidConfig("per_n must be positive".into()));
    }
    let mut sums = vec![vec![0.0; specs.len()]; ns.len()];
    let mut times = vec![vec![0.0; specs.len()]; ns.len()];
    for i in 0..per_n {
        let mut rng = stream(seed, i as u64);
        let mut ladder = Ladder::sample(ns[0], mode, &mut rng);
        for (ni, &n) in ns.iter().enumerate() {
            ladder.augment(n, mode, &mut rng);
            let q = ladder.to_qbaf();
            let g = q.index_of("g")?;
            for (si, spec) in specs.iter().enumerate() {
                let start = Instant::now();
                let rho = solve_acyclic(&q, spec)?;
                times[ni][si] += elapsed_ms(start);
                sums[ni][si] += (rho.0[g] - q.tau(g)).abs();
            }
        }
    }
    let mut rows = Vec::with_capacity(ns.len() * specs.len());
    for (ni, &n) in ns.iter().enumerate() {
        for (si, spec) in specs.iter().enumerate() {
            rows.push(ExperimentRow::new(
                format!("ladder_n{n}"),
                spec,
                n,
                "mean_goal_distance",
                sums[ni][si] / per_n as f64,
                times[ni][si],
            ));
        }
    }
    Ok(rows)
}

/// `per_n` independent ladders for each size in `ns`.
pub fn ladder_dataset(ns: &[usize], per_n: usize, seed: u64) -> Vec<Qbaf> {
    let mut out = Vec::with_capacity(ns.len() * per_n);
    for (ni, &n) in ns.iter().enumerate() {
        for i in 0..per_n {
            let mut rng = stream(seed, (ni * per_n + i) as u64);
            out.push(Ladder::sample(n, LadderTau::Random, &mut rng).to_qbaf());
        }
    }
    out
}

/// `count` random acyclic frameworks with consecutive seeds.
pub fn random_acyclic_dataset(count: usize, seed: u64) -> Vec<Qbaf> {
    (0..count as u64)
        .map(|i| gen_random_acyclic(seed.wrapping_add(i)))
        .collect()
}

/// Mean `|ρ(x) − τ(x)|` pooled over every argument of every acyclic
/// framework in `data`, for each `γ` in `gammas` (each within [0, 3]).
pub fn exp_gamma_sweep(
    family: Family,
    q: Norm,
    gammas: &[f64],
    data: &[Qbaf],
    dataset_id: &str,
) -> Result<Vec<ExperimentRow>> {
    if !family.uses_gamma() {
        return Err(Error::InvalidConfig(format!("{family} has no gamma parameter")));
    }
    if let Some(g) = gammas.iter().find(|g| !(0.0..=3.0).contains(*g)) {
        return Err(Error::InvalidConfig(format!("gamma {g} outside [0, 3]")));
    }
    let total_args: usize = data.iter().map(Qbaf::len).sum();
    let mut rows = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let spec = SemanticsSpec::new(family).with_q(q).with_gamma(gamma);
        let start = Instant::now();
        let mut sum = 0.0;
        for fw in data {
            let rho = solve_acyclic(fw, &spec)?;
            sum += rho
                .0
                .iter()
                .zip(fw.arguments())
                .map(|(r, a)| (r - a.tau).abs())
                .sum::<f64>();
        }
        let mean = if total_args == 0 { 0.0 } else { sum / total_args as f64 };
        rows.push(ExperimentRow::new(
            dataset_id.to_string(),
            &spec,
            total_args,
            "mean_distance",
            mean,
            elapsed_ms(start),
        ));
    }
    Ok(rows)
}

/// Solves `per_size` random cyclic frameworks of each size at the
/// benchmark density and reports, per semantics and size, the fraction
/// that converged, the mean iteration count and the mean wall time of the
/// converged runs.
pub fn exp_runtime_convergence(
    specs: &[SemanticsSpec],
    sizes: &[usize],
    per_size: usize,
    cfg: &SolveConfig,
    seed: u64,
) -> Result<Vec<ExperimentRow>> {
    validate_specs(specs)?;
    cfg.validate()?;
    let sizes = sorted_sizes(sizes)?;
    if per_size == 0 {
        return Err(Error::InvalidConfig("per_size must be positive".into()));
    }
    let mut rows = Vec::new();
    for &n in &sizes {
        let frameworks: Vec<Qbaf> = (0..per_size as u64)
            .map(|i| gen_random_cyclic(n, cyclic_density(n), seed.wrapping_add(i)))
            .collect();
        for spec in specs {
            let (mut converged, mut iters, mut ms) = (0usize, 0usize, 0.0);
            for fw in &frameworks {
                let start = Instant::now();
                let r = solve(fw, spec, cfg)?;
                let t = elapsed_ms(start);
                if r.converged() {
                    converged += 1;
                    iters += r.iterations;
                    ms += t;
                }
            }
            let id = format!("cyclic_n{n}");
            let frac = converged as f64 / per_size as f64;
            let (mean_iter, mean_ms) = if converged == 0 {
                (f64::NAN, f64::NAN)
            } else {
                (iters as f64 / converged as f64, ms / converged as f64)
            };
            rows.push(ExperimentRow::new(id.clone(), spec, n, "converged_fraction", frac, ms));
            rows.push(ExperimentRow::new(
                id.clone(),
                spec,
                n,
                "mean_iterations",
                mean_iter,
                ms,
            ));
            rows.push(ExperimentRow::new(id, spec, n, "mean_runtime_ms", mean_ms, ms));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_size_gives_one_row_per_semantics() {
        let specs: Vec<SemanticsSpec> = Family::ALL.iter().map(|&f| SemanticsSpec::new(f)).collect();
        let rows = exp_distance_vs_n(&specs, &[3], 4, 1, LadderTau::Random).unwrap();
        assert_eq!(rows.len(), specs.len());
        assert!(rows.iter().all(|r| r.n == 3 && r.value >= 0.0));
        assert_eq!(rows[0].semantics, "dfq");
        assert_eq!(rows[0].q, "");
        assert_eq!(rows[5].gamma, Some(1.0));
    }

    #[test]
    fn sweep_validates_gamma_range() {
        let data = ladder_dataset(&[1, 2], 2, 0);
        assert!(exp_gamma_sweep(Family::Drl, Norm::Sum, &[0.0, 3.5], &data, "d").is_err());
        assert!(exp_gamma_sweep(Family::Reb, Norm::Sum, &[1.0], &data, "d").is_err());
        let rows = exp_gamma_sweep(Family::Drl, Norm::Sum, &[0.0, 1.0], &data, "d").unwrap();
        assert_eq!(rows[0].value, 0.0);
        assert!(rows[1].value > 0.0);
    }

    #[test]
    fn csv_layout() {
        let spec = SemanticsSpec::new(Family::Drl).with_q(Norm::Max);
        let rows = vec![ExperimentRow::new("f".into(), &spec, 2, "m", 0.5, 1.0)];
        let mut buf = Vec::new();
        write_rows_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("framework_id,semantics,q,gamma,n,metric,value,runtime_ms")
        );
        assert_eq!(
            lines.next(),
            Some("f,drl,max,1.0000000000000000e0,2,m,5.0000000000000000e-1,1.0000000000000000e0")
        );
    }

    #[test]
    fn runtime_experiment_reports_three_metrics() {
        let specs = [SemanticsSpec::new(Family::Ddrl)];
        let rows = exp_runtime_convergence(&specs, &[20], 3, &SolveConfig::default(), 5).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].metric, "converged_fraction");
        assert!((0.0..=1.0).contains(&rows[0].value));
    }
}
