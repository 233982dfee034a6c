//! Computing final strengths.
//!
//! * [`solve_acyclic`]: one forward pass in topological order.
//! * [`solve_iterative`]: synchronous fixed-point iteration from `ρ⁰ = τ`;
//!   every argument is updated from the previous iteration's vector.
//! * [`solve_continuous`]: explicit Euler integration of
//!   `dρ/dt = update(ρ) − ρ` with step `h`. With `h = 1` it is exactly the
//!   synchronous iteration.
//!
//! Non-convergence is reported through [`Status`], not as an error.

mod oscillation;

use std::collections::VecDeque;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::Qbaf;
use crate::graph::analyze_graph;
use crate::semantics::{max_abs_diff, Norm, SemanticsSpec, StrengthVector};

pub use oscillation::detect_oscillation;

/// Number of recent vectors kept for oscillation detection.
pub const OSCILLATION_WINDOW: usize = 64;
/// Repetition tolerance for oscillation detection, relative to `ε·h`.
pub const PERIOD_TOLERANCE_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Forward pass when acyclic, synchronous iteration otherwise.
    #[default]
    AcyclicAuto,
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Convergence threshold on the max-norm residual.
    pub epsilon: f64,
    pub max_iter: usize,
    /// Euler step for [`Mode::Continuous`].
    pub step_h: f64,
    pub record_trajectory: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            mode: Mode::AcyclicAuto,
            epsilon: 1e-6,
            max_iter: 10_000,
            step_h: 0.05,
            record_trajectory: false,
        }
    }
}

impl SolveConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_step(mut self, step_h: f64) -> Self {
        self.step_h = step_h;
        self
    }

    pub fn with_trajectory(mut self, record: bool) -> Self {
        self.record_trajectory = record;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be > 0, got {}",
                self.epsilon
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        if !(self.step_h > 0.0 && self.step_h <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "step must lie in (0, 1], got {}",
                self.step_h
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIterExceeded,
    OscillationDetected,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Converged => "converged",
            Status::MaxIterExceeded => "max_iter_exceeded",
            Status::OscillationDetected => "oscillation_detected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub strengths: StrengthVector,
    pub status: Status,
    pub iterations: usize,
    /// Max-norm residual of the last iteration.
    pub residual: f64,
    /// Every vector from `τ` to the final one, when requested.
    pub trajectory: Option<Vec<StrengthVector>>,
    pub oscillation_period: Option<usize>,
}

impl SolveResult {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }
}

/// One forward pass in topological order; exact for acyclic frameworks.
pub fn solve_acyclic(q: &Qbaf, spec: &SemanticsSpec) -> Result<StrengthVector> {
    let info = analyze_graph(q);
    let order = info.topo_order.ok_or(Error::Cyclic)?;
    Ok(forward_pass(q, spec, &order))
}

pub(crate) fn forward_pass(q: &Qbaf, spec: &SemanticsSpec, order: &[usize]) -> StrengthVector {
    let mut s: Vec<f64> = q.arguments().iter().map(|a| a.tau).collect();
    for &a in order {
        s[a] = spec.update_at(q, &s, a);
    }
    StrengthVector(s)
}

/// Synchronous fixed-point iteration.
pub fn solve_iterative(q: &Qbaf, spec: &SemanticsSpec, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    Ok(iterate(q, spec, cfg, 1.0))
}

/// Euler integration of the continuous dynamics with step `cfg.step_h`.
pub fn solve_continuous(q: &Qbaf, spec: &SemanticsSpec, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    Ok(iterate(q, spec, cfg, cfg.step_h))
}

/// Dispatches on `cfg.mode`.
pub fn solve(q: &Qbaf, spec: &SemanticsSpec, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    spec.validate()?;
    match cfg.mode {
        Mode::Discrete => solve_iterative(q, spec, cfg),
        Mode::Continuous => solve_continuous(q, spec, cfg),
        Mode::AcyclicAuto => match analyze_graph(q).topo_order {
            Some(order) => {
                let strengths = forward_pass(q, spec, &order);
                let trajectory = cfg
                    .record_trajectory
                    .then(|| vec![StrengthVector::initial(q), strengths.clone()]);
                Ok(SolveResult {
                    strengths,
                    status: Status::Converged,
                    iterations: 1,
                    residual: 0.0,
                    trajectory,
                    oscillation_period: None,
                })
            }
            None => solve_iterative(q, spec, cfg),
        },
    }
}

fn iterate(q: &Qbaf, spec: &SemanticsSpec, cfg: &SolveConfig, h: f64) -> SolveResult {
    let n = q.len();
    let mut current: Vec<f64> = q.arguments().iter().map(|a| a.tau).collect();
    let mut proposal = vec![0.0; n];
    let mut window: VecDeque<Vec<f64>> = VecDeque::with_capacity(OSCILLATION_WINDOW);
    let mut trajectory = cfg.record_trajectory.then(|| vec![StrengthVector(current.clone())]);
    window.push_back(current.clone());

    // Consecutive states differ by h·residual. A slowly contracting
    // alternation repeats within a fraction of its swing, so the tail must
    // repeat far more tightly than the convergence threshold.
    let periodic_tol = PERIOD_TOLERANCE_FACTOR * cfg.epsilon * h;
    let mut status = Status::MaxIterExceeded;
    let mut residual = f64::INFINITY;
    let mut period = None;
    let mut iterations = 0;

    while iterations < cfg.max_iter {
        for (a, slot) in proposal.iter_mut().enumerate() {
            *slot = spec.update_at(q, &current, a);
        }
        residual = max_abs_diff(&proposal, &current);
        if h == 1.0 {
            std::mem::swap(&mut current, &mut proposal);
        } else {
            for (x, u) in current.iter_mut().zip(&proposal) {
                *x = (*x + h * (u - *x)).clamp(0.0, 1.0);
            }
        }
        iterations += 1;
        if let Some(t) = trajectory.as_mut() {
            t.push(StrengthVector(current.clone()));
        }
        if residual < cfg.epsilon {
            status = Status::Converged;
            break;
        }
        if window.len() == OSCILLATION_WINDOW {
            let mut recycled = window.pop_front().expect("window is full");
            recycled.copy_from_slice(&current);
            window.push_back(recycled);
        } else {
            window.push_back(current.clone());
        }
        let views = window.make_contiguous();
        if let Some(p) = oscillation::smallest_period(views, periodic_tol, 2) {
            status = Status::OscillationDetected;
            period = Some(p);
            break;
        }
    }
    SolveResult {
        strengths: StrengthVector(current),
        status,
        iterations,
        residual,
        trajectory,
        oscillation_period: period,
    }
}

/// Strict upper bound on `γ` below which the smooth-clamp semantics is
/// guaranteed to converge: `2/(3d)` for `sum`, `1/d` for `max`, `+∞` when
/// no argument has a parent.
pub fn convergence_bound(q: &Qbaf, norm: Norm) -> f64 {
    bound_for_degree(analyze_graph(q).max_in_degree, norm)
}

pub fn bound_for_degree(d: usize, norm: Norm) -> f64 {
    if d == 0 {
        return f64::INFINITY;
    }
    let d = d as f64;
    match norm {
        Norm::Sum => 2.0 / (3.0 * d),
        Norm::Max => 1.0 / d,
    }
}

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Writes a trajectory as CSV: `iteration,<ids...>`, one row per vector.
pub fn write_trajectory_csv<W: Write>(q: &Qbaf, traj: &[StrengthVector], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let csv_err = |e: csv::Error| Error::Csv(e.to_string());
    let mut header = vec!["iteration".to_string()];
    header.extend(q.arguments().iter().map(|a| a.id.clone()));
    w.write_record(&header).map_err(csv_err)?;
    for (i, v) in traj.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(v.as_slice().iter().map(|&x| format_float(x)));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}
