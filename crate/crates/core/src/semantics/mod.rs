//! Modular gradual semantics: each family is an aggregation function composed
//! with an influence function.
//!
//! | family | aggregation        | influence                 |
//! |--------|--------------------|---------------------------|
//! | `dfq`  | product difference | DF-QuAD                   |
//! | `reb`  | sum                | restricted Euler-based    |
//! | `qen`  | sum                | quadratic energy          |
//! | `mlp`  | sum                | sigmoid of shifted logit  |
//! | `mqe`  | `δ_q`              | quadratic energy          |
//! | `drl`  | `δ_q`              | exact clamp               |
//! | `ddrl` | `δ_q`              | smooth clamp (sharpness k)|

mod aggregate;
mod influence;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::Qbaf;

pub use aggregate::{aggregate_prod, aggregate_sum, delta_q, SumAggregate};
pub use influence::{
    ddrelu, ddrelu_derivative, ddrelu_error_bound, drelu, sigmoid, softplus, update_dfq, update_drl, update_mlp,
    update_mqe, update_qen, update_reb, Clamp,
};

/// Semantics family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dfq,
    Reb,
    Qen,
    Mlp,
    Mqe,
    Drl,
    Ddrl,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Dfq,
        Family::Reb,
        Family::Qen,
        Family::Mlp,
        Family::Mqe,
        Family::Drl,
        Family::Ddrl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dfq => "dfq",
            Family::Reb => "reb",
            Family::Qen => "qen",
            Family::Mlp => "mlp",
            Family::Mqe => "mqe",
            Family::Drl => "drl",
            Family::Ddrl => "ddrl",
        }
    }

    /// Whether the family aggregates with `δ_q` (and so reads `q`).
    pub fn uses_norm(self) -> bool {
        matches!(self, Family::Mqe | Family::Drl | Family::Ddrl)
    }

    pub fn uses_gamma(self) -> bool {
        matches!(self, Family::Drl | Family::Ddrl)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSemantics(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The normalizing function `q` of `δ_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    #[default]
    Sum,
    Max,
}

impl Norm {
    pub fn name(self) -> &'static str {
        match self {
            Norm::Sum => "sum",
            Norm::Max => "max",
        }
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Norm::Sum),
            "max" => Ok(Norm::Max),
            other => Err(Error::InvalidSemantics(format!("q must be sum or max, got `{other}`"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully parameterized semantics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemanticsSpec {
    pub family: Family,
    pub q: Norm,
    pub gamma: f64,
    pub k: f64,
}

pub const DEFAULT_GAMMA: f64 = 1.0;
pub const DEFAULT_K: f64 = 100.0;

impl SemanticsSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            q: Norm::Sum,
            gamma: DEFAULT_GAMMA,
            k: DEFAULT_K,
        }
    }

    pub fn with_q(mut self, q: Norm) -> Self {
        self.q = q;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidSemantics(format!(
                "gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        if !(self.k >= 1.0 && self.k.is_finite()) {
            return Err(Error::InvalidSemantics(format!("k must be >= 1, got {}", self.k)));
        }
        Ok(())
    }

    /// The clamp used by the DReLU-family influence.
    pub fn clamp(&self) -> Clamp {
        match self.family {
            Family::Ddrl => Clamp::Differentiable { k: self.k },
            _ => Clamp::Exact,
        }
    }

    /// Worst-case deviation of this semantics from its exact counterpart
    /// (non-zero only for the smooth clamp, on the [0, 1] strength scale).
    pub fn approximation_error(&self) -> f64 {
        match self.family {
            Family::Ddrl => ddrelu_error_bound(self.k) / 2.0,
            _ => 0.0,
        }
    }

    /// Short label used in tables and CSV output, e.g. `drl_max`.
    pub fn label(&self) -> String {
        if self.family.uses_norm() {
            format!("{}_{}", self.family, self.q)
        } else {
            self.family.to_string()
        }
    }

    /// New strength of argument `a` given current strengths `s`.
    #[inline]
    pub(crate) fn update_at(&self, q: &Qbaf, s: &[f64], a: usize) -> f64 {
        let tau = q.tau(a);
        // Without parents every closed form except the smooth clamp equals τ
        // mathematically; return it exactly rather than up to rounding.
        if self.family != Family::Ddrl && q.in_degree(a) == 0 {
            return tau;
        }
        let rho = match self.family {
            Family::Dfq => update_dfq(tau, aggregate::prod_at(q, s, a)),
            Family::Reb => update_reb(tau, aggregate::sum_at(q, s, a).alpha),
            Family::Qen => update_qen(tau, aggregate::sum_at(q, s, a).alpha),
            Family::Mlp => update_mlp(tau, aggregate::sum_at(q, s, a).alpha),
            Family::Mqe => {
                let delta = aggregate::delta_unchecked(aggregate::sum_at(q, s, a), self.q);
                update_mqe(tau, delta)
            }
            Family::Drl | Family::Ddrl => {
                let delta = aggregate::delta_unchecked(aggregate::sum_at(q, s, a), self.q);
                update_drl(tau, delta, self.gamma, self.clamp())
            }
        };
        // Rounding can leave the analytic range by an ulp.
        rho.clamp(0.0, 1.0)
    }
}

impl Default for SemanticsSpec {
    fn default() -> Self {
        Self::new(Family::Ddrl)
    }
}

impl fmt::Display for SemanticsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut params = Vec::new();
        if self.family.uses_norm() {
            params.push(format!("q={}", self.q));
        }
        if self.family.uses_gamma() {
            params.push(format!("gamma={}", self.gamma));
        }
        if self.family == Family::Ddrl {
            params.push(format!("k={}", self.k));
        }
        if !params.is_empty() {
            write!(f, ":{}", params.join(","))?;
        }
        Ok(())
    }
}

/// Textual form `family[:key=value[,key=value...]]` with keys `q`, `gamma`, `k`.
impl FromStr for SemanticsSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = match s.split_once([':', ',']) {
            Some((f, rest)) => (f, rest),
            None => (s, ""),
        };
        let mut spec = SemanticsSpec::new(family.to_ascii_lowercase().parse()?);
        for param in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = param
                .split_once('=')
                .ok_or_else(|| Error::InvalidSemantics(format!("expected key=value, got `{param}`")))?;
            let number = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| Error::InvalidSemantics(format!("`{key}` needs a number, got `{v}`")))
            };
            match key {
                "q" => spec.q = value.parse()?,
                "gamma" => spec.gamma = number(value)?,
                "k" => spec.k = number(value)?,
                other => return Err(Error::InvalidSemantics(format!("unknown parameter `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Strength of every argument, aligned with the framework's argument order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthVector(pub Vec<f64>);

impl StrengthVector {
    /// The initial strengths `τ`.
    pub fn initial(q: &Qbaf) -> Self {
        Self(q.arguments().iter().map(|a| a.tau).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, q: &Qbaf, id: &str) -> Result<f64> {
        Ok(self.0[q.index_of(id)?])
    }

    /// `(id, strength)` pairs sorted by id.
    pub fn sorted_by_id<'a>(&self, q: &'a Qbaf) -> Vec<(&'a str, f64)> {
        let mut out: Vec<_> = (0..q.len()).map(|i| (q.id(i), self.0[i])).collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    /// Max-norm distance to another vector of the same length.
    pub fn max_abs_diff(&self, other: &StrengthVector) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    pub fn in_unit_range(&self) -> bool {
        self.0.iter().all(|v| (0.0..=1.0).contains(v))
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// New strength of argument `a` under `spec`, reading parent strengths from `s`.
pub fn update(spec: &SemanticsSpec, q: &Qbaf, s: &StrengthVector, a: &str) -> Result<f64> {
    let idx = q.index_of(a)?;
    Ok(spec.update_at(q, s.as_slice(), idx))
}
