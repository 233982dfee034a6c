//! Aggregation functions: the signed sum, the DF-QuAD product difference and
//! the normalized sum `δ_q`.

use crate::error::{Error, Result};
use crate::framework::Qbaf;

use super::Norm;

/// Sum aggregate of an argument together with its two partial sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumAggregate {
    /// `plus - minus`
    pub alpha: f64,
    /// Total strength of the supporters.
    pub plus: f64,
    /// Total strength of the attackers.
    pub minus: f64,
}

#[inline]
pub(crate) fn sum_at(q: &Qbaf, s: &[f64], a: usize) -> SumAggregate {
    let plus: f64 = q.supporters_of(a).iter().map(|&b| s[b]).sum();
    let minus: f64 = q.attackers_of(a).iter().map(|&b| s[b]).sum();
    SumAggregate {
        alpha: plus - minus,
        plus,
        minus,
    }
}

#[inline]
pub(crate) fn prod_at(q: &Qbaf, s: &[f64], a: usize) -> f64 {
    let att: f64 = q.attackers_of(a).iter().map(|&b| 1.0 - s[b]).product();
    let sup: f64 = q.supporters_of(a).iter().map(|&b| 1.0 - s[b]).product();
    att - sup
}

#[inline]
pub(crate) fn delta_unchecked(agg: SumAggregate, norm: Norm) -> f64 {
    if agg.plus == 0.0 && agg.minus == 0.0 {
        return 0.0;
    }
    let denom = match norm {
        Norm::Sum => agg.plus + agg.minus,
        Norm::Max => agg.plus.max(agg.minus),
    };
    agg.alpha * agg.alpha.abs() / denom
}

/// `α(a)` with its partial sums `α⁺(a)` and `α⁻(a)` under strengths `s`.
pub fn aggregate_sum(q: &Qbaf, s: &[f64], a: &str) -> Result<SumAggregate> {
    Ok(sum_at(q, s, q.index_of(a)?))
}

/// `π(a) = Π_att (1 − s) − Π_sup (1 − s)`; empty products are 1.
pub fn aggregate_prod(q: &Qbaf, s: &[f64], a: &str) -> Result<f64> {
    Ok(prod_at(q, s, q.index_of(a)?))
}

const AGGREGATE_TOLERANCE: f64 = 1e-12;

/// `δ_q = α·|α| / q(α⁺, α⁻)`, or 0 when both partial sums vanish.
pub fn delta_q(alpha: f64, plus: f64, minus: f64, norm: Norm) -> Result<f64> {
    if plus < 0.0 || minus < 0.0 {
        return Err(Error::NegativePartialSum { plus, minus });
    }
    if (alpha - (plus - minus)).abs() > AGGREGATE_TOLERANCE {
        return Err(Error::InconsistentAggregate { alpha, plus, minus });
    }
    Ok(delta_unchecked(SumAggregate { alpha, plus, minus }, norm))
}
