//! Influence functions and the clamping primitives they are built from.
//!
//! All functions here are pure scalar maps. They assume `tau` in [0, 1] and
//! return a strength in [0, 1].

/// `ln(1 + e^x)` without overflow for large `x`.
#[inline]
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Logistic sigmoid, stable for large `|z|`.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Clamp to [-1, 1].
#[inline]
pub fn drelu(z: f64) -> f64 {
    z.clamp(-1.0, 1.0)
}

/// Smooth clamp to (-1, 1) with sharpness `k`:
/// `(1/k) ln((1 + e^{k(z+1)}) / (1 + e^{k(z-1)})) - 1`.
///
/// Evaluated as `1 − (softplus(k(1−|z|)) − softplus(−k(1+|z|)))/k` with the
/// sign of `z`. The two forms are equal; this one never overflows, is
/// exactly odd, and stays within [-1, 1] and non-decreasing in floating
/// point.
#[inline]
pub fn ddrelu(z: f64, k: f64) -> f64 {
    let a = z.abs();
    let r = 1.0 - (softplus(k * (1.0 - a)) - softplus(-k * (1.0 + a))) / k;
    r.max(0.0).copysign(z)
}

/// Derivative of [`ddrelu`] in `z`: `σ(k(z+1)) − σ(k(z−1))`.
#[inline]
pub fn ddrelu_derivative(z: f64, k: f64) -> f64 {
    sigmoid(k * (z + 1.0)) - sigmoid(k * (z - 1.0))
}

/// Supremum of `|ddrelu(z, k) − drelu(z)|` over all `z`, attained at `z = ±1`.
pub fn ddrelu_error_bound(k: f64) -> f64 {
    std::f64::consts::LN_2 / k
}

/// Influence of DF-QuAD on the product aggregate `pi` in [-1, 1].
pub fn update_dfq(tau: f64, pi: f64) -> f64 {
    if pi <= 0.0 {
        tau * (1.0 + pi)
    } else {
        tau * (1.0 - pi) + pi
    }
}

/// Restricted Euler-based influence on the sum aggregate.
pub fn update_reb(tau: f64, alpha: f64) -> f64 {
    1.0 - (1.0 - tau * tau) / (1.0 + tau * alpha.exp())
}

fn energy_update(tau: f64, x: f64) -> f64 {
    let x2 = x * x;
    let energy = x2 / (1.0 + x2);
    if x <= 0.0 {
        (1.0 - energy) * tau
    } else {
        energy + (1.0 - energy) * tau
    }
}

/// Quadratic-energy influence on the sum aggregate.
pub fn update_qen(tau: f64, alpha: f64) -> f64 {
    energy_update(tau, alpha)
}

/// MLP-based influence: `σ(logit(τ) + α)`, with `τ = 0` and `τ = 1` fixed
/// for every finite aggregate.
pub fn update_mlp(tau: f64, alpha: f64) -> f64 {
    if tau <= 0.0 {
        0.0
    } else if tau >= 1.0 {
        1.0
    } else {
        sigmoid((tau / (1.0 - tau)).ln() + alpha)
    }
}

/// Modified quadratic energy: the quadratic-energy influence on `δ_q`.
pub fn update_mqe(tau: f64, delta: f64) -> f64 {
    energy_update(tau, delta)
}

/// Which clamp the DReLU-family influence uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Clamp {
    Exact,
    Differentiable { k: f64 },
}

impl Clamp {
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Clamp::Exact => drelu(z),
            Clamp::Differentiable { k } => ddrelu(z, k),
        }
    }
}

/// DReLU-family influence: stretch `τ` to [-1, 1], shift by `γ·δ`, clamp,
/// and compress back to [0, 1].
pub fn update_drl(tau: f64, delta: f64, gamma: f64, clamp: Clamp) -> f64 {
    (clamp.apply((2.0 * tau - 1.0) + delta * gamma) + 1.0) / 2.0
}
