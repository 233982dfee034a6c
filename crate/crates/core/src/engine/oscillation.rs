use crate::semantics::{max_abs_diff, StrengthVector};

/// Smallest period `p` with which the tail of `traj` repeats.
///
/// The last `3p` vectors must satisfy `‖x[i] − x[i−p]‖∞ ≤ tol`. Returns
/// `None` when no period fits in the trajectory.
pub fn detect_oscillation(traj: &[StrengthVector], tol: f64) -> Option<usize> {
    let views: Vec<&[f64]> = traj.iter().map(|v| v.as_slice()).collect();
    smallest_period(&views, tol, 1)
}

pub(crate) fn smallest_period<V: AsRef<[f64]>>(traj: &[V], tol: f64, min_period: usize) -> Option<usize> {
    let len = traj.len();
    (min_period.max(1)..=len / 3)
        .find(|&p| (len - 2 * p..len).all(|i| max_abs_diff(traj[i].as_ref(), traj[i - p].as_ref()) <= tol))
}
