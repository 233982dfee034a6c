use crate::engine::{solve_iterative, SolveConfig, SolveResult, Status};
use crate::framework::{Qbaf, QbafBuilder};
use crate::graph::analyze_graph;
use crate::semantics::SemanticsSpec;

/// A framework on which synchronous iteration does not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub qbaf: Qbaf,
    pub result: SolveResult,
}

/// Visits every cyclic framework with 2 to `max_args` arguments, each
/// ordered pair of distinct arguments carrying no edge, an attack or a
/// support, and initial strengths drawn from `taus`. Stops at the first
/// framework for which `visit` returns `Some`.
pub fn search_small_cyclic<T>(max_args: usize, taus: &[f64], mut visit: impl FnMut(&Qbaf) -> Option<T>) -> Option<T> {
    if taus.is_empty() {
        return None;
    }
    for n in 2..=max_args {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|f| (0..n).filter(move |&t| t != f).map(move |t| (f, t)))
            .collect();
        let edge_codes = 3u64.checked_pow(pairs.len() as u32)?;
        let tau_codes = (taus.len() as u64).checked_pow(n as u32)?;
        for edges in 0..edge_codes {
            let mut labels = Vec::with_capacity(pairs.len());
            let mut c = edges;
            for _ in 0..pairs.len() {
                labels.push(c % 3);
                c /= 3;
            }
            let skeleton = build(n, &pairs, &labels, &vec![0.0; n]);
            if analyze_graph(&skeleton).acyclic {
                continue;
            }
            for tc in 0..tau_codes {
                let mut c = tc;
                let t: Vec<f64> = (0..n)
                    .map(|_| {
                        let v = taus[(c % taus.len() as u64) as usize];
                        c /= taus.len() as u64;
                        v
                    })
                    .collect();
                let q = build(n, &pairs, &labels, &t);
                if let Some(found) = visit(&q) {
                    return Some(found);
                }
            }
        }
    }
    None
}

fn build(n: usize, pairs: &[(usize, usize)], labels: &[u64], taus: &[f64]) -> Qbaf {
    let mut b = QbafBuilder::new();
    for (i, &t) in taus.iter().enumerate().take(n) {
        b.argument(format!("x{i}"), t);
    }
    for (&(f, t), &l) in pairs.iter().zip(labels) {
        match l {
            1 => {
                b.attack(f, t);
            }
            2 => {
                b.support(f, t);
            }
            _ => {}
        }
    }
    b.build().expect("enumerated framework is valid")
}

/// First small cyclic framework on which synchronous iteration under
/// `spec` settles into an oscillation of the given period.
pub fn find_divergence_witness(
    spec: &SemanticsSpec,
    max_args: usize,
    taus: &[f64],
    cfg: &SolveConfig,
    period: usize,
) -> Option<Witness> {
    search_small_cyclic(max_args, taus, |q| {
        let result = solve_iterative(q, spec, cfg).ok()?;
        (result.status == Status::OscillationDetected && result.oscillation_period == Some(period)).then(|| Witness {
            qbaf: q.clone(),
            result,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Family;

    #[test]
    fn enumeration_counts_cyclic_two_argument_frameworks() {
        let mut count = 0;
        let none: Option<()> = search_small_cyclic(2, &[0.0, 1.0], |_| {
            count += 1;
            None
        });
        assert!(none.is_none());
        // four cyclic labelings of the 2-cycle, four strength assignments
        assert_eq!(count, 16);
    }

    #[test]
    fn exact_clamp_has_a_two_cycle_witness() {
        let spec = SemanticsSpec::new(Family::Drl);
        let cfg = SolveConfig::default().with_max_iter(500);
        let w = find_divergence_witness(&spec, 3, &[0.0, 0.5, 1.0], &cfg, 2).expect("witness");
        assert_eq!(w.result.oscillation_period, Some(2));
        assert!(!analyze_graph(&w.qbaf).acyclic);
    }
}
