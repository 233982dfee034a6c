//! Executable checks for the twelve principles of gradual semantics.
//!
//! Each principle is tested on a sample of acyclic frameworks. A check
//! derives *trials* from the sample: small groups of frameworks together
//! with a [`Claim`] over their final strengths. A failed claim is kept as a
//! [`Violation`] holding everything needed to re-evaluate it in isolation.
//!
//! Limit-style and strict principles are checked with explicit margins:
//! equalities within `1e-9`, strict inequalities by more than `1e-9`, and
//! open-mindedness as a finite probe (at most 64 added parents, thresholds
//! 0.05 and 0.95).

mod checks;
mod claim;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::solve_acyclic;
use crate::error::{Error, Result};
use crate::framework::Qbaf;
use crate::genbench::gen_random_acyclic;
use crate::graph::analyze_graph;
use crate::semantics::{SemanticsSpec, StrengthVector};

pub use claim::{Claim, Observed, Term};

use claim::Solved;

/// Tolerance for equalities between strengths.
pub const TOLERANCE: f64 = 1e-9;
/// Margin required by strict inequalities.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Largest number of added parents tried by the open-mindedness probe.
pub const OPEN_MINDED_MAX_PARENTS: usize = 64;
/// The probe passes once the strength is below this value (above one
/// minus it for supporters).
pub const OPEN_MINDED_THRESHOLD: f64 = 0.05;

/// Stored witnesses per report; the total count is always kept.
const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Principle {
    Anonymity,
    Independence,
    Directionality,
    Equivalence,
    Stability,
    Neutrality,
    Monotonicity,
    Reinforcement,
    Weakening,
    Strengthening,
    Duality,
    OpenMindedness,
}

impl Principle {
    /// In the column order of the usual comparison table.
    pub const ALL: [Principle; 12] = [
        Principle::Anonymity,
        Principle::Independence,
        Principle::Directionality,
        Principle::Equivalence,
        Principle::Stability,
        Principle::Neutrality,
        Principle::Monotonicity,
        Principle::Reinforcement,
        Principle::Weakening,
        Principle::Strengthening,
        Principle::Duality,
        Principle::OpenMindedness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Principle::Anonymity => "anonymity",
            Principle::Independence => "independence",
            Principle::Directionality => "directionality",
            Principle::Equivalence => "equivalence",
            Principle::Stability => "stability",
            Principle::Neutrality => "neutrality",
            Principle::Monotonicity => "monotonicity",
            Principle::Reinforcement => "reinforcement",
            Principle::Weakening => "weakening",
            Principle::Strengthening => "strengthening",
            Principle::Duality => "duality",
            Principle::OpenMindedness => "open_mindedness",
        }
    }

    /// Two-letter column label. Stability and Strengthening share "St".
    pub fn abbrev(self) -> &'static str {
        match self {
            Principle::Anonymity => "An",
            Principle::Independence => "In",
            Principle::Directionality => "Di",
            Principle::Equivalence => "Eq",
            Principle::Stability => "St",
            Principle::Neutrality => "Ne",
            Principle::Monotonicity => "Mo",
            Principle::Reinforcement => "Re",
            Principle::Weakening => "We",
            Principle::Strengthening => "St",
            Principle::Duality => "Du",
            Principle::OpenMindedness => "Op",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Principle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        let alias = match key.as_str() {
            "monotony" => Some(Principle::Monotonicity),
            "openmindedness" => Some(Principle::OpenMindedness),
            _ => None,
        };
        alias
            .or_else(|| Principle::ALL.into_iter().find(|p| p.name() == key))
            .ok_or_else(|| Error::UnknownPrinciple(s.to_string()))
    }
}

/// A failed trial: its frameworks, the claim, and the strengths that
/// made the claim fail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub frameworks: Vec<Qbaf>,
    pub claim: Claim,
    pub observed: Vec<Observed>,
}

impl Violation {
    /// Re-solves the witness frameworks; `true` when the claim still fails.
    pub fn recheck(&self, spec: &SemanticsSpec) -> Result<bool> {
        let strengths = solve_all(&self.frameworks, spec)?;
        let ctx = Solved {
            frameworks: &self.frameworks,
            strengths: &strengths,
        };
        Ok(!self.claim.holds(&ctx)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostulateReport {
    pub principle: Principle,
    pub semantics: SemanticsSpec,
    /// Number of claims evaluated.
    pub trials: usize,
    /// Number of failed claims; at most a few are kept in `violations`.
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

/// A group of frameworks solved together and the claims made about them.
pub(crate) struct Trial {
    pub frameworks: Vec<Qbaf>,
    pub claims: Vec<Claim>,
}

fn solve_all(frameworks: &[Qbaf], spec: &SemanticsSpec) -> Result<Vec<StrengthVector>> {
    frameworks.iter().map(|q| solve_acyclic(q, spec)).collect()
}

/// Checks one principle on a sample of acyclic frameworks.
pub fn check_principle(principle: Principle, spec: &SemanticsSpec, sample: &[Qbaf]) -> Result<PostulateReport> {
    spec.validate()?;
    let mut strengths = Vec::with_capacity(sample.len());
    for q in sample {
        if !analyze_graph(q).acyclic {
            return Err(Error::Cyclic);
        }
        strengths.push(solve_acyclic(q, spec)?);
    }
    let env = checks::Env {
        spec,
        sample,
        strengths: &strengths,
    };
    let mut report = PostulateReport {
        principle,
        semantics: *spec,
        trials: 0,
        violation_count: 0,
        violations: Vec::new(),
        passed: true,
    };
    let mut evaluate = |trial: Trial| -> Result<()> {
        let rho = solve_all(&trial.frameworks, spec)?;
        let ctx = Solved {
            frameworks: &trial.frameworks,
            strengths: &rho,
        };
        for claim in &trial.claims {
            report.trials += 1;
            if claim.holds(&ctx)? {
                continue;
            }
            report.violation_count += 1;
            if report.violations.len() < MAX_WITNESSES {
                let mut observed = Vec::new();
                claim.failures(&ctx, &mut observed)?;
                report.violations.push(Violation {
                    frameworks: trial.frameworks.clone(),
                    claim: claim.clone(),
                    observed,
                });
            }
        }
        Ok(())
    };
    for trial in checks::canonical(principle, &env) {
        evaluate(trial)?;
    }
    for i in 0..sample.len() {
        for trial in checks::from_sample(principle, &env, i) {
            evaluate(trial)?;
        }
    }
    report.passed = report.violation_count == 0;
    Ok(report)
}

/// Runs all twelve checks on `n_frameworks` random acyclic frameworks
/// generated from `seed`.
pub fn run_postulate_suite(spec: &SemanticsSpec, n_frameworks: usize, seed: u64) -> Result<Vec<PostulateReport>> {
    if n_frameworks == 0 {
        return Err(Error::InvalidConfig("n_frameworks must be at least 1".into()));
    }
    let sample: Vec<Qbaf> = (0..n_frameworks as u64)
        .map(|i| gen_random_acyclic(seed.wrapping_add(i)))
        .collect();
    Principle::ALL
        .iter()
        .map(|&p| check_principle(p, spec, &sample))
        .collect()
}

/// Reports as a JSON array.
pub fn reports_to_json(reports: &[PostulateReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Argument;
    use crate::semantics::Family;

    #[test]
    fn principle_names_round_trip() {
        for p in Principle::ALL {
            assert_eq!(p.name().parse::<Principle>().unwrap(), p);
        }
        assert_eq!(
            "Open-mindedness".parse::<Principle>().unwrap(),
            Principle::OpenMindedness
        );
        assert!(matches!(
            "fairness".parse::<Principle>(),
            Err(Error::UnknownPrinciple(_))
        ));
    }

    #[test]
    fn stability_on_a_single_argument() {
        let q = Qbaf::new(vec![Argument::new("a", 0.7)], &[] as &[(&str, &str)], &[]).unwrap();
        let r = check_principle(Principle::Stability, &SemanticsSpec::new(Family::Mqe), &[q]).unwrap();
        assert!(r.passed);
        assert!(r.trials >= 1);
    }

    #[test]
    fn cyclic_samples_are_rejected() {
        let q = Qbaf::new(
            vec![Argument::new("a", 0.5), Argument::new("b", 0.5)],
            &[("a", "b"), ("b", "a")],
            &[],
        )
        .unwrap();
        let err = check_principle(Principle::Anonymity, &SemanticsSpec::default(), &[q]).unwrap_err();
        assert_eq!(err, Error::Cyclic);
    }

    #[test]
    fn weakening_witness_for_the_product_semantics() {
        let r = check_principle(Principle::Weakening, &SemanticsSpec::new(Family::Dfq), &[]).unwrap();
        assert!(!r.passed);
        for v in &r.violations {
            assert!(v.recheck(&SemanticsSpec::new(Family::Dfq)).unwrap());
        }
    }

    #[test]
    fn reports_serialize() {
        let spec = SemanticsSpec::new(Family::Reb);
        let r = check_principle(Principle::Duality, &spec, &[gen_random_acyclic(1)]).unwrap();
        assert!(!r.passed);
        let json = reports_to_json(std::slice::from_ref(&r));
        let back: Vec<PostulateReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back[0].violation_count, r.violation_count);
        assert!(back[0].violations[0].recheck(&spec).unwrap());
    }
}
