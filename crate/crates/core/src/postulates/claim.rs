use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::framework::Qbaf;
use crate::semantics::StrengthVector;

/// A value a claim compares: a final strength in one of the trial's
/// frameworks, a constant, or one minus another term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Strength { framework: usize, id: String },
    Const(f64),
    OneMinus(Box<Term>),
}

impl Term {
    pub fn strength(framework: usize, id: impl Into<String>) -> Self {
        Term::Strength {
            framework,
            id: id.into(),
        }
    }

    pub fn one_minus(t: Term) -> Self {
        Term::OneMinus(Box::new(t))
    }

    fn eval(&self, ctx: &Solved<'_>) -> Result<f64> {
        Ok(match self {
            Term::Strength { framework, id } => {
                let q = &ctx.frameworks[*framework];
                ctx.strengths[*framework].0[q.index_of(id)?]
            }
            Term::Const(c) => *c,
            Term::OneMinus(t) => 1.0 - t.eval(ctx)?,
        })
    }

    fn strengths_into(&self, ctx: &Solved<'_>, out: &mut Vec<Observed>) -> Result<()> {
        match self {
            Term::Strength { framework, id } => out.push(Observed {
                framework: *framework,
                id: id.clone(),
                value: self.eval(ctx)?,
            }),
            Term::Const(_) => {}
            Term::OneMinus(t) => t.strengths_into(ctx, out)?,
        }
        Ok(())
    }
}

/// A predicate over the final strengths of a trial's frameworks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `|lhs − rhs| ≤ tol`
    Equal {
        lhs: Term,
        rhs: Term,
        tol: f64,
    },
    /// `lhs ≥ rhs − tol`
    AtLeast {
        lhs: Term,
        rhs: Term,
        tol: f64,
    },
    /// `lhs > rhs + margin`
    Greater {
        lhs: Term,
        rhs: Term,
        margin: f64,
    },
    /// `lhs < rhs − margin`
    Less {
        lhs: Term,
        rhs: Term,
        margin: f64,
    },
    /// `lo < term < hi`
    Between {
        term: Term,
        lo: f64,
        hi: f64,
    },
    All(Vec<Claim>),
    Any(Vec<Claim>),
    /// Holds vacuously when `cond` fails.
    Given {
        cond: Box<Claim>,
        then: Box<Claim>,
    },
}

/// One strength value that took part in a failed comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observed {
    pub framework: usize,
    pub id: String,
    pub value: f64,
}

pub(crate) struct Solved<'a> {
    pub frameworks: &'a [Qbaf],
    pub strengths: &'a [StrengthVector],
}

impl Claim {
    pub fn given(cond: Claim, then: Claim) -> Self {
        Claim::Given {
            cond: Box::new(cond),
            then: Box::new(then),
        }
    }

    pub(crate) fn holds(&self, ctx: &Solved<'_>) -> Result<bool> {
        Ok(match self {
            Claim::Equal { lhs, rhs, tol } => (lhs.eval(ctx)? - rhs.eval(ctx)?).abs() <= *tol,
            Claim::AtLeast { lhs, rhs, tol } => lhs.eval(ctx)? >= rhs.eval(ctx)? - tol,
            Claim::Greater { lhs, rhs, margin } => lhs.eval(ctx)? > rhs.eval(ctx)? + margin,
            Claim::Less { lhs, rhs, margin } => lhs.eval(ctx)? < rhs.eval(ctx)? - margin,
            Claim::Between { term, lo, hi } => {
                let v = term.eval(ctx)?;
                *lo < v && v < *hi
            }
            Claim::All(cs) => {
                for c in cs {
                    if !c.holds(ctx)? {
                        return Ok(false);
                    }
                }
                true
            }
            Claim::Any(cs) => {
                for c in cs {
                    if c.holds(ctx)? {
                        return Ok(true);
                    }
                }
                false
            }
            Claim::Given { cond, then } => !cond.holds(ctx)? || then.holds(ctx)?,
        })
    }

    /// Strength values involved in the failing parts of the claim.
    pub(crate) fn failures(&self, ctx: &Solved<'_>, out: &mut Vec<Observed>) -> Result<()> {
        if self.holds(ctx)? {
            return Ok(());
        }
        match self {
            Claim::Equal { lhs, rhs, .. }
            | Claim::AtLeast { lhs, rhs, .. }
            | Claim::Greater { lhs, rhs, .. }
            | Claim::Less { lhs, rhs, .. } => {
                lhs.strengths_into(ctx, out)?;
                rhs.strengths_into(ctx, out)?;
            }
            Claim::Between { term, .. } => term.strengths_into(ctx, out)?,
            Claim::All(cs) | Claim::Any(cs) => {
                for c in cs {
                    c.failures(ctx, out)?;
                }
            }
            Claim::Given { cond, then } => {
                cond.failures(ctx, out)?;
                then.failures(ctx, out)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Argument;

    fn ctx_fixture() -> (Vec<Qbaf>, Vec<StrengthVector>) {
        let q = Qbaf::new(
            vec![Argument::new("a", 0.2), Argument::new("b", 0.8)],
            &[] as &[(&str, &str)],
            &[],
        )
        .unwrap();
        (vec![q], vec![StrengthVector(vec![0.2, 0.8])])
    }

    #[test]
    fn comparisons() {
        let (f, s) = ctx_fixture();
        let ctx = Solved {
            frameworks: &f,
            strengths: &s,
        };
        let a = || Term::strength(0, "a");
        let b = || Term::strength(0, "b");
        let dual = Claim::Equal {
            lhs: b(),
            rhs: Term::one_minus(a()),
            tol: 1e-12,
        };
        assert!(dual.holds(&ctx).unwrap());
        assert!(Claim::Less {
            lhs: a(),
            rhs: b(),
            margin: 0.5
        }
        .holds(&ctx)
        .unwrap());
        assert!(!Claim::Less {
            lhs: a(),
            rhs: b(),
            margin: 0.7
        }
        .holds(&ctx)
        .unwrap());
        let vacuous = Claim::given(
            Claim::Between {
                term: a(),
                lo: 0.5,
                hi: 1.0,
            },
            Claim::Greater {
                lhs: a(),
                rhs: b(),
                margin: 0.0,
            },
        );
        assert!(vacuous.holds(&ctx).unwrap());
        let bad = Claim::Any(vec![Claim::AtLeast {
            lhs: a(),
            rhs: b(),
            tol: 0.0,
        }]);
        assert!(!bad.holds(&ctx).unwrap());
        let mut seen = Vec::new();
        bad.failures(&ctx, &mut seen).unwrap();
        assert_eq!(seen.len(), 2);
        assert!(Claim::Equal {
            lhs: Term::strength(0, "zz"),
            rhs: a(),
            tol: 0.0
        }
        .holds(&ctx)
        .is_err());
    }
}
