//! Gradual semantics for quantitative bipolar argumentation frameworks.
//!
//! A framework ([`Qbaf`]) assigns every argument an initial strength in
//! [0, 1]; a semantics ([`SemanticsSpec`]) turns those into final strengths
//! by repeatedly combining each argument's initial strength with the
//! strengths of its attackers and supporters.
//!
//! The crate provides seven semantics families (DF-QuAD, restricted
//! Euler-based, quadratic energy, MLP-based, modified quadratic energy and
//! the exact and smooth clamp-based families), exact evaluation on acyclic
//! frameworks, fixed-point and Euler iteration with convergence diagnostics
//! on cyclic ones, executable checkers for twelve rationality principles,
//! and seeded generators for benchmark families.

pub mod engine;
pub mod error;
pub mod framework;
pub mod genbench;
pub mod graph;
pub mod postulates;
pub mod semantics;

pub use engine::{
    convergence_bound, detect_oscillation, solve, solve_acyclic, solve_continuous, solve_iterative, Mode, SolveConfig,
    SolveResult, Status,
};
pub use error::{EdgeKind, Error, Result};
pub use framework::{parse_qbaf, serialize_qbaf, Argument, Qbaf, QbafBuilder};
pub use graph::{analyze_graph, GraphInfo};
pub use postulates::{check_principle, run_postulate_suite, PostulateReport, Principle};
pub use semantics::{Family, Norm, SemanticsSpec, StrengthVector};
