//! Seeded generators for benchmark frameworks and drivers for the
//! numerical experiments.
//!
//! Every generator takes a `u64` seed and uses a ChaCha8 stream, so the
//! same seed reproduces the same framework on any platform.

mod experiments;
mod generators;
mod rng;
mod search;

pub use experiments::{
    cyclic_density, exp_distance_vs_n, exp_gamma_sweep, exp_runtime_convergence, ladder_dataset,
    random_acyclic_dataset, write_rows_csv, ExperimentRow, CSV_HEADER, CYCLIC_MEAN_IN_DEGREE,
};
pub use generators::{gen_ladder, gen_one_cycle, gen_random_acyclic, gen_random_cyclic, Ladder, LadderTau};
pub use rng::{stream, BenchRng};
pub use search::{find_divergence_witness, search_small_cyclic, Witness};
