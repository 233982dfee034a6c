use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qbaf::semantics::ddrelu;
use qbaf::{solve_acyclic, solve_iterative, Family, Mode, Norm, SemanticsSpec, SolveConfig};
use qbaf_bench::{acyclic_fixture, cyclic_fixture};

fn families() -> Vec<SemanticsSpec> {
    vec![
        SemanticsSpec::new(Family::Dfq),
        SemanticsSpec::new(Family::Qen),
        SemanticsSpec::new(Family::Mqe),
        SemanticsSpec::new(Family::Drl).with_q(Norm::Max),
        SemanticsSpec::new(Family::Ddrl),
    ]
}

fn forward_pass(c: &mut Criterion) {
    let q = acyclic_fixture(7);
    let mut group = c.benchmark_group("acyclic");
    for spec in families() {
        group.bench_with_input(BenchmarkId::from_parameter(spec.label()), &spec, |b, spec| {
            b.iter(|| solve_acyclic(black_box(&q), spec).unwrap())
        });
    }
    group.finish();
}

fn iteration(c: &mut Criterion) {
    // a tiny epsilon keeps iterating until an exact fixed point or the cap
    let cfg = SolveConfig::default()
        .with_mode(Mode::Discrete)
        .with_epsilon(1e-300)
        .with_max_iter(100);
    let mut group = c.benchmark_group("up_to_100_iterations");
    group.sample_size(20);
    for n in [100, 500, 1000, 3000] {
        let q = cyclic_fixture(n, 11);
        for spec in [SemanticsSpec::new(Family::Mqe), SemanticsSpec::new(Family::Ddrl)] {
            group.bench_with_input(BenchmarkId::new(spec.label(), n), &q, |b, q| {
                b.iter(|| solve_iterative(black_box(q), &spec, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn smooth_clamp(c: &mut Criterion) {
    let grid: Vec<f64> = (0..=6000).map(|i| -3.0 + i as f64 * 1e-3).collect();
    c.bench_function("ddrelu_grid", |b| {
        b.iter(|| grid.iter().map(|&z| ddrelu(black_box(z), 100.0)).sum::<f64>())
    });
}

criterion_group!(benches, forward_pass, iteration, smooth_clamp);
criterion_main!(benches);
