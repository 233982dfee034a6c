use proptest::prelude::*;
use qbaf::genbench::{gen_ladder, gen_random_acyclic, gen_random_cyclic, stream, Ladder, LadderTau};
use qbaf::semantics::{
    aggregate_sum, ddrelu, ddrelu_derivative, ddrelu_error_bound, delta_q, drelu, update_dfq, update_drl, update_mlp,
    update_mqe, update_qen, update_reb, Clamp,
};
use qbaf::{
    analyze_graph, convergence_bound, parse_qbaf, serialize_qbaf, solve_acyclic, solve_continuous, solve_iterative,
    Family, Mode, Norm, SemanticsSpec, SolveConfig,
};

const ALL_FAMILIES: [Family; 7] = [
    Family::Dfq,
    Family::Reb,
    Family::Qen,
    Family::Mlp,
    Family::Mqe,
    Family::Drl,
    Family::Ddrl,
];

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn norm() -> impl Strategy<Value = Norm> {
    prop_oneof![Just(Norm::Sum), Just(Norm::Max)]
}

proptest! {
    #[test]
    fn influence_stays_in_range(tau in unit(), alpha in -50.0..50.0f64, pi in -1.0..=1.0f64, gamma in 0.0..3.0f64) {
        let delta = alpha.clamp(-1.0, 1.0) * alpha.abs().min(1.0);
        for v in [
            update_dfq(tau, pi),
            update_reb(tau, alpha),
            update_qen(tau, alpha),
            update_mlp(tau, alpha),
            update_mqe(tau, delta),
            update_drl(tau, alpha, gamma, Clamp::Exact),
            update_drl(tau, alpha, gamma, Clamp::Differentiable { k: 100.0 }),
        ] {
            prop_assert!((0.0..=1.0).contains(&v), "{v}");
        }
    }

    #[test]
    fn delta_properties(plus in 0.0..20.0f64, minus in 0.0..20.0f64) {
        let alpha = plus - minus;
        let sum = delta_q(alpha, plus, minus, Norm::Sum).unwrap();
        let max = delta_q(alpha, plus, minus, Norm::Max).unwrap();
        for d in [sum, max] {
            prop_assert!(d.abs() <= alpha.abs() + 1e-12);
            prop_assert!(d == 0.0 || d.signum() == alpha.signum());
        }
        prop_assert!(sum.abs() <= max.abs() + 1e-12);
        // swapping the partial sums negates δ
        prop_assert_eq!(delta_q(-alpha, minus, plus, Norm::Sum).unwrap(), -sum);
    }

    #[test]
    fn smooth_clamp_is_odd_and_close(z in -3.0..3.0f64, k in 1.0..500.0f64) {
        let f = ddrelu(z, k);
        prop_assert_eq!(f, -ddrelu(-z, k));
        prop_assert!((f - drelu(z)).abs() <= ddrelu_error_bound(k) + 1e-12);
        prop_assert!((-1.0..=1.0).contains(&f));
    }

    #[test]
    fn smooth_clamp_is_monotone(z in -3.0..3.0f64, step in 1e-9..1.0f64, k in 1.0..500.0f64) {
        prop_assert!(ddrelu(z, k) <= ddrelu(z + step, k));
    }

    // Where the derivative is not vanishingly small the analytic derivative
    // and a central difference agree to 1e-6 relative error.
    #[test]
    fn derivative_matches_central_difference(z in -3.0..3.0f64) {
        let k = 100.0;
        let d = ddrelu_derivative(z, k);
        prop_assume!(d > 1e-2);
        let h = 1e-6;
        let fd = (ddrelu(z + h, k) - ddrelu(z - h, k)) / (2.0 * h);
        prop_assert!(((fd - d) / d).abs() < 1e-6, "z={z} d={d} fd={fd}");
    }

    #[test]
    fn random_acyclic_round_trip(seed in any::<u64>()) {
        let q = gen_random_acyclic(seed);
        prop_assert!((30..=100).contains(&q.len()));
        prop_assert!(analyze_graph(&q).acyclic);
        let back = parse_qbaf(&serialize_qbaf(&q)).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(gen_random_acyclic(seed), q);
    }

    #[test]
    fn ladder_goal_aggregate(n in 0usize..60, seed in any::<u64>()) {
        let q = gen_ladder(n, seed);
        prop_assert_eq!(q.len(), 2 * n + 3);
        let alpha = aggregate_sum(&q, &solve_acyclic(&q, &SemanticsSpec::new(Family::Mqe)).unwrap().0, "g").unwrap().alpha;
        prop_assert!((alpha + 2.0).abs() <= 1e-9, "alpha = {alpha}");
    }

    #[test]
    fn ladder_augmentation_keeps_strengths(n in 0usize..20, extra in 1usize..20, seed in any::<u64>(), ones in any::<bool>()) {
        let mode = if ones { LadderTau::Ones } else { LadderTau::Random };
        let mut rng = stream(seed, 0);
        let mut ladder = Ladder::sample(n, mode, &mut rng);
        let before = ladder.clone();
        ladder.augment(n + extra, mode, &mut rng);
        prop_assert_eq!(ladder.tau_g, before.tau_g);
        prop_assert_eq!(&ladder.attackers[..before.attackers.len()], &before.attackers[..]);
        prop_assert_eq!(&ladder.supporters[..before.supporters.len()], &before.supporters[..]);
        let s_att: f64 = ladder.attackers.iter().sum();
        let s_sup: f64 = ladder.supporters.iter().sum();
        prop_assert!((s_att - s_sup - 2.0).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn iteration_agrees_with_forward_pass(seed in any::<u64>(), fi in 0usize..7, q in norm()) {
        let fw = gen_random_acyclic(seed);
        let spec = SemanticsSpec::new(ALL_FAMILIES[fi]).with_q(q);
        let exact = solve_acyclic(&fw, &spec).unwrap();
        let discrete = solve_iterative(&fw, &spec, &SolveConfig::default()).unwrap();
        prop_assert!(discrete.converged());
        prop_assert!(discrete.strengths.max_abs_diff(&exact) <= 1e-4);
        let cfg = SolveConfig::default().with_mode(Mode::Continuous).with_max_iter(100_000);
        let euler = solve_continuous(&fw, &spec, &cfg).unwrap();
        prop_assert!(euler.converged());
        prop_assert!(euler.strengths.max_abs_diff(&exact) <= 1e-4);
    }

    #[test]
    fn below_the_bound_iteration_converges(seed in any::<u64>(), n in 5usize..40, q in norm()) {
        let fw = gen_random_cyclic(n, 4.0 / (n as f64 - 1.0), seed);
        let bound = convergence_bound(&fw, q);
        let gamma = if bound.is_finite() { 0.9 * bound } else { 1.0 };
        let spec = SemanticsSpec::new(Family::Ddrl).with_q(q).with_gamma(gamma);
        let r = solve_iterative(&fw, &spec, &SolveConfig::default()).unwrap();
        prop_assert!(r.converged(), "{:?} after {}", r.status, r.iterations);
        prop_assert!(r.strengths.in_unit_range());
    }
}
