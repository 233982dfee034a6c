use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::framework::{Qbaf, QbafBuilder};

use super::rng::{stream, BenchRng};

/// How initial strengths of ladder arguments are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LadderTau {
    /// Uniform in [0, 1], with attacker strengths rescaled.
    #[default]
    Random,
    /// Every argument has strength 1.
    Ones,
}

const RESAMPLE_LIMIT: usize = 100;

/// A goal `g` with `n + 2` unattacked attackers and `n` unattacked
/// supporters whose strengths satisfy `Σ att − Σ sup = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub tau_g: f64,
    pub attackers: Vec<f64>,
    pub supporters: Vec<f64>,
    /// Set when rescaling failed and the uniform fallback was used.
    pub used_fallback: bool,
}

/// `count` uniform values rescaled to sum to `target`, each at most 1.
/// Falls back to `target / count` everywhere after repeated failures.
fn rescaled(rng: &mut BenchRng, count: usize, target: f64) -> (Vec<f64>, bool) {
    if count == 0 {
        return (Vec::new(), false);
    }
    for _ in 0..RESAMPLE_LIMIT {
        let raw: Vec<f64> = (0..count).map(|_| rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let scale = target / total;
        let scaled: Vec<f64> = raw.iter().map(|r| r * scale).collect();
        if scaled.iter().all(|v| *v <= 1.0) {
            return (scaled, false);
        }
    }
    (vec![target / count as f64; count], true)
}

impl Ladder {
    /// A fresh ladder with `n` supporters.
    pub fn sample(n: usize, mode: LadderTau, rng: &mut BenchRng) -> Self {
        match mode {
            LadderTau::Ones => Self {
                tau_g: 1.0,
                attackers: vec![1.0; n + 2],
                supporters: vec![1.0; n],
                used_fallback: false,
            },
            LadderTau::Random => {
                let tau_g = rng.random::<f64>();
                let supporters: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                let target = supporters.iter().sum::<f64>() + 2.0;
                let (attackers, used_fallback) = rescaled(rng, n + 2, target);
                Self {
                    tau_g,
                    attackers,
                    supporters,
                    used_fallback,
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.supporters.len()
    }

    /// Grows the ladder to `new_n` supporters, keeping every existing
    /// strength; the new attackers balance the new supporters exactly.
    pub fn augment(&mut self, new_n: usize, mode: LadderTau, rng: &mut BenchRng) {
        let added = new_n.saturating_sub(self.n());
        if added == 0 {
            return;
        }
        match mode {
            LadderTau::Ones => {
                self.supporters.extend(std::iter::repeat_n(1.0, added));
                self.attackers.extend(std::iter::repeat_n(1.0, added));
            }
            LadderTau::Random => {
                let new_sup: Vec<f64> = (0..added).map(|_| rng.random::<f64>()).collect();
                let target: f64 = new_sup.iter().sum();
                let (new_att, fallback) = rescaled(rng, added, target);
                self.used_fallback |= fallback;
                self.supporters.extend(new_sup);
                self.attackers.extend(new_att);
            }
        }
    }

    /// Arguments are ordered `g, a1.., s1..`.
    pub fn to_qbaf(&self) -> Qbaf {
        let mut b = QbafBuilder::new();
        let g = b.argument("g", self.tau_g);
        for (i, &t) in self.attackers.iter().enumerate() {
            let a = b.argument(format!("a{}", i + 1), t);
            b.attack(a, g);
        }
        for (i, &t) in self.supporters.iter().enumerate() {
            let s = b.argument(format!("s{}", i + 1), t);
            b.support(s, g);
        }
        b.build().expect("ladder strengths lie in [0, 1]")
    }
}

/// Seeded ladder framework with `n` supporters.
pub fn gen_ladder(n: usize, seed: u64) -> Qbaf {
    Ladder::sample(n, LadderTau::Random, &mut stream(seed, 0)).to_qbaf()
}

/// Random acyclic framework: 30–100 arguments, edge density 0.1–0.3 over
/// the pairs of a random topological order, attack/support ratio 0.4–0.8.
pub fn gen_random_acyclic(seed: u64) -> Qbaf {
    let mut rng = stream(seed, 0);
    let n = rng.random_range(30..=100usize);
    let density = rng.random_range(0.1..=0.3);
    let ratio = rng.random_range(0.4..=0.8);
    random_acyclic_with(n, density, ratio, &mut rng)
}

pub(crate) fn random_acyclic_with(n: usize, density: f64, ratio: f64, rng: &mut BenchRng) -> Qbaf {
    let mut b = QbafBuilder::new();
    for i in 0..n {
        let tau = rng.random::<f64>();
        b.argument(format!("x{i}"), tau);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((order[i], order[j]));
        }
    }
    let m = ((density * pairs.len() as f64).round() as usize).min(pairs.len());
    let (chosen, _) = pairs.partial_shuffle(rng, m);
    let p_attack = ratio / (1.0 + ratio);
    for &(f, t) in chosen.iter() {
        if rng.random::<f64>() < p_attack {
            b.attack(f, t);
        } else {
            b.support(f, t);
        }
    }
    b.build().expect("generated framework is valid")
}

/// Random directed framework with `round(density · n(n−1))` distinct edges
/// (no self-loops), each an attack or a support with equal probability.
pub fn gen_random_cyclic(n: usize, density: f64, seed: u64) -> Qbaf {
    let mut rng = stream(seed, 0);
    let mut b = QbafBuilder::new();
    for i in 0..n {
        let tau = rng.random::<f64>();
        b.argument(format!("x{i}"), tau);
    }
    let total = n * n.saturating_sub(1);
    let m = ((density.clamp(0.0, 1.0) * total as f64).round() as usize).min(total);
    let edges: Vec<(usize, usize)> = if 2 * m <= total {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let f = rng.random_range(0..n);
            let t = rng.random_range(0..n);
            if f != t && seen.insert((f, t)) {
                out.push((f, t));
            }
        }
        out
    } else {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|f| (0..n).filter(move |&t| t != f).map(move |t| (f, t)))
            .collect();
        let (chosen, _) = all.partial_shuffle(&mut rng, m);
        chosen.to_vec()
    };
    for (f, t) in edges {
        if rng.random::<bool>() {
            b.attack(f, t);
        } else {
            b.support(f, t);
        }
    }
    b.build().expect("generated framework is valid")
}

/// Random framework in which every argument lies on at most one cycle.
///
/// Arguments are grouped into disjoint simple cycles (length 2–5) and
/// singletons; groups are ordered at random and joined only by forward
/// edges, each pair of groups linked with probability `density`.
pub fn gen_one_cycle(n: usize, density: f64, seed: u64) -> Qbaf {
    let mut rng = stream(seed, 0);
    let mut b = QbafBuilder::new();
    for i in 0..n {
        let tau = rng.random::<f64>();
        b.argument(format!("x{i}"), tau);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut rest = perm.as_slice();
    while !rest.is_empty() {
        let len = if rest.len() >= 2 && rng.random::<f64>() < 0.5 {
            rng.random_range(2..=rest.len().min(5))
        } else {
            1
        };
        let (group, tail) = rest.split_at(len);
        groups.push(group.to_vec());
        rest = tail;
    }
    let add = |b: &mut QbafBuilder, rng: &mut BenchRng, f: usize, t: usize| {
        if rng.random::<bool>() {
            b.attack(f, t);
        } else {
            b.support(f, t);
        }
    };
    for g in groups.iter().filter(|g| g.len() > 1) {
        for i in 0..g.len() {
            add(&mut b, &mut rng, g[i], g[(i + 1) % g.len()]);
        }
    }
    for u in 0..groups.len() {
        for v in u + 1..groups.len() {
            if rng.random::<f64>() < density {
                let f = groups[u][rng.random_range(0..groups[u].len())];
                let t = groups[v][rng.random_range(0..groups[v].len())];
                add(&mut b, &mut rng, f, t);
            }
        }
    }
    b.build().expect("generated framework is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::analyze_graph;
    use crate::semantics::aggregate_sum;

    fn goal_alpha(q: &Qbaf) -> f64 {
        let s: Vec<f64> = q.arguments().iter().map(|a| a.tau).collect();
        aggregate_sum(q, &s, "g").unwrap().alpha
    }

    #[test]
    fn all_ones_ladder_at_zero_is_two_attackers() {
        let q = Ladder::sample(0, LadderTau::Ones, &mut stream(1, 0)).to_qbaf();
        assert_eq!(q.len(), 3);
        assert_eq!(goal_alpha(&q), -2.0);
    }

    #[test]
    fn ladder_balance_holds() {
        for seed in 0..50 {
            for n in [0, 1, 5, 20, 100] {
                let q = gen_ladder(n, seed);
                assert_eq!(q.len(), 2 * n + 3);
                assert!((goal_alpha(&q) + 2.0).abs() < 1e-9, "seed {seed} n {n}");
                let g = q.index_of("g").unwrap();
                for i in 0..q.len() {
                    if i != g {
                        assert_eq!(q.in_degree(i), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_is_deterministic() {
        assert_eq!(gen_ladder(5, 9), gen_ladder(5, 9));
        assert_ne!(gen_ladder(5, 9), gen_ladder(5, 10));
    }

    #[test]
    fn augmentation_preserves_existing_strengths() {
        let mut rng = stream(3, 0);
        let mut ladder = Ladder::sample(0, LadderTau::Random, &mut rng);
        let before = ladder.to_qbaf();
        for n in [1, 2, 5, 10] {
            ladder.augment(n, LadderTau::Random, &mut rng);
            let after = ladder.to_qbaf();
            for arg in before.arguments() {
                let idx = after.index_of(&arg.id).unwrap();
                assert_eq!(after.tau(idx), arg.tau);
            }
            assert!((goal_alpha(&after) + 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn random_acyclic_ranges() {
        for seed in 0..30 {
            let q = gen_random_acyclic(seed);
            assert!((30..=100).contains(&q.len()));
            assert!(analyze_graph(&q).acyclic);
            let max_edges = (q.len() * (q.len() - 1) / 2) as f64;
            let density = q.edge_count() as f64 / max_edges;
            assert!(density >= 0.1 - 1.0 / max_edges && density <= 0.3 + 1.0 / max_edges);
        }
        assert_ne!(gen_random_acyclic(4), gen_random_acyclic(5));
    }

    #[test]
    fn random_cyclic_contract() {
        let q = gen_random_cyclic(2, 1.0, 0);
        assert_eq!(q.edge_count(), 2);
        assert!(!analyze_graph(&q).acyclic);

        let a = gen_random_cyclic(100, 0.02, 17);
        assert_eq!(a, gen_random_cyclic(100, 0.02, 17));
        assert_eq!(a.edge_count(), 198);
        assert!(!analyze_graph(&a).acyclic);

        let dense = gen_random_cyclic(10, 0.9, 1);
        assert_eq!(dense.edge_count(), 81);
    }

    #[test]
    fn one_cycle_generator_satisfies_the_topology() {
        for seed in 0..100 {
            let q = gen_one_cycle(40, 0.05, seed);
            let info = analyze_graph(&q);
            assert!(info.at_most_one_cycle, "seed {seed}");
        }
        let cyclic = (0..20)
            .filter(|&s| !analyze_graph(&gen_one_cycle(40, 0.05, s)).acyclic)
            .count();
        assert!(cyclic > 15);
    }
}
