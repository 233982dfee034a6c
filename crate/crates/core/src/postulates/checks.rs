use std::collections::VecDeque;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::EdgeKind;
use crate::framework::{Qbaf, QbafBuilder};
use crate::genbench::{stream, BenchRng};
use crate::graph::analyze_graph;
use crate::semantics::{SemanticsSpec, StrengthVector};

use super::claim::{Claim, Term};
use super::{Principle, Trial, OPEN_MINDED_MAX_PARENTS, OPEN_MINDED_THRESHOLD, STRICT_MARGIN, TOLERANCE};

/// Strict clauses are only asserted when the weaker argument is at least
/// this far from 0 and 1; closer to the bounds the smooth clamp leaves
/// differences below the strict margin.
const SATURATION: f64 = 1e-6;
/// Parent strengths used by the probes.
const PROBE_VALUES: [f64; 3] = [0.25, 0.5, 1.0];
/// Smallest parent strength counted as a real difference between probes.
const MIN_DIFF_STRENGTH: f64 = 0.05;
/// Aggregate gap required before a weakening/strengthening claim is made.
const MIN_SUM_GAP: f64 = 0.05;
const MAX_CONTEXT_DEGREE: usize = 4;
const CONTEXTS_PER_SAMPLE: usize = 4;
const PROBES_PER_CONTEXT: usize = 2;
const OPEN_MINDED_CONTEXTS: usize = 6;
const DIRECTIONALITY_EDGES: usize = 3;
const PROBE_SEED: u64 = 0x005e_ed0f_9057;

pub(crate) struct Env<'a> {
    pub spec: &'a SemanticsSpec,
    pub sample: &'a [Qbaf],
    pub strengths: &'a [StrengthVector],
}

fn s(framework: usize, id: &str) -> Term {
    Term::strength(framework, id)
}

fn equal(lhs: Term, rhs: Term) -> Claim {
    Claim::Equal {
        lhs,
        rhs,
        tol: TOLERANCE,
    }
}

fn unique_id(b: &QbafBuilder, base: String) -> String {
    let mut id = base;
    while b.lookup(&id).is_ok() {
        id.push('\'');
    }
    id
}

/// Copies `q` into `b` with prefixed ids; returns the new indices.
fn copy_into(b: &mut QbafBuilder, q: &Qbaf, prefix: &str) -> Vec<usize> {
    let map: Vec<usize> = q
        .arguments()
        .iter()
        .map(|a| b.argument(format!("{prefix}{}", a.id), a.tau))
        .collect();
    for &(f, t) in q.attacks() {
        b.attack(map[f], map[t]);
    }
    for &(f, t) in q.supports() {
        b.support(map[f], map[t]);
    }
    map
}

fn build(b: QbafBuilder) -> Qbaf {
    b.build().expect("derived framework is valid")
}

fn successors(q: &Qbaf) -> Vec<Vec<usize>> {
    let mut succ = vec![Vec::new(); q.len()];
    for &(f, t) in q.attacks().iter().chain(q.supports()) {
        succ[f].push(t);
    }
    succ
}

fn reachable_from(q: &Qbaf, start: usize) -> Vec<bool> {
    let succ = successors(q);
    let mut seen = vec![false; q.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &succ[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Initial strength and parent final strengths of one argument.
#[derive(Debug, Clone, Default)]
struct Context {
    tau: f64,
    att: Vec<f64>,
    sup: Vec<f64>,
}

impl Context {
    fn of(q: &Qbaf, rho: &StrengthVector, a: usize) -> Self {
        Self {
            tau: q.tau(a),
            att: q.attackers_of(a).iter().map(|&p| rho.0[p]).collect(),
            sup: q.supporters_of(a).iter().map(|&p| rho.0[p]).collect(),
        }
    }

    fn with(tau: f64, att: &[f64], sup: &[f64]) -> Self {
        Self {
            tau,
            att: att.to_vec(),
            sup: sup.to_vec(),
        }
    }
}

/// Builder for standalone probe frameworks whose parents are fresh
/// unattacked arguments.
struct Probe {
    b: QbafBuilder,
}

impl Probe {
    fn new() -> Self {
        Self { b: QbafBuilder::new() }
    }

    fn arg(&mut self, tau: f64) -> (usize, String) {
        let id = format!("p{}", self.b.len());
        (self.b.argument(id.clone(), tau), id)
    }

    /// One fresh parent per strength, shared by every target.
    fn parents(&mut self, targets: &[usize], kind: EdgeKind, strengths: &[f64]) {
        for &st in strengths {
            let (p, _) = self.arg(st);
            for &t in targets {
                self.b.edge(kind, p, t);
            }
        }
    }

    fn context(&mut self, targets: &[usize], ctx: &Context) {
        self.parents(targets, EdgeKind::Attack, &ctx.att);
        self.parents(targets, EdgeKind::Support, &ctx.sup);
    }

    /// Bit 0 adds a common attacker of strength 1, bit 1 a common supporter.
    fn saturate(&mut self, targets: &[usize], bits: u8) {
        if bits & 1 != 0 {
            self.parents(targets, EdgeKind::Attack, &[1.0]);
        }
        if bits & 2 != 0 {
            self.parents(targets, EdgeKind::Support, &[1.0]);
        }
    }

    fn finish(self) -> Qbaf {
        build(self.b)
    }
}

/// `a` must be at least as strong as `b`, strictly so when `strict` and
/// `b` is not saturated.
fn dominance_claim(a: &str, b: &str, strict: bool) -> Claim {
    let weak = Claim::AtLeast {
        lhs: s(0, a),
        rhs: s(0, b),
        tol: TOLERANCE,
    };
    if !strict {
        return weak;
    }
    Claim::All(vec![
        weak,
        Claim::given(
            Claim::Between {
                term: s(0, b),
                lo: SATURATION,
                hi: 1.0 - SATURATION,
            },
            Claim::Greater {
                lhs: s(0, a),
                rhs: s(0, b),
                margin: STRICT_MARGIN,
            },
        ),
    ])
}

/// `a` and `b` share the context and saturators; `b` additionally has
/// the attacker `xb`, `a` additionally the supporter `ya`.
fn monotonicity_probe(ctx: &Context, tau_a: f64, tau_b: f64, xb: Option<f64>, ya: Option<f64>, sat: u8) -> Trial {
    let mut p = Probe::new();
    let (a, a_id) = p.arg(tau_a);
    let (b, b_id) = p.arg(tau_b);
    p.context(&[a, b], ctx);
    p.saturate(&[a, b], sat);
    if let Some(x) = xb {
        p.parents(&[b], EdgeKind::Attack, &[x]);
    }
    if let Some(y) = ya {
        p.parents(&[a], EdgeKind::Support, &[y]);
    }
    let strict =
        tau_a > tau_b || xb.is_some_and(|x| x >= MIN_DIFF_STRENGTH) || ya.is_some_and(|y| y >= MIN_DIFF_STRENGTH);
    Trial {
        frameworks: vec![p.finish()],
        claims: vec![dominance_claim(&a_id, &b_id, strict)],
    }
}

/// `a` and `b` differ in one attacker (`xa ≤ xb`) and one supporter
/// (`ya ≥ yb`).
fn reinforcement_probe(
    ctx: &Context,
    tau_a: f64,
    tau_b: f64,
    (xa, xb): (f64, f64),
    (ya, yb): (f64, f64),
    sat: u8,
) -> Trial {
    let mut p = Probe::new();
    let (a, a_id) = p.arg(tau_a);
    let (b, b_id) = p.arg(tau_b);
    p.context(&[a, b], ctx);
    p.saturate(&[a, b], sat);
    p.parents(&[a], EdgeKind::Attack, &[xa]);
    p.parents(&[b], EdgeKind::Attack, &[xb]);
    p.parents(&[a], EdgeKind::Support, &[ya]);
    p.parents(&[b], EdgeKind::Support, &[yb]);
    let strict = tau_a > tau_b || xb - xa >= MIN_DIFF_STRENGTH || ya - yb >= MIN_DIFF_STRENGTH;
    Trial {
        frameworks: vec![p.finish()],
        claims: vec![dominance_claim(&a_id, &b_id, strict)],
    }
}

/// Every `weak` strength can be matched to a distinct, at least as strong,
/// `strong` strength, and the totals differ by a clear gap.
fn strictly_weaker(weak: &[f64], strong: &[f64]) -> bool {
    if weak.len() > strong.len() {
        return false;
    }
    let mut w = weak.to_vec();
    let mut st = strong.to_vec();
    w.sort_by(|x, y| y.total_cmp(x));
    st.sort_by(|x, y| y.total_cmp(x));
    w.iter().zip(&st).all(|(x, y)| x <= y) && st.iter().sum::<f64>() - w.iter().sum::<f64>() >= MIN_SUM_GAP
}

#[derive(Clone, Copy)]
enum Push {
    Down,
    Up,
}

/// Claim that `target` moved strictly below (or above) its initial
/// strength; `rest` is an isolated argument with the same strength,
/// used as the reference for approximate semantics.
fn moved_claim(env: &Env<'_>, framework: usize, target: &str, rest: &str, tau: f64, push: Push) -> Claim {
    let reference = if env.spec.approximation_error() > 0.0 {
        s(framework, rest)
    } else {
        Term::Const(tau)
    };
    match push {
        Push::Down => Claim::Less {
            lhs: s(framework, target),
            rhs: reference,
            margin: STRICT_MARGIN,
        },
        Push::Up => Claim::Greater {
            lhs: s(framework, target),
            rhs: reference,
            margin: STRICT_MARGIN,
        },
    }
}

/// A target whose supporters are strictly weaker than its attackers
/// (`Push::Down`), or the reverse.
fn weakening_probe(env: &Env<'_>, tau: f64, weak: &[f64], strong: &[f64], sat: u8, push: Push) -> Trial {
    let mut p = Probe::new();
    let (a, a_id) = p.arg(tau);
    let (_, rest_id) = p.arg(tau);
    let (weak_kind, strong_kind) = match push {
        Push::Down => (EdgeKind::Support, EdgeKind::Attack),
        Push::Up => (EdgeKind::Attack, EdgeKind::Support),
    };
    p.parents(&[a], weak_kind, weak);
    p.parents(&[a], strong_kind, strong);
    p.saturate(&[a], sat);
    Trial {
        frameworks: vec![p.finish()],
        claims: vec![moved_claim(env, 0, &a_id, &rest_id, tau, push)],
    }
}

/// Targets `t1..t64` share the context parents; `tm` additionally has
/// `m` parents of strength 1 pushing in direction `push`.
fn open_minded_probe(ctx: &Context, push: Push) -> Trial {
    let mut p = Probe::new();
    let targets: Vec<(usize, String)> = (0..OPEN_MINDED_MAX_PARENTS).map(|_| p.arg(ctx.tau)).collect();
    let idx: Vec<usize> = targets.iter().map(|t| t.0).collect();
    p.context(&idx, ctx);
    let kind = match push {
        Push::Down => EdgeKind::Attack,
        Push::Up => EdgeKind::Support,
    };
    for j in 0..OPEN_MINDED_MAX_PARENTS {
        let (z, _) = p.arg(1.0);
        for &t in &idx[j..] {
            p.b.edge(kind, z, t);
        }
    }
    let probes = targets
        .iter()
        .map(|(_, id)| match push {
            Push::Down => Claim::Less {
                lhs: s(0, id),
                rhs: Term::Const(OPEN_MINDED_THRESHOLD),
                margin: 0.0,
            },
            Push::Up => Claim::Greater {
                lhs: s(0, id),
                rhs: Term::Const(1.0 - OPEN_MINDED_THRESHOLD),
                margin: 0.0,
            },
        })
        .collect();
    Trial {
        frameworks: vec![p.finish()],
        claims: vec![Claim::Any(probes)],
    }
}

fn probe_tau(tau: f64) -> f64 {
    tau.clamp(0.05, 0.95)
}

fn pick_value(rng: &mut BenchRng, ctx: &Context) -> f64 {
    let own: Vec<f64> = ctx
        .att
        .iter()
        .chain(&ctx.sup)
        .copied()
        .filter(|&v| v >= MIN_DIFF_STRENGTH)
        .collect();
    if !own.is_empty() && rng.random::<bool>() {
        *own.choose(rng).expect("nonempty")
    } else {
        *PROBE_VALUES.choose(rng).expect("nonempty")
    }
}

fn pick_taus(rng: &mut BenchRng, ctx: &Context) -> (f64, f64) {
    let tau_b = probe_tau(ctx.tau);
    let tau_a = if rng.random::<bool>() {
        tau_b
    } else {
        (tau_b + 0.25).min(1.0)
    };
    (tau_a, tau_b)
}

/// Up to `limit` arguments of sample `i` with small in-degree.
fn sample_contexts(env: &Env<'_>, i: usize, rng: &mut BenchRng, max_degree: usize, limit: usize) -> Vec<Context> {
    let q = &env.sample[i];
    let mut eligible: Vec<usize> = (0..q.len()).filter(|&a| q.in_degree(a) <= max_degree).collect();
    eligible.shuffle(rng);
    eligible.truncate(limit);
    eligible
        .into_iter()
        .map(|a| Context::of(q, &env.strengths[i], a))
        .collect()
}

fn principle_seed(p: Principle) -> u64 {
    PROBE_SEED ^ (Principle::ALL.iter().position(|&x| x == p).expect("listed") as u64) << 32
}

/// Fixed probes that do not depend on the sample.
pub(crate) fn canonical(principle: Principle, env: &Env<'_>) -> Vec<Trial> {
    let mut out = Vec::new();
    match principle {
        Principle::Stability => {
            let mut p = Probe::new();
            let ids: Vec<(String, f64)> = [0.0, 0.3, 0.7, 1.0].iter().map(|&t| (p.arg(t).1, t)).collect();
            let tol = TOLERANCE + env.spec.approximation_error();
            out.push(Trial {
                frameworks: vec![p.finish()],
                claims: ids
                    .iter()
                    .map(|(id, t)| Claim::Equal {
                        lhs: s(0, id),
                        rhs: Term::Const(*t),
                        tol,
                    })
                    .collect(),
            });
        }
        Principle::Monotonicity => {
            for sat in 0..4 {
                for &v in &PROBE_VALUES {
                    let ctx = Context::default();
                    out.push(monotonicity_probe(&ctx, 0.5, 0.5, Some(v), None, sat));
                    out.push(monotonicity_probe(&ctx, 0.5, 0.5, None, Some(v), sat));
                }
            }
        }
        Principle::Reinforcement => {
            let attackers = [(0.25, 0.5), (0.5, 1.0), (0.5, 0.5)];
            let supporters = [(0.5, 0.5), (1.0, 0.5)];
            for sat in 0..4 {
                for &x in &attackers {
                    for &y in &supporters {
                        if x.0 == x.1 && y.0 == y.1 {
                            continue;
                        }
                        out.push(reinforcement_probe(&Context::default(), 0.5, 0.5, x, y, sat));
                    }
                }
            }
        }
        Principle::Weakening | Principle::Strengthening => {
            let push = if principle == Principle::Weakening {
                Push::Down
            } else {
                Push::Up
            };
            let shapes: [(&[f64], &[f64]); 4] = [
                (&[], &[0.5]),
                (&[0.5], &[0.5, 0.5]),
                (&[1.0], &[1.0, 0.5]),
                (&[0.5], &[1.0]),
            ];
            for tau in [0.25, 0.5, 0.75] {
                for (weak, strong) in shapes {
                    for sat in [0, 3] {
                        out.push(weakening_probe(env, tau, weak, strong, sat, push));
                    }
                }
            }
        }
        Principle::OpenMindedness => {
            for tau in [0.0, 0.5, 1.0] {
                for opposed in [false, true] {
                    let opposing: &[f64] = if opposed { &[1.0] } else { &[] };
                    out.push(open_minded_probe(&Context::with(tau, &[], opposing), Push::Down));
                    out.push(open_minded_probe(&Context::with(tau, opposing, &[]), Push::Up));
                }
            }
        }
        _ => {}
    }
    out
}

/// Trials derived from sample framework `i`.
pub(crate) fn from_sample(principle: Principle, env: &Env<'_>, i: usize) -> Vec<Trial> {
    let q = &env.sample[i];
    let mut rng = stream(principle_seed(principle), i as u64);
    match principle {
        Principle::Anonymity => vec![anonymity(q, &mut rng)],
        Principle::Independence => {
            let j = (i + 1) % env.sample.len();
            vec![independence(q, &env.sample[j])]
        }
        Principle::Directionality => directionality(q, &mut rng),
        Principle::Equivalence => vec![equivalence(q)],
        Principle::Stability => {
            let tol = TOLERANCE + env.spec.approximation_error();
            let claims = (0..q.len())
                .filter(|&a| q.in_degree(a) == 0)
                .map(|a| Claim::Equal {
                    lhs: s(0, q.id(a)),
                    rhs: Term::Const(q.tau(a)),
                    tol,
                })
                .collect();
            vec![Trial {
                frameworks: vec![q.clone()],
                claims,
            }]
        }
        Principle::Neutrality => [EdgeKind::Attack, EdgeKind::Support]
            .iter()
            .map(|&k| neutrality(q, k))
            .collect(),
        Principle::Duality => vec![duality(q)],
        Principle::Monotonicity => {
            let mut out = Vec::new();
            for ctx in sample_contexts(env, i, &mut rng, MAX_CONTEXT_DEGREE, CONTEXTS_PER_SAMPLE) {
                for _ in 0..PROBES_PER_CONTEXT {
                    let (tau_a, tau_b) = pick_taus(&mut rng, &ctx);
                    let mut xb = rng.random::<bool>().then(|| pick_value(&mut rng, &ctx));
                    let ya = rng.random::<bool>().then(|| pick_value(&mut rng, &ctx));
                    if xb.is_none() && ya.is_none() && tau_a == tau_b {
                        xb = Some(pick_value(&mut rng, &ctx));
                    }
                    let sat = rng.random_range(0..4u8);
                    out.push(monotonicity_probe(&ctx, tau_a, tau_b, xb, ya, sat));
                }
            }
            out
        }
        Principle::Reinforcement => {
            let mut out = Vec::new();
            for ctx in sample_contexts(env, i, &mut rng, MAX_CONTEXT_DEGREE, CONTEXTS_PER_SAMPLE) {
                for _ in 0..PROBES_PER_CONTEXT {
                    let (tau_a, tau_b) = pick_taus(&mut rng, &ctx);
                    let xb = pick_value(&mut rng, &ctx);
                    let xa = pick_value(&mut rng, &ctx).min(xb);
                    let yb = pick_value(&mut rng, &ctx);
                    let ya = pick_value(&mut rng, &ctx).max(yb);
                    let sat = rng.random_range(0..4u8);
                    out.push(reinforcement_probe(&ctx, tau_a, tau_b, (xa, xb), (ya, yb), sat));
                }
            }
            out
        }
        Principle::Weakening => weakening_trials(env, i, &mut rng, Push::Down),
        Principle::Strengthening => weakening_trials(env, i, &mut rng, Push::Up),
        Principle::OpenMindedness => {
            let mut out = Vec::new();
            for ctx in sample_contexts(env, i, &mut rng, usize::MAX, OPEN_MINDED_CONTEXTS) {
                out.push(open_minded_probe(&ctx, Push::Down));
                out.push(open_minded_probe(&ctx, Push::Up));
            }
            out
        }
    }
}

fn anonymity(q: &Qbaf, rng: &mut BenchRng) -> Trial {
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.shuffle(rng);
    let mut b = QbafBuilder::new();
    let mut map = vec![0; q.len()];
    for (k, &old) in order.iter().enumerate() {
        map[old] = b.argument(format!("v{k}"), q.tau(old));
    }
    let mut edges: Vec<(EdgeKind, usize, usize)> = q
        .attacks()
        .iter()
        .map(|&(f, t)| (EdgeKind::Attack, f, t))
        .chain(q.supports().iter().map(|&(f, t)| (EdgeKind::Support, f, t)))
        .collect();
    edges.shuffle(rng);
    for (kind, f, t) in edges {
        b.edge(kind, map[f], map[t]);
    }
    let relabeled = build(b);
    let claims = (0..q.len())
        .map(|a| equal(s(0, q.id(a)), s(1, relabeled.id(map[a]))))
        .collect();
    Trial {
        frameworks: vec![q.clone(), relabeled],
        claims,
    }
}

fn independence(left: &Qbaf, right: &Qbaf) -> Trial {
    let mut b = QbafBuilder::new();
    copy_into(&mut b, left, "L.");
    copy_into(&mut b, right, "R.");
    let union = build(b);
    let mut claims: Vec<Claim> = left
        .arguments()
        .iter()
        .map(|a| equal(s(0, &a.id), s(2, &format!("L.{}", a.id))))
        .collect();
    claims.extend(
        right
            .arguments()
            .iter()
            .map(|a| equal(s(1, &a.id), s(2, &format!("R.{}", a.id)))),
    );
    Trial {
        frameworks: vec![left.clone(), right.clone(), union],
        claims,
    }
}

fn directionality(q: &Qbaf, rng: &mut BenchRng) -> Vec<Trial> {
    let Some(order) = analyze_graph(q).topo_order else {
        return Vec::new();
    };
    if q.len() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for _ in 0..DIRECTIONALITY_EDGES {
        let pu = rng.random_range(0..q.len() - 1);
        let pv = rng.random_range(pu + 1..q.len());
        let (u, v) = (order[pu], order[pv]);
        let kind = if rng.random::<bool>() {
            EdgeKind::Attack
        } else {
            EdgeKind::Support
        };
        let existing = match kind {
            EdgeKind::Attack => q.attackers_of(v),
            EdgeKind::Support => q.supporters_of(v),
        };
        if existing.contains(&u) {
            continue;
        }
        let mut b = q.to_builder();
        b.edge(kind, u, v);
        let extended = build(b);
        let reach = reachable_from(&extended, u);
        let claims = (0..q.len())
            .filter(|&x| !reach[x])
            .map(|x| equal(s(0, q.id(x)), s(1, q.id(x))))
            .collect();
        out.push(Trial {
            frameworks: vec![q.clone(), extended],
            claims,
        });
    }
    out
}

/// Adds, for every argument, a twin with the same initial strength and the
/// same parents (declared in reverse order).
fn equivalence(q: &Qbaf) -> Trial {
    let mut b = q.to_builder();
    let mut claims = Vec::with_capacity(q.len());
    for a in 0..q.len() {
        let id = unique_id(&b, format!("{}~eq", q.id(a)));
        let twin = b.argument(id.clone(), q.tau(a));
        for &p in q.attackers_of(a).iter().rev() {
            b.attack(p, twin);
        }
        for &p in q.supporters_of(a).iter().rev() {
            b.support(p, twin);
        }
        claims.push(equal(s(0, q.id(a)), s(0, &id)));
    }
    Trial {
        frameworks: vec![build(b)],
        claims,
    }
}

/// Adds an argument of initial strength 0, itself attacked by two
/// arguments of strength 1, as an extra parent of every argument.
fn neutrality(q: &Qbaf, kind: EdgeKind) -> Trial {
    let mut b = q.to_builder();
    let null_id = unique_id(&b, "null".into());
    let null = b.argument(null_id.clone(), 0.0);
    for k in 0..2 {
        let z = b.argument(unique_id(&b, format!("null_att{k}")), 1.0);
        b.attack(z, null);
    }
    for a in 0..q.len() {
        b.edge(kind, null, a);
    }
    let extended = build(b);
    let zero = Claim::Equal {
        lhs: s(1, &null_id),
        rhs: Term::Const(0.0),
        tol: 1e-12,
    };
    let claims = (0..q.len())
        .map(|a| Claim::given(zero.clone(), equal(s(1, q.id(a)), s(0, q.id(a)))))
        .collect();
    Trial {
        frameworks: vec![q.clone(), extended],
        claims,
    }
}

/// Adds, for every argument `a`, a conjugate twin with initial strength
/// `1 − τ(a)`, attacked by the supporters of `a` and supported by its
/// attackers.
fn duality(q: &Qbaf) -> Trial {
    let mut b = q.to_builder();
    let mut claims = Vec::with_capacity(q.len());
    for a in 0..q.len() {
        let id = unique_id(&b, format!("{}~du", q.id(a)));
        let twin = b.argument(id.clone(), 1.0 - q.tau(a));
        for &p in q.supporters_of(a) {
            b.attack(p, twin);
        }
        for &p in q.attackers_of(a) {
            b.support(p, twin);
        }
        claims.push(equal(s(0, &id), Term::one_minus(s(0, q.id(a)))));
    }
    Trial {
        frameworks: vec![build(b)],
        claims,
    }
}

fn weakening_trials(env: &Env<'_>, i: usize, rng: &mut BenchRng, push: Push) -> Vec<Trial> {
    let q = &env.sample[i];
    let rho = &env.strengths[i];
    let mut out = Vec::new();

    // arguments of the sample itself, each with an isolated reference copy
    let mut b = q.to_builder();
    let mut claims = Vec::new();
    let mut rests = Vec::new();
    for a in 0..q.len() {
        let ctx = Context::of(q, rho, a);
        let (weak, strong) = match push {
            Push::Down => (&ctx.sup, &ctx.att),
            Push::Up => (&ctx.att, &ctx.sup),
        };
        if !(0.01..=0.99).contains(&ctx.tau) || !strictly_weaker(weak, strong) {
            continue;
        }
        let rest = unique_id(&b, format!("{}~rest", q.id(a)));
        b.argument(rest.clone(), ctx.tau);
        rests.push((q.id(a).to_string(), rest, ctx.tau));
    }
    if !rests.is_empty() {
        let framework = build(b);
        for (id, rest, tau) in &rests {
            claims.push(moved_claim(env, 0, id, rest, *tau, push));
        }
        out.push(Trial {
            frameworks: vec![framework],
            claims,
        });
    }

    // probes built from small contexts
    for ctx in sample_contexts(env, i, rng, MAX_CONTEXT_DEGREE, CONTEXTS_PER_SAMPLE) {
        for _ in 0..PROBES_PER_CONTEXT {
            let tau = probe_tau(ctx.tau);
            let weak: Vec<f64> = match push {
                Push::Down => ctx.sup.clone(),
                Push::Up => ctx.att.clone(),
            };
            let mut strong: Vec<f64> = weak
                .iter()
                .map(|&w| if rng.random::<bool>() { w } else { (w + 0.25).min(1.0) })
                .collect();
            if rng.random::<bool>() {
                strong.push(pick_value(rng, &ctx));
            }
            if !strictly_weaker(&weak, &strong) {
                strong.push(0.5);
            }
            let sat = match (rng.random_range(0..3u8), push) {
                (0, _) => 0,
                (1, Push::Down) => 1,
                (1, Push::Up) => 2,
                _ => 3,
            };
            out.push(weakening_probe(env, tau, &weak, &strong, sat, push));
        }
    }
    out
}
