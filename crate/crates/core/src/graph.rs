//! Structural analysis of the underlying directed graph: acyclicity and a
//! topological order, maximum in-degree, strongly connected components and
//! the "every argument lies on at most one cycle" test.

use std::collections::{HashSet, VecDeque};

use crate::framework::Qbaf;

/// Derived structure of a framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInfo {
    pub acyclic: bool,
    /// Topological order (argument indices); present iff `acyclic`.
    pub topo_order: Option<Vec<usize>>,
    /// Largest number of incoming attack plus support edges.
    pub max_in_degree: usize,
    /// Strongly connected components, each listed in document order.
    pub sccs: Vec<Vec<usize>>,
    pub at_most_one_cycle: bool,
}

impl GraphInfo {
    /// Components that contain a cycle (more than one member, or a self-loop).
    pub fn nontrivial_sccs<'a>(&'a self, q: &'a Qbaf) -> impl Iterator<Item = &'a Vec<usize>> + 'a {
        self.sccs.iter().filter(move |c| c.len() > 1 || has_self_loop(q, c[0]))
    }

    pub fn topo_ids<'a>(&'a self, q: &'a Qbaf) -> Option<Vec<&'a str>> {
        self.topo_order.as_ref().map(|o| o.iter().map(|&i| q.id(i)).collect())
    }
}

fn has_self_loop(q: &Qbaf, v: usize) -> bool {
    q.attackers_of(v).contains(&v) || q.supporters_of(v).contains(&v)
}

/// Out-neighbours over the union of both relations, without duplicates.
fn successors(q: &Qbaf) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); q.len()];
    for &(f, t) in q.attacks().iter().chain(q.supports()) {
        out[f].push(t);
    }
    for list in &mut out {
        // An attack and a support between the same pair is one graph edge.
        let mut seen = HashSet::with_capacity(list.len());
        list.retain(|t| seen.insert(*t));
    }
    out
}

/// Kahn's algorithm; sources are seeded in document order.
fn topological_order(q: &Qbaf, succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = q.len();
    let mut indeg = vec![0usize; n];
    for list in succ {
        for &t in list {
            indeg[t] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &t in &succ[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Iterative Tarjan. Components come out in reverse topological order of the
/// condensation; members are sorted by document order.
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0usize;
    let mut comps = Vec::new();
    // (vertex, next successor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Whether each nontrivial component is exactly one simple cycle.
fn every_scc_is_a_single_cycle(q: &Qbaf, succ: &[Vec<usize>], sccs: &[Vec<usize>]) -> bool {
    let mut comp_of = vec![0usize; q.len()];
    for (c, members) in sccs.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    for members in sccs {
        if members.len() == 1 {
            // A lone vertex with a self-loop lies on exactly that one cycle.
            continue;
        }
        let c = comp_of[members[0]];
        let mut indeg_inside = vec![0usize; members.len()];
        for &v in members {
            let out_inside = succ[v].iter().filter(|&&t| comp_of[t] == c).count();
            if out_inside != 1 || succ[v].contains(&v) {
                return false;
            }
            for &t in succ[v].iter().filter(|&&t| comp_of[t] == c) {
                let p = members.binary_search(&t).expect("member of component");
                indeg_inside[p] += 1;
            }
        }
        if indeg_inside.iter().any(|&d| d != 1) {
            return false;
        }
    }
    true
}

/// Computes the [`GraphInfo`] of a framework in linear time.
pub fn analyze_graph(q: &Qbaf) -> GraphInfo {
    let succ = successors(q);
    let topo_order = topological_order(q, &succ);
    let sccs = strongly_connected_components(&succ);
    let max_in_degree = (0..q.len()).map(|v| q.in_degree(v)).max().unwrap_or(0);
    let at_most_one_cycle = every_scc_is_a_single_cycle(q, &succ, &sccs);
    GraphInfo {
        acyclic: topo_order.is_some(),
        topo_order,
        max_in_degree,
        sccs,
        at_most_one_cycle,
    }
}
