//! Brute-force reference answers that share no code with the solvers they
//! check. Only for desk-scale instances.

use std::collections::{HashMap, HashSet, VecDeque};

use reconf_core::engine::MoveRule;
use reconf_core::reductions::Formula;
use reconf_core::{DsrInstance, Graph};

fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1 << w))
        .collect()
}

/// Whether some set of at most `k` vertices dominates `g`. Plain subset
/// enumeration.
pub fn has_dominating_set(g: &Graph, k: usize) -> bool {
    let n = g.n();
    assert!(n <= 20, "subset enumeration is for n <= 20");
    let closed = closed_masks(g);
    let all = (1u64 << n) - 1;
    (0u64..1 << n).any(|s| {
        s.count_ones() as usize <= k && (0..n).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | closed[v]) == all
    })
}

struct Dfs<'a> {
    inst: &'a DsrInstance,
    closed: Vec<u64>,
    core: u64,
    target: Vec<usize>,
    seen: HashSet<Vec<usize>>,
}

impl Dfs<'_> {
    fn feasible(&self, d: &[usize]) -> bool {
        let dom = d.iter().fold(0u64, |m, &v| m | self.closed[v]);
        if dom & self.core != self.core {
            return false;
        }
        if !self.inst.connected || d.is_empty() {
            return true;
        }
        let inside = d.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut reach = 1u64 << d[0];
        loop {
            let grown = (0..64)
                .filter(|&v| reach >> v & 1 == 1)
                .fold(reach, |m, v| m | self.closed[v] & inside);
            if grown == reach {
                return reach == inside;
            }
            reach = grown;
        }
    }

    fn moves(&self, d: &[usize]) -> Vec<Vec<usize>> {
        let g = &self.inst.graph;
        let mut out = Vec::new();
        for i in 0..d.len() {
            for v in 0..g.n() {
                if d.contains(&v) || (self.inst.rule == MoveRule::Slide && !g.has_edge(d[i], v)) {
                    continue;
                }
                let mut next = d.to_vec();
                next[i] = v;
                next.sort_unstable();
                if self.feasible(&next) {
                    out.push(next);
                }
            }
        }
        out
    }

    fn go(&mut self, d: Vec<usize>) -> bool {
        if d == self.target {
            return true;
        }
        if !self.seen.insert(d.clone()) {
            return false;
        }
        self.moves(&d).into_iter().any(|next| self.go(next))
    }
}

/// The search state, or `None` when an endpoint is infeasible.
fn start(inst: &DsrInstance) -> Option<Dfs<'_>> {
    assert!(inst.partition.is_none(), "the oracle ignores partitions");
    let n = inst.graph.n();
    assert!(n <= 64);
    let core = match &inst.core {
        Some(x) => x.iter().fold(0u64, |m, v| m | 1 << v),
        None => (0..n).fold(0u64, |m, v| m | 1 << v),
    };
    let dfs = Dfs {
        inst,
        closed: closed_masks(&inst.graph),
        core,
        target: inst.target.to_vec(),
        seen: HashSet::new(),
    };
    let ends = [inst.source.to_vec(), inst.target.to_vec()];
    ends.iter().all(|d| d.len() == inst.k && dfs.feasible(d)).then_some(dfs)
}

/// Reachability by recursive depth-first search over sorted `k`-sets. Handles
/// the core and the connectivity flag; partitions are not supported.
pub fn dsr_reachable(inst: &DsrInstance) -> bool {
    match start(inst) {
        Some(mut dfs) => dfs.go(inst.source.to_vec()),
        None => false,
    }
}

/// Fewest moves from source to target, by breadth-first search.
pub fn dsr_distance(inst: &DsrInstance) -> Option<usize> {
    let dfs = start(inst)?;
    let src = inst.source.to_vec();
    let mut dist = HashMap::from([(src.clone(), 0)]);
    let mut queue = VecDeque::from([src]);
    while let Some(d) = queue.pop_front() {
        let here = dist[&d];
        if d == dfs.target {
            return Some(here);
        }
        for next in dfs.moves(&d) {
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), here + 1);
                queue.push_back(next);
            }
        }
    }
    None
}

fn eval(f: &Formula, x: u64) -> bool {
    match f {
        Formula::Var(v) => x >> v & 1 == 1,
        Formula::And(fs) => fs.iter().all(|g| eval(g, x)),
        Formula::Or(fs) => fs.iter().any(|g| eval(g, x)),
    }
}

/// Truth-table search for a satisfying assignment of weight at most `k`.
pub fn weighted_satisfiable(f: &Formula, variables: usize, k: usize) -> bool {
    (0u64..1 << variables).any(|x| x.count_ones() as usize <= k && eval(f, x))
}
