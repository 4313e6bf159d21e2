//! Exact reachability for dominating-set reconfiguration.
//!
//! Configurations are sets of exactly `k` distinct vertices. A move takes one
//! token from `u` to an unoccupied `v`: along an edge for [`MoveRule::Slide`],
//! anywhere for [`MoveRule::Jump`]. Every intermediate set must dominate the
//! core, and optionally induce a connected subgraph or respect a partition.

mod domset;
pub mod search;

pub use domset::{
    connected_dominating_set_avoiding, dominating_sets_branching, domination_number, minimum_dominating_sets,
    DOMSET_CAP,
};
pub use search::DEFAULT_STATE_CAP;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveRule {
    Slide,
    Jump,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsrInstance {
    pub graph: Graph,
    pub k: usize,
    pub source: VertexSet,
    pub target: VertexSet,
    pub rule: MoveRule,
    pub connected: bool,
    /// Vertices that must stay dominated; `None` means all of `V`.
    pub core: Option<VertexSet>,
    pub partition: Option<Vec<VertexSet>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigResult {
    pub reachable: bool,
    pub witness: Option<Vec<VertexSet>>,
    pub explored: usize,
}

impl ReconfigResult {
    /// Number of moves in the witness, if any.
    pub fn witness_length(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.len() - 1)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub state_cap: usize,
    /// Solve SLIDE instances on disconnected graphs one component at a time.
    pub split_components: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            state_cap: DEFAULT_STATE_CAP,
            split_components: true,
        }
    }
}

impl DsrInstance {
    pub fn new(graph: Graph, k: usize, source: VertexSet, target: VertexSet, rule: MoveRule) -> Self {
        DsrInstance {
            graph,
            k,
            source,
            target,
            rule,
            connected: false,
            core: None,
            partition: None,
        }
    }

    pub fn core_set(&self) -> VertexSet {
        self.core.clone().unwrap_or_else(|| VertexSet::all(self.graph.n()))
    }

    pub fn swapped(&self) -> Self {
        let mut s = self.clone();
        std::mem::swap(&mut s.source, &mut s.target);
        s
    }

    /// Structural checks that do not depend on domination.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.graph.n();
        let in_range = |s: &VertexSet, what: &str| match s.max() {
            Some(m) if m >= n => Err(Error::malformed(format!("{what} holds vertex {m} >= n={n}"))),
            _ => Ok(()),
        };
        in_range(&self.source, "source")?;
        in_range(&self.target, "target")?;
        if let Some(c) = &self.core {
            in_range(c, "core")?;
        }
        if let Some(parts) = &self.partition {
            let mut seen = vec![false; n];
            for p in parts {
                in_range(p, "partition")?;
                for v in p.iter() {
                    if seen[v] {
                        return Err(Error::malformed(format!("vertex {v} in two parts")));
                    }
                    seen[v] = true;
                }
            }
            if parts.len() != self.k {
                return Err(Error::malformed(format!("{} parts for k={}", parts.len(), self.k)));
            }
        }
        Ok(())
    }

    /// Validates shape and feasibility of both endpoints.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        let eng = Engine::new(self);
        for (name, s) in [("source", &self.source), ("target", &self.target)] {
            if let Some(why) = eng.infeasibility(&s.to_u32()) {
                return Err(Error::precondition(format!("{name} infeasible: {why}")));
            }
        }
        Ok(())
    }

    pub fn is_feasible(&self, d: &VertexSet) -> bool {
        if d.max().is_some_and(|m| m >= self.graph.n()) {
            return false;
        }
        Engine::new(self).infeasibility(&d.to_u32()).is_none()
    }
}

/// Precomputed lookup tables for one instance.
pub(crate) struct Engine<'a> {
    inst: &'a DsrInstance,
    closed: Vec<Vec<u32>>,
    in_core: Vec<bool>,
    part: Vec<usize>,
}

const NO_PART: usize = usize::MAX;

impl<'a> Engine<'a> {
    pub(crate) fn new(inst: &'a DsrInstance) -> Self {
        let g = &inst.graph;
        let n = g.n();
        let mut in_core = vec![inst.core.is_none(); n];
        if let Some(c) = &inst.core {
            for v in c.iter() {
                in_core[v] = true;
            }
        }
        let mut part = vec![NO_PART; n];
        if let Some(parts) = &inst.partition {
            for (i, p) in parts.iter().enumerate() {
                for v in p.iter() {
                    part[v] = i;
                }
            }
        }
        Engine {
            inst,
            closed: (0..n).map(|v| g.closed_neighbors(v)).collect(),
            in_core,
            part,
        }
    }

    fn cover_counts(&self, d: &[u32]) -> Vec<u32> {
        let mut cnt = vec![0u32; self.closed.len()];
        for &u in d {
            for &w in &self.closed[u as usize] {
                cnt[w as usize] += 1;
            }
        }
        cnt
    }

    /// Reason why `d` is not a feasible configuration, if any.
    pub(crate) fn infeasibility(&self, d: &[u32]) -> Option<String> {
        if d.len() != self.inst.k {
            return Some(format!("size {} != k={}", d.len(), self.inst.k));
        }
        if d.windows(2).any(|p| p[0] >= p[1]) {
            return Some("not a sorted set".into());
        }
        let cnt = self.cover_counts(d);
        if let Some(w) = (0..cnt.len()).find(|&w| self.in_core[w] && cnt[w] == 0) {
            return Some(format!("vertex {w} undominated"));
        }
        if self.inst.connected && !self.inst.graph.induces_connected(d) {
            return Some("not connected".into());
        }
        if let Some(parts) = &self.inst.partition {
            let mut hits = vec![0; parts.len()];
            for &u in d {
                match self.part[u as usize] {
                    NO_PART => return Some(format!("vertex {u} outside every part")),
                    p => hits[p] += 1,
                }
            }
            if hits.iter().any(|&h| h != 1) {
                return Some("not one token per part".into());
            }
        }
        None
    }

    /// All feasible configurations one move away, sorted.
    pub(crate) fn successors(&self, d: &[u32]) -> Vec<Vec<u32>> {
        let g = &self.inst.graph;
        let n = g.n();
        let cnt = self.cover_counts(d);
        let mut occupied = vec![false; n];
        for &u in d {
            occupied[u as usize] = true;
        }
        let mut out = Vec::new();
        let mut allowed = vec![0u32; n];
        let mut stamp = 0u32;
        for (ti, &u) in d.iter().enumerate() {
            // core vertices only u dominates; the destination must cover all of them
            let critical: Vec<usize> = self.closed[u as usize]
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| self.in_core[w] && cnt[w] == 1)
                .collect();
            stamp += 1;
            let mut candidates: Vec<u32> = match critical.first() {
                Some(&w0) => self.closed[w0].clone(),
                None => (0..n as u32).collect(),
            };
            for &w in critical.iter().skip(1) {
                for &x in &self.closed[w] {
                    allowed[x as usize] = stamp;
                }
                candidates.retain(|&x| allowed[x as usize] == stamp);
                stamp += 1;
            }
            for v in candidates {
                let vu = v as usize;
                if occupied[vu] {
                    continue;
                }
                if self.inst.rule == MoveRule::Slide && !g.has_edge(u as usize, vu) {
                    continue;
                }
                if self.inst.partition.is_some() && self.part[vu] != self.part[u as usize] {
                    continue;
                }
                let mut next = d.to_vec();
                next.remove(ti);
                let pos = next.binary_search(&v).unwrap_err();
                next.insert(pos, v);
                if self.inst.connected && !g.induces_connected(&next) {
                    continue;
                }
                out.push(next);
            }
        }
        out.sort_unstable();
        out
    }

    fn legal_move(&self, a: &[u32], b: &[u32]) -> bool {
        let gone: Vec<u32> = a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect();
        let came: Vec<u32> = b.iter().copied().filter(|x| a.binary_search(x).is_err()).collect();
        if gone.len() != 1 || came.len() != 1 {
            return false;
        }
        let (u, v) = (gone[0] as usize, came[0] as usize);
        if self.inst.rule == MoveRule::Slide && !self.inst.graph.has_edge(u, v) {
            return false;
        }
        self.inst.partition.is_none() || self.part[u] == self.part[v]
    }
}

/// Feasible configurations one move away from `d`, in sorted order.
pub fn successors(inst: &DsrInstance, d: &VertexSet) -> Result<Vec<VertexSet>> {
    inst.check_shape()?;
    let eng = Engine::new(inst);
    let cur = d.to_u32();
    if let Some(why) = eng.infeasibility(&cur) {
        return Err(Error::precondition(format!("configuration infeasible: {why}")));
    }
    Ok(eng.successors(&cur).into_iter().map(VertexSet::from_sorted).collect())
}

pub fn solve(inst: &DsrInstance) -> Result<ReconfigResult> {
    solve_with(inst, &SolveOptions::default())
}

/// Breadth-first search from the source. The witness is a shortest move
/// sequence; among shortest ones, successors are tried in lexicographic order.
pub fn solve_with(inst: &DsrInstance, opts: &SolveOptions) -> Result<ReconfigResult> {
    inst.validate()?;
    let split = opts.split_components
        && inst.rule == MoveRule::Slide
        && !inst.connected
        && inst.partition.is_none()
        && !inst.graph.is_connected();
    if split {
        return solve_by_component(inst, opts);
    }
    let eng = Engine::new(inst);
    let out = search::bfs(inst.source.to_u32(), &inst.target.to_u32(), opts.state_cap, |d| {
        Ok(eng.successors(d))
    })?;
    Ok(ReconfigResult {
        reachable: out.path.is_some(),
        witness: out.path.map(|p| p.into_iter().map(VertexSet::from_sorted).collect()),
        explored: out.explored,
    })
}

/// Tokens never leave their component under sliding, so each component is an
/// independent subproblem with its own token count.
fn solve_by_component(inst: &DsrInstance, opts: &SolveOptions) -> Result<ReconfigResult> {
    let core = inst.core_set();
    let mut witness = vec![inst.source.clone()];
    let mut explored = 0;
    for comp in inst.graph.components() {
        let local = |s: &VertexSet| -> VertexSet {
            comp.iter()
                .enumerate()
                .filter(|&(_, &v)| s.contains(v))
                .map(|(i, _)| i)
                .collect()
        };
        let (src, tgt) = (local(&inst.source), local(&inst.target));
        if src.len() != tgt.len() {
            return Ok(ReconfigResult {
                reachable: false,
                witness: None,
                explored,
            });
        }
        if src == tgt {
            continue;
        }
        let sub = DsrInstance {
            graph: inst.graph.induced_subgraph(&comp),
            k: src.len(),
            source: src,
            target: tgt,
            rule: inst.rule,
            connected: false,
            core: Some(local(&core)),
            partition: None,
        };
        let r = solve_with(
            &sub,
            &SolveOptions {
                state_cap: opts.state_cap.saturating_sub(explored).max(1),
                split_components: false,
            },
        )?;
        explored += r.explored;
        let Some(steps) = r.witness else {
            return Ok(ReconfigResult {
                reachable: false,
                witness: None,
                explored,
            });
        };
        let base = witness.last().unwrap().clone();
        let outside: Vec<usize> = base.iter().filter(|v| comp.binary_search(v).is_err()).collect();
        for step in steps.iter().skip(1) {
            let mut full = outside.clone();
            full.extend(step.iter().map(|i| comp[i]));
            witness.push(full.into_iter().collect());
        }
    }
    Ok(ReconfigResult {
        reachable: true,
        witness: Some(witness),
        explored: explored.max(1),
    })
}

/// True iff `seq` starts at the source, ends at the target, stays feasible and
/// moves one token per step according to the rule.
pub fn verify_witness(inst: &DsrInstance, seq: &[VertexSet]) -> bool {
    if inst.check_shape().is_err() || seq.is_empty() {
        return false;
    }
    if seq[0] != inst.source || seq[seq.len() - 1] != inst.target {
        return false;
    }
    if seq.iter().any(|d| d.max().is_some_and(|m| m >= inst.graph.n())) {
        return false;
    }
    let eng = Engine::new(inst);
    let cfgs: Vec<Vec<u32>> = seq.iter().map(VertexSet::to_u32).collect();
    cfgs.iter().all(|d| eng.infeasibility(d).is_none()) && cfgs.windows(2).all(|p| eng.legal_move(&p[0], &p[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(src: [usize; 2], tgt: [usize; 2]) -> DsrInstance {
        DsrInstance::new(Graph::path(3), 2, src.into(), tgt.into(), MoveRule::Slide)
    }

    #[test]
    fn p3_successors() {
        let inst = p3([0, 1], [1, 2]);
        let s = successors(&inst, &VertexSet::from([0, 1])).unwrap();
        assert_eq!(s, vec![VertexSet::from([0, 2])]);
    }

    #[test]
    fn p3_solve_two_moves() {
        let r = solve(&p3([0, 1], [1, 2])).unwrap();
        assert!(r.reachable);
        assert_eq!(
            r.witness.unwrap(),
            vec![
                VertexSet::from([0, 1]),
                VertexSet::from([0, 2]),
                VertexSet::from([1, 2])
            ]
        );
    }

    #[test]
    fn c6_frozen() {
        let inst = DsrInstance::new(Graph::cycle(6), 2, [0, 3].into(), [1, 4].into(), MoveRule::Slide);
        assert!(successors(&inst, &inst.source).unwrap().is_empty());
        let r = solve(&inst).unwrap();
        assert!(!r.reachable);
        assert_eq!(r.explored, 1);
    }

    #[test]
    fn jump_with_full_occupation_has_no_moves() {
        let g = Graph::path(3);
        let inst = DsrInstance::new(g, 3, VertexSet::all(3), VertexSet::all(3), MoveRule::Jump);
        assert!(successors(&inst, &inst.source).unwrap().is_empty());
    }

    #[test]
    fn identity_witness() {
        let inst = p3([0, 1], [0, 1]);
        let r = solve(&inst).unwrap();
        assert_eq!(r.witness.as_deref(), Some(&[VertexSet::from([0, 1])][..]));
        assert!(verify_witness(&inst, &[VertexSet::from([0, 1])]));
    }

    #[test]
    fn infeasible_step_rejected() {
        let inst = DsrInstance::new(Graph::path(4), 2, [0, 2].into(), [1, 3].into(), MoveRule::Jump);
        // {0,1} leaves 3 undominated
        let bad = [
            VertexSet::from([0, 2]),
            VertexSet::from([0, 1]),
            VertexSet::from([1, 3]),
        ];
        assert!(!verify_witness(&inst, &bad));
        let r = solve(&inst).unwrap();
        assert!(verify_witness(&inst, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn disconnected_slide_by_component() {
        // two disjoint P3s, one token each
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let mut inst = DsrInstance::new(g, 2, [0, 4].into(), [1, 3].into(), MoveRule::Slide);
        inst.core = Some([3].into());
        let r = solve(&inst).unwrap();
        assert!(r.reachable);
        assert!(verify_witness(&inst, r.witness.as_ref().unwrap()));
        let whole = solve_with(
            &inst,
            &SolveOptions {
                split_components: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(whole.witness_length(), r.witness_length());

        inst.target = [3, 4].into();
        assert!(inst.validate().is_ok());
        assert!(!solve(&inst).unwrap().reachable);
    }

    #[test]
    fn infeasible_source_is_precondition_error() {
        let inst = p3([0, 2], [1, 2]);
        let mut bad = inst.clone();
        bad.source = [0].into();
        assert!(matches!(solve(&bad), Err(Error::Precondition(_))));
    }
}
