//! Kernelization of dominating-set reconfiguration under token sliding on
//! `K_{3,d}`-free and `K_{4,d}`-minor-free graphs.
//!
//! Instances carry a domination core `X`: only `X` has to stay dominated.
//! Vertices outside `X` are grouped into classes by their neighbourhood in
//! `X`, and the rules in [`rules`] shrink those classes.

mod rules;

pub use rules::{
    add_universal_and_prune_zero_class, contract_class_components, fat_pairs, prune_small_type_edges,
    prune_three_classes, reduce_twins,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::{dominating_sets_branching, solve_with, DsrInstance, MoveRule, ReconfigResult, SolveOptions};
use crate::error::{Error, Result};
use crate::graph::{dominates, find_biclique, find_twin_pair, neighborhood_classes, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    K3dFree,
    K4dMinorFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcrInstance {
    pub graph: Graph,
    pub k: usize,
    /// Domination core; computed by [`kernelize`] when absent.
    pub core: Option<VertexSet>,
    pub source: VertexSet,
    pub target: VertexSet,
    pub d: usize,
    pub family: Family,
    /// The vertex added complete to `V \ X`, while it survives.
    pub universal: Option<usize>,
    /// Whether the universal vertex has been added. The family promise is only
    /// checked before this point.
    pub augmented: bool,
}

impl DcrInstance {
    pub fn new(graph: Graph, k: usize, source: VertexSet, target: VertexSet, d: usize, family: Family) -> Self {
        DcrInstance {
            graph,
            k,
            core: None,
            source,
            target,
            d,
            family,
            universal: None,
            augmented: false,
        }
    }

    /// A sliding instance that has to dominate all of `V`.
    pub fn from_dsr(inst: &DsrInstance, d: usize, family: Family) -> Result<Self> {
        if inst.rule != MoveRule::Slide || inst.connected || inst.partition.is_some() {
            return Err(Error::precondition("kernelization handles plain token sliding only"));
        }
        let mut out = DcrInstance::new(
            inst.graph.clone(),
            inst.k,
            inst.source.clone(),
            inst.target.clone(),
            d,
            family,
        );
        out.core = inst.core.clone();
        Ok(out)
    }

    pub fn core_ref(&self) -> Result<&VertexSet> {
        self.core
            .as_ref()
            .ok_or_else(|| Error::precondition("no domination core"))
    }

    /// The sliding instance that keeps the core dominated.
    pub fn to_dsr(&self) -> DsrInstance {
        let mut out = DsrInstance::new(
            self.graph.clone(),
            self.k,
            self.source.clone(),
            self.target.clone(),
            MoveRule::Slide,
        );
        out.core = self.core.clone();
        out
    }

    pub fn validate(&self) -> Result<()> {
        self.to_dsr().validate()?;
        if self.source.len() != self.k || self.target.len() != self.k {
            return Err(Error::malformed(format!("endpoints must hold k={} tokens", self.k)));
        }
        if self.d == 0 {
            return Err(Error::malformed("d must be positive"));
        }
        if let Some(x) = &self.core {
            if !self.source.union(&self.target).is_subset(x) {
                return Err(Error::precondition("core must contain source and target"));
            }
        }
        if let Some(y) = self.universal {
            self.graph.check_vertex(y)?;
        }
        if !self.graph.is_connected() {
            return Err(Error::precondition("graph is disconnected"));
        }
        Ok(())
    }

    /// Classes of `V \ X` keyed by their neighbourhood in `X`.
    pub fn classes(&self) -> Result<BTreeMap<VertexSet, VertexSet>> {
        neighborhood_classes(&self.graph, self.core_ref()?)
    }

    pub fn size(&self) -> Size {
        Size {
            n: self.graph.n(),
            m: self.graph.m(),
        }
    }

    /// Drops `gone` (never core vertices) and renumbers everything.
    pub(crate) fn without(&self, gone: &[usize]) -> DcrInstance {
        if gone.is_empty() {
            return self.clone();
        }
        let (graph, map) = self.graph.remove_vertices(gone);
        let f = |v: usize| map[v];
        DcrInstance {
            graph,
            core: self.core.as_ref().map(|x| x.map(f)),
            source: self.source.map(f),
            target: self.target.map(f),
            universal: self.universal.and_then(f),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Size {
    pub n: usize,
    pub m: usize,
}

/// True iff every set of at most `k` vertices dominating `x` dominates `V`.
///
/// Branching visits a subset of every such set, and a subset that misses a
/// vertex makes the superset miss it too, so checking the leaves suffices.
pub fn is_domination_core(g: &Graph, k: usize, x: &VertexSet) -> Result<bool> {
    let all = VertexSet::all(g.n());
    dominating_sets_branching(g, x, k, |d| {
        dominates(g, &VertexSet::from_sorted(d.to_vec()), &all).unwrap_or(false)
    })
}

/// `(2d+1) k^(d+1)`, saturating.
pub fn core_size_bound(k: usize, d: usize) -> u64 {
    let pow = (k as u64).saturating_pow(d as u32 + 1);
    (2 * d as u64 + 1).saturating_mul(pow)
}

/// Greedy domination core: start from `V` and drop vertices outside
/// `must_include` in id order while the exact check keeps passing. `d` only
/// enters the size bound reported by [`core_size_bound`].
pub fn compute_core(g: &Graph, k: usize, must_include: &VertexSet, _d: usize) -> Result<VertexSet> {
    if let Some(m) = must_include.max() {
        g.check_vertex(m)?;
    }
    let all = VertexSet::all(g.n());
    let mut found = false;
    dominating_sets_branching(g, &all, k, |_| {
        found = true;
        false
    })?;
    if !found {
        return Err(Error::Infeasible(format!("no dominating set of size at most {k}")));
    }
    let mut x = all;
    for v in 0..g.n() {
        if must_include.contains(v) {
            continue;
        }
        let mut cand = x.clone();
        cand.remove(v);
        if is_domination_core(g, k, &cand)? {
            x = cand;
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleStep {
    pub rule: String,
    pub vertices_removed: isize,
    pub edges_removed: isize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelReport {
    pub core_size: usize,
    pub core_bound: u64,
    /// Class type → sizes of the classes of that type, descending.
    pub class_histogram: BTreeMap<usize, Vec<usize>>,
    pub rules_applied: Vec<RuleStep>,
    pub size_before: Size,
    pub size_after: Size,
    pub zero_class_size: usize,
    /// Largest class whose type is at least 3 (`K_{3,d}`-free) or 4.
    pub max_large_class: usize,
    /// Largest class of type 0 or at least 3, and at least 2.
    pub p: usize,
    /// `log2` of the bound on classes of type 1 or 2.
    pub small_class_log2_bound: f64,
    /// `log2` of the bound on 3-classes (`K_{4,d}`-minor-free only).
    pub three_class_log2_bound: Option<f64>,
    pub twin_free: bool,
}

impl KernelReport {
    fn measure(inst: &DcrInstance, before: Size, steps: Vec<RuleStep>) -> Result<Self> {
        let x = inst.core_ref()?;
        let classes = inst.classes()?;
        let mut hist: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (key, members) in &classes {
            hist.entry(key.len()).or_default().push(members.len());
        }
        for sizes in hist.values_mut() {
            sizes.sort_unstable_by(|a, b| b.cmp(a));
        }
        let large_from = match inst.family {
            Family::K3dFree => 3,
            Family::K4dMinorFree => 4,
        };
        let max_of = |pred: &dyn Fn(usize) -> bool| {
            hist.iter()
                .filter(|(t, _)| pred(**t))
                .flat_map(|(_, s)| s.iter().copied())
                .max()
                .unwrap_or(0)
        };
        let zero = max_of(&|t| t == 0);
        let max_large = max_of(&|t| t >= large_from);
        let p = max_of(&|t| t == 0 || t >= 3).max(2);
        let classes_log2 = x.len() as f64;
        let kd = (inst.k * inst.d) as f64;
        let three = (inst.family == Family::K4dMinorFree).then(|| classes_log2.exp2() * (kd + kd.exp2()));
        Ok(KernelReport {
            core_size: x.len(),
            core_bound: core_size_bound(inst.k, inst.d),
            class_histogram: hist,
            rules_applied: steps,
            size_before: before,
            size_after: inst.size(),
            zero_class_size: zero,
            max_large_class: max_large,
            p,
            small_class_log2_bound: p as f64 * classes_log2.exp2(),
            three_class_log2_bound: three,
            twin_free: find_twin_pair(&inst.graph, x, &VertexSet::new()).is_none(),
        })
    }

    /// Every size certificate of the kernel.
    pub fn holds(&self, d: usize) -> bool {
        let within = |t: usize, bound: f64| {
            self.class_histogram
                .get(&t)
                .is_none_or(|s| s.iter().all(|&c| (c as f64).log2() <= bound))
        };
        self.zero_class_size <= 1
            && self.max_large_class < d
            && within(1, self.small_class_log2_bound)
            && within(2, self.small_class_log2_bound)
            && self.three_class_log2_bound.is_none_or(|b| within(3, b))
            && self.twin_free
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub kernel: DcrInstance,
    pub report: KernelReport,
}

/// Applies every rule until none changes the instance.
pub fn kernelize(inst: &DcrInstance) -> Result<Kernel> {
    inst.validate()?;
    let before = inst.size();
    let mut cur = inst.clone();
    if cur.family == Family::K3dFree && !cur.augmented {
        if let Some((left, right)) = find_biclique(&cur.graph, 3, cur.d)? {
            return Err(Error::FamilyViolation { left, right });
        }
    }
    if cur.core.is_none() {
        let must = cur.source.union(&cur.target);
        cur.core = Some(compute_core(&cur.graph, cur.k, &must, cur.d)?);
    }
    type Rule = fn(&DcrInstance) -> Result<DcrInstance>;
    let mut rules: Vec<(&str, Rule)> = vec![
        ("contract_class_components", contract_class_components),
        ("add_universal_and_prune_zero_class", add_universal_and_prune_zero_class),
        ("prune_small_type_edges", prune_small_type_edges),
    ];
    if cur.family == Family::K4dMinorFree {
        rules.push(("prune_three_classes", prune_three_classes));
    }
    rules.push(("reduce_twins", reduce_twins));
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for (name, rule) in &rules {
            let next = rule(&cur)?;
            if next != cur {
                if !next.graph.is_connected() {
                    return Err(Error::precondition(format!("{name} disconnected the graph")));
                }
                let (a, b) = (cur.size(), next.size());
                steps.push(RuleStep {
                    rule: name.to_string(),
                    vertices_removed: a.n as isize - b.n as isize,
                    edges_removed: a.m as isize - b.m as isize,
                });
                cur = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let report = KernelReport::measure(&cur, before, steps)?;
    Ok(Kernel { kernel: cur, report })
}

pub fn solve_via_kernel(inst: &DcrInstance) -> Result<ReconfigResult> {
    solve_via_kernel_with(inst, &SolveOptions::default())
}

pub fn solve_via_kernel_with(inst: &DcrInstance, opts: &SolveOptions) -> Result<ReconfigResult> {
    let k = kernelize(inst)?;
    solve_with(&k.kernel.to_dsr(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::solve;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn star_core_keeps_two_leaves() {
        // a lone leaf dominates the center without dominating the other leaves
        let g = Graph::star(3);
        assert!(!is_domination_core(&g, 1, &vs(&[0])).unwrap());
        assert_eq!(compute_core(&g, 1, &vs(&[0]), 2).unwrap(), vs(&[0, 2, 3]));
        assert!(is_domination_core(&g, 1, &VertexSet::all(4)).unwrap());
    }

    #[test]
    fn p5_core_within_bound() {
        let g = Graph::path(5);
        let x = compute_core(&g, 2, &VertexSet::new(), 2).unwrap();
        assert!(is_domination_core(&g, 2, &x).unwrap());
        assert!(x.len() as u64 <= core_size_bound(2, 2));
        assert!(matches!(
            compute_core(&g, 1, &VertexSet::new(), 2),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn c6_stays_frozen() {
        let inst = DcrInstance::new(Graph::cycle(6), 2, vs(&[0, 3]), vs(&[1, 4]), 2, Family::K3dFree);
        let k = kernelize(&inst).unwrap();
        assert!(k.report.holds(2));
        assert!(!solve_via_kernel(&inst).unwrap().reachable);
        assert!(!solve(&inst.to_dsr()).unwrap().reachable);
        let again = kernelize(&k.kernel).unwrap();
        assert_eq!(again.kernel, k.kernel);
        assert!(again.report.rules_applied.is_empty());
    }

    #[test]
    fn trivial_yes_survives() {
        let inst = DcrInstance::new(Graph::path(4), 2, vs(&[1, 2]), vs(&[1, 2]), 2, Family::K3dFree);
        assert!(solve_via_kernel(&inst).unwrap().reachable);
    }

    #[test]
    fn biclique_rejected() {
        let g = Graph::complete_bipartite(3, 2);
        let inst = DcrInstance::new(g, 2, vs(&[0, 3]), vs(&[0, 3]), 2, Family::K3dFree);
        assert!(matches!(kernelize(&inst), Err(Error::FamilyViolation { .. })));
    }
}
