use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{find_twin_pair, max_bipartite_matching, VertexSet};

use super::{DcrInstance, Family};

struct ClassMap {
    id: Vec<Option<usize>>,
    keys: Vec<VertexSet>,
    members: Vec<Vec<usize>>,
}

impl ClassMap {
    fn of(inst: &DcrInstance) -> Result<Self> {
        let mut id = vec![None; inst.graph.n()];
        let mut keys = Vec::new();
        let mut members = Vec::new();
        for (i, (key, set)) in inst.classes()?.into_iter().enumerate() {
            for v in set.iter() {
                id[v] = Some(i);
            }
            keys.push(key);
            members.push(set.to_vec());
        }
        Ok(ClassMap { id, keys, members })
    }
}

/// Deletes vertices `x ∉ X` with `N(x) \ {y} ⊆ N(y)` for some `y ∉ X` until
/// none is left.
pub fn reduce_twins(inst: &DcrInstance) -> Result<DcrInstance> {
    let mut cur = inst.clone();
    while let Some((a, _)) = find_twin_pair(&cur.graph, cur.core_ref()?, &VertexSet::new()) {
        cur = cur.without(&[a]);
    }
    Ok(cur)
}

/// Contracts every connected component inside a class to one vertex.
pub fn contract_class_components(inst: &DcrInstance) -> Result<DcrInstance> {
    let cm = ClassMap::of(inst)?;
    let mut groups = Vec::new();
    for members in &cm.members {
        let sub = inst.graph.induced_subgraph(members);
        for comp in sub.components() {
            if comp.len() > 1 {
                groups.push(comp.into_iter().map(|i| members[i]).collect::<Vec<_>>());
            }
        }
    }
    if groups.is_empty() {
        return Ok(inst.clone());
    }
    let (graph, map) = inst.graph.contract(&groups);
    let f = |v: usize| Some(map[v]);
    Ok(DcrInstance {
        graph,
        core: inst.core.as_ref().map(|x| x.map(f)),
        source: inst.source.map(f),
        target: inst.target.map(f),
        universal: inst.universal.map(|y| map[y]),
        ..inst.clone()
    })
}

/// Adds `y` complete to `V \ X` and anticomplete to `X`, then deletes the rest
/// of the 0-class, whose members are all twins of `y`. Applies once.
pub fn add_universal_and_prune_zero_class(inst: &DcrInstance) -> Result<DcrInstance> {
    if inst.augmented {
        return Ok(inst.clone());
    }
    let x = inst.core_ref()?;
    let outside: Vec<usize> = (0..inst.graph.n()).filter(|&v| !x.contains(v)).collect();
    let mut cur = inst.clone();
    cur.augmented = true;
    if outside.is_empty() {
        // y would be isolated and never reachable by a token
        return Ok(cur);
    }
    let y = cur.graph.add_vertex();
    for &v in &outside {
        cur.graph.add_edge(y, v);
    }
    cur.universal = Some(y);
    let zero: Vec<usize> = outside
        .into_iter()
        .filter(|&v| inst.graph.neighbors(v).iter().all(|&w| !x.contains(w as usize)))
        .collect();
    Ok(cur.without(&zero))
}

/// Keeps one edge between any two distinct classes of type 1 or 2 and one
/// neighbour of the universal vertex per class, the smallest in each case.
/// Every other such edge goes.
pub fn prune_small_type_edges(inst: &DcrInstance) -> Result<DcrInstance> {
    if !inst.augmented {
        return Err(Error::precondition("universal vertex has not been added"));
    }
    let cm = ClassMap::of(inst)?;
    let y = inst.universal;
    let mut kept: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut cur = inst.clone();
    for (u, v) in inst.graph.edges() {
        let (Some(cu), Some(cv)) = (cm.id[u], cm.id[v]) else {
            continue;
        };
        if cu == cv {
            continue;
        }
        let key = if y == Some(u) {
            (usize::MAX, cv)
        } else if y == Some(v) {
            (usize::MAX, cu)
        } else if (1..=2).contains(&cm.keys[cu].len()) && (1..=2).contains(&cm.keys[cv].len()) {
            (cu.min(cv), cu.max(cv))
        } else {
            continue;
        };
        if !kept.insert(key) {
            cur.graph.remove_edge(u, v);
        }
    }
    Ok(cur)
}

/// Ordered pairs of distinct classes, by key, joined by a matching of more
/// than `k·d` edges.
pub fn fat_pairs(inst: &DcrInstance) -> Result<Vec<(VertexSet, VertexSet)>> {
    let cm = ClassMap::of(inst)?;
    let g = &inst.graph;
    let limit = inst.k * inst.d;
    let mut out = Vec::new();
    for a in 0..cm.keys.len() {
        for b in 0..cm.keys.len() {
            if a == b {
                continue;
            }
            let (left, right) = (&cm.members[a], &cm.members[b]);
            let mut edges = Vec::new();
            for (i, &u) in left.iter().enumerate() {
                for (j, &v) in right.iter().enumerate() {
                    if g.has_edge(u, v) {
                        edges.push((i, j));
                    }
                }
            }
            if edges.len() > limit && max_bipartite_matching(left.len(), right.len(), &edges).len() > limit {
                out.push((cm.keys[a].clone(), cm.keys[b].clone()));
            }
        }
    }
    Ok(out)
}

/// Cuts every edge between a 3-class and its fat partners.
pub fn prune_three_classes(inst: &DcrInstance) -> Result<DcrInstance> {
    if inst.family != Family::K4dMinorFree {
        return Err(Error::precondition(
            "3-class pruning needs the K_{4,d}-minor-free promise",
        ));
    }
    let cm = ClassMap::of(inst)?;
    let index = |key: &VertexSet| cm.keys.iter().position(|k| k == key).expect("class key");
    let mut cur = inst.clone();
    for (a, b) in fat_pairs(inst)? {
        if a.len() != 3 {
            continue;
        }
        let (ia, ib) = (index(&a), index(&b));
        for &u in &cm.members[ia] {
            for &v in &cm.members[ib] {
                cur.graph.remove_edge(u, v);
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::solve;
    use crate::graph::Graph;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn dcr(g: Graph, k: usize, s: &[usize], t: &[usize], x: &[usize]) -> DcrInstance {
        let mut inst = DcrInstance::new(g, k, vs(s), vs(t), 2, Family::K3dFree);
        inst.core = Some(vs(x));
        inst
    }

    #[test]
    fn duplicated_leaf_removed() {
        // 0-1-2 with a second leaf 3 on 1
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let inst = dcr(g, 1, &[1], &[1], &[0, 1]);
        let out = reduce_twins(&inst).unwrap();
        assert_eq!(out.graph.n(), 3);
        assert_eq!(reduce_twins(&out).unwrap(), out);
    }

    #[test]
    fn class_edge_contracted() {
        // X = {0}; 1 and 2 both see 0 and each other
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = dcr(g, 1, &[0], &[0], &[0]);
        let out = contract_class_components(&inst).unwrap();
        assert_eq!(out.graph.n(), 2);
        assert_eq!(out.graph.m(), 1);
        assert_eq!(contract_class_components(&out).unwrap(), out);
    }

    #[test]
    fn zero_class_absorbed() {
        // X = {0, 1}; 2, 3, 4 hang off 5, which sees X
        let g = Graph::from_edges(6, &[(0, 1), (0, 5), (1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
        let inst = dcr(g, 2, &[0, 1], &[0, 1], &[0, 1]);
        let out = add_universal_and_prune_zero_class(&inst).unwrap();
        let cls = out.classes().unwrap();
        assert_eq!(cls[&VertexSet::new()].len(), 1);
        assert_eq!(out.graph.n(), 4);
        assert!(out.graph.is_connected());
        assert_eq!(
            solve(&out.to_dsr()).unwrap().reachable,
            solve(&inst.to_dsr()).unwrap().reachable
        );
        assert_eq!(add_universal_and_prune_zero_class(&out).unwrap(), out);
    }

    #[test]
    fn whole_core_adds_nothing() {
        let inst = dcr(Graph::path(3), 1, &[1], &[1], &[0, 1, 2]);
        let out = add_universal_and_prune_zero_class(&inst).unwrap();
        assert_eq!(out.graph, inst.graph);
        assert!(out.augmented);
    }

    #[test]
    fn matching_between_type_one_classes_pruned() {
        // X = {0, 1}; class {0} = {2, 3, 4}, class {1} = {5, 6, 7}, matched 2-5, 3-6, 4-7
        let mut e = vec![(0, 1)];
        for v in 2..5 {
            e.push((0, v));
            e.push((v, v + 3));
        }
        for v in 5..8 {
            e.push((1, v));
        }
        let g = Graph::from_edges(8, &e).unwrap();
        let inst = dcr(g, 2, &[0, 1], &[0, 1], &[0, 1]);
        assert!(matches!(prune_small_type_edges(&inst), Err(Error::Precondition(_))));
        let aug = add_universal_and_prune_zero_class(&inst).unwrap();
        let out = prune_small_type_edges(&aug).unwrap();
        assert_eq!((2..5).filter(|&v| out.graph.has_edge(v, v + 3)).count(), 1);
        let y = out.universal.unwrap();
        assert_eq!(out.graph.degree(y), 2);
        assert!(out.graph.is_connected());
        assert_eq!(
            solve(&out.to_dsr()).unwrap().reachable,
            solve(&aug.to_dsr()).unwrap().reachable
        );
        assert_eq!(prune_small_type_edges(&out).unwrap(), out);
    }

    #[test]
    fn fat_pair_detection() {
        // k·d = 2: a perfect matching of 3 edges between {0}- and {1}-classes is fat
        let mut e = vec![(0, 1)];
        for v in 2..5 {
            e.push((0, v));
            e.push((1, v + 3));
        }
        let base = Graph::from_edges(8, &e).unwrap();
        let mut g = base.clone();
        for v in 2..5 {
            for w in 5..8 {
                g.add_edge(v, w);
            }
        }
        let inst = dcr(g, 1, &[0], &[0], &[0, 1]);
        let pairs = fat_pairs(&inst).unwrap();
        assert_eq!(pairs.len(), 2);
        let mut one = base;
        one.add_edge(2, 5);
        assert!(fat_pairs(&dcr(one, 1, &[0], &[0], &[0, 1])).unwrap().is_empty());
    }

    #[test]
    fn three_class_needs_minor_family() {
        let inst = dcr(Graph::path(3), 1, &[1], &[1], &[0, 1, 2]);
        assert!(matches!(prune_three_classes(&inst), Err(Error::Precondition(_))));
        let inst = DcrInstance {
            family: Family::K4dMinorFree,
            ..inst
        };
        assert_eq!(prune_three_classes(&inst).unwrap(), inst);
    }
}
