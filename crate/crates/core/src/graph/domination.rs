use std::collections::BTreeMap;

use super::{Graph, VertexSet};
use crate::error::Result;

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    match s.max() {
        Some(m) => g.check_vertex(m),
        None => Ok(()),
    }
}

/// True iff every vertex of `x` lies in the closed neighbourhood of `d`.
pub fn dominates(g: &Graph, d: &VertexSet, x: &VertexSet) -> Result<bool> {
    check_set(g, d)?;
    check_set(g, x)?;
    let mut covered = vec![false; g.n()];
    for u in d.iter() {
        covered[u] = true;
        for &w in g.neighbors(u) {
            covered[w as usize] = true;
        }
    }
    Ok(x.iter().all(|v| covered[v]))
}

/// Partition of `V \ X` keyed by `N(v) ∩ X`.
pub fn neighborhood_classes(g: &Graph, x: &VertexSet) -> Result<BTreeMap<VertexSet, VertexSet>> {
    check_set(g, x)?;
    let mut buckets: BTreeMap<VertexSet, Vec<usize>> = BTreeMap::new();
    for v in 0..g.n() {
        if x.contains(v) {
            continue;
        }
        let key: VertexSet = g
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| x.contains(w))
            .collect();
        buckets.entry(key).or_default().push(v);
    }
    Ok(buckets.into_iter().map(|(k, v)| (k, VertexSet::from_iter(v))).collect())
}

/// `N(x) \ {y} ⊆ N(y)`.
fn one_sided_twin(g: &Graph, x: usize, y: usize) -> bool {
    g.neighbors(x)
        .iter()
        .all(|&w| w as usize == y || g.has_edge(y, w as usize))
}

/// First pair `(x, y)` outside `X`, scanning `x` then `y` by id, with
/// `N(x) \ {y} ⊆ N(y)` and `x` not in `protected`.
pub fn find_twin_pair(g: &Graph, x: &VertexSet, protected: &VertexSet) -> Option<(usize, usize)> {
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !x.contains(v)).collect();
    for &a in &outside {
        if protected.contains(a) {
            continue;
        }
        for &b in &outside {
            if a != b && g.degree(a) <= g.degree(b) + 1 && one_sided_twin(g, a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// A vertex `x ∉ X` that has a one-sided twin `y ∉ X`, if any.
pub fn find_reducible_vertex(g: &Graph, x: &VertexSet) -> Option<usize> {
    find_twin_pair(g, x, &VertexSet::new()).map(|(a, _)| a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominates_examples() {
        let c5 = Graph::cycle(5);
        let all = VertexSet::all(5);
        assert!(dominates(&c5, &VertexSet::from([0, 2]), &all).unwrap());
        assert!(!dominates(&c5, &VertexSet::new(), &all).unwrap());
        let p3 = Graph::path(3);
        assert!(dominates(&p3, &VertexSet::from([1]), &VertexSet::all(3)).unwrap());
        assert!(dominates(&p3, &VertexSet::from([7]), &VertexSet::all(3)).is_err());
    }

    #[test]
    fn star_classes() {
        let g = Graph::star(2);
        let cl = neighborhood_classes(&g, &VertexSet::from([0])).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[&VertexSet::from([0])], VertexSet::from([1, 2]));
        assert!(neighborhood_classes(&g, &VertexSet::all(3)).unwrap().is_empty());
    }

    #[test]
    fn twin_examples() {
        let g = Graph::star(2);
        let r = find_reducible_vertex(&g, &VertexSet::new()).unwrap();
        assert!(r == 1 || r == 2);
        assert!(find_reducible_vertex(&Graph::complete(3), &VertexSet::new()).is_some());
        // P4 with both ends in X has interior vertices 1,2: N(1)\{2}={0} not in N(2).
        let p4 = Graph::path(4);
        assert_eq!(find_reducible_vertex(&p4, &VertexSet::from([0, 3])), None);
    }
}
