//! Simple undirected graphs over dense ids and canonical vertex sets.

mod decomposition;
mod domination;
mod matching;
mod structure;

pub use decomposition::{verify_decomposition, DecompositionReport, TreeDecomposition};
pub use domination::{dominates, find_reducible_vertex, find_twin_pair, neighborhood_classes};
pub use matching::max_bipartite_matching;
pub use structure::{contains_biclique, degeneracy, find_biclique, min_feedback_vertex_set, BICLIQUE_CAP, FVS_CAP};

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: BTreeMap::new(),
        }
    }

    /// Builds a graph, rejecting loops, out-of-range ids and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::malformed(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::malformed(format!("self-loop on {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::malformed(format!("parallel edge ({u},{v})")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n() && v < self.n());
        match self.adj[u].binary_search(&(v as u32)) {
            Ok(_) => false,
            Err(p) => {
                self.adj[u].insert(p, v as u32);
                let q = self.adj[v].binary_search(&(u as u32)).unwrap_err();
                self.adj[v].insert(q, u as u32);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&(v as u32)) {
            Ok(p) => {
                self.adj[u].remove(p);
                let q = self.adj[v].binary_search(&(u as u32)).unwrap();
                self.adj[v].remove(q);
                true
            }
            Err(_) => false,
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Closed neighbourhood as a sorted list.
    pub fn closed_neighbors(&self, v: usize) -> Vec<u32> {
        let mut out = self.adj[v].clone();
        let p = out.binary_search(&(v as u32)).unwrap_err();
        out.insert(p, v as u32);
        out
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if (v as usize) > u {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn clear_labels(&mut self) {
        self.labels.clear();
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subgraph induced by `set` is connected (empty counts as connected).
    pub fn induces_connected(&self, set: &[u32]) -> bool {
        if set.len() <= 1 {
            return true;
        }
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v as usize] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![set[0] as usize];
        seen[set[0] as usize] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                let w = w as usize;
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == set.len()
    }

    /// Unweighted distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `keep` (sorted), relabelled `0..keep.len()` in order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter(|&&w| map[w as usize] != usize::MAX)
                .map(|&w| map[w as usize] as u32)
                .collect();
            g.adj[i].sort_unstable();
            if let Some(l) = self.labels.get(&v) {
                g.labels.insert(i, l.clone());
            }
        }
        g
    }

    /// Deletes `drop`; returns the new graph and old→new id map.
    pub fn remove_vertices(&self, drop: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut gone = vec![false; self.n()];
        for &v in drop {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let mut map = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        (self.induced_subgraph(&keep), map)
    }

    /// Merges each group into its smallest member. Returns the new graph and old→new map.
    pub fn contract(&self, groups: &[Vec<usize>]) -> (Graph, Vec<usize>) {
        let mut rep: Vec<usize> = (0..self.n()).collect();
        for grp in groups {
            if let Some(&m) = grp.iter().min() {
                for &v in grp {
                    rep[v] = m;
                }
            }
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| rep[v] == v).collect();
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            idx[v] = i;
        }
        let map: Vec<usize> = (0..self.n()).map(|v| idx[rep[v]]).collect();
        let mut g = Graph::new(keep.len());
        for (u, v) in self.edges() {
            let (a, b) = (map[u], map[v]);
            if a != b {
                g.add_edge(a, b);
            }
        }
        for (&v, l) in &self.labels {
            if rep[v] == v {
                g.labels.insert(map[v], l.clone());
            }
        }
        (g, map)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n() as u32;
        let mut g = self.clone();
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&w| w + off).collect::<Vec<_>>()),
        );
        for (&v, l) in &other.labels {
            g.labels.insert(v + off as usize, l.clone());
        }
        g
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::malformed(format!("vertex {v} out of range for n={}", self.n())))
        }
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            e.push((n - 1, 0));
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e).unwrap()
    }
}

/// Above this id, vertex sets switch from a bitset to a sorted array.
pub const BITSET_BOUND: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Bits(BitSet),
    Sorted(Vec<u32>),
}

/// Canonical set of vertex ids. The representation depends only on the members,
/// so equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(Repr);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Repr::Bits(BitSet::new()))
    }

    pub fn from_sorted(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        v.dedup();
        match v.last() {
            Some(&m) if m as usize >= BITSET_BOUND => VertexSet(Repr::Sorted(v)),
            _ => VertexSet(Repr::Bits(v.iter().map(|&x| x as usize).collect())),
        }
    }

    pub fn all(n: usize) -> Self {
        if n > BITSET_BOUND {
            VertexSet(Repr::Sorted((0..n as u32).collect()))
        } else {
            VertexSet(Repr::Bits(BitSet::full(n)))
        }
    }

    pub fn len(&self) -> usize {
        match &self.0 {
            Repr::Bits(b) => b.len(),
            Repr::Sorted(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        match &self.0 {
            Repr::Bits(b) => b.contains(x),
            Repr::Sorted(v) => v.binary_search(&(x as u32)).is_ok(),
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.0 {
            Repr::Bits(b) => Box::new(b.iter()),
            Repr::Sorted(v) => Box::new(v.iter().map(|&x| x as usize)),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_u32(&self) -> Vec<u32> {
        self.iter().map(|x| x as u32).collect()
    }

    pub fn insert(&mut self, x: usize) {
        let mut v = self.to_u32();
        v.push(x as u32);
        *self = VertexSet::from_sorted(v);
    }

    pub fn remove(&mut self, x: usize) {
        let v: Vec<u32> = self.iter().filter(|&y| y != x).map(|y| y as u32).collect();
        *self = VertexSet::from_sorted(v);
    }

    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&x| !other.contains(x)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&x| other.contains(x)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Maps members through `f`, dropping those mapped to `None`.
    pub fn map(&self, f: impl Fn(usize) -> Option<usize>) -> VertexSet {
        self.iter().filter_map(f).collect()
    }
}

impl Default for VertexSet {
    fn default() -> Self {
        VertexSet::new()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_sorted(iter.into_iter().map(|x| x as u32).collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<&[usize]> for VertexSet {
    fn from(a: &[usize]) -> Self {
        a.iter().copied().collect()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the sorted member lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn adjacency_sorted_and_symmetric() {
        let g = Graph::from_edges(4, &[(3, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert!(g.has_edge(3, 0) && g.has_edge(0, 3));
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn vertex_set_representations_agree() {
        let a: VertexSet = [5000, 3, 7].into();
        let b = VertexSet::from_sorted(vec![7, 5000, 3, 3]);
        assert_eq!(a, b);
        assert_eq!(a.to_vec(), vec![3, 7, 5000]);
        let mut c = a.clone();
        c.remove(5000);
        assert_eq!(c, VertexSet::from([3, 7]));
        assert!(VertexSet::from([1, 2]) < VertexSet::from([1, 3]));
        assert!(VertexSet::from([1, 2]) < VertexSet::from([1, 2, 9]));
    }

    #[test]
    fn contraction_merges_into_smallest() {
        let g = Graph::path(4);
        let (h, map) = g.contract(&[vec![1, 2]]);
        assert_eq!(h.n(), 3);
        assert_eq!(map, vec![0, 1, 1, 2]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn components_and_induced_connectivity() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(Graph::cycle(5).induces_connected(&[0, 1, 2]));
        assert!(!Graph::cycle(5).induces_connected(&[0, 2]));
    }
}
