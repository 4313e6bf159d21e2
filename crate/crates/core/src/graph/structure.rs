use std::collections::BTreeSet;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

pub const FVS_CAP: usize = 64;
pub const BICLIQUE_CAP: usize = 200_000;

/// Min-degree peeling. Returns the degeneracy and an elimination order in which
/// every vertex has at most `d` neighbours later in the order. Ties go to the
/// smallest id.
pub fn degeneracy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while let Some((dv, v)) = queue.pop_first() {
        d = d.max(dv);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    (d, order)
}

/// Multigraph used by the FVS search: loops force a vertex, double edges are cycles.
#[derive(Clone)]
struct Multi {
    alive: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

impl Multi {
    fn from_graph(g: &Graph) -> Self {
        Multi {
            alive: vec![true; g.n()],
            adj: (0..g.n())
                .map(|v| g.neighbors(v).iter().map(|&w| w as usize).collect())
                .collect(),
        }
    }

    fn delete(&mut self, v: usize) {
        self.alive[v] = false;
        let nb = std::mem::take(&mut self.adj[v]);
        for w in nb {
            if w != v {
                if let Some(p) = self.adj[w].iter().position(|&x| x == v) {
                    self.adj[w].swap_remove(p);
                }
            }
        }
    }

    /// Applies degree rules. Returns vertices forced into the solution.
    fn reduce(&mut self) -> Vec<usize> {
        let mut forced = Vec::new();
        loop {
            let mut changed = false;
            for v in 0..self.alive.len() {
                if !self.alive[v] {
                    continue;
                }
                if self.adj[v].contains(&v) {
                    forced.push(v);
                    self.delete(v);
                    changed = true;
                } else if self.adj[v].len() <= 1 {
                    self.delete(v);
                    changed = true;
                } else if self.adj[v].len() == 2 {
                    let (a, b) = (self.adj[v][0], self.adj[v][1]);
                    self.delete(v);
                    if a == b {
                        // double edge through v becomes a loop on a
                        self.adj[a].push(a);
                        self.adj[a].push(a);
                    } else {
                        self.adj[a].push(b);
                        self.adj[b].push(a);
                    }
                    changed = true;
                }
            }
            if !changed {
                return forced;
            }
        }
    }

    /// Vertices of a short cycle (a shortest one through some BFS root), or empty if acyclic.
    fn short_cycle(&self) -> Vec<usize> {
        let n = self.alive.len();
        for u in 0..n {
            let mut nb = self.adj[u].clone();
            nb.sort_unstable();
            if let Some(w) = nb.windows(2).find(|p| p[0] == p[1]) {
                let mut c = vec![u, w[0]];
                c.sort_unstable();
                return c;
            }
        }
        let mut best: Vec<usize> = Vec::new();
        for s in 0..n {
            if !self.alive[s] {
                continue;
            }
            let mut parent = vec![usize::MAX; n];
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            let mut hit = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if w == parent[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else {
                        hit = Some((u, w));
                        break 'bfs;
                    }
                }
            }
            let Some((mut a, mut b)) = hit else { continue };
            let mut cyc = vec![a, b];
            while a != b {
                if dist[a] >= dist[b] {
                    a = parent[a];
                } else {
                    b = parent[b];
                }
                cyc.push(a);
                cyc.push(b);
            }
            cyc.sort_unstable();
            cyc.dedup();
            if best.is_empty() || cyc.len() < best.len() {
                best = cyc;
            }
            if best.len() == 3 {
                break;
            }
        }
        best
    }
}

fn fvs_search(m: &Multi, budget: usize, acc: &mut Vec<usize>) -> bool {
    let mut m = m.clone();
    let forced = m.reduce();
    if forced.len() > budget {
        return false;
    }
    let depth = acc.len();
    acc.extend(&forced);
    let budget = budget - forced.len();
    let cyc = m.short_cycle();
    if cyc.is_empty() {
        return true;
    }
    if budget == 0 {
        acc.truncate(depth);
        return false;
    }
    for &v in &cyc {
        let mut next = m.clone();
        next.delete(v);
        acc.push(v);
        if fvs_search(&next, budget - 1, acc) {
            return true;
        }
        acc.pop();
    }
    acc.truncate(depth);
    false
}

/// Exact minimum feedback vertex set by iterative deepening over the budget.
pub fn min_feedback_vertex_set(g: &Graph) -> Result<VertexSet> {
    if g.n() > FVS_CAP {
        return Err(Error::SizeCap {
            what: "feedback vertex set",
            limit: FVS_CAP,
            actual: g.n(),
        });
    }
    let m = Multi::from_graph(g);
    for budget in 0..=g.n() {
        let mut acc = Vec::new();
        if fvs_search(&m, budget, &mut acc) {
            return Ok(acc.into_iter().collect());
        }
    }
    unreachable!("deleting every vertex leaves a forest")
}

/// A `K_{a,b}` subgraph as (left side, right side), if one exists.
pub fn find_biclique(g: &Graph, a: usize, b: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if a == 0 || b == 0 {
        return Ok(if g.n() >= a + b {
            let all: Vec<usize> = (0..g.n()).collect();
            Some((all[..a].to_vec(), all[a..a + b].to_vec()))
        } else {
            None
        });
    }
    let mut work = 0usize;
    let mut cur = Vec::with_capacity(a);
    let found = biclique_rec(g, a, b, 0, &mut cur, None, &mut work)?;
    Ok(found)
}

fn biclique_rec(
    g: &Graph,
    a: usize,
    b: usize,
    from: usize,
    cur: &mut Vec<usize>,
    common: Option<Vec<u32>>,
    work: &mut usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if cur.len() == a {
        let common = common.unwrap_or_default();
        if common.len() >= b {
            let right = common[..b].iter().map(|&x| x as usize).collect();
            return Ok(Some((cur.clone(), right)));
        }
        return Ok(None);
    }
    for v in from..g.n() {
        *work += 1;
        if *work > BICLIQUE_CAP {
            return Err(Error::SizeCap {
                what: "biclique search",
                limit: BICLIQUE_CAP,
                actual: *work,
            });
        }
        let next: Vec<u32> = match &common {
            None => g.neighbors(v).to_vec(),
            Some(c) => c.iter().copied().filter(|&w| g.has_edge(v, w as usize)).collect(),
        };
        // left vertices are never common neighbours of each other in a simple graph
        if next.len() < b {
            continue;
        }
        cur.push(v);
        if let Some(hit) = biclique_rec(g, a, b, v + 1, cur, Some(next), work)? {
            return Ok(Some(hit));
        }
        cur.pop();
    }
    Ok(None)
}

/// True iff `G` contains `K_{a,b}` as a (not necessarily induced) subgraph.
pub fn contains_biclique(g: &Graph, a: usize, b: usize) -> Result<bool> {
    Ok(find_biclique(g, a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(&Graph::path(6)).0, 1);
        assert_eq!(degeneracy(&Graph::cycle(5)).0, 2);
        assert_eq!(degeneracy(&Graph::complete(5)).0, 4);
        assert_eq!(degeneracy(&Graph::new(3)).0, 0);
    }

    #[test]
    fn fvs_examples() {
        assert!(min_feedback_vertex_set(&Graph::path(5)).unwrap().is_empty());
        assert_eq!(min_feedback_vertex_set(&Graph::cycle(5)).unwrap().len(), 1);
        assert_eq!(min_feedback_vertex_set(&Graph::complete(4)).unwrap().len(), 2);
        assert_eq!(min_feedback_vertex_set(&Graph::complete(6)).unwrap().len(), 4);
        assert_eq!(
            min_feedback_vertex_set(&Graph::complete_bipartite(3, 3)).unwrap().len(),
            2
        );
        assert!(matches!(
            min_feedback_vertex_set(&Graph::new(FVS_CAP + 1)),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn biclique_examples() {
        assert!(contains_biclique(&Graph::complete_bipartite(3, 3), 3, 3).unwrap());
        assert!(!contains_biclique(&Graph::path(7), 2, 2).unwrap());
        assert!(contains_biclique(&Graph::cycle(4), 2, 2).unwrap());
        assert!(!contains_biclique(&Graph::cycle(5), 2, 2).unwrap());
    }
}
