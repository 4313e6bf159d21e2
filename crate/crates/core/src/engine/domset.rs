//! Exhaustive dominating-set enumeration for desk-scale verification.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Search-node budget shared by every enumerator here.
pub const DOMSET_CAP: usize = 50_000_000;

struct Budget {
    used: usize,
    cap: usize,
}

impl Budget {
    fn tick(&mut self, what: &'static str) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::SizeCap {
                what,
                limit: self.cap,
                actual: self.used,
            });
        }
        Ok(())
    }
}

/// All dominating sets of exactly `k` vertices, in lexicographic order.
pub fn minimum_dominating_sets(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut cnt = vec![0u32; n];
    let mut cur = Vec::with_capacity(k);
    let mut budget = Budget {
        used: 0,
        cap: DOMSET_CAP,
    };
    combos(g, k, 0, &mut cur, &mut cnt, &mut out, &mut budget)?;
    Ok(out)
}

fn combos(
    g: &Graph,
    k: usize,
    from: usize,
    cur: &mut Vec<usize>,
    cnt: &mut [u32],
    out: &mut Vec<VertexSet>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick("dominating set enumeration")?;
    let n = g.n();
    // the smallest undominated vertex needs a closed neighbour at id >= from
    let first_open = (0..n).find(|&w| cnt[w] == 0);
    if cur.len() == k {
        if first_open.is_none() {
            out.push(cur.iter().copied().collect());
        }
        return Ok(());
    }
    if let Some(w) = first_open {
        let reach = g.neighbors(w).last().map_or(w, |&m| (m as usize).max(w));
        if reach < from {
            return Ok(());
        }
    }
    for v in from..n {
        if n - v < k - cur.len() {
            break;
        }
        cur.push(v);
        cnt[v] += 1;
        for &w in g.neighbors(v) {
            cnt[w as usize] += 1;
        }
        combos(g, k, v + 1, cur, cnt, out, budget)?;
        cnt[v] -= 1;
        for &w in g.neighbors(v) {
            cnt[w as usize] -= 1;
        }
        cur.pop();
    }
    Ok(())
}

/// Size of a smallest dominating set.
pub fn domination_number(g: &Graph) -> Result<usize> {
    let all = VertexSet::all(g.n());
    for k in 0..=g.n() {
        let mut found = false;
        dominating_sets_branching(g, &all, k, |_| {
            found = true;
            false
        })?;
        if found {
            return Ok(k);
        }
    }
    Ok(g.n())
}

/// Branches on the smallest undominated vertex of `x` over its closed
/// neighbourhood, visiting every leaf set of at most `k` vertices that
/// dominates `x`. Every dominating set of `x` of size at most `k` contains some
/// visited leaf. `visit` returns false to stop early; the function then
/// returns `Ok(false)`.
pub fn dominating_sets_branching<F>(g: &Graph, x: &VertexSet, k: usize, mut visit: F) -> Result<bool>
where
    F: FnMut(&[u32]) -> bool,
{
    let n = g.n();
    let mut need = vec![false; n];
    for v in x.iter() {
        need[v] = true;
    }
    let mut cnt = vec![0u32; n];
    let mut cur = Vec::new();
    let mut budget = Budget {
        used: 0,
        cap: DOMSET_CAP,
    };
    branch(g, &need, k, &mut cur, &mut cnt, &mut visit, &mut budget)
}

fn branch<F>(
    g: &Graph,
    need: &[bool],
    k: usize,
    cur: &mut Vec<u32>,
    cnt: &mut [u32],
    visit: &mut F,
    budget: &mut Budget,
) -> Result<bool>
where
    F: FnMut(&[u32]) -> bool,
{
    budget.tick("dominating set branching")?;
    let Some(w) = (0..g.n()).find(|&w| need[w] && cnt[w] == 0) else {
        let mut s = cur.clone();
        s.sort_unstable();
        return Ok(visit(&s));
    };
    if cur.len() == k {
        return Ok(true);
    }
    for v in g.closed_neighbors(w) {
        if cur.contains(&v) {
            continue;
        }
        cur.push(v);
        let vu = v as usize;
        cnt[vu] += 1;
        for &t in g.neighbors(vu) {
            cnt[t as usize] += 1;
        }
        let go_on = branch(g, need, k, cur, cnt, visit, budget)?;
        cnt[vu] -= 1;
        for &t in g.neighbors(vu) {
            cnt[t as usize] -= 1;
        }
        cur.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A connected dominating set of at most `kmax` vertices avoiding `forbidden`,
/// if one exists. Dominating leaves come from branching on the undominated
/// vertex with the fewest allowed dominators; each leaf is then tested for a
/// connected extension within the remaining budget.
pub fn connected_dominating_set_avoiding(g: &Graph, kmax: usize, forbidden: &VertexSet) -> Result<Option<VertexSet>> {
    let n = g.n();
    let allowed: Vec<bool> = (0..n).map(|v| !forbidden.contains(v)).collect();
    let mut cnt = vec![0u32; n];
    let mut cur = Vec::new();
    let mut budget = Budget {
        used: 0,
        cap: DOMSET_CAP,
    };
    let found = cds_branch(g, &allowed, kmax, &mut cur, &mut cnt, &mut budget)?;
    Ok(found.map(VertexSet::from_iter))
}

fn cds_branch(
    g: &Graph,
    allowed: &[bool],
    kmax: usize,
    cur: &mut Vec<usize>,
    cnt: &mut [u32],
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    budget.tick("connected dominating set search")?;
    let n = g.n();
    let mut pick: Option<(usize, usize)> = None;
    for w in (0..n).filter(|&w| cnt[w] == 0) {
        let opts = g.closed_neighbors(w).iter().filter(|&&v| allowed[v as usize]).count();
        if pick.is_none_or(|(_, c)| opts < c) {
            pick = Some((w, opts));
        }
    }
    let Some((w, _)) = pick else {
        let mut set = cur.clone();
        return Ok(if connect_within(g, allowed, &mut set, kmax, budget)? {
            set.sort_unstable();
            Some(set)
        } else {
            None
        });
    };
    if cur.len() == kmax {
        return Ok(None);
    }
    for v in g.closed_neighbors(w) {
        let v = v as usize;
        if !allowed[v] {
            continue;
        }
        cur.push(v);
        cnt[v] += 1;
        for &t in g.neighbors(v) {
            cnt[t as usize] += 1;
        }
        let hit = cds_branch(g, allowed, kmax, cur, cnt, budget)?;
        cnt[v] -= 1;
        for &t in g.neighbors(v) {
            cnt[t as usize] -= 1;
        }
        cur.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Whether `set` can be grown, using allowed vertices, into a connected set of
/// at most `kmax` vertices. On success `set` holds the grown set.
fn connect_within(g: &Graph, allowed: &[bool], set: &mut Vec<usize>, kmax: usize, budget: &mut Budget) -> Result<bool> {
    budget.tick("connected dominating set search")?;
    if set.is_empty() {
        return Ok(g.n() == 0);
    }
    let sorted: Vec<u32> = {
        let mut s: Vec<u32> = set.iter().map(|&v| v as u32).collect();
        s.sort_unstable();
        s
    };
    if g.induces_connected(&sorted) {
        return Ok(true);
    }
    if set.len() == kmax {
        return Ok(false);
    }
    // any connected superset adds an outside neighbour of the first component
    let inside: Vec<bool> = {
        let mut b = vec![false; g.n()];
        for &v in set.iter() {
            b[v] = true;
        }
        b
    };
    let mut comp = vec![false; g.n()];
    let mut stack = vec![set[0]];
    comp[set[0]] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            let w = w as usize;
            if inside[w] && !comp[w] {
                comp[w] = true;
                stack.push(w);
            }
        }
    }
    let mut frontier: Vec<usize> = (0..g.n())
        .filter(|&v| comp[v])
        .flat_map(|v| g.neighbors(v).iter().map(|&w| w as usize))
        .filter(|&w| !inside[w] && allowed[w])
        .collect();
    frontier.sort_unstable();
    frontier.dedup();
    for v in frontier {
        set.push(v);
        if connect_within(g, allowed, set, kmax, budget)? {
            return Ok(true);
        }
        set.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            minimum_dominating_sets(&Graph::path(3), 1).unwrap(),
            vec![VertexSet::from([1])]
        );
        assert_eq!(
            minimum_dominating_sets(&Graph::star(3), 1).unwrap(),
            vec![VertexSet::from([0])]
        );
        let c5 = minimum_dominating_sets(&Graph::cycle(5), 2).unwrap();
        assert_eq!(
            c5,
            vec![
                VertexSet::from([0, 2]),
                VertexSet::from([0, 3]),
                VertexSet::from([1, 3]),
                VertexSet::from([1, 4]),
                VertexSet::from([2, 4]),
            ]
        );
        assert_eq!(domination_number(&Graph::cycle(7)).unwrap(), 3);
        assert_eq!(domination_number(&Graph::new(0)).unwrap(), 0);
    }

    #[test]
    fn connected_domination() {
        // P5 needs the three interior vertices
        let p5 = Graph::path(5);
        assert_eq!(
            connected_dominating_set_avoiding(&p5, 3, &VertexSet::new()).unwrap(),
            Some(VertexSet::from([1, 2, 3]))
        );
        assert_eq!(
            connected_dominating_set_avoiding(&p5, 2, &VertexSet::new()).unwrap(),
            None
        );
        assert_eq!(
            connected_dominating_set_avoiding(&p5, 4, &VertexSet::from([2])).unwrap(),
            None
        );
        // C6 with three consecutive vertices, or four when avoiding vertex 0
        let c6 = Graph::cycle(6);
        assert!(connected_dominating_set_avoiding(&c6, 4, &VertexSet::from([0]))
            .unwrap()
            .is_some());
    }
}
