use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Hopcroft-Karp on left `0..n_left`, right `0..n_right`. Adjacency follows the
/// input edge order, so the result is deterministic. Pairs are sorted by left id.
pub fn max_bipartite_matching(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); n_left];
    for &(l, r) in edges {
        assert!(l < n_left && r < n_right, "matching edge out of range");
        if !adj[l].contains(&r) {
            adj[l].push(r);
        }
    }
    let mut mate_l = vec![NIL; n_left];
    let mut mate_r = vec![NIL; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = mate_r[r];
                if m == NIL {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..n_left {
            if mate_l[l] == NIL {
                augment(l, &adj, &mut mate_l, &mut mate_r, &mut dist);
            }
        }
    }
    (0..n_left)
        .filter(|&l| mate_l[l] != NIL)
        .map(|l| (l, mate_l[l]))
        .collect()
}

fn augment(l: usize, adj: &[Vec<usize>], mate_l: &mut [usize], mate_r: &mut [usize], dist: &mut [usize]) -> bool {
    for i in 0..adj[l].len() {
        let r = adj[l][i];
        let m = mate_r[r];
        if m == NIL || (dist[m] == dist[l] + 1 && augment(m, adj, mate_l, mate_r, dist)) {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_is_perfect() {
        let e: Vec<_> = (0..5).flat_map(|i| [(i, i), (i, (i + 1) % 5)]).collect();
        assert_eq!(max_bipartite_matching(5, 5, &e).len(), 5);
    }

    #[test]
    fn empty_edges() {
        assert!(max_bipartite_matching(3, 3, &[]).is_empty());
    }

    #[test]
    fn needs_augmenting_path() {
        let e = [(0, 0), (0, 1), (1, 0)];
        assert_eq!(max_bipartite_matching(2, 2, &e), vec![(0, 1), (1, 0)]);
    }
}
