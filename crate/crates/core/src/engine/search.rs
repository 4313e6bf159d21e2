//! Breadth-first search over an implicit state graph with parent pointers.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

pub struct Outcome<S> {
    pub path: Option<Vec<S>>,
    pub explored: usize,
}

/// Successors are explored in the order `succ` returns them, so a sorted
/// successor list yields the lexicographically first shortest path.
pub fn bfs<S, F>(start: S, target: &S, cap: usize, mut succ: F) -> Result<Outcome<S>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> Result<Vec<S>>,
{
    if &start == target {
        return Ok(Outcome {
            path: Some(vec![start]),
            explored: 1,
        });
    }
    let mut states = vec![start.clone()];
    let mut parent = vec![usize::MAX];
    let mut index: HashMap<S, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = states[i].clone();
        for next in succ(&cur)? {
            if index.contains_key(&next) {
                continue;
            }
            let j = states.len();
            if j >= cap {
                return Err(Error::StateCap { explored: j });
            }
            let hit = &next == target;
            index.insert(next.clone(), j);
            states.push(next);
            parent.push(i);
            if hit {
                let mut path = Vec::new();
                let mut c = j;
                while c != usize::MAX {
                    path.push(states[c].clone());
                    c = parent[c];
                }
                path.reverse();
                return Ok(Outcome {
                    path: Some(path),
                    explored: states.len(),
                });
            }
            queue.push_back(j);
        }
    }
    Ok(Outcome {
        path: None,
        explored: states.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_on_a_line() {
        let out = bfs(0i32, &3, 100, |&x| Ok(vec![x - 1, x + 1])).unwrap();
        assert_eq!(out.path.unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cap_is_enforced() {
        let r = bfs(0i64, &-1, 10, |&x| Ok(vec![x + 1]));
        assert!(matches!(r, Err(Error::StateCap { .. })));
    }
}
