use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree: Vec<(usize, usize)>,
    /// Vertex → tape index, for structuredness. Vertices absent from the map
    /// belong to no tape.
    pub tape_of: Option<BTreeMap<usize, usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionReport {
    pub valid: bool,
    pub width: usize,
    pub structured: bool,
    pub max_tapes_per_bag: usize,
    pub violations: Vec<String>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Appends a bag and returns its index.
    pub fn push_bag(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }

    pub fn link(&mut self, a: usize, b: usize) {
        self.tree.push((a, b));
    }

    pub fn is_path(&self) -> bool {
        let mut deg = vec![0; self.bags.len()];
        for &(a, b) in &self.tree {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().all(|&d| d <= 2)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let nx = parent[c];
        parent[c] = r;
        c = nx;
    }
    r
}

/// Checks the decomposition axioms and reports width and `s`-structuredness.
/// An invalid decomposition is a result, not an error.
pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition, s: Option<usize>) -> DecompositionReport {
    let mut violations = Vec::new();
    let nb = td.bags.len();

    let mut uf: Vec<usize> = (0..nb).collect();
    for &(a, b) in &td.tree {
        if a >= nb || b >= nb {
            violations.push(format!("tree edge ({a},{b}) out of range"));
            continue;
        }
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            violations.push(format!("tree edge ({a},{b}) closes a cycle"));
        } else {
            uf[ra] = rb;
        }
    }
    if nb > 0 {
        let roots: BTreeSet<usize> = (0..nb).map(|i| find(&mut uf, i)).collect();
        if roots.len() > 1 {
            violations.push(format!("bag tree has {} components", roots.len()));
        }
    }

    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= g.n() {
                violations.push(format!("bag {i} holds unknown vertex {v}"));
            } else {
                holders[v].push(i);
            }
        }
    }
    for (v, h) in holders.iter().enumerate() {
        if h.is_empty() {
            violations.push(format!("vertex {v} in no bag"));
        }
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|&i| td.bags[i].contains(v)) {
            violations.push(format!("edge ({u},{v}) in no bag"));
        }
    }
    // each vertex's bags must induce a connected subtree
    for (v, h) in holders.iter().enumerate() {
        if h.len() <= 1 {
            continue;
        }
        let idx: BTreeMap<usize, usize> = h.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut local: Vec<usize> = (0..h.len()).collect();
        let mut joins = 0;
        for &(a, b) in &td.tree {
            if let (Some(&ia), Some(&ib)) = (idx.get(&a), idx.get(&b)) {
                let (ra, rb) = (find(&mut local, ia), find(&mut local, ib));
                if ra != rb {
                    local[ra] = rb;
                    joins += 1;
                }
            }
        }
        if joins + 1 != h.len() {
            violations.push(format!("bags holding vertex {v} are not connected"));
        }
    }

    let max_tapes = match &td.tape_of {
        None => 0,
        Some(map) => td
            .bags
            .iter()
            .map(|b| b.iter().filter_map(|v| map.get(&v)).collect::<BTreeSet<_>>().len())
            .max()
            .unwrap_or(0),
    };
    let structured = match s {
        None => true,
        Some(s) => td.tape_of.is_some() && max_tapes <= s,
    };

    DecompositionReport {
        valid: violations.is_empty(),
        width: td.width(),
        structured,
        max_tapes_per_bag: max_tapes,
        violations,
    }
}
