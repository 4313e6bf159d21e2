use std::collections::BTreeMap;

use crate::graph::Graph;

use super::TapeInstance;

/// Cells tape by tape, then one vertex per letter.
#[derive(Clone, Debug)]
pub struct ExtendedGraph {
    pub graph: Graph,
    /// First vertex id of each tape's cells.
    pub offsets: Vec<usize>,
    /// Vertex id of letter 0.
    pub letter_base: usize,
}

impl ExtendedGraph {
    pub fn cell(&self, tape: usize, cell: usize) -> usize {
        self.offsets[tape] + cell
    }

    pub fn letter(&self, a: usize) -> usize {
        self.letter_base + a
    }

    pub fn tape_of(&self) -> BTreeMap<usize, usize> {
        let mut map = BTreeMap::new();
        for (i, &off) in self.offsets.iter().enumerate() {
            let end = self.offsets.get(i + 1).copied().unwrap_or(self.letter_base);
            for v in off..end {
                map.insert(v, i);
            }
        }
        map
    }
}

pub fn extended_graph(inst: &TapeInstance) -> ExtendedGraph {
    let mut offsets = Vec::with_capacity(inst.tapes.len());
    let mut n = 0;
    for t in &inst.tapes {
        offsets.push(n);
        n += t.len();
    }
    let letter_base = n;
    let mut g = Graph::new(n + inst.sigma);
    for (i, t) in inst.tapes.iter().enumerate() {
        let off = offsets[i];
        for (u, v) in t.cells.edges() {
            g.add_edge(off + u, off + v);
        }
        for (c, content) in t.content.iter().enumerate() {
            g.set_label(off + c, format!("cell:{i}:{c}"));
            for a in content.iter().filter(|&a| a < inst.sigma) {
                g.add_edge(off + c, letter_base + a);
            }
        }
    }
    for a in 0..inst.sigma {
        g.set_label(letter_base + a, format!("letter:{a}"));
    }
    ExtendedGraph {
        graph: g,
        offsets,
        letter_base,
    }
}
