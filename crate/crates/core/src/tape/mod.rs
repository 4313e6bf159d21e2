//! Σ-tapes: connected cell graphs whose cells carry subsets of a finite
//! alphabet, with one read head per tape.
//!
//! A configuration (one cell per tape) is valid when the contents under the
//! heads cover the whole alphabet. In the synchronized variant every cell of a
//! numbered tape carries a number in `1..=r` and the heads on numbered tapes
//! must pairwise differ by at most one modulo `r`.

mod extended;
mod irreducible;
mod solve;

pub use extended::{extended_graph, ExtendedGraph};
pub use irreducible::{is_irreducible, min_cover_size, min_tape_cover, IRREDUCIBLE_CAP};
pub use solve::{
    is_valid_configuration, solve_multi, solve_multi_with, solve_tape, solve_tape_with, tape_successors, MultiResult,
    TapeResult,
};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tape {
    pub cells: Graph,
    pub content: Vec<BitSet>,
    pub start: usize,
    pub end: usize,
    pub number: Option<Vec<u32>>,
}

impl Tape {
    pub fn new(cells: Graph, content: Vec<BitSet>, start: usize, end: usize) -> Self {
        Tape {
            cells,
            content,
            start,
            end,
            number: None,
        }
    }

    /// A path tape running from cell 0 to the last cell.
    pub fn path(content: Vec<BitSet>) -> Self {
        let n = content.len();
        Tape::new(Graph::path(n), content, 0, n.saturating_sub(1))
    }

    pub fn numbered(mut self, number: Vec<u32>) -> Self {
        self.number = Some(number);
        self
    }

    pub fn len(&self) -> usize {
        self.cells.n()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.n() == 0
    }

    pub fn number_of(&self, cell: usize) -> Option<u32> {
        self.number.as_ref().map(|nb| nb[cell])
    }

    /// Union of all cell contents.
    pub fn alphabet(&self) -> BitSet {
        let mut a = BitSet::new();
        for c in &self.content {
            a.union_with(c);
        }
        a
    }

    /// Cells from start to end if the tape is a path with those endpoints.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n == 0 || self.start >= n || self.end >= n || self.cells.m() + 1 != n || !self.cells.is_connected() {
            return None;
        }
        if n == 1 {
            return Some(vec![0]);
        }
        if (0..n).any(|v| self.cells.degree(v) > 2)
            || self.cells.degree(self.start) != 1
            || self.cells.degree(self.end) != 1
        {
            return None;
        }
        let mut order = vec![self.start];
        let mut prev = usize::MAX;
        let mut cur = self.start;
        while order.len() < n {
            let next = self
                .cells
                .neighbors(cur)
                .iter()
                .map(|&w| w as usize)
                .find(|&w| w != prev)?;
            prev = cur;
            cur = next;
            order.push(cur);
        }
        (cur == self.end).then_some(order)
    }

    /// Trees with at most one vertex of degree three or more.
    pub fn is_subdivided_star(&self) -> bool {
        let n = self.len();
        n > 0
            && self.cells.m() + 1 == n
            && self.cells.is_connected()
            && (0..n).filter(|&v| self.cells.degree(v) >= 3).count() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeInstance {
    pub sigma: usize,
    pub tapes: Vec<Tape>,
    pub cs: Vec<usize>,
    pub ct: Vec<usize>,
    pub sync: bool,
    /// Modulus of the numbering; `None` compares numbers without wrap-around.
    pub r: Option<u32>,
}

impl TapeInstance {
    pub fn new(sigma: usize, tapes: Vec<Tape>, cs: Vec<usize>, ct: Vec<usize>) -> Self {
        TapeInstance {
            sigma,
            tapes,
            cs,
            ct,
            sync: false,
            r: None,
        }
    }

    pub fn synchronized(mut self, r: Option<u32>) -> Self {
        self.sync = true;
        self.r = r;
        self
    }

    pub fn swapped(&self) -> Self {
        let mut s = self.clone();
        std::mem::swap(&mut s.cs, &mut s.ct);
        s
    }

    pub fn full_alphabet(&self) -> BitSet {
        BitSet::full(self.sigma)
    }

    pub fn total_cells(&self) -> usize {
        self.tapes.iter().map(Tape::len).sum()
    }

    /// Checks only what the solvers index into: lengths and id ranges.
    pub fn check_shape(&self) -> Result<()> {
        let t = self.tapes.len();
        if self.cs.len() != t || self.ct.len() != t {
            return Err(Error::malformed(format!(
                "{t} tapes but configurations of length {} and {}",
                self.cs.len(),
                self.ct.len()
            )));
        }
        for (i, tape) in self.tapes.iter().enumerate() {
            if tape.content.len() != tape.len() {
                return Err(Error::malformed(format!(
                    "tape {i}: content length differs from cell count"
                )));
            }
            if self.cs[i] >= tape.len() || self.ct[i] >= tape.len() {
                return Err(Error::malformed(format!("tape {i}: head cell out of range")));
            }
            if let Some(nb) = &tape.number {
                if nb.len() != tape.len() {
                    return Err(Error::malformed(format!(
                        "tape {i}: numbering length differs from cell count"
                    )));
                }
            }
            if tape.content.iter().any(|c| c.bound() > self.sigma) {
                return Err(Error::malformed(format!("tape {i}: letter outside the alphabet")));
            }
        }
        Ok(())
    }
}

/// Whether two numbers differ by at most one modulo `r`.
pub fn numbers_close(a: u32, b: u32, r: Option<u32>) -> bool {
    let d = a.abs_diff(b);
    match r {
        Some(r) if r > 0 => {
            let d = d % r;
            d <= 1 || d == r - 1
        }
        _ => d <= 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTapeInstance {
    pub sigma: usize,
    pub tuples: Vec<Vec<Tape>>,
    pub sync: bool,
    pub r: Option<u32>,
}

impl MultiTapeInstance {
    /// The path-tape instance for one choice of tape per tuple, with heads
    /// from every start cell to every end cell.
    pub fn flatten(&self, selection: &[usize]) -> Result<TapeInstance> {
        if selection.len() != self.tuples.len() {
            return Err(Error::malformed("selection length differs from tuple count"));
        }
        let mut tapes = Vec::with_capacity(selection.len());
        for (i, &s) in selection.iter().enumerate() {
            let tape = self.tuples[i]
                .get(s)
                .ok_or_else(|| Error::malformed(format!("tuple {i} has no tape {s}")))?;
            tapes.push(tape.clone());
        }
        let cs = tapes.iter().map(|t| t.start).collect();
        let ct = tapes.iter().map(|t| t.end).collect();
        Ok(TapeInstance {
            sigma: self.sigma,
            tapes,
            cs,
            ct,
            sync: self.sync,
            r: self.r,
        })
    }

    pub fn tape_count(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum()
    }
}

/// Shape requirement on top of the generic invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Any,
    /// Paths from start to end; when numbered, the start is numbered 1 and
    /// the numbering never decreases along the path.
    Path,
    SubdividedStar,
}

/// Every violated invariant, as human-readable lines.
pub fn validate_instance(inst: &TapeInstance) -> Vec<String> {
    validate_with_shape(inst, Shape::Any)
}

pub fn validate_with_shape(inst: &TapeInstance, shape: Shape) -> Vec<String> {
    let mut out = Vec::new();
    let t = inst.tapes.len();
    for (i, tape) in inst.tapes.iter().enumerate() {
        out.extend(
            tape_violations(tape, inst.sigma, inst.r)
                .into_iter()
                .map(|v| format!("tape {i}: {v}")),
        );
        match shape {
            Shape::Any => {}
            Shape::Path => {
                out.extend(path_violations(tape).into_iter().map(|v| format!("tape {i}: {v}")));
            }
            Shape::SubdividedStar => {
                if !tape.is_subdivided_star() {
                    out.push(format!("tape {i}: not a subdivided star"));
                }
            }
        }
    }
    if inst.sync {
        if inst.r.is_none() {
            out.push("synchronized instance without a modulus".into());
        }
        for (i, tape) in inst.tapes.iter().enumerate() {
            if tape.number.is_none() {
                out.push(format!("tape {i}: synchronized instance with an unnumbered tape"));
            }
        }
    }
    for (name, cfg) in [("cs", &inst.cs), ("ct", &inst.ct)] {
        if cfg.len() != t {
            out.push(format!("{name} has {} heads for {t} tapes", cfg.len()));
            continue;
        }
        if let Some(i) = (0..t).find(|&i| cfg[i] >= inst.tapes[i].len()) {
            out.push(format!("{name} head {i} out of range"));
            continue;
        }
        let mut cover = BitSet::new();
        for (i, &c) in cfg.iter().enumerate() {
            if let Some(content) = inst.tapes[i].content.get(c) {
                cover.union_with(content);
            }
        }
        if !inst.full_alphabet().is_subset(&cover) {
            out.push(format!("{name} does not cover the alphabet"));
        }
        if inst.sync {
            let nums: Vec<u32> = (0..t)
                .filter_map(|i| inst.tapes[i].number.as_ref()?.get(cfg[i]).copied())
                .collect();
            if nums.windows(2).any(|w| w[0] != w[1]) {
                out.push(format!("{name} is not a numbered configuration"));
            }
        }
    }
    out
}

fn tape_violations(tape: &Tape, sigma: usize, r: Option<u32>) -> Vec<String> {
    let mut out = Vec::new();
    let n = tape.len();
    if n == 0 {
        out.push("no cells".into());
        return out;
    }
    if !tape.cells.is_connected() {
        out.push("cell graph not connected".into());
    }
    if tape.content.len() != n {
        out.push(format!("{} contents for {n} cells", tape.content.len()));
    }
    if tape.content.iter().any(|c| c.bound() > sigma) {
        out.push("letter outside the alphabet".into());
    }
    if tape.start >= n || tape.end >= n {
        out.push("start or end cell out of range".into());
    }
    if let Some(nb) = &tape.number {
        if nb.len() != n {
            out.push(format!("{} numbers for {n} cells", nb.len()));
            return out;
        }
        if let Some(r) = r {
            if let Some(c) = (0..n).find(|&c| nb[c] == 0 || nb[c] > r) {
                out.push(format!("cell {c} numbered {} outside 1..={r}", nb[c]));
            }
        }
        for (u, v) in tape.cells.edges() {
            if !numbers_close(nb[u], nb[v], r) {
                out.push(format!("adjacent cells {u},{v} numbered {} and {}", nb[u], nb[v]));
            }
        }
    }
    out
}

fn path_violations(tape: &Tape) -> Vec<String> {
    let Some(order) = tape.path_order() else {
        return vec!["not a path between its start and end".into()];
    };
    let mut out = Vec::new();
    if let Some(nb) = &tape.number {
        if nb[order[0]] != 1 {
            out.push("start cell not numbered 1".into());
        }
        if order.windows(2).any(|w| nb[w[1]] < nb[w[0]]) {
            out.push("numbering decreases along the path".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn letters(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn path_order_and_star_shape() {
        let t = Tape::path(vec![letters(&[0]); 4]);
        assert_eq!(t.path_order(), Some(vec![0, 1, 2, 3]));
        let mut rev = t.clone();
        std::mem::swap(&mut rev.start, &mut rev.end);
        assert_eq!(rev.path_order(), Some(vec![3, 2, 1, 0]));
        let star = Tape::new(Graph::star(3), vec![BitSet::new(); 4], 0, 1);
        assert!(star.path_order().is_none());
        assert!(star.is_subdivided_star());
        assert!(!Tape::new(Graph::cycle(4), vec![BitSet::new(); 4], 0, 1).is_subdivided_star());
    }

    #[test]
    fn modular_closeness() {
        assert!(numbers_close(1, 5, Some(5)));
        assert!(!numbers_close(1, 5, None));
        assert!(!numbers_close(1, 3, Some(5)));
        assert!(numbers_close(2, 2, Some(1)));
    }

    #[test]
    fn validation_reports_each_problem() {
        let good = TapeInstance::new(1, vec![Tape::path(vec![letters(&[0]); 3])], vec![0], vec![2]);
        assert!(validate_instance(&good).is_empty());

        let mut bad_num = good.clone().synchronized(Some(5));
        bad_num.tapes[0].number = Some(vec![1, 3, 3]);
        bad_num.ct = vec![0];
        assert_eq!(
            validate_instance(&bad_num).len(),
            1,
            "{:?}",
            validate_instance(&bad_num)
        );

        let mut uncovered = good.clone();
        uncovered.tapes[0].content[2] = BitSet::new();
        assert_eq!(
            validate_instance(&uncovered),
            vec!["ct does not cover the alphabet".to_string()]
        );
    }

    #[test]
    fn path_shape_checks_numbering() {
        let inst = TapeInstance::new(
            0,
            vec![Tape::path(vec![BitSet::new(); 3]).numbered(vec![1, 2, 1])],
            vec![0],
            vec![2],
        );
        let v = validate_with_shape(&inst, Shape::Path);
        assert_eq!(v, vec!["tape 0: numbering decreases along the path".to_string()]);
    }
}
