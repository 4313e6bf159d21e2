//! Tape-count reduction for small alphabets.
//!
//! An instance with more than `2|Σ|` tapes always has a set `L` of tapes whose
//! alphabet is smaller than `|L|` and can be matched into distinct tapes of
//! `L`. Parking the heads of `L` on the matched cells keeps that alphabet
//! covered, so `L` and its letters can be dropped. Repeating leaves at most
//! `2|Σ|` tapes, and the configuration space becomes polynomial.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::engine::DEFAULT_STATE_CAP;
use crate::error::{Error, Result};
use crate::graph::max_bipartite_matching;
use crate::tape::{solve_tape_with, Tape, TapeInstance, TapeResult};

/// Letter matched to a cell, by tape index within the input list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedCell {
    pub letter: usize,
    pub tape: usize,
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Extraction {
    /// A tape with no letters at all; it can be deleted outright.
    EmptyTape { tape: usize },
    Subset {
        tapes: Vec<usize>,
        matching: Vec<MatchedCell>,
    },
}

/// One deletion, with indices relative to the instance it was applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionStep {
    pub deleted_tapes: Vec<usize>,
    pub erased_letters: Vec<usize>,
    pub matching: Vec<MatchedCell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedSolution {
    /// Result on the reduced instance; its witness moves the surviving heads.
    pub result: TapeResult,
    pub reduced: TapeInstance,
    pub steps: Vec<ReductionStep>,
}

fn alphabets(tapes: &[Tape]) -> Vec<BitSet> {
    tapes.iter().map(Tape::alphabet).collect()
}

/// Smallest subset of `pool` whose alphabet is smaller than its size. The
/// first hit in order of increasing size is inclusion-minimal.
fn minimal_deficient_subset(alpha: &[BitSet], pool: &[usize]) -> Option<Vec<usize>> {
    fn grow(alpha: &[BitSet], pool: &[usize], size: usize, from: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == size {
            let mut a = BitSet::new();
            for &t in cur.iter() {
                a.union_with(&alpha[t]);
            }
            return a.len() < size;
        }
        for i in from..pool.len() {
            if pool.len() - i < size - cur.len() {
                break;
            }
            cur.push(pool[i]);
            if grow(alpha, pool, size, i + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (1..=pool.len()).find_map(|size| {
        let mut cur = Vec::new();
        grow(alpha, pool, size, 0, &mut cur).then_some(cur)
    })
}

/// Nearest cell holding `letter`, by distance from `from` within the tape.
fn nearest_cell(tape: &Tape, from: usize, letter: usize) -> Option<(usize, usize)> {
    let dist = tape.cells.bfs_distances(from);
    (0..tape.len())
        .filter(|&c| tape.content[c].contains(letter) && dist[c] != usize::MAX)
        .map(|c| (dist[c], c))
        .min()
}

/// Extracts a reducible subset from at least `|Σ|+1` tapes, matching each of
/// its letters to a cell nearest the tape's start on distinct tapes.
pub fn extract_reducible_subset(tapes: &[Tape], sigma: usize) -> Result<Extraction> {
    if tapes.len() < sigma + 1 {
        return Err(Error::precondition(format!(
            "{} tapes for an alphabet of {sigma}",
            tapes.len()
        )));
    }
    let alpha = alphabets(tapes);
    if let Some(t) = alpha.iter().position(BitSet::is_empty) {
        return Ok(Extraction::EmptyTape { tape: t });
    }
    let pool: Vec<usize> = (0..tapes.len()).collect();
    let l = minimal_deficient_subset(&alpha, &pool).expect("pigeonhole guarantees a deficient subset");
    let matching = hall_matching(tapes, &alpha, &l, |t| tapes[t].start)?;
    Ok(Extraction::Subset { tapes: l, matching })
}

fn subset_alphabet(alpha: &[BitSet], l: &[usize]) -> Vec<usize> {
    let mut a = BitSet::new();
    for &t in l {
        a.union_with(&alpha[t]);
    }
    a.iter().collect()
}

fn hall_matching(
    tapes: &[Tape],
    alpha: &[BitSet],
    l: &[usize],
    start: impl Fn(usize) -> usize,
) -> Result<Vec<MatchedCell>> {
    let letters = subset_alphabet(alpha, l);
    let mut edges = Vec::new();
    for (li, &a) in letters.iter().enumerate() {
        for (ti, &t) in l.iter().enumerate() {
            if alpha[t].contains(a) {
                edges.push((li, ti));
            }
        }
    }
    let m = max_bipartite_matching(letters.len(), l.len(), &edges);
    if m.len() != letters.len() {
        return Err(Error::Infeasible(
            "Hall condition failed on a minimal deficient subset".into(),
        ));
    }
    Ok(m.into_iter()
        .map(|(li, ti)| {
            let t = l[ti];
            let (_, cell) = nearest_cell(&tapes[t], start(t), letters[li]).expect("letter occurs on tape");
            MatchedCell {
                letter: letters[li],
                tape: t,
                cell,
            }
        })
        .collect())
}

/// Assignment of the letters of `l` to distinct tapes of `l` minimizing the
/// total distance from each head to the nearest cell with its letter. Ties go
/// to the lexicographically first tape sequence.
fn min_distance_assignment(inst: &TapeInstance, alpha: &[BitSet], l: &[usize]) -> Result<Vec<MatchedCell>> {
    let letters = subset_alphabet(alpha, l);
    let q = letters.len();
    let p = l.len();
    const INF: usize = usize::MAX / 4;
    let cost: Vec<Vec<Option<(usize, usize)>>> = letters
        .iter()
        .map(|&a| l.iter().map(|&t| nearest_cell(&inst.tapes[t], inst.cs[t], a)).collect())
        .collect();
    // best[i][mask]: cheapest way to place letters i.. with tapes in mask used
    let mut best = vec![vec![INF; 1 << p]; q + 1];
    for mask in 0..1usize << p {
        best[q][mask] = 0;
    }
    for i in (0..q).rev() {
        for mask in 0..1usize << p {
            let mut b = INF;
            for (ti, c) in cost[i].iter().enumerate() {
                if mask & (1 << ti) == 0 {
                    if let Some((d, _)) = c {
                        b = b.min(d + best[i + 1][mask | 1 << ti]);
                    }
                }
            }
            best[i][mask] = b;
        }
    }
    if best[0][0] >= INF {
        return Err(Error::Infeasible("no system of distinct representatives".into()));
    }
    let mut out = Vec::with_capacity(q);
    let mut mask = 0usize;
    for i in 0..q {
        let (ti, cell) = cost[i]
            .iter()
            .enumerate()
            .find_map(|(ti, c)| {
                let (d, cell) = (*c)?;
                (mask & (1 << ti) == 0 && d + best[i + 1][mask | 1 << ti] == best[i][mask]).then_some((ti, cell))
            })
            .expect("reconstruction follows the table");
        mask |= 1 << ti;
        out.push(MatchedCell {
            letter: letters[i],
            tape: l[ti],
            cell,
        });
    }
    Ok(out)
}

/// Arc `(i, j)` when the letter parked on tape `i` also appears on tape `j`
/// strictly closer to its head than the cell parked there. A minimum-distance
/// choice has no directed cycle.
pub fn parking_digraph_is_acyclic(inst: &TapeInstance, matching: &[MatchedCell]) -> bool {
    let q = matching.len();
    let dist: Vec<Vec<usize>> = matching
        .iter()
        .map(|m| inst.tapes[m.tape].cells.bfs_distances(inst.cs[m.tape]))
        .collect();
    let mut arcs = vec![Vec::new(); q];
    for i in 0..q {
        for j in 0..q {
            let tj = &inst.tapes[matching[j].tape];
            let limit = dist[j][matching[j].cell];
            if (0..tj.len()).any(|c| dist[j][c] < limit && tj.content[c].contains(matching[i].letter)) {
                arcs[i].push(j);
            }
        }
    }
    // Kahn's algorithm
    let mut indeg = vec![0usize; q];
    for a in &arcs {
        for &j in a {
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..q).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for &j in &arcs[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    seen == q
}

/// Greedy cover of Σ by end cells, at most `|Σ|` tapes.
fn end_cover(inst: &TapeInstance) -> Vec<usize> {
    let full = inst.full_alphabet();
    let mut have = BitSet::new();
    let mut chosen = Vec::new();
    while !full.is_subset(&have) {
        let gain = |t: usize| inst.tapes[t].content[inst.ct[t]].difference(&have).len();
        let best = (0..inst.tapes.len())
            .filter(|t| !chosen.contains(t))
            .max_by_key(|&t| (gain(t), std::cmp::Reverse(t)));
        match best {
            Some(t) if gain(t) > 0 => {
                have.union_with(&inst.tapes[t].content[inst.ct[t]]);
                chosen.push(t);
            }
            _ => break,
        }
    }
    chosen.sort_unstable();
    chosen
}

fn delete(inst: &TapeInstance, drop: &[usize], erase: &BitSet) -> TapeInstance {
    let keep_letter: Vec<Option<usize>> = {
        let mut next = 0;
        (0..inst.sigma)
            .map(|a| {
                if erase.contains(a) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let mut tapes = Vec::new();
    let (mut cs, mut ct) = (Vec::new(), Vec::new());
    for (i, t) in inst.tapes.iter().enumerate() {
        if drop.contains(&i) {
            continue;
        }
        let mut t = t.clone();
        for c in t.content.iter_mut() {
            *c = c.iter().filter_map(|a| keep_letter[a]).collect();
        }
        tapes.push(t);
        cs.push(inst.cs[i]);
        ct.push(inst.ct[i]);
    }
    TapeInstance {
        sigma: inst.sigma - erase.len(),
        tapes,
        cs,
        ct,
        sync: false,
        r: None,
    }
}

/// One tape-count reduction on an instance with more than `2|Σ|` tapes.
pub fn tape_reduce_once(inst: &TapeInstance) -> Result<(TapeInstance, ReductionStep)> {
    if inst.sync {
        return Err(Error::precondition(
            "tape reduction applies to unsynchronized instances",
        ));
    }
    inst.check_shape()?;
    let t = inst.tapes.len();
    if t <= 2 * inst.sigma {
        return Err(Error::precondition(format!(
            "{t} tapes with |Σ|={}; nothing to reduce",
            inst.sigma
        )));
    }
    let alpha = alphabets(&inst.tapes);
    if let Some(e) = alpha.iter().position(BitSet::is_empty) {
        return Ok((
            delete(inst, &[e], &BitSet::new()),
            ReductionStep {
                deleted_tapes: vec![e],
                erased_letters: vec![],
                matching: vec![],
            },
        ));
    }
    let reserved = end_cover(inst);
    let pool: Vec<usize> = (0..t).filter(|i| !reserved.contains(i)).collect();
    let l = minimal_deficient_subset(&alpha, &pool)
        .ok_or_else(|| Error::Infeasible("no deficient subset outside the end cover".into()))?;
    let matching = min_distance_assignment(inst, &alpha, &l)?;
    if !parking_digraph_is_acyclic(inst, &matching) {
        return Err(Error::Infeasible("parking digraph has a cycle".into()));
    }
    let erase: BitSet = subset_alphabet(&alpha, &l).into_iter().collect();
    Ok((
        delete(inst, &l, &erase),
        ReductionStep {
            deleted_tapes: l,
            erased_letters: erase.iter().collect(),
            matching,
        },
    ))
}

/// Applies [`tape_reduce_once`] while there are more than `2|Σ|` tapes.
/// Synchronized instances are returned unchanged.
pub fn reduce_to_bound(inst: &TapeInstance) -> Result<(TapeInstance, Vec<ReductionStep>)> {
    inst.check_shape()?;
    let mut cur = inst.clone();
    let mut steps = Vec::new();
    if !cur.sync {
        while cur.tapes.len() > 2 * cur.sigma {
            let (next, step) = tape_reduce_once(&cur)?;
            steps.push(step);
            cur = next;
        }
    }
    Ok((cur, steps))
}

/// Reduces to at most `2|Σ|` tapes, then searches the configuration graph.
pub fn solve_bounded_alphabet(inst: &TapeInstance) -> Result<BoundedSolution> {
    solve_bounded_alphabet_with(inst, DEFAULT_STATE_CAP)
}

pub fn solve_bounded_alphabet_with(inst: &TapeInstance, state_cap: usize) -> Result<BoundedSolution> {
    let (cur, steps) = reduce_to_bound(inst)?;
    let result = solve_tape_with(&cur, state_cap)?;
    Ok(BoundedSolution {
        result,
        reduced: cur,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::solve_tape;

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn single_letter_tapes_pair_up() {
        let tapes = vec![Tape::path(vec![l(&[0]), l(&[0])]); 2];
        match extract_reducible_subset(&tapes, 1).unwrap() {
            Extraction::Subset { tapes, matching } => {
                assert_eq!(tapes.len(), 2);
                assert_eq!(matching.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_tape_is_reported() {
        let tapes = vec![
            Tape::path(vec![l(&[0])]),
            Tape::path(vec![l(&[1])]),
            Tape::path(vec![l(&[]), l(&[])]),
        ];
        assert_eq!(
            extract_reducible_subset(&tapes, 2).unwrap(),
            Extraction::EmptyTape { tape: 2 }
        );
    }

    #[test]
    fn three_full_tapes_lose_one() {
        let tape = Tape::path(vec![l(&[0]); 3]);
        let inst = TapeInstance::new(1, vec![tape; 3], vec![0, 0, 0], vec![2, 2, 2]);
        let (red, step) = tape_reduce_once(&inst).unwrap();
        assert!(red.tapes.len() < 3);
        assert_eq!(step.erased_letters, vec![0]);
        assert_eq!(
            solve_tape(&red).unwrap().reachable,
            solve_tape(&inst).unwrap().reachable
        );
    }

    #[test]
    fn four_full_tapes_reduce_to_two() {
        let tape = Tape::path(vec![l(&[0]); 2]);
        let inst = TapeInstance::new(1, vec![tape; 4], vec![0; 4], vec![1; 4]);
        let s = solve_bounded_alphabet(&inst).unwrap();
        assert!(s.reduced.tapes.len() <= 2);
        assert!(s.result.reachable);
    }

    #[test]
    fn deficient_subset_scan() {
        let alpha = vec![l(&[0, 1]), l(&[1, 2]), l(&[0]), l(&[0])];
        assert_eq!(minimal_deficient_subset(&alpha, &[0, 1, 2, 3]), Some(vec![2, 3]));
        assert_eq!(minimal_deficient_subset(&alpha, &[0, 1]), None);
        assert_eq!(minimal_deficient_subset(&[l(&[0])], &[0]), None);
    }
}
