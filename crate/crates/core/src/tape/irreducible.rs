use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::TapeInstance;

/// Search-node budget for cover enumeration.
pub const IRREDUCIBLE_CAP: usize = 5_000_000;

fn maximal(contents: impl Iterator<Item = BitSet>) -> Vec<BitSet> {
    let mut sets: Vec<BitSet> = contents.collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    sets.dedup();
    let mut out: Vec<BitSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| s.is_subset(m)) {
            out.push(s);
        }
    }
    out
}

fn tick(budget: &mut usize) -> Result<()> {
    *budget += 1;
    if *budget > IRREDUCIBLE_CAP {
        return Err(Error::SizeCap {
            what: "irreducibility search",
            limit: IRREDUCIBLE_CAP,
            actual: *budget,
        });
    }
    Ok(())
}

/// Smallest number of cells, drawn from any tapes, whose contents cover Σ,
/// provided it is at most `limit`.
pub fn min_cover_size(inst: &TapeInstance, limit: usize) -> Result<Option<usize>> {
    let full = BitSet::full(inst.sigma);
    // only inclusion-maximal distinct contents matter
    let sets = maximal(inst.tapes.iter().flat_map(|t| t.content.iter().cloned()));
    let mut budget = 0usize;
    for depth in 0..=limit {
        if cover(&sets, &full, &BitSet::new(), depth, &mut budget)? {
            return Ok(Some(depth));
        }
    }
    Ok(None)
}

fn cover(sets: &[BitSet], full: &BitSet, have: &BitSet, left: usize, budget: &mut usize) -> Result<bool> {
    tick(budget)?;
    let missing = full.difference(have);
    let Some(a) = missing.iter().next() else {
        return Ok(true);
    };
    if left == 0 {
        return Ok(false);
    }
    for s in sets.iter().filter(|s| s.contains(a)) {
        if cover(sets, full, &have.union(s), left - 1, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smallest number of distinct tapes such that one cell from each covers Σ,
/// provided it is at most `limit`. This is the least number of heads that a
/// partial configuration needs to read the whole alphabet.
pub fn min_tape_cover(inst: &TapeInstance, limit: usize) -> Result<Option<usize>> {
    let full = BitSet::full(inst.sigma);
    let per_tape: Vec<Vec<BitSet>> = inst.tapes.iter().map(|t| maximal(t.content.iter().cloned())).collect();
    let mut used = vec![false; per_tape.len()];
    let mut budget = 0usize;
    for depth in 0..=limit {
        if tape_cover(&per_tape, &full, &BitSet::new(), &mut used, depth, &mut budget)? {
            return Ok(Some(depth));
        }
    }
    Ok(None)
}

fn tape_cover(
    per_tape: &[Vec<BitSet>],
    full: &BitSet,
    have: &BitSet,
    used: &mut [bool],
    left: usize,
    budget: &mut usize,
) -> Result<bool> {
    tick(budget)?;
    let missing = full.difference(have);
    let Some(a) = missing.iter().next() else {
        return Ok(true);
    };
    if left == 0 {
        return Ok(false);
    }
    for i in 0..per_tape.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        for s in per_tape[i].iter().filter(|s| s.contains(a)) {
            if tape_cover(per_tape, full, &have.union(s), used, left - 1, budget)? {
                used[i] = false;
                return Ok(true);
            }
        }
        used[i] = false;
    }
    Ok(false)
}

/// True iff no choice of one cell on each of fewer than `|tapes|` tapes
/// covers Σ. Cells of one tape are never read together, so two cells of the
/// same tape do not count as a cover; [`min_cover_size`] gives the count that
/// ignores tapes.
pub fn is_irreducible(inst: &TapeInstance) -> Result<bool> {
    let t = inst.tapes.len();
    if t == 0 {
        return Ok(true);
    }
    Ok(min_tape_cover(inst, t - 1)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::Tape;

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn one_tape_nonempty_alphabet() {
        let inst = TapeInstance::new(2, vec![Tape::path(vec![l(&[0, 1])])], vec![0], vec![0]);
        assert!(is_irreducible(&inst).unwrap());
    }

    #[test]
    fn a_single_full_cell_reduces() {
        let a = Tape::path(vec![l(&[0, 1]), l(&[0])]);
        let b = Tape::path(vec![l(&[1])]);
        let inst = TapeInstance::new(2, vec![a, b], vec![0, 0], vec![0, 0]);
        assert!(!is_irreducible(&inst).unwrap());
        assert_eq!(min_cover_size(&inst, 3).unwrap(), Some(1));
    }

    #[test]
    fn empty_alphabet_with_tapes_is_reducible() {
        let inst = TapeInstance::new(0, vec![Tape::path(vec![l(&[])])], vec![0], vec![0]);
        assert!(!is_irreducible(&inst).unwrap());
    }

    #[test]
    fn cover_needs_three() {
        let inst = TapeInstance::new(
            3,
            vec![
                Tape::path(vec![l(&[0]), l(&[1])]),
                Tape::path(vec![l(&[1])]),
                Tape::path(vec![l(&[2])]),
            ],
            vec![0, 0, 0],
            vec![0, 0, 0],
        );
        assert!(is_irreducible(&inst).unwrap());
    }

    #[test]
    fn two_cells_of_one_tape_do_not_reduce() {
        // the first tape covers Σ only with both of its cells
        let inst = TapeInstance::new(
            4,
            vec![
                Tape::path(vec![l(&[0, 1]), l(&[2, 3])]),
                Tape::path(vec![l(&[0])]),
                Tape::path(vec![l(&[3])]),
            ],
            vec![0, 0, 0],
            vec![0, 0, 0],
        );
        assert_eq!(min_cover_size(&inst, 3).unwrap(), Some(2));
        assert_eq!(min_tape_cover(&inst, 3).unwrap(), None);
        assert!(is_irreducible(&inst).unwrap());
    }
}
