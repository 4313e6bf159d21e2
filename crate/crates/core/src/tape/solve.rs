//! Configuration validity and breadth-first search over head tuples.

use crate::bitset::{BitSet, WordBuf};
use crate::engine::search;
use crate::engine::DEFAULT_STATE_CAP;
use crate::error::{Error, Result};

use super::{numbers_close, MultiTapeInstance, TapeInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeResult {
    pub reachable: bool,
    pub witness: Option<Vec<Vec<usize>>>,
    pub explored: usize,
}

impl TapeResult {
    pub fn witness_length(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.len() - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiResult {
    pub positive: bool,
    pub selection: Option<Vec<usize>>,
    pub witness: Option<Vec<Vec<usize>>>,
    pub explored: usize,
}

struct Checker<'a> {
    inst: &'a TapeInstance,
    full: WordBuf,
    nwords: usize,
}

impl<'a> Checker<'a> {
    fn new(inst: &'a TapeInstance) -> Self {
        let nwords = inst.sigma.div_ceil(64).max(1);
        let mut full = WordBuf::zeros(nwords);
        full.or_bits(&BitSet::full(inst.sigma));
        Checker { inst, full, nwords }
    }

    fn number(&self, tape: usize, cell: usize) -> Option<u32> {
        self.inst.tapes[tape].number.as_ref().map(|nb| nb[cell])
    }

    fn in_sync(&self, cfg: &[u32]) -> bool {
        if !self.inst.sync {
            return true;
        }
        let nums: Vec<u32> = cfg
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| self.number(i, c as usize))
            .collect();
        nums.iter()
            .enumerate()
            .all(|(i, &a)| nums[i + 1..].iter().all(|&b| numbers_close(a, b, self.inst.r)))
    }

    fn covers(&self, cfg: &[u32]) -> bool {
        let mut acc = WordBuf::zeros(self.nwords);
        for (i, &c) in cfg.iter().enumerate() {
            acc.or_bits(&self.inst.tapes[i].content[c as usize]);
        }
        acc.covers(&self.full)
    }

    fn valid(&self, cfg: &[u32]) -> bool {
        self.covers(cfg) && self.in_sync(cfg)
    }

    /// Moving head `j` only needs the union of the other heads, which the
    /// prefix and suffix accumulators give in one pass.
    fn successors(&self, cfg: &[u32]) -> Vec<Vec<u32>> {
        let t = cfg.len();
        let mut prefix = vec![WordBuf::zeros(self.nwords); t + 1];
        for i in 0..t {
            let mut w = prefix[i].clone();
            w.or_bits(&self.inst.tapes[i].content[cfg[i] as usize]);
            prefix[i + 1] = w;
        }
        let mut suffix = WordBuf::zeros(self.nwords);
        let mut out = Vec::new();
        for j in (0..t).rev() {
            let mut others = prefix[j].clone();
            others.or_buf(&suffix);
            let tape = &self.inst.tapes[j];
            for &nb in tape.cells.neighbors(cfg[j] as usize) {
                if !others.covers_with(&tape.content[nb as usize], &self.full) {
                    continue;
                }
                if self.inst.sync {
                    if let Some(m) = self.number(j, nb as usize) {
                        let clash = cfg.iter().enumerate().any(|(i, &c)| {
                            i != j
                                && self
                                    .number(i, c as usize)
                                    .is_some_and(|o| !numbers_close(m, o, self.inst.r))
                        });
                        if clash {
                            continue;
                        }
                    }
                }
                let mut next = cfg.to_vec();
                next[j] = nb;
                out.push(next);
            }
            suffix.or_bits(&tape.content[cfg[j] as usize]);
        }
        out.sort_unstable();
        out
    }
}

fn to_u32(cfg: &[usize]) -> Vec<u32> {
    cfg.iter().map(|&c| c as u32).collect()
}

fn check_cfg(inst: &TapeInstance, cfg: &[usize]) -> Result<()> {
    if cfg.len() != inst.tapes.len() {
        return Err(Error::malformed(format!(
            "{} heads for {} tapes",
            cfg.len(),
            inst.tapes.len()
        )));
    }
    for (i, &c) in cfg.iter().enumerate() {
        if c >= inst.tapes[i].len() {
            return Err(Error::malformed(format!("head {i} on missing cell {c}")));
        }
    }
    Ok(())
}

/// Letter union equals Σ and, for synchronized instances, numbered heads are
/// pairwise within one modulo `r`. Malformed configurations are invalid.
pub fn is_valid_configuration(inst: &TapeInstance, cfg: &[usize]) -> bool {
    if inst.check_shape().is_err() || check_cfg(inst, cfg).is_err() {
        return false;
    }
    Checker::new(inst).valid(&to_u32(cfg))
}

/// Valid configurations one head move away, sorted lexicographically.
pub fn tape_successors(inst: &TapeInstance, cfg: &[usize]) -> Result<Vec<Vec<usize>>> {
    inst.check_shape()?;
    check_cfg(inst, cfg)?;
    let ck = Checker::new(inst);
    let cur = to_u32(cfg);
    if !ck.valid(&cur) {
        return Err(Error::precondition("configuration is not valid"));
    }
    Ok(ck
        .successors(&cur)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as usize).collect())
        .collect())
}

pub fn solve_tape(inst: &TapeInstance) -> Result<TapeResult> {
    solve_tape_with(inst, DEFAULT_STATE_CAP)
}

pub fn solve_tape_with(inst: &TapeInstance, state_cap: usize) -> Result<TapeResult> {
    inst.check_shape()?;
    let ck = Checker::new(inst);
    let (cs, ct) = (to_u32(&inst.cs), to_u32(&inst.ct));
    for (name, c) in [("cs", &cs), ("ct", &ct)] {
        if !ck.valid(c) {
            return Err(Error::precondition(format!("{name} is not a valid configuration")));
        }
    }
    let out = search::bfs(cs, &ct, state_cap, |c| Ok(ck.successors(c)))?;
    Ok(TapeResult {
        reachable: out.path.is_some(),
        witness: out.path.map(|p| {
            p.into_iter()
                .map(|c| c.into_iter().map(|x| x as usize).collect())
                .collect()
        }),
        explored: out.explored,
    })
}

pub fn solve_multi(inst: &MultiTapeInstance) -> Result<MultiResult> {
    solve_multi_with(inst, DEFAULT_STATE_CAP)
}

/// Tries every selection in lexicographic order. A selection whose start or
/// end configuration is invalid is simply negative.
pub fn solve_multi_with(inst: &MultiTapeInstance, state_cap: usize) -> Result<MultiResult> {
    if inst.tuples.iter().any(Vec::is_empty) {
        return Err(Error::malformed("empty tuple"));
    }
    let sizes: Vec<usize> = inst.tuples.iter().map(Vec::len).collect();
    let mut sel = vec![0usize; sizes.len()];
    let mut explored = 0usize;
    loop {
        let flat = inst.flatten(&sel)?;
        let ck = Checker::new(&flat);
        flat.check_shape()?;
        if ck.valid(&to_u32(&flat.cs)) && ck.valid(&to_u32(&flat.ct)) {
            let r = solve_tape_with(&flat, state_cap.saturating_sub(explored).max(1))?;
            explored += r.explored;
            if r.reachable {
                return Ok(MultiResult {
                    positive: true,
                    selection: Some(sel),
                    witness: r.witness,
                    explored,
                });
            }
        }
        // odometer, last tuple fastest
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return Ok(MultiResult {
                    positive: false,
                    selection: None,
                    witness: None,
                    explored,
                });
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < sizes[i] {
                break;
            }
            sel[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::Tape;

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn single_full_tape_walks() {
        let inst = TapeInstance::new(1, vec![Tape::path(vec![l(&[0]); 3])], vec![0], vec![2]);
        let r = solve_tape(&inst).unwrap();
        assert_eq!(r.witness_length(), Some(2));
        assert_eq!(tape_successors(&inst, &[1]).unwrap(), vec![vec![0], vec![2]]);
    }

    #[test]
    fn two_half_tapes_hand_over() {
        let inst = TapeInstance::new(
            1,
            vec![Tape::path(vec![l(&[0]), l(&[])]), Tape::path(vec![l(&[]), l(&[0])])],
            vec![0, 0],
            vec![1, 1],
        );
        let r = solve_tape(&inst).unwrap();
        assert_eq!(r.witness.unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn pinned_head() {
        let inst = TapeInstance::new(
            2,
            vec![Tape::path(vec![l(&[0]), l(&[0, 1]), l(&[1])])],
            vec![1],
            vec![1],
        );
        assert!(tape_successors(&inst, &[1]).unwrap().is_empty());
        assert!(!is_valid_configuration(&inst, &[0]));
    }

    #[test]
    fn sync_filter() {
        let t = Tape::path(vec![l(&[0]); 3]).numbered(vec![1, 2, 3]);
        let inst = TapeInstance::new(1, vec![t.clone(), t], vec![0, 1], vec![2, 2]).synchronized(Some(4));
        // head 1 may not run ahead to 3 while head 0 sits on 1
        assert_eq!(tape_successors(&inst, &[0, 1]).unwrap(), vec![vec![0, 0], vec![1, 1]]);
        let unsync = TapeInstance {
            sync: false,
            ..inst.clone()
        };
        assert_eq!(tape_successors(&unsync, &[0, 1]).unwrap().len(), 3);
    }

    #[test]
    fn invalid_start_is_precondition() {
        let inst = TapeInstance::new(2, vec![Tape::path(vec![l(&[0]), l(&[0, 1])])], vec![0], vec![1]);
        assert!(matches!(solve_tape(&inst), Err(Error::Precondition(_))));
    }
}
