use crate::bitset::BitSet;
use crate::engine::{DsrInstance, MoveRule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tape::{Tape, TapeInstance};

use super::{Artifact, Provenance};

/// Branch length parameter: at least `max(n, 5)` with `3 | m + 1`, so the
/// modulus `m + 1` suits the triangle desynchronizer.
pub(crate) fn branch_length(n: usize) -> usize {
    let mut m = n.max(5);
    while (m + 1) % 3 != 0 {
        m += 1;
    }
    m
}

/// Cell layout of a branched tape: center 0, then per branch `2m + 1` cells
/// numbered `2..=m+1`, middle `1`, then `m+1` down to `2`.
pub(crate) struct Star {
    pub m: usize,
    pub branches: usize,
}

impl Star {
    pub fn cells(&self) -> usize {
        1 + self.branches * (2 * self.m + 1)
    }

    pub fn base(&self, b: usize) -> usize {
        1 + b * (2 * self.m + 1)
    }

    pub fn middle(&self, b: usize) -> usize {
        self.base(b) + self.m
    }

    /// Cell `c` of the star as (branch, offset within branch), center excluded.
    pub fn locate(&self, c: usize) -> Option<(usize, usize)> {
        (c > 0).then(|| ((c - 1) / (2 * self.m + 1), (c - 1) % (2 * self.m + 1)))
    }

    pub fn number(&self, c: usize) -> u32 {
        let m = self.m;
        match self.locate(c) {
            None => 1,
            Some((_, off)) if off < m => off as u32 + 2,
            Some((_, off)) if off == m => 1,
            Some((_, off)) => (2 * m + 2 - off) as u32,
        }
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.cells());
        for b in 0..self.branches {
            let base = self.base(b);
            g.add_edge(0, base);
            for off in 1..=2 * self.m {
                g.add_edge(base + off - 1, base + off);
            }
        }
        g
    }
}

/// Partitioned TJ-DSR as synchronized reconfiguration on subdivided stars.
/// Letters `0..k` stand for the parts and letter `k` is ✓.
pub fn partitioned_dsr_to_sync_stars(inst: &DsrInstance) -> Result<Artifact<TapeInstance>> {
    inst.check_shape()?;
    let parts = inst
        .partition
        .as_ref()
        .ok_or_else(|| Error::precondition("instance has no partition"))?;
    if inst.rule != MoveRule::Jump {
        return Err(Error::precondition("partitioned instances use token jumping"));
    }
    if inst.connected || inst.core.is_some() {
        return Err(Error::precondition(
            "connected or core-restricted instances are not supported",
        ));
    }
    let k = parts.len();
    let n = inst.graph.n();
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::malformed(format!("part {i} is empty")));
        }
        for (name, s) in [("source", &inst.source), ("target", &inst.target)] {
            if s.intersection(p).len() != 1 {
                return Err(Error::malformed(format!(
                    "{name} does not hold exactly one vertex of part {i}"
                )));
            }
        }
    }
    let m = branch_length(n);
    let check = k;

    let mut tapes = Vec::with_capacity(k + 1);
    let mut cs = Vec::with_capacity(k + 1);
    let mut ct = Vec::with_capacity(k + 1);
    for (i, p) in parts.iter().enumerate() {
        let members = p.to_vec();
        let star = Star {
            m,
            branches: members.len(),
        };
        let mut content = vec![BitSet::new(); star.cells()];
        // the other heads sit on leaves while this one crosses the center
        content[0].insert(check);
        for (b, &v) in members.iter().enumerate() {
            let dominated: Vec<bool> = {
                let mut d = vec![false; n];
                for u in inst.graph.closed_neighbors(v) {
                    d[u as usize] = true;
                }
                d
            };
            for off in 0..=2 * m {
                let c = star.base(b) + off;
                let num = star.number(c) as usize;
                let cell = &mut content[c];
                if off >= m {
                    cell.insert(i);
                }
                // numbers 2..=n+1 test vertices, the rest are padding
                if num >= 2 && (num - 2 >= n || dominated[num - 2]) {
                    cell.insert(check);
                }
            }
        }
        let pos = |s: &crate::graph::VertexSet| -> usize {
            let v = s.intersection(p).iter().next().expect("checked above");
            star.middle(members.iter().position(|&u| u == v).expect("member"))
        };
        cs.push(pos(&inst.source));
        ct.push(pos(&inst.target));
        let number = (0..star.cells()).map(|c| star.number(c)).collect();
        tapes.push(Tape::new(star.graph(), content, cs[i], ct[i]).numbered(number));
    }
    let star = Star { m, branches: k };
    let mut content = vec![BitSet::new(); star.cells()];
    for (c, cell) in content.iter_mut().enumerate() {
        if star.number(c) == 1 {
            cell.insert(check);
        }
        if let Some((b, off)) = star.locate(c) {
            if off >= m {
                cell.insert(b);
            }
        }
    }
    let number = (0..star.cells()).map(|c| star.number(c)).collect();
    tapes.push(Tape::new(star.graph(), content, star.middle(0), star.middle(0)).numbered(number));
    cs.push(star.middle(0));
    ct.push(star.middle(0));

    let instance = TapeInstance::new(k + 1, tapes, cs, ct).synchronized(Some(m as u32 + 1));
    Ok(Artifact {
        instance,
        provenance: Provenance::PartitionedStars { n, k, m },
        fresh_letters: Vec::new(),
    })
}
