use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tape::{MultiTapeInstance, Tape};

use super::{Artifact, Provenance};

/// `k` identical tuples with one path tape per variable and one cell per
/// column; cell `j` of tape `i` holds ✓ (letter 0) iff `i` is in column `j`.
/// Cells are numbered `1..=m` left to right.
pub fn w2_template(variables: usize, columns: &[Vec<usize>], k: usize, r: Option<u32>) -> Result<MultiTapeInstance> {
    if columns.is_empty() {
        return Err(Error::malformed("template needs at least one column"));
    }
    if variables == 0 {
        return Err(Error::malformed("template needs at least one variable"));
    }
    if let Some(v) = columns.iter().flatten().find(|&&v| v >= variables) {
        return Err(Error::malformed(format!("column mentions variable {v} of {variables}")));
    }
    let m = columns.len();
    let check: BitSet = [0].into_iter().collect();
    let tapes: Vec<Tape> = (0..variables)
        .map(|i| {
            let content = columns
                .iter()
                .map(|col| if col.contains(&i) { check.clone() } else { BitSet::new() })
                .collect();
            Tape::path(content).numbered((1..=m as u32).collect())
        })
        .collect();
    Ok(MultiTapeInstance {
        sigma: 1,
        tuples: vec![tapes; k],
        sync: true,
        r,
    })
}

/// Dominating set of size `k` as synchronized multi-tape reconfiguration:
/// column `j` of the template is the closed neighbourhood of `v_j`.
pub fn ds_to_sync_multi(g: &Graph, k: usize) -> Result<Artifact<MultiTapeInstance>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::malformed("empty graph"));
    }
    // wrap-around below 4 would let heads meet across the ends
    let r = n.max(4) as u32;
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| g.closed_neighbors(j).into_iter().map(|v| v as usize).collect())
        .collect();
    let instance = w2_template(n, &columns, k, Some(r))?;
    Ok(Artifact {
        instance,
        provenance: Provenance::DsToSyncMulti { n, k, r },
        fresh_letters: Vec::new(),
    })
}
