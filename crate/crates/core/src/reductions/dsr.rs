use crate::bitset::BitSet;
use crate::engine::{dominating_sets_branching, DsrInstance, MoveRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tape::{extended_graph, is_irreducible, Tape, TapeInstance};

use super::{Artifact, Provenance};

/// Role of a vertex in a reduction output, read back from its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexRole {
    Cell { tape: usize, cell: usize },
    Subdivision { tape: usize },
    Letter(usize),
    X(usize),
    Y,
    Z,
    Other,
}

impl VertexRole {
    pub fn of(g: &Graph, v: usize) -> VertexRole {
        let Some(label) = g.label(v) else {
            return VertexRole::Other;
        };
        let mut parts = label.split(':');
        let kind = parts.next().unwrap_or("");
        let nums: Vec<usize> = parts.filter_map(|p| p.parse().ok()).collect();
        match (kind, nums.as_slice()) {
            ("cell", [t, c]) => VertexRole::Cell { tape: *t, cell: *c },
            ("sub", [t, ..]) => VertexRole::Subdivision { tape: *t },
            ("letter", [a]) => VertexRole::Letter(*a),
            ("x", [i]) => VertexRole::X(*i),
            ("y", []) => VertexRole::Y,
            ("z", []) => VertexRole::Z,
            _ => VertexRole::Other,
        }
    }
}

fn require_irreducible(inst: &TapeInstance) -> Result<()> {
    inst.check_shape()?;
    if inst.sync {
        return Err(Error::precondition("instance is synchronized"));
    }
    if !is_irreducible(inst)? {
        return Err(Error::precondition("instance is not irreducible"));
    }
    Ok(())
}

/// Tape reconfiguration as dominating-set reconfiguration under token
/// sliding: the extended graph plus `x_i` on the cells of tape `i`, `y` on
/// every cell and a pendant `z` on `y`. Heads become tokens and `y` holds one
/// more.
pub fn tape_to_ts_dsr(inst: &TapeInstance) -> Result<Artifact<DsrInstance>> {
    require_irreducible(inst)?;
    let eg = extended_graph(inst);
    let mut g = eg.graph.clone();
    let k = inst.tapes.len();
    let xs: Vec<usize> = (0..k).map(|_| g.add_vertex()).collect();
    let y = g.add_vertex();
    let z = g.add_vertex();
    for (i, t) in inst.tapes.iter().enumerate() {
        g.set_label(xs[i], format!("x:{i}"));
        for c in 0..t.len() {
            g.add_edge(xs[i], eg.cell(i, c));
            g.add_edge(y, eg.cell(i, c));
        }
    }
    g.add_edge(y, z);
    g.set_label(y, "y");
    g.set_label(z, "z");
    let tokens =
        |cfg: &[usize]| -> VertexSet { cfg.iter().enumerate().map(|(i, &c)| eg.cell(i, c)).chain([y]).collect() };
    let out = DsrInstance::new(g, k + 1, tokens(&inst.cs), tokens(&inst.ct), MoveRule::Slide);
    Ok(Artifact {
        instance: out,
        provenance: Provenance::TapeToTsDsr {
            parent: Box::new(Provenance::Input),
            tapes: k,
        },
        fresh_letters: Vec::new(),
    })
}

/// Whether every minimum dominating set of a [`tape_to_ts_dsr`] output has
/// `k + 1` vertices: one of `y, z`, one cell per tape and no letter.
///
/// Branching on undominated vertices visits a subset of every dominating set
/// of size at most `k + 1`; with no smaller dominating set, the visited sets of
/// size `k + 1` are exactly the minimum ones.
pub fn check_min_ds_structure(inst: &DsrInstance) -> Result<bool> {
    let g = &inst.graph;
    let roles: Vec<VertexRole> = (0..g.n()).map(|v| VertexRole::of(g, v)).collect();
    let tapes = inst.k.saturating_sub(1);
    let mut ok = true;
    dominating_sets_branching(g, &VertexSet::all(g.n()), inst.k, |d| {
        if d.len() < inst.k {
            ok = false;
            return false;
        }
        let mut per_tape = vec![0usize; tapes];
        let mut yz = 0;
        for &v in d {
            match roles[v as usize] {
                VertexRole::Y | VertexRole::Z => yz += 1,
                VertexRole::Cell { tape, .. } if tape < tapes => per_tape[tape] += 1,
                _ => {
                    ok = false;
                    return false;
                }
            }
        }
        if yz != 1 || per_tape.iter().any(|&c| c != 1) {
            ok = false;
            return false;
        }
        true
    })?;
    Ok(ok)
}

/// Empty cells appended past the end so that no `3k` vertices other than
/// `x_i` can dominate every subdivision vertex of the tape.
fn padded(t: &Tape, k: usize) -> (Tape, usize) {
    let mut t = t.clone();
    let mut added = 0;
    loop {
        let mut load: Vec<usize> = (0..t.len()).map(|c| t.cells.degree(c).max(1)).collect();
        load.sort_unstable_by(|a, b| b.cmp(a));
        let reach: usize = load.iter().take(3 * k).sum();
        if t.cells.m() > reach {
            return (t, added);
        }
        let tail = if added == 0 { t.end } else { t.len() - 1 };
        let c = t.cells.add_vertex();
        t.cells.add_edge(tail, c);
        t.content.push(BitSet::new());
        if let Some(nb) = t.number.as_mut() {
            let last = nb[tail];
            nb.push(last);
        }
        added += 1;
    }
}

/// Tape reconfiguration as connected dominating-set reconfiguration under
/// token jumping. Tape edges are subdivided; `y` sees the cells, `x_i` sees the
/// subdivision vertices of tape `i`, and `z` hangs off `y`. Each tape holds a
/// head token plus one subdivision token next to it, for `3k + 1` tokens.
pub fn tape_to_tj_cdsr(inst: &TapeInstance) -> Result<Artifact<DsrInstance>> {
    require_irreducible(inst)?;
    let k = inst.tapes.len();
    let (tapes, padding): (Vec<Tape>, Vec<usize>) = inst.tapes.iter().map(|t| padded(t, k)).unzip();
    let mut offsets = Vec::with_capacity(k);
    let mut n = 0;
    for t in &tapes {
        offsets.push(n);
        n += t.len();
    }
    let mut g = Graph::new(n);
    let mut subs: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(k);
    for (i, t) in tapes.iter().enumerate() {
        for c in 0..t.len() {
            g.set_label(offsets[i] + c, format!("cell:{i}:{c}"));
        }
        let mut mine = Vec::new();
        for (u, v) in t.cells.edges() {
            let s = g.add_vertex();
            g.set_label(s, format!("sub:{i}:{u}:{v}"));
            g.add_edge(offsets[i] + u, s);
            g.add_edge(offsets[i] + v, s);
            mine.push((u, v, s));
        }
        subs.push(mine);
    }
    let letter_base = g.n();
    for a in 0..inst.sigma {
        let l = g.add_vertex();
        g.set_label(l, format!("letter:{a}"));
    }
    for (i, t) in tapes.iter().enumerate() {
        for (c, content) in t.content.iter().enumerate() {
            for a in content.iter() {
                g.add_edge(offsets[i] + c, letter_base + a);
            }
        }
    }
    let xs: Vec<usize> = (0..k).map(|_| g.add_vertex()).collect();
    let y = g.add_vertex();
    let z = g.add_vertex();
    for i in 0..k {
        g.set_label(xs[i], format!("x:{i}"));
        for &(_, _, s) in &subs[i] {
            g.add_edge(xs[i], s);
        }
        for c in 0..tapes[i].len() {
            g.add_edge(y, offsets[i] + c);
        }
    }
    g.add_edge(y, z);
    g.set_label(y, "y");
    g.set_label(z, "z");
    let tokens = |cfg: &[usize]| -> VertexSet {
        let mut d: Vec<usize> = xs.clone();
        d.push(y);
        for (i, &c) in cfg.iter().enumerate() {
            d.push(offsets[i] + c);
            let s = subs[i]
                .iter()
                .filter(|&&(u, v, _)| u == c || v == c)
                .map(|&(_, _, s)| s)
                .min()
                .expect("padded tapes have edges");
            d.push(s);
        }
        d.into_iter().collect()
    };
    let mut out = DsrInstance::new(g, 3 * k + 1, tokens(&inst.cs), tokens(&inst.ct), MoveRule::Jump);
    out.connected = true;
    Ok(Artifact {
        instance: out,
        provenance: Provenance::TapeToTjCdsr {
            parent: Box::new(Provenance::Input),
            tapes: k,
            padding,
        },
        fresh_letters: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::solve;
    use crate::tape::solve_tape;

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    fn pair(stuck: bool) -> TapeInstance {
        let (a, b) = if stuck {
            (vec![l(&[0]), l(&[0]), l(&[1])], vec![l(&[1]), l(&[1]), l(&[0])])
        } else {
            (vec![l(&[0]); 3], vec![l(&[1]); 3])
        };
        TapeInstance::new(2, vec![Tape::path(a), Tape::path(b)], vec![0, 0], vec![2, 2])
    }

    #[test]
    fn ts_equivalence_and_structure() {
        for stuck in [false, true] {
            let inst = pair(stuck);
            let out = tape_to_ts_dsr(&inst).unwrap();
            out.instance.validate().unwrap();
            assert_eq!(solve_tape(&inst).unwrap().reachable, !stuck);
            assert_eq!(solve(&out.instance).unwrap().reachable, !stuck);
        }
        let out = tape_to_ts_dsr(&pair(false)).unwrap();
        assert!(check_min_ds_structure(&out.instance).unwrap());
        let mut g = out.instance.graph.clone();
        let u = g.add_vertex();
        for v in 0..u {
            g.add_edge(u, v);
        }
        let bad = DsrInstance {
            graph: g,
            ..out.instance
        };
        assert!(!check_min_ds_structure(&bad).unwrap());
    }

    #[test]
    fn single_letter_single_tape() {
        let inst = TapeInstance::new(1, vec![Tape::path(vec![l(&[0]), l(&[0])])], vec![0], vec![1]);
        let out = tape_to_ts_dsr(&inst).unwrap();
        assert!(check_min_ds_structure(&out.instance).unwrap());
        assert!(solve(&out.instance).unwrap().reachable);
    }

    #[test]
    fn reducible_rejected() {
        let inst = TapeInstance::new(
            1,
            vec![Tape::path(vec![l(&[0])]), Tape::path(vec![l(&[0])])],
            vec![0, 0],
            vec![0, 0],
        );
        assert!(matches!(tape_to_ts_dsr(&inst), Err(Error::Precondition(_))));
    }

    #[test]
    fn cdsr_equivalence() {
        for stuck in [false, true] {
            let inst = pair(stuck);
            let out = tape_to_tj_cdsr(&inst).unwrap();
            out.instance.validate().unwrap();
            assert_eq!(out.instance.k, 7);
            for v in 0..out.instance.graph.n() {
                if matches!(VertexRole::of(&out.instance.graph, v), VertexRole::Subdivision { .. }) {
                    assert_eq!(out.instance.graph.degree(v), 3);
                }
            }
            assert_eq!(solve(&out.instance).unwrap().reachable, !stuck);
        }
    }
}
