use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::tape::{MultiTapeInstance, Tape, TapeInstance};

use super::{Artifact, Letters, Provenance};

/// Selector letters of one tuple.
#[derive(Clone, Copy)]
pub(crate) struct SelLetters {
    pub a: usize,
    pub s: usize,
    pub e: usize,
}

impl SelLetters {
    pub fn fresh(letters: &mut Letters, q: usize) -> Self {
        SelLetters {
            a: letters.fresh(format!("sel-a:tuple{q}")),
            s: letters.fresh(format!("sel-s:tuple{q}")),
            e: letters.fresh(format!("sel-e:tuple{q}")),
        }
    }
}

/// The five selector cells `Σ∪A∪S∪E, Σ∪A∪E, S∪E, Σ∪A∪S, Σ∪A∪S∪E`.
pub(crate) fn selector_tape(sigma: usize, sel: &[SelLetters]) -> Tape {
    let base = BitSet::full(sigma);
    let a: BitSet = sel.iter().map(|x| x.a).collect();
    let s: BitSet = sel.iter().map(|x| x.s).collect();
    let e: BitSet = sel.iter().map(|x| x.e).collect();
    let sa = base.union(&a);
    let content = vec![
        sa.union(&s).union(&e),
        sa.union(&e),
        s.union(&e),
        sa.union(&s),
        sa.union(&s).union(&e),
    ];
    Tape::path(content)
}

/// Cells of `t` from start to end.
pub(crate) fn path_cells(t: &Tape, what: &str) -> Result<Vec<usize>> {
    t.path_order()
        .ok_or_else(|| Error::precondition(format!("{what} is not a path from start to end")))
}

/// Multi-Path-Tape-Rec as Path-Tape-Rec: each tuple becomes one long path of
/// its members separated by empty cells, and a five-cell selector tape gates
/// the choice of member.
pub fn select_from_tuples(inst: &MultiTapeInstance) -> Result<Artifact<TapeInstance>> {
    if inst.sync {
        return Err(Error::precondition("selector expects an unsynchronized instance"));
    }
    let k = inst.tuples.len();
    let mut letters = Letters::starting_at(inst.sigma);
    let sel: Vec<SelLetters> = (0..k).map(|q| SelLetters::fresh(&mut letters, q)).collect();
    let mut tapes = Vec::with_capacity(k + 1);
    for (q, tuple) in inst.tuples.iter().enumerate() {
        if tuple.is_empty() {
            return Err(Error::malformed(format!("tuple {q} is empty")));
        }
        let mut content = Vec::new();
        for (i, t) in tuple.iter().enumerate() {
            if i > 0 {
                content.push(BitSet::new());
            }
            let order = path_cells(t, &format!("tuple {q} tape {i}"))?;
            let last = order.len() - 1;
            for (pos, &c) in order.iter().enumerate() {
                let mut cell = t.content[c].clone();
                cell.insert(sel[q].a);
                if pos == 0 {
                    cell.insert(sel[q].s);
                }
                if pos == last {
                    cell.insert(sel[q].e);
                }
                content.push(cell);
            }
        }
        tapes.push(Tape::path(content));
    }
    tapes.push(selector_tape(inst.sigma, &sel));
    let cs = vec![0; k + 1];
    let ct: Vec<usize> = tapes.iter().map(|t| t.len() - 1).collect();
    Ok(Artifact {
        instance: TapeInstance::new(letters.count(), tapes, cs, ct),
        provenance: Provenance::Selector {
            k,
            parent_sigma: inst.sigma,
        },
        fresh_letters: letters.into_table(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::{solve_multi, solve_tape, validate_with_shape, Shape};

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn selector_contents() {
        let sel = [SelLetters { a: 1, s: 2, e: 3 }];
        let t = selector_tape(1, &sel);
        let got: Vec<Vec<usize>> = t.content.iter().map(|c| c.iter().collect()).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 3],
                vec![2, 3],
                vec![0, 1, 2],
                vec![0, 1, 2, 3]
            ]
        );
    }

    #[test]
    fn picks_the_working_member() {
        // member 0 is stuck, member 1 can hand over letter 0
        let stuck = Tape::path(vec![l(&[0]), l(&[]), l(&[0])]);
        let free = Tape::path(vec![l(&[0]), l(&[0]), l(&[0])]);
        let inst = MultiTapeInstance {
            sigma: 1,
            tuples: vec![vec![stuck.clone(), free]],
            sync: false,
            r: None,
        };
        let out = select_from_tuples(&inst).unwrap();
        assert!(validate_with_shape(&out.instance, Shape::Path).is_empty());
        assert!(solve_multi(&inst).unwrap().positive);
        assert!(solve_tape(&out.instance).unwrap().reachable);
        let neg = MultiTapeInstance {
            tuples: vec![vec![stuck]],
            ..inst
        };
        assert!(!solve_multi(&neg).unwrap().positive);
        assert!(
            !solve_tape(&select_from_tuples(&neg).unwrap().instance)
                .unwrap()
                .reachable
        );
    }
}
