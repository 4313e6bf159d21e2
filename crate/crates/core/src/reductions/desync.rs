use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tape::{MultiTapeInstance, Tape, TapeInstance};

use super::{Artifact, Letters, Provenance};

/// Fresh letters `(a, b, c)` of one synchronized tape or tuple.
#[derive(Clone, Copy)]
pub(crate) struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub fn fresh(letters: &mut Letters, owner: &str) -> Self {
        Triple {
            a: letters.fresh(format!("a:{owner}")),
            b: letters.fresh(format!("b:{owner}")),
            c: letters.fresh(format!("c:{owner}")),
        }
    }

    /// `a` unless the number is 2 mod 3, `b` unless 0, `c` unless 1.
    pub fn for_number(&self, num: u32) -> BitSet {
        let mut s = BitSet::new();
        if num % 3 != 2 {
            s.insert(self.a);
        }
        if num % 3 != 0 {
            s.insert(self.b);
        }
        if num % 3 != 1 {
            s.insert(self.c);
        }
        s
    }
}

/// Contents `C∪A`, `A∪B`, `B∪C` for numbers `1, 2, 0` mod 3.
fn synchronizer_cell(triples: &[Triple], num: u32) -> BitSet {
    let mut s = BitSet::new();
    for t in triples {
        let (x, y) = match num % 3 {
            1 => (t.c, t.a),
            2 => (t.a, t.b),
            _ => (t.b, t.c),
        };
        s.insert(x);
        s.insert(y);
    }
    s
}

fn require_numbered(inst: &TapeInstance) -> Result<()> {
    if !inst.sync {
        return Err(Error::precondition("instance is not synchronized"));
    }
    inst.check_shape()?;
    if let Some(i) = inst.tapes.iter().position(|t| t.number.is_none()) {
        return Err(Error::precondition(format!("tape {i} is not numbered")));
    }
    Ok(())
}

fn coverage(tapes: &[Tape], cfg: &[usize]) -> BitSet {
    let mut s = BitSet::new();
    for (t, &c) in tapes.iter().zip(cfg) {
        s.union_with(&t.content[c]);
    }
    s
}

/// Replaces synchronization by three fresh letters per tape and a triangle
/// tape whose cells are `A∪B`, `B∪C`, `C∪A`.
pub fn desynchronize_triangle(inst: &TapeInstance) -> Result<Artifact<TapeInstance>> {
    require_numbered(inst)?;
    let max_num = inst
        .tapes
        .iter()
        .flat_map(|t| t.number.iter().flatten())
        .copied()
        .max()
        .unwrap_or(1);
    match inst.r {
        None | Some(0..=2) => {}
        Some(3) => return Err(Error::precondition("modulus 3 makes every pair of numbers close")),
        Some(r) if r % 3 == 0 || max_num < r => {}
        Some(_) => return Err(Error::precondition("modulus not divisible by 3 with a cell numbered r")),
    }
    let mut letters = Letters::starting_at(inst.sigma);
    let triples: Vec<Triple> = (0..inst.tapes.len())
        .map(|i| Triple::fresh(&mut letters, &format!("tape{i}")))
        .collect();
    let mut tapes: Vec<Tape> = inst
        .tapes
        .iter()
        .zip(&triples)
        .map(|(t, tr)| with_rule(t, tr))
        .collect();
    let set = |f: fn(&Triple) -> usize| -> BitSet { triples.iter().map(f).collect() };
    let (a, b, c) = (set(|t| t.a), set(|t| t.b), set(|t| t.c));
    let triangle = vec![a.union(&b), b.union(&c), c.union(&a)];
    let sigma = letters.count();
    let full = BitSet::full(sigma);
    let place = |cfg: &[usize]| -> Result<usize> {
        let missing = full.difference(&coverage(&tapes, cfg));
        triangle
            .iter()
            .position(|cell| missing.is_subset(cell))
            .ok_or_else(|| Error::precondition("no triangle cell completes the configuration"))
    };
    let (hs, ht) = (place(&inst.cs)?, place(&inst.ct)?);
    tapes.push(Tape::new(Graph::cycle(3), triangle, hs, ht));
    let mut cs = inst.cs.clone();
    let mut ct = inst.ct.clone();
    cs.push(hs);
    ct.push(ht);
    Ok(Artifact {
        instance: TapeInstance::new(sigma, tapes, cs, ct),
        provenance: Provenance::TriangleDesync {
            parent: Box::new(Provenance::Input),
            parent_sigma: inst.sigma,
            parent_tapes: inst.tapes.len(),
        },
        fresh_letters: letters.into_table(),
    })
}

fn check_path_tape(t: &Tape, i: usize) -> Result<Vec<u32>> {
    let order = t
        .path_order()
        .ok_or_else(|| Error::precondition(format!("tape {i} is not a path from start to end")))?;
    let nums = t
        .number
        .as_ref()
        .ok_or_else(|| Error::precondition(format!("tape {i} is not numbered")))?;
    if nums[t.start] != 1 {
        return Err(Error::precondition(format!("tape {i}: start cell not numbered 1")));
    }
    let along: Vec<u32> = order.iter().map(|&c| nums[c]).collect();
    if along.windows(2).any(|w| w[1] < w[0] || w[1] > w[0] + 1) {
        return Err(Error::precondition(format!(
            "tape {i}: numbering is not consecutive along the path"
        )));
    }
    Ok(along)
}

fn check_modulus(r: Option<u32>) -> Result<()> {
    match r {
        None => Ok(()),
        Some(r) if r >= 4 => Ok(()),
        Some(r) => Err(Error::precondition(format!("modulus {r} below 4"))),
    }
}

/// The synchronizer path `T*` on `q` cells with position numbering.
fn synchronizer_tape(triples: &[Triple], q: u32) -> Tape {
    let content = (1..=q).map(|num| synchronizer_cell(triples, num)).collect();
    Tape::path(content).numbered((1..=q).collect())
}

/// Desynchronizes path tapes numbered from 1 upwards by three fresh letters per
/// tape and one synchronizer path.
pub fn desynchronize_path(inst: &TapeInstance) -> Result<Artifact<TapeInstance>> {
    require_numbered(inst)?;
    check_modulus(inst.r)?;
    let mut q = 1;
    for (i, t) in inst.tapes.iter().enumerate() {
        q = q.max(*check_path_tape(t, i)?.last().expect("nonempty"));
    }
    let mut letters = Letters::starting_at(inst.sigma);
    let triples: Vec<Triple> = (0..inst.tapes.len())
        .map(|i| Triple::fresh(&mut letters, &format!("tape{i}")))
        .collect();
    let mut tapes: Vec<Tape> = inst
        .tapes
        .iter()
        .zip(&triples)
        .map(|(t, tr)| with_rule(t, tr))
        .collect();
    let smallest = |cfg: &[usize]| -> u32 {
        inst.tapes
            .iter()
            .zip(cfg)
            .map(|(t, &c)| t.number_of(c).expect("numbered"))
            .min()
            .unwrap_or(1)
    };
    let (hs, ht) = (smallest(&inst.cs), smallest(&inst.ct));
    tapes.push(synchronizer_tape(&triples, q));
    let mut cs = inst.cs.clone();
    let mut ct = inst.ct.clone();
    cs.push(hs as usize - 1);
    ct.push(ht as usize - 1);
    Ok(Artifact {
        instance: TapeInstance::new(letters.count(), tapes, cs, ct),
        provenance: Provenance::PathDesync {
            parent: Box::new(Provenance::Input),
            parent_sigma: inst.sigma,
            parent_tapes: inst.tapes.len(),
        },
        fresh_letters: letters.into_table(),
    })
}

fn with_rule(t: &Tape, tr: &Triple) -> Tape {
    let mut t = t.clone();
    let nums = t.number.clone().expect("numbered");
    for (c, cell) in t.content.iter_mut().enumerate() {
        cell.union_with(&tr.for_number(nums[c]));
    }
    t
}

/// Multi-tape form: the three letters are shared by a tuple, unnumbered tuples
/// are left alone, and `T*` is appended as a one-tape tuple. Every numbered
/// tape must start at 1 and end on the common largest number.
pub fn desynchronize_path_multi(inst: &MultiTapeInstance) -> Result<Artifact<MultiTapeInstance>> {
    desync_multi_from(inst, Letters::starting_at(inst.sigma))
}

pub(crate) fn desync_multi_from(inst: &MultiTapeInstance, mut letters: Letters) -> Result<Artifact<MultiTapeInstance>> {
    if !inst.sync {
        return Err(Error::precondition("instance is not synchronized"));
    }
    check_modulus(inst.r)?;
    let mut q = None;
    for (qi, tuple) in inst.tuples.iter().enumerate() {
        if tuple.is_empty() {
            return Err(Error::malformed(format!("tuple {qi} is empty")));
        }
        let numbered = tuple.iter().filter(|t| t.number.is_some()).count();
        if numbered != 0 && numbered != tuple.len() {
            return Err(Error::precondition(format!(
                "tuple {qi} mixes numbered and unnumbered tapes"
            )));
        }
        for (i, t) in tuple.iter().enumerate().filter(|(_, t)| t.number.is_some()) {
            let last = *check_path_tape(t, i)?.last().expect("nonempty");
            if t.number_of(t.end) != Some(last) {
                return Err(Error::precondition(format!(
                    "tuple {qi} tape {i}: end is not the largest number"
                )));
            }
            if q.is_some_and(|q| q != last) {
                return Err(Error::precondition("numbered tapes end on different numbers"));
            }
            q = Some(last);
        }
    }
    let q = q.ok_or_else(|| Error::precondition("no numbered tape"))?;
    let mut tuples = Vec::with_capacity(inst.tuples.len() + 1);
    let mut triples = Vec::new();
    for (qi, tuple) in inst.tuples.iter().enumerate() {
        if tuple[0].number.is_none() {
            tuples.push(tuple.clone());
            continue;
        }
        let tr = Triple::fresh(&mut letters, &format!("tuple{qi}"));
        triples.push(tr);
        tuples.push(tuple.iter().map(|t| with_rule(t, &tr)).collect());
    }
    tuples.push(vec![synchronizer_tape(&triples, q)]);
    let parent_sigma = inst.sigma;
    Ok(Artifact {
        instance: MultiTapeInstance {
            sigma: letters.count(),
            tuples,
            sync: false,
            r: None,
        },
        provenance: Provenance::PathDesync {
            parent: Box::new(Provenance::Input),
            parent_sigma,
            parent_tapes: inst.tuples.len(),
        },
        fresh_letters: letters.into_table(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::{is_irreducible, solve_multi, solve_tape, validate_with_shape, Shape};

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    fn two_tapes(sync_r: Option<u32>) -> TapeInstance {
        let a = Tape::path(vec![l(&[0]), l(&[0]), l(&[]), l(&[0, 1])]).numbered(vec![1, 2, 3, 4]);
        let b = Tape::path(vec![l(&[1]), l(&[1]), l(&[1]), l(&[])]).numbered(vec![1, 2, 3, 4]);
        TapeInstance::new(2, vec![a, b], vec![0, 0], vec![3, 3]).synchronized(sync_r)
    }

    #[test]
    fn triangle_preserves_answer() {
        let inst = two_tapes(None);
        let out = desynchronize_triangle(&inst).unwrap();
        assert_eq!(out.instance.sigma, 8);
        assert_eq!(out.fresh_letters.len(), 6);
        assert!(is_irreducible(&out.instance).unwrap());
        assert_eq!(
            solve_tape(&inst).unwrap().reachable,
            solve_tape(&out.instance).unwrap().reachable
        );
    }

    #[test]
    fn modulus_three_rejected() {
        assert!(matches!(
            desynchronize_triangle(&two_tapes(Some(3))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn path_keeps_paths() {
        let inst = two_tapes(None);
        let out = desynchronize_path(&inst).unwrap();
        assert!(validate_with_shape(&out.instance, Shape::Path).is_empty());
        let mut mid = inst.clone();
        mid.cs = vec![1, 1];
        let sync = desynchronize_path(&mid).unwrap().instance.tapes.pop().unwrap();
        assert_eq!((sync.start, sync.end), (0, sync.len() - 1));
        assert_eq!(
            solve_tape(&inst).unwrap().reachable,
            solve_tape(&out.instance).unwrap().reachable
        );
    }

    #[test]
    fn multi_desync_matches() {
        let inst = two_tapes(None);
        let multi = MultiTapeInstance {
            sigma: 2,
            tuples: vec![
                vec![inst.tapes[0].clone()],
                vec![inst.tapes[1].clone(), inst.tapes[0].clone()],
            ],
            sync: true,
            r: None,
        };
        let out = desynchronize_path_multi(&multi).unwrap();
        assert_eq!(out.instance.tuples.len(), 3);
        assert_eq!(
            solve_multi(&multi).unwrap().positive,
            solve_multi(&out.instance).unwrap().positive
        );
    }
}
