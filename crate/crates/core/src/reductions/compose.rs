use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::tape::{MultiTapeInstance, Tape};

use super::desync::{desync_multi_from, desynchronize_path_multi};
use super::select::{path_cells, selector_tape, SelLetters};
use super::w2::w2_template;
use super::{Artifact, Letters, Provenance};

fn check_compatible(insts: &[MultiTapeInstance]) -> Result<()> {
    let first = insts.first().ok_or_else(|| Error::malformed("nothing to compose"))?;
    for (j, inst) in insts.iter().enumerate() {
        if inst.sync {
            return Err(Error::precondition(format!("instance {j} is synchronized")));
        }
        if inst.sigma != first.sigma {
            return Err(Error::malformed(format!("instance {j} has a different alphabet")));
        }
        let sizes = |m: &MultiTapeInstance| m.tuples.iter().map(Vec::len).collect::<Vec<_>>();
        if sizes(inst) != sizes(first) {
            return Err(Error::malformed(format!("instance {j} has differently sized tuples")));
        }
    }
    if first.tuples.is_empty() {
        return Err(Error::malformed("instances have no tuples"));
    }
    Ok(())
}

/// Chains tape `s` of tuple `q` across all instances. Instance `j` (from 1)
/// contributes a copy of its start cell numbered `4j-3`, its cells numbered
/// `4j-2`, a copy of its end cell numbered `4j-1`, and between instances a
/// separator numbered `4j`.
fn glue(insts: &[MultiTapeInstance], separator: &BitSet, sel: Option<&[SelLetters]>) -> Result<MultiTapeInstance> {
    let first = &insts[0];
    let p = insts.len();
    let mut tuples = Vec::with_capacity(first.tuples.len());
    for (q, tuple) in first.tuples.iter().enumerate() {
        let mut out = Vec::with_capacity(tuple.len());
        for s in 0..tuple.len() {
            let mut content = Vec::new();
            let mut number = Vec::new();
            for (j, inst) in insts.iter().enumerate() {
                let t = &inst.tuples[q][s];
                let order = path_cells(t, &format!("instance {j} tuple {q} tape {s}"))?;
                let last = order.len() - 1;
                let mark = |pos: usize, cell: &BitSet| -> BitSet {
                    let mut c = cell.clone();
                    if let Some(sel) = sel {
                        c.insert(sel[q].a);
                        if pos == 0 {
                            c.insert(sel[q].s);
                        }
                        if pos == last {
                            c.insert(sel[q].e);
                        }
                    }
                    c
                };
                let j1 = 4 * (j as u32 + 1);
                content.push(mark(0, &t.content[order[0]]));
                number.push(j1 - 3);
                for (pos, &c) in order.iter().enumerate() {
                    content.push(mark(pos, &t.content[c]));
                    number.push(j1 - 2);
                }
                content.push(mark(last, &t.content[order[last]]));
                number.push(j1 - 1);
                if j + 1 < p {
                    content.push(separator.clone());
                    number.push(j1);
                }
            }
            out.push(Tape::path(content).numbered(number));
        }
        tuples.push(out);
    }
    Ok(MultiTapeInstance {
        sigma: first.sigma,
        tuples,
        sync: true,
        r: None,
    })
}

/// Positive iff one selection solves every input.
pub fn and_compose(insts: &[MultiTapeInstance]) -> Result<Artifact<MultiTapeInstance>> {
    check_compatible(insts)?;
    let sigma = insts[0].sigma;
    let glued = glue(insts, &BitSet::full(sigma), None)?;
    let k = glued.tuples.len();
    let mut out = desync_multi_from(&glued, Letters::starting_at(sigma))?;
    out.provenance = Provenance::AndCompose { parts: insts.len(), k };
    Ok(out)
}

/// Positive iff some input is positive. Tuples are glued member by member
/// so a selection keeps its meaning in every input, with empty separators
/// crossed only while the selector tape covers everything.
pub fn or_compose(insts: &[MultiTapeInstance]) -> Result<Artifact<MultiTapeInstance>> {
    check_compatible(insts)?;
    let sigma = insts[0].sigma;
    let k = insts[0].tuples.len();
    let mut letters = Letters::starting_at(sigma);
    let sel: Vec<SelLetters> = (0..k).map(|q| SelLetters::fresh(&mut letters, q)).collect();
    let mut glued = glue(insts, &BitSet::new(), Some(&sel))?;
    glued.tuples.push(vec![selector_tape(sigma, &sel)]);
    let mut out = desync_multi_from(&glued, letters)?;
    out.provenance = Provenance::OrCompose { parts: insts.len(), k };
    Ok(out)
}

/// Monotone formula over variables `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Var(usize),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            Formula::Var(v) => assignment.get(*v).copied().unwrap_or(false),
            Formula::And(fs) => fs.iter().all(|f| f.eval(assignment)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(assignment)),
        }
    }

    /// One more than the largest variable.
    pub fn variables(&self) -> usize {
        match self {
            Formula::Var(v) => v + 1,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::variables).max().unwrap_or(0),
        }
    }

    fn is_normalized(&self, h: usize) -> bool {
        match (h, self) {
            (1, Formula::Var(_)) => true,
            (h, Formula::And(ors)) if h >= 2 && !ors.is_empty() => ors.iter().all(|o| match o {
                Formula::Or(gs) => !gs.is_empty() && gs.iter().all(|g| g.is_normalized(h - 1)),
                _ => false,
            }),
            _ => false,
        }
    }

    /// An equivalent `h`-normalized formula, wrapping levels in singleton
    /// conjunctions and disjunctions where the shape calls for them.
    fn pad(&self, h: usize) -> Result<Formula> {
        if h == 1 {
            return match self {
                Formula::Var(v) => Ok(Formula::Var(*v)),
                Formula::And(fs) | Formula::Or(fs) if fs.len() == 1 => fs[0].pad(1),
                _ => Err(Error::malformed("formula is deeper than the requested depth")),
            };
        }
        let conj: Vec<&Formula> = match self {
            Formula::And(fs) if !fs.is_empty() => fs.iter().collect(),
            Formula::And(_) => return Err(Error::malformed("empty conjunction")),
            f => vec![f],
        };
        let mut ors = Vec::with_capacity(conj.len());
        for c in conj {
            let disj: Vec<&Formula> = match c {
                Formula::Or(gs) if !gs.is_empty() => gs.iter().collect(),
                Formula::Or(_) => return Err(Error::malformed("empty disjunction")),
                g => vec![g],
            };
            ors.push(Formula::Or(
                disj.into_iter().map(|g| g.pad(h - 1)).collect::<Result<_>>()?,
            ));
        }
        Ok(Formula::And(ors))
    }
}

/// A conjunction of disjunctions of `(depth-1)`-normalized formulas; depth 1
/// is a single variable, so depth 2 is CNF over positive literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedFormula {
    pub depth: usize,
    pub variables: usize,
    pub root: Formula,
}

impl NormalizedFormula {
    pub fn new(depth: usize, variables: usize, root: Formula) -> Result<Self> {
        if depth < 2 {
            return Err(Error::malformed("depth below 2"));
        }
        if !root.is_normalized(depth) {
            return Err(Error::malformed(format!("formula is not {depth}-normalized")));
        }
        if root.variables() > variables {
            return Err(Error::malformed("formula mentions an undeclared variable"));
        }
        Ok(NormalizedFormula { depth, variables, root })
    }

    /// Pads `f` into a `depth`-normalized formula.
    pub fn padded(depth: usize, variables: usize, f: &Formula) -> Result<Self> {
        if depth < 2 {
            return Err(Error::malformed("depth below 2"));
        }
        NormalizedFormula::new(depth, variables, f.pad(depth)?)
    }

    /// Whether some assignment of weight at most `k` satisfies the formula.
    pub fn weighted_satisfiable(&self, k: usize) -> bool {
        let n = self.variables;
        (0u64..1 << n).any(|mask| {
            mask.count_ones() as usize <= k && self.root.eval(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        })
    }
}

fn build(f: &Formula, h: usize, n: usize, k: usize) -> Result<MultiTapeInstance> {
    let Formula::And(ors) = f else {
        return Err(Error::malformed("expected a conjunction"));
    };
    if h == 2 {
        let columns: Vec<Vec<usize>> = ors
            .iter()
            .map(|o| match o {
                Formula::Or(gs) => gs
                    .iter()
                    .map(|g| match g {
                        Formula::Var(v) => Ok(*v),
                        _ => Err(Error::malformed("expected a variable")),
                    })
                    .collect(),
                _ => Err(Error::malformed("expected a disjunction")),
            })
            .collect::<Result<_>>()?;
        return w2_template(n, &columns, k, None);
    }
    let mut conj = Vec::with_capacity(ors.len());
    for o in ors {
        let Formula::Or(gs) = o else {
            return Err(Error::malformed("expected a disjunction"));
        };
        let mut parts = Vec::with_capacity(gs.len());
        for g in gs {
            let inner = build(g, h - 1, n, k)?;
            parts.push(if h - 1 == 2 {
                desynchronize_path_multi(&inner)?.instance
            } else {
                inner
            });
        }
        conj.push(or_compose(&parts)?.instance);
    }
    Ok(and_compose(&conj)?.instance)
}

/// Multi-tape instance positive iff the formula has a satisfying assignment
/// of weight at most `k`.
pub fn formula_to_multi(phi: &NormalizedFormula, k: usize) -> Result<Artifact<MultiTapeInstance>> {
    let n = phi.variables.max(1);
    let instance = if k == 0 {
        // positive formulas are false under the all-false assignment
        w2_template(n, &[vec![]], 0, None)?
    } else {
        build(&phi.root, phi.depth, n, k)?
    };
    Ok(Artifact {
        instance,
        provenance: Provenance::Formula {
            depth: phi.depth,
            k,
            variables: n,
        },
        fresh_letters: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::solve_multi;

    fn v(i: usize) -> Formula {
        Formula::Var(i)
    }

    #[test]
    fn cnf_weight_one() {
        let f = Formula::And(vec![Formula::Or(vec![v(0), v(1)]), Formula::Or(vec![v(1), v(2)])]);
        let phi = NormalizedFormula::new(2, 3, f).unwrap();
        assert!(
            solve_multi(&formula_to_multi(&phi, 1).unwrap().instance)
                .unwrap()
                .positive
        );
        assert!(
            !solve_multi(&formula_to_multi(&phi, 0).unwrap().instance)
                .unwrap()
                .positive
        );
    }

    #[test]
    fn padding_shapes() {
        let f = Formula::And(vec![Formula::Or(vec![Formula::And(vec![v(0), v(1)])]), v(2)]);
        let phi = NormalizedFormula::padded(3, 3, &f).unwrap();
        assert_eq!(phi.depth, 3);
        assert!(phi.weighted_satisfiable(3));
        assert!(!phi.weighted_satisfiable(2));
        assert!(NormalizedFormula::new(2, 3, f).is_err());
    }

    #[test]
    fn depth_three_conjunction_needs_both() {
        // (x0 ∧ x1) as depth 3; weight 1 fails, weight 2 succeeds
        let f = Formula::Or(vec![Formula::And(vec![v(0), v(1)])]);
        let phi = NormalizedFormula::padded(3, 2, &f).unwrap();
        for k in 1..=2 {
            let out = formula_to_multi(&phi, k).unwrap();
            assert_eq!(
                solve_multi(&out.instance).unwrap().positive,
                phi.weighted_satisfiable(k),
                "k={k}"
            );
        }
    }

    #[test]
    fn or_of_two_picks_positive_one() {
        let pos = NormalizedFormula::new(2, 2, Formula::And(vec![Formula::Or(vec![v(0)])])).unwrap();
        let neg = NormalizedFormula::new(
            2,
            2,
            Formula::And(vec![Formula::Or(vec![v(0)]), Formula::Or(vec![v(1)])]),
        )
        .unwrap();
        let a = desynchronize_path_multi(&formula_to_multi(&pos, 1).unwrap().instance)
            .unwrap()
            .instance;
        let b = desynchronize_path_multi(&formula_to_multi(&neg, 1).unwrap().instance)
            .unwrap()
            .instance;
        assert!(
            solve_multi(&or_compose(&[b.clone(), a.clone()]).unwrap().instance)
                .unwrap()
                .positive
        );
        assert!(
            !solve_multi(&or_compose(&[b.clone(), b.clone()]).unwrap().instance)
                .unwrap()
                .positive
        );
        assert!(
            !solve_multi(&and_compose(&[a.clone(), b]).unwrap().instance)
                .unwrap()
                .positive
        );
        assert!(
            solve_multi(&and_compose(&[a.clone(), a]).unwrap().instance)
                .unwrap()
                .positive
        );
    }
}
