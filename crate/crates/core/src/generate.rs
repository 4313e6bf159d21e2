//! Seeded random instances with rejection sampling. Every generator is a pure
//! function of its seed and parameters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{contains_biclique, Graph};
use crate::tape::{validate_instance, MultiTapeInstance, Tape, TapeInstance};

pub const GRAPH_RETRIES: usize = 10_000;
pub const TAPE_RETRIES: usize = 2_000;
const CONFIG_RETRIES: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphConstraints {
    pub connected: bool,
    /// Reject graphs containing `K_{3,d}` as a subgraph.
    pub k3d_free: Option<usize>,
}

impl GraphConstraints {
    pub fn connected() -> Self {
        GraphConstraints {
            connected: true,
            k3d_free: None,
        }
    }

    fn accepts(&self, g: &Graph) -> Result<bool> {
        if self.connected && !g.is_connected() {
            return Ok(false);
        }
        match self.k3d_free {
            Some(d) => Ok(!contains_biclique(g, 3, d)?),
            None => Ok(true),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` conditioned on `constraints`.
pub fn gen_random_graph(seed: u64, n: usize, edge_prob: f64, constraints: GraphConstraints) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::malformed(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut rng = rng(seed);
    for _ in 0..GRAPH_RETRIES {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(edge_prob) {
                    g.add_edge(u, v);
                }
            }
        }
        if constraints.accepts(&g)? {
            return Ok(g);
        }
    }
    Err(Error::RetryBudget(format!(
        "no graph with n={n}, p={edge_prob} met {constraints:?} in {GRAPH_RETRIES} tries"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TapeParams {
    pub tapes: usize,
    /// Each tape gets between 1 and this many cells.
    pub cells: usize,
    pub sigma: usize,
    pub sync: bool,
    /// Path tapes from cell 0 to the last cell.
    pub paths: bool,
    pub letter_prob: f64,
    /// Chance of each extra non-tree cell edge.
    pub extra_edge_prob: f64,
}

impl TapeParams {
    pub fn new(tapes: usize, cells: usize, sigma: usize, sync: bool) -> Self {
        TapeParams {
            tapes,
            cells,
            sigma,
            sync,
            paths: false,
            letter_prob: 0.4,
            extra_edge_prob: 0.2,
        }
    }

    pub fn paths(mut self) -> Self {
        self.paths = true;
        self
    }
}

fn random_tape(rng: &mut ChaCha8Rng, p: &TapeParams) -> Tape {
    let n = rng.gen_range(1..=p.cells.max(1));
    let mut cells = Graph::new(n);
    let mut number = vec![1u32; n];
    for c in 1..n {
        let parent = if p.paths { c - 1 } else { rng.gen_range(0..c) };
        cells.add_edge(parent, c);
        number[c] = number[parent] + rng.gen_range(0..=1);
    }
    if !p.paths {
        for u in 0..n {
            for v in u + 1..n {
                if number[u].abs_diff(number[v]) <= 1 && rng.gen_bool(p.extra_edge_prob) {
                    cells.add_edge(u, v);
                }
            }
        }
    }
    let content = (0..n)
        .map(|_| (0..p.sigma).filter(|_| rng.gen_bool(p.letter_prob)).collect::<BitSet>())
        .collect();
    let end = if p.paths { n - 1 } else { rng.gen_range(0..n) };
    let tape = Tape::new(cells, content, 0, end);
    if p.sync {
        tape.numbered(number)
    } else {
        tape
    }
}

/// A random configuration; synchronized instances get a common number.
fn random_config(rng: &mut ChaCha8Rng, tapes: &[Tape], sync: bool) -> Option<Vec<usize>> {
    if !sync {
        return Some(tapes.iter().map(|t| rng.gen_range(0..t.len())).collect());
    }
    let nb0 = tapes.first()?.number.as_ref()?;
    let x = *nb0.choose(rng)?;
    tapes
        .iter()
        .map(|t| {
            let at: Vec<usize> = (0..t.len()).filter(|&c| t.number_of(c) == Some(x)).collect();
            at.choose(rng).copied()
        })
        .collect()
}

/// Random connected cell graphs and contents; heads resampled until both
/// configurations are valid. Synchronized tapes are numbered from 1 at cell 0
/// with steps of 0 or 1 along a spanning tree, and the modulus either avoids
/// wrap-around or is a multiple of 3.
pub fn gen_random_tape_instance(seed: u64, p: &TapeParams) -> Result<TapeInstance> {
    if p.tapes == 0 || p.cells == 0 {
        return Err(Error::malformed("need at least one tape and one cell"));
    }
    if !(0.0..=1.0).contains(&p.letter_prob) || !(0.0..=1.0).contains(&p.extra_edge_prob) {
        return Err(Error::malformed("probabilities must lie in [0, 1]"));
    }
    let mut rng = rng(seed);
    for _ in 0..TAPE_RETRIES {
        let tapes: Vec<Tape> = (0..p.tapes).map(|_| random_tape(&mut rng, p)).collect();
        let mut inst = TapeInstance::new(p.sigma, tapes, vec![0; p.tapes], vec![0; p.tapes]);
        if p.sync {
            let top = inst
                .tapes
                .iter()
                .flat_map(|t| t.number.iter().flatten().copied())
                .max()
                .unwrap_or(1);
            let r = if rng.gen_bool(0.5) {
                (top + 1).max(4)
            } else {
                top.max(4).div_ceil(3) * 3
            };
            inst = inst.synchronized(Some(r));
        }
        for _ in 0..CONFIG_RETRIES {
            let (Some(cs), Some(ct)) = (
                random_config(&mut rng, &inst.tapes, p.sync),
                random_config(&mut rng, &inst.tapes, p.sync),
            ) else {
                break;
            };
            inst.cs = cs;
            inst.ct = ct;
            if validate_instance(&inst).is_empty() {
                return Ok(inst);
            }
        }
    }
    Err(Error::RetryBudget(format!(
        "no valid tape instance for {p:?} in {TAPE_RETRIES} tries"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiParams {
    pub tuples: usize,
    /// Each tuple gets between 1 and this many path tapes.
    pub members: usize,
    pub cells: usize,
    pub sigma: usize,
    pub letter_prob: f64,
}

/// Unsynchronized tuples of path tapes. No validity is enforced: a selection
/// with invalid endpoints is just negative.
pub fn gen_random_multi(seed: u64, p: &MultiParams) -> Result<MultiTapeInstance> {
    if p.tuples == 0 || p.members == 0 || p.cells == 0 {
        return Err(Error::malformed("need at least one tuple, member and cell"));
    }
    let mut rng = rng(seed);
    let tp = TapeParams {
        letter_prob: p.letter_prob,
        ..TapeParams::new(1, p.cells, p.sigma, false).paths()
    };
    let tuples = (0..p.tuples)
        .map(|_| {
            let m = rng.gen_range(1..=p.members);
            (0..m).map(|_| random_tape(&mut rng, &tp)).collect()
        })
        .collect();
    Ok(MultiTapeInstance {
        sigma: p.sigma,
        tuples,
        sync: false,
        r: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::{validate_with_shape, Shape};

    #[test]
    fn graphs_are_reproducible() {
        let c = GraphConstraints::connected();
        assert_eq!(
            gen_random_graph(7, 6, 0.4, c).unwrap(),
            gen_random_graph(7, 6, 0.4, c).unwrap()
        );
        assert_eq!(gen_random_graph(1, 1, 0.5, c).unwrap().n(), 1);
        let free = GraphConstraints {
            connected: true,
            k3d_free: Some(2),
        };
        for seed in 0..20 {
            let g = gen_random_graph(seed, 8, 0.4, free).unwrap();
            assert!(g.is_connected());
            assert!(!contains_biclique(&g, 3, 2).unwrap());
        }
        assert!(matches!(gen_random_graph(0, 6, 1.0, free), Err(Error::RetryBudget(_))));
    }

    #[test]
    fn tape_instances_validate() {
        for seed in 0..30 {
            for sync in [false, true] {
                let p = TapeParams::new(3, 6, 3, sync);
                let inst = gen_random_tape_instance(seed, &p).unwrap();
                assert_eq!(inst, gen_random_tape_instance(seed, &p).unwrap());
                assert!(validate_instance(&inst).is_empty());
                assert_eq!(inst.sync, sync);
                let path = gen_random_tape_instance(seed, &p.paths()).unwrap();
                assert!(validate_with_shape(&path, Shape::Path).is_empty());
            }
        }
    }
}
