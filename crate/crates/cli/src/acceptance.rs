//! The acceptance suite: ten oracle-equivalence experiments, each a pure
//! function of its seed.

use std::thread;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reconf_core::engine::{
    connected_dominating_set_avoiding, minimum_dominating_sets, solve_with, verify_witness, MoveRule, SolveOptions,
    DEFAULT_STATE_CAP,
};
use reconf_core::generate::{
    gen_random_graph, gen_random_multi, gen_random_tape_instance, GraphConstraints, MultiParams, TapeParams,
};
use reconf_core::graph::{degeneracy, min_feedback_vertex_set, verify_decomposition};
use reconf_core::kernel::{kernelize, solve_via_kernel_with, DcrInstance, Family};
use reconf_core::reductions::{
    base_decomposition, check_min_ds_structure, derive_decomposition, derive_dsr_decomposition, desynchronize_path,
    desynchronize_path_multi, desynchronize_triangle, ds_to_sync_multi, formula_to_multi, select_from_tuples,
    tape_to_tj_cdsr, tape_to_ts_dsr, Artifact, Formula, NormalizedFormula, Provenance, VertexRole,
};
use reconf_core::tape::{extended_graph, is_irreducible, solve_multi_with, solve_tape_with, Tape};
use reconf_core::tape_reduce::solve_bounded_alphabet_with;
use reconf_core::{DsrInstance, Graph, Result, TapeInstance, VertexSet};

use crate::oracle;

/// Base seed of each criterion, indexed by criterion number.
pub const SEEDS: [u64; 11] = [
    0,
    0x5eed_0001,
    0x5eed_0002,
    0x5eed_0003,
    0x5eed_0004,
    0x5eed_0005,
    0x5eed_0006,
    0x5eed_0007,
    0x5eed_0008,
    0x5eed_0009,
    0x5eed_000a,
];

/// Required number of instances per criterion; 0 for fixed examples.
pub const MINIMUM: [usize; 11] = [0, 200, 0, 100, 100, 100, 100, 50, 200, 100, 500];

/// Instances actually run by default.
pub const DEFAULT_TRIALS: [usize; 11] = [0, 240, 1, 120, 120, 100, 100, 60, 240, 200, 600];

pub const NAMES: [&str; 11] = [
    "",
    "dominating set to synchronized multi-tape",
    "cycle C5 template pattern",
    "triangle desynchronization",
    "path desynchronization and selector",
    "tape to TS-DSR",
    "tape to TJ-CDSR",
    "monotone formula pipeline",
    "bounded-alphabet tape reduction",
    "kernelization",
    "engine self-consistency",
];

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    /// Replaces every base seed by `seed + criterion`.
    pub seed: Option<u64>,
    /// Replaces the default instance count of randomized criteria.
    pub trials: Option<usize>,
    pub state_cap: usize,
    pub parallel: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: None,
            trials: None,
            state_cap: DEFAULT_STATE_CAP,
            parallel: true,
        }
    }
}

impl Settings {
    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.map_or(SEEDS[id], |s| s.wrapping_add(id as u64)))
    }

    fn count(&self, id: usize) -> usize {
        self.trials.unwrap_or(DEFAULT_TRIALS[id])
    }

    fn opts(&self) -> SolveOptions {
        SolveOptions {
            state_cap: self.state_cap,
            ..SolveOptions::default()
        }
    }

    fn dsr(&self, inst: &DsrInstance) -> Result<bool> {
        Ok(solve_with(inst, &self.opts())?.reachable)
    }

    fn tape(&self, inst: &TapeInstance) -> Result<bool> {
        Ok(solve_tape_with(inst, self.state_cap)?.reachable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub trials: usize,
    pub failures: usize,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<44} {} ({})",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Per-criterion bookkeeping. A trial either agrees, reports a mismatch, or
/// errors; the latter two are failures.
struct Tally {
    id: usize,
    trials: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(id: usize) -> Self {
        Tally {
            id,
            trials: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, trial: impl FnOnce() -> Result<Option<String>>) {
        self.trials += 1;
        match trial() {
            Ok(None) => {}
            Ok(Some(why)) => self.failures.push(why),
            Err(e) => self.failures.push(format!("error: {e}")),
        }
    }

    fn finish(self) -> Outcome {
        let min = MINIMUM[self.id];
        let short = if self.trials < min {
            format!(", below the required {min}")
        } else {
            String::new()
        };
        let detail = match self.failures.first() {
            None => format!("{} of {} agree{short}", self.trials, self.trials),
            Some(first) => format!(
                "{} of {} failed{short}; first: {first}",
                self.failures.len(),
                self.trials
            ),
        };
        Outcome {
            id: self.id,
            name: NAMES[self.id],
            pass: self.failures.is_empty(),
            trials: self.trials,
            failures: self.failures.len(),
            detail,
        }
    }
}

fn mismatch(ok: bool, why: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(why)
}

fn connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Result<Graph> {
    let p = rng.gen_range(0.25..0.75);
    gen_random_graph(rng.gen(), n, p, GraphConstraints::connected())
}

pub fn c1_dominating_set(s: &Settings) -> Outcome {
    let mut rng = s.rng(1);
    let mut t = Tally::new(1);
    for _ in 0..s.count(1) {
        let n = rng.gen_range(1..=7);
        let k = rng.gen_range(1..=3);
        let g = connected_graph(&mut rng, n);
        t.record(|| {
            let g = g?;
            let a = ds_to_sync_multi(&g, k)?;
            let got = solve_multi_with(&a.instance, s.state_cap)?.positive;
            let want = oracle::has_dominating_set(&g, k);
            Ok(mismatch(got == want, || {
                format!("k={k} edges={:?}: reduction {got}, enumeration {want}", g.edges())
            }))
        });
    }
    t.finish()
}

/// `✓` where the cell's vertex lies in the closed neighbourhood of the tape's.
fn expected_pattern(g: &Graph, v: usize) -> String {
    (0..g.n())
        .map(|c| if c == v || g.has_edge(v, c) { '✓' } else { '∅' })
        .collect()
}

fn pattern(t: &Tape) -> String {
    t.content.iter().map(|c| if c.is_empty() { '∅' } else { '✓' }).collect()
}

pub fn c2_cycle_pattern(s: &Settings) -> Outcome {
    let mut t = Tally::new(2);
    t.record(|| {
        let g = Graph::cycle(5);
        let a = ds_to_sync_multi(&g, 2)?;
        let tuples = &a.instance.tuples;
        if tuples.len() != 2 || tuples.iter().any(|tu| tu.len() != 5) {
            return Ok(Some(format!(
                "shape {:?}",
                tuples.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if pattern(&tuples[0][0]) != "✓✓∅∅✓" {
            return Ok(Some(format!("tape of v1 reads {}", pattern(&tuples[0][0]))));
        }
        for (q, tu) in tuples.iter().enumerate() {
            for (v, tape) in tu.iter().enumerate() {
                if pattern(tape) != expected_pattern(&g, v) {
                    return Ok(Some(format!("tuple {q} tape {v} reads {}", pattern(tape))));
                }
            }
        }
        let r = solve_multi_with(&a.instance, s.state_cap)?;
        Ok(mismatch(r.positive && r.selection.as_deref() == Some(&[0, 2]), || {
            format!("positive={} selection={:?}", r.positive, r.selection)
        }))
    });
    t.finish()
}

pub fn c3_triangle(s: &Settings) -> Outcome {
    let mut rng = s.rng(3);
    let mut t = Tally::new(3);
    for _ in 0..s.count(3) {
        let p = TapeParams::new(rng.gen_range(1..=3), 6, rng.gen_range(1..=3), true);
        let seed = rng.gen();
        t.record(|| {
            let inst = gen_random_tape_instance(seed, &p)?;
            let out = desynchronize_triangle(&inst)?;
            let (a, b) = (s.tape(&inst)?, s.tape(&out.instance)?);
            if a != b {
                return Ok(Some(format!("seed {seed}: input {a}, output {b}")));
            }
            if !is_irreducible(&out.instance)? {
                return Ok(Some(format!("seed {seed}: output reducible")));
            }
            let (eg, og) = (extended_graph(&inst).graph, extended_graph(&out.instance).graph);
            let (d_in, d_out) = (degeneracy(&eg).0, degeneracy(&og).0);
            if d_out > d_in + 2 {
                return Ok(Some(format!("seed {seed}: degeneracy {d_in} -> {d_out}")));
            }
            let w = verify_decomposition(&eg, &base_decomposition(&inst), Some(1)).width;
            let rep = verify_decomposition(&og, &derive_decomposition(&out)?, Some(2));
            Ok(mismatch(rep.valid && rep.structured && rep.width <= w + 6, || {
                format!(
                    "seed {seed}: decomposition width {} from {w}, {:?}",
                    rep.width, rep.violations
                )
            }))
        });
    }
    t.finish()
}

fn all_paths(tapes: &[Tape]) -> bool {
    tapes.iter().all(|t| t.path_order().is_some())
}

pub fn c4_path_and_selector(s: &Settings) -> Outcome {
    let mut rng = s.rng(4);
    let mut t = Tally::new(4);
    for i in 0..s.count(4) {
        let seed: u64 = rng.gen();
        match i % 3 {
            0 => {
                let p = TapeParams::new(rng.gen_range(1..=3), 6, rng.gen_range(1..=3), true).paths();
                t.record(|| {
                    let inst = gen_random_tape_instance(seed, &p)?;
                    let out = desynchronize_path(&inst)?;
                    let (a, b) = (s.tape(&inst)?, s.tape(&out.instance)?);
                    Ok(mismatch(a == b && all_paths(&out.instance.tapes), || {
                        format!("path desync seed {seed}: input {a}, output {b}")
                    }))
                });
            }
            1 => {
                let p = MultiParams {
                    tuples: rng.gen_range(1..=2),
                    members: 2,
                    cells: rng.gen_range(1..=4),
                    sigma: rng.gen_range(1..=3),
                    letter_prob: 0.5,
                };
                t.record(|| {
                    let inst = gen_random_multi(seed, &p)?;
                    let out = select_from_tuples(&inst)?;
                    let a = solve_multi_with(&inst, s.state_cap)?.positive;
                    let b = s.tape(&out.instance)?;
                    Ok(mismatch(a == b && all_paths(&out.instance.tapes), || {
                        format!("selector seed {seed}: input {a}, output {b}")
                    }))
                });
            }
            _ => {
                let n = rng.gen_range(1..=4);
                let k = rng.gen_range(1..=2);
                let g = connected_graph(&mut rng, n);
                t.record(|| {
                    let g = g?;
                    let inst = ds_to_sync_multi(&g, k)?.instance;
                    let out = desynchronize_path_multi(&inst)?;
                    let a = solve_multi_with(&inst, s.state_cap)?.positive;
                    let b = solve_multi_with(&out.instance, s.state_cap)?.positive;
                    let paths = out.instance.tuples.iter().all(|tu| all_paths(tu));
                    Ok(mismatch(a == b && paths, || {
                        format!("multi path desync k={k} edges={:?}: input {a}, output {b}", g.edges())
                    }))
                });
            }
        }
    }
    t.finish()
}

/// Irreducible unsynchronized instances: every other one rejection-sampled,
/// the rest triangle desynchronizations of small synchronized instances.
fn irreducible_suite(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Artifact<TapeInstance>>> {
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 200 * count.max(1) {
            return Err(reconf_core::Error::RetryBudget(format!(
                "only {} irreducible instances",
                out.len()
            )));
        }
        if out.len() % 2 == 1 {
            let p = TapeParams::new(rng.gen_range(1..=2), 3, rng.gen_range(1..=2), true);
            let inst = gen_random_tape_instance(rng.gen(), &p)?;
            out.push(desynchronize_triangle(&inst)?);
            continue;
        }
        let tapes = rng.gen_range(1..=3);
        let p = TapeParams::new(tapes, 4, tapes + rng.gen_range(0..=1), false);
        let inst = gen_random_tape_instance(rng.gen(), &p)?;
        if is_irreducible(&inst)? {
            out.push(Artifact::input(inst));
        }
    }
    Ok(out)
}

fn describe(inst: &TapeInstance) -> String {
    format!(
        "{} tapes, cells {:?}, sigma {}",
        inst.tapes.len(),
        inst.tapes.iter().map(Tape::len).collect::<Vec<_>>(),
        inst.sigma
    )
}

pub fn c5_ts_dsr(s: &Settings) -> Outcome {
    let mut rng = s.rng(5);
    let mut t = Tally::new(5);
    let suite = match irreducible_suite(&mut rng, s.count(5)) {
        Ok(suite) => suite,
        Err(e) => {
            t.record(|| Err(e));
            return t.finish();
        }
    };
    for art in &suite {
        let inst = &art.instance;
        t.record(|| {
            let out = tape_to_ts_dsr(inst)?.after(&art.provenance);
            let g = &out.instance.graph;
            let (a, b) = (s.tape(inst)?, s.dsr(&out.instance)?);
            if a != b {
                return Ok(Some(format!("{}: tape {a}, dsr {b}", describe(inst))));
            }
            if !check_min_ds_structure(&out.instance)? {
                return Ok(Some(format!("{}: minimum dominating sets misplaced", describe(inst))));
            }
            let eg = extended_graph(inst).graph;
            let k = inst.tapes.len();
            let (d, d_out) = (degeneracy(&eg).0, degeneracy(g).0);
            let (f, f_out) = (min_feedback_vertex_set(&eg)?.len(), min_feedback_vertex_set(g)?.len());
            if d_out > d + 2 || f_out > f + k + 1 {
                return Ok(Some(format!(
                    "{}: degeneracy {d} -> {d_out}, fvs {f} -> {f_out}",
                    describe(inst)
                )));
            }
            // the input decomposition is 1-structured, or 2-structured after the triangle
            let structure = if art.provenance == Provenance::Input { 1 } else { 2 };
            let base = verify_decomposition(&eg, &derive_decomposition(art)?, Some(structure));
            if !(base.valid && base.structured) {
                return Ok(Some(format!(
                    "{}: input decomposition {:?}",
                    describe(inst),
                    base.violations
                )));
            }
            let w = base.width;
            let rep = verify_decomposition(g, &derive_dsr_decomposition(&out)?, Some(structure));
            Ok(mismatch(
                rep.valid && rep.structured && rep.width <= structure + w + 1,
                || format!("{}: width {} from {w}, {:?}", describe(inst), rep.width, rep.violations),
            ))
        });
    }
    t.finish()
}

pub fn c6_tj_cdsr(s: &Settings) -> Outcome {
    // the same suite as the TS-DSR criterion
    let mut rng = s.rng(5);
    let mut t = Tally::new(6);
    let suite = match irreducible_suite(&mut rng, s.count(5)) {
        Ok(suite) => suite,
        Err(e) => {
            t.record(|| Err(e));
            return t.finish();
        }
    };
    for art in &suite {
        let inst = &art.instance;
        t.record(|| {
            let out = tape_to_tj_cdsr(inst)?;
            let g = &out.instance.graph;
            let (a, b) = (s.tape(inst)?, s.dsr(&out.instance)?);
            if a != b {
                return Ok(Some(format!("{}: tape {a}, cdsr {b}", describe(inst))));
            }
            for v in 0..g.n() {
                if let VertexRole::X(i) = VertexRole::of(g, v) {
                    if let Some(d) = connected_dominating_set_avoiding(g, out.instance.k, &VertexSet::from([v]))? {
                        return Ok(Some(format!("{}: {d:?} avoids x_{i}", describe(inst))));
                    }
                }
            }
            Ok(None)
        });
    }
    t.finish()
}

fn random_cnf(rng: &mut ChaCha8Rng, n: usize) -> Formula {
    let clauses = rng.gen_range(1..=3);
    Formula::And(
        (0..clauses)
            .map(|_| {
                let width = rng.gen_range(1..=3.min(n));
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(rng);
                Formula::Or(vars[..width].iter().map(|&v| Formula::Var(v)).collect())
            })
            .collect(),
    )
}

/// The fixed corpus: seeded CNFs and depth-3 formulas, plus a few written out
/// by hand in unnormalized shape.
pub fn formula_corpus(seed: u64, count: usize) -> Vec<NormalizedFormula> {
    let v = Formula::Var;
    let hand = [
        (2, 1, v(0)),
        (3, 3, Formula::Or(vec![v(0), Formula::And(vec![v(1), v(2)])])),
        (
            3,
            4,
            Formula::And(vec![Formula::Or(vec![v(0), v(1)]), Formula::Or(vec![v(2), v(3)])]),
        ),
        (2, 6, Formula::And(vec![v(0), v(5)])),
    ];
    let mut out: Vec<NormalizedFormula> = hand
        .iter()
        .map(|(h, n, f)| NormalizedFormula::padded(*h, *n, f).expect("hand formulas fit their depth"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let n = rng.gen_range(1..=6);
        let f = if rng.gen_bool(0.5) {
            random_cnf(&mut rng, n)
        } else {
            let ors = rng.gen_range(1..=2);
            Formula::And(
                (0..ors)
                    .map(|_| Formula::Or((0..rng.gen_range(1..=2)).map(|_| random_cnf(&mut rng, n)).collect()))
                    .collect(),
            )
        };
        let depth = if matches!(&f, Formula::And(ors) if matches!(&ors[0], Formula::Or(gs) if matches!(gs[0], Formula::Var(_))))
        {
            2
        } else {
            3
        };
        out.push(NormalizedFormula::new(depth, n, f).expect("generated formulas are normalized"));
    }
    out
}

pub fn c7_formulas(s: &Settings) -> Outcome {
    let mut t = Tally::new(7);
    let seed = s.seed.map_or(SEEDS[7], |x| x.wrapping_add(7));
    for phi in formula_corpus(seed, s.count(7)) {
        t.record(|| {
            for k in 1..=3 {
                let a = formula_to_multi(&phi, k)?;
                let got = solve_multi_with(&a.instance, s.state_cap)?.positive;
                let want = oracle::weighted_satisfiable(&phi.root, phi.variables, k);
                if got != want {
                    return Ok(Some(format!(
                        "k={k} {:?}: pipeline {got}, truth table {want}",
                        phi.root
                    )));
                }
            }
            Ok(None)
        });
    }
    t.finish()
}

pub fn c8_bounded_alphabet(s: &Settings) -> Outcome {
    let mut rng = s.rng(8);
    let mut t = Tally::new(8);
    for _ in 0..s.count(8) {
        let sigma = rng.gen_range(1..=3);
        let tapes = rng.gen_range(1..=3 * sigma + 2);
        let cells = if tapes <= 5 { 3 } else { 2 };
        let p = TapeParams::new(tapes, cells, sigma, false);
        let seed = rng.gen();
        t.record(|| {
            let inst = gen_random_tape_instance(seed, &p)?;
            let bounded = solve_bounded_alphabet_with(&inst, s.state_cap)?;
            let want = s.tape(&inst)?;
            let left = bounded.reduced.tapes.len();
            Ok(mismatch(bounded.result.reachable == want && left <= 2 * sigma, || {
                format!(
                    "seed {seed}, {}: reduced {} with {left} tapes, direct {want}",
                    describe(&inst),
                    bounded.result.reachable
                )
            }))
        });
    }
    t.finish()
}

pub fn c9_kernel(s: &Settings) -> Outcome {
    let mut rng = s.rng(9);
    let mut t = Tally::new(9);
    let free = GraphConstraints {
        connected: true,
        k3d_free: Some(2),
    };
    let mut made = 0;
    while made < s.count(9) {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.45);
        let k = rng.gen_range(1..=2);
        let g = match gen_random_graph(rng.gen(), n, p, free) {
            Ok(g) => g,
            Err(e) => {
                t.record(|| Err(e));
                break;
            }
        };
        let sets = match minimum_dominating_sets(&g, k) {
            Ok(sets) if sets.is_empty() => continue,
            Ok(sets) => sets,
            Err(e) => {
                t.record(|| Err(e));
                break;
            }
        };
        made += 1;
        let src = sets[rng.gen_range(0..sets.len())].clone();
        let tgt = sets[rng.gen_range(0..sets.len())].clone();
        let inst = DcrInstance::new(g, k, src, tgt, 2, Family::K3dFree);
        t.record(|| {
            let direct = s.dsr(&inst.to_dsr())?;
            let ker = kernelize(&inst)?;
            if !ker.report.holds(inst.d) {
                return Ok(Some(format!("certificate fails: {:?}", ker.report)));
            }
            if kernelize(&ker.kernel)?.kernel != ker.kernel {
                return Ok(Some(format!("not idempotent on {:?}", inst.graph.edges())));
            }
            let via = solve_via_kernel_with(&inst, &s.opts())?.reachable;
            Ok(mismatch(via == direct, || {
                format!(
                    "k={k} edges={:?} {:?} -> {:?}: kernel {via}, direct {direct}",
                    inst.graph.edges(),
                    inst.source,
                    inst.target
                )
            }))
        });
    }
    t.finish()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexSet {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v[..k].iter().copied().collect()
}

/// A random instance whose endpoints are both feasible, if the draw allows one.
fn random_dsr(rng: &mut ChaCha8Rng) -> Result<Option<DsrInstance>> {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=3.min(n));
    let g = gen_random_graph(rng.gen(), n, rng.gen_range(0.2..0.8), GraphConstraints::default())?;
    let rule = if rng.gen_bool(0.5) {
        MoveRule::Slide
    } else {
        MoveRule::Jump
    };
    let mut inst = DsrInstance::new(g, k, VertexSet::new(), VertexSet::new(), rule);
    inst.connected = rng.gen_bool(0.25);
    if rng.gen_bool(0.3) {
        let size = rng.gen_range(0..=n);
        inst.core = Some(random_subset(rng, n, size));
    }
    let mut feasible = Vec::new();
    for _ in 0..20 {
        let d = random_subset(rng, n, k);
        if inst.is_feasible(&d) {
            feasible.push(d);
        }
    }
    let (Some(s), Some(t)) = (feasible.choose(rng), feasible.choose(rng)) else {
        return Ok(None);
    };
    inst.source = s.clone();
    inst.target = t.clone();
    Ok(Some(inst))
}

pub fn c10_engine(s: &Settings) -> Outcome {
    let mut rng = s.rng(10);
    let mut t = Tally::new(10);
    t.record(|| {
        let hexagon = DsrInstance::new(
            Graph::cycle(6),
            2,
            VertexSet::from([0, 3]),
            VertexSet::from([1, 4]),
            MoveRule::Slide,
        );
        let r = solve_with(&hexagon, &s.opts())?;
        Ok(mismatch(!r.reachable && !oracle::dsr_reachable(&hexagon), || {
            "C6 {0,3} -> {1,4} reported reachable".to_string()
        }))
    });
    let mut made = 0;
    let mut draws = 0;
    while made < s.count(10) && draws < 100 * s.count(10).max(1) {
        draws += 1;
        let inst = match random_dsr(&mut rng) {
            Ok(Some(inst)) => inst,
            Ok(None) => continue,
            Err(e) => {
                t.record(|| Err(e));
                break;
            }
        };
        made += 1;
        t.record(|| {
            let r = solve_with(&inst, &s.opts())?;
            let want = oracle::dsr_reachable(&inst);
            if r.reachable != want {
                return Ok(Some(format!("{inst:?}: bfs {}, dfs {want}", r.reachable)));
            }
            if let Some(w) = &r.witness {
                if !verify_witness(&inst, w) {
                    return Ok(Some(format!("{inst:?}: witness {w:?} rejected")));
                }
            }
            let shortest = oracle::dsr_distance(&inst);
            Ok(mismatch(r.witness_length() == shortest, || {
                format!(
                    "{inst:?}: witness length {:?}, shortest {shortest:?}",
                    r.witness_length()
                )
            }))
        });
    }
    t.finish()
}

pub type Criterion = fn(&Settings) -> Outcome;

pub const CRITERIA: [Criterion; 10] = [
    c1_dominating_set,
    c2_cycle_pattern,
    c3_triangle,
    c4_path_and_selector,
    c5_ts_dsr,
    c6_tj_cdsr,
    c7_formulas,
    c8_bounded_alphabet,
    c9_kernel,
    c10_engine,
];

/// Runs every criterion, in order of id.
pub fn run_all(s: &Settings) -> Vec<Outcome> {
    if !s.parallel {
        return CRITERIA.iter().map(|c| c(s)).collect();
    }
    thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA.iter().map(|c| scope.spawn(move || c(s))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion panicked"))
            .collect()
    })
}
