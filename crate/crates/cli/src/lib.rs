//! The `reconf` workbench: every subcommand reads JSON, calls one library
//! operation and prints its result as canonical JSON.

pub mod acceptance;
pub mod oracle;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use reconf_core::engine::{solve_with, verify_witness, SolveOptions, DEFAULT_STATE_CAP};
use reconf_core::generate::{
    gen_random_graph, gen_random_multi, gen_random_tape_instance, GraphConstraints, MultiParams, TapeParams,
};
use reconf_core::io::{canonical, decode, encode, peek_kind, Kind, Witness};
use reconf_core::kernel::{kernelize, solve_via_kernel_with, DcrInstance, Family};
use reconf_core::reductions::{
    desynchronize_path, desynchronize_path_multi, desynchronize_triangle, ds_to_sync_multi, formula_to_multi,
    partitioned_dsr_to_sync_stars, select_from_tuples, tape_to_tj_cdsr, tape_to_ts_dsr, Artifact, NormalizedFormula,
};
use reconf_core::tape::{solve_multi_with, solve_tape_with};
use reconf_core::tape_reduce::reduce_to_bound;
use reconf_core::{DsrInstance, Error, MultiTapeInstance, TapeInstance};

#[derive(Debug, Parser)]
#[command(name = "reconf", about = "Tape and dominating-set reconfiguration workbench")]
pub struct Cli {
    /// Give up after exploring this many configurations.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reachability of a dominating-set instance.
    Solve {
        file: PathBuf,
        /// Include the move sequence.
        #[arg(long)]
        witness: bool,
    },
    /// Reachability of a tape or multi-tape instance.
    SolveTape {
        file: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Applies one construction and prints the resulting artifact.
    Reduce {
        #[arg(long)]
        from: Source,
        #[arg(long)]
        to: Target,
        file: PathBuf,
        /// Token or selection count, for constructions that take one.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Deletes tapes until at most twice the alphabet size remain.
    ReduceTapes { file: PathBuf },
    /// Kernel and size certificate of a core-domination instance.
    Kernelize {
        file: PathBuf,
        /// Biclique width when the input is a dsr-instance.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::K3dFree)]
        family: FamilyArg,
    },
    /// Solves both sides of a construction and compares.
    VerifyReduction {
        #[arg(long)]
        lemma: Lemma,
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Checks a move sequence against a dominating-set instance.
    VerifyWitness { instance: PathBuf, witness: PathBuf },
    /// Seeded random instances.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
    /// Runs the acceptance criteria and prints the table.
    Acceptance {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Run the criteria one after another.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Graph {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        connected: bool,
        /// Reject graphs containing K_{3,d}.
        #[arg(long)]
        k3d_free: Option<usize>,
    },
    Tape {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tapes: usize,
        #[arg(long)]
        cells: usize,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        sync: bool,
        #[arg(long)]
        paths: bool,
    },
    Multi {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tuples: usize,
        #[arg(long)]
        members: usize,
        #[arg(long)]
        cells: usize,
        #[arg(long)]
        sigma: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Graph,
    PartitionedDsr,
    SyncTape,
    SyncPathTape,
    SyncMultiTape,
    MultiTape,
    Tape,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    SyncMultiTape,
    SyncTape,
    Tape,
    PathTape,
    MultiTape,
    TsDsr,
    TjCdsr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    W2,
    Stars,
    Triangle,
    Path,
    PathMulti,
    Selector,
    Formula,
    TsDsr,
    TjCdsr,
    Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    K3dFree,
    K4dMinorFree,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::K3dFree => Family::K3dFree,
            FamilyArg::K4dMinorFree => Family::K4dMinorFree,
        }
    }
}

/// What a command produced: JSON for standard output and an exit status.
#[derive(Debug, PartialEq)]
pub struct Reply {
    pub stdout: String,
    pub code: i32,
}

impl Reply {
    fn ok(stdout: String) -> Self {
        Reply { stdout, code: 0 }
    }

    fn verdict(stdout: String, positive: bool) -> Self {
        Reply {
            stdout,
            code: if positive { 0 } else { 1 },
        }
    }
}

/// Exit status for a library error: 3 for exhausted caps and budgets, 2 for
/// everything the input is to blame for.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::StateCap { .. } | Error::SizeCap { .. } | Error::RetryBudget(_) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> reconf_core::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn load<T: Kind>(path: &Path) -> reconf_core::Result<T> {
    decode(&read(path)?)
}

/// An instance, or the instance inside an artifact together with how it was
/// made, so constructions chain.
fn load_chained<T: Kind + Clone>(path: &Path) -> reconf_core::Result<Artifact<T>>
where
    Artifact<T>: Kind,
{
    let text = read(path)?;
    match peek_kind(&text)? {
        Some(kind) if kind == <Artifact<T>>::KIND => decode(&text),
        _ => Ok(Artifact::input(decode(&text)?)),
    }
}

fn need_k(k: Option<usize>) -> reconf_core::Result<usize> {
    k.ok_or_else(|| Error::Malformed("this construction needs --k".into()))
}

fn emit<T: Kind>(a: Artifact<T>, parent: &Artifact<impl Clone>) -> String
where
    Artifact<T>: Kind,
{
    encode(&a.after(&parent.provenance))
}

fn reduce(from: Source, to: Target, file: &Path, k: Option<usize>) -> reconf_core::Result<String> {
    use Source as S;
    use Target as T;
    match (from, to) {
        (S::Graph, T::SyncMultiTape) => Ok(encode(&ds_to_sync_multi(&load(file)?, need_k(k)?)?)),
        (S::PartitionedDsr, T::SyncTape) => {
            let inst: DsrInstance = load(file)?;
            Ok(encode(&partitioned_dsr_to_sync_stars(&inst)?))
        }
        (S::SyncTape, T::Tape) => {
            let p = load_chained::<TapeInstance>(file)?;
            Ok(emit(desynchronize_triangle(&p.instance)?, &p))
        }
        (S::SyncPathTape, T::PathTape) => {
            let p = load_chained::<TapeInstance>(file)?;
            Ok(emit(desynchronize_path(&p.instance)?, &p))
        }
        (S::SyncMultiTape, T::MultiTape) => {
            let p = load_chained::<MultiTapeInstance>(file)?;
            Ok(emit(desynchronize_path_multi(&p.instance)?, &p))
        }
        (S::MultiTape, T::PathTape) => {
            let p = load_chained::<MultiTapeInstance>(file)?;
            Ok(emit(select_from_tuples(&p.instance)?, &p))
        }
        (S::Formula, T::MultiTape) => {
            let phi: NormalizedFormula = load(file)?;
            Ok(encode(&formula_to_multi(&phi, need_k(k)?)?))
        }
        (S::Tape, T::TsDsr) => {
            let p = load_chained::<TapeInstance>(file)?;
            Ok(emit(tape_to_ts_dsr(&p.instance)?, &p))
        }
        (S::Tape, T::TjCdsr) => {
            let p = load_chained::<TapeInstance>(file)?;
            Ok(emit(tape_to_tj_cdsr(&p.instance)?, &p))
        }
        (from, to) => Err(Error::Malformed(format!("no construction from {from:?} to {to:?}"))),
    }
}

struct Solver {
    cap: usize,
}

impl Solver {
    fn dsr(&self, inst: &DsrInstance) -> reconf_core::Result<bool> {
        Ok(solve_with(
            inst,
            &SolveOptions {
                state_cap: self.cap,
                ..SolveOptions::default()
            },
        )?
        .reachable)
    }

    fn tape(&self, inst: &TapeInstance) -> reconf_core::Result<bool> {
        Ok(solve_tape_with(inst, self.cap)?.reachable)
    }

    fn multi(&self, inst: &MultiTapeInstance) -> reconf_core::Result<bool> {
        Ok(solve_multi_with(inst, self.cap)?.positive)
    }
}

/// Answers of both sides of a construction.
fn verify_reduction(lemma: Lemma, file: &Path, k: Option<usize>, cap: usize) -> reconf_core::Result<(bool, bool)> {
    let s = Solver { cap };
    Ok(match lemma {
        Lemma::W2 => {
            let g = load(file)?;
            let k = need_k(k)?;
            let before = reconf_core::engine::domination_number(&g)? <= k;
            (before, s.multi(&ds_to_sync_multi(&g, k)?.instance)?)
        }
        Lemma::Stars => {
            let inst: DsrInstance = load(file)?;
            (s.dsr(&inst)?, s.tape(&partitioned_dsr_to_sync_stars(&inst)?.instance)?)
        }
        Lemma::Triangle => {
            let inst: TapeInstance = load(file)?;
            (s.tape(&inst)?, s.tape(&desynchronize_triangle(&inst)?.instance)?)
        }
        Lemma::Path => {
            let inst: TapeInstance = load(file)?;
            (s.tape(&inst)?, s.tape(&desynchronize_path(&inst)?.instance)?)
        }
        Lemma::PathMulti => {
            let inst: MultiTapeInstance = load(file)?;
            (s.multi(&inst)?, s.multi(&desynchronize_path_multi(&inst)?.instance)?)
        }
        Lemma::Selector => {
            let inst: MultiTapeInstance = load(file)?;
            (s.multi(&inst)?, s.tape(&select_from_tuples(&inst)?.instance)?)
        }
        Lemma::Formula => {
            let phi: NormalizedFormula = load(file)?;
            let k = need_k(k)?;
            (
                phi.weighted_satisfiable(k),
                s.multi(&formula_to_multi(&phi, k)?.instance)?,
            )
        }
        Lemma::TsDsr => {
            let inst: TapeInstance = load(file)?;
            (s.tape(&inst)?, s.dsr(&tape_to_ts_dsr(&inst)?.instance)?)
        }
        Lemma::TjCdsr => {
            let inst: TapeInstance = load(file)?;
            (s.tape(&inst)?, s.dsr(&tape_to_tj_cdsr(&inst)?.instance)?)
        }
        Lemma::Kernel => {
            let inst: DcrInstance = load(file)?;
            let opts = SolveOptions {
                state_cap: cap,
                ..SolveOptions::default()
            };
            (s.dsr(&inst.to_dsr())?, solve_via_kernel_with(&inst, &opts)?.reachable)
        }
    })
}

fn dcr_input(file: &Path, d: usize, family: Family) -> reconf_core::Result<DcrInstance> {
    let text = read(file)?;
    match peek_kind(&text)?.as_deref() {
        Some("dsr-instance") => DcrInstance::from_dsr(&decode(&text)?, d, family),
        _ => decode(&text),
    }
}

fn generate(what: &GenKind) -> reconf_core::Result<String> {
    Ok(match *what {
        GenKind::Graph {
            seed,
            n,
            p,
            connected,
            k3d_free,
        } => encode(&gen_random_graph(seed, n, p, GraphConstraints { connected, k3d_free })?),
        GenKind::Tape {
            seed,
            tapes,
            cells,
            sigma,
            sync,
            paths,
        } => {
            let mut params = TapeParams::new(tapes, cells, sigma, sync);
            params.paths = paths;
            encode(&gen_random_tape_instance(seed, &params)?)
        }
        GenKind::Multi {
            seed,
            tuples,
            members,
            cells,
            sigma,
        } => encode(&gen_random_multi(
            seed,
            &MultiParams {
                tuples,
                members,
                cells,
                sigma,
                letter_prob: 0.4,
            },
        )?),
    })
}

/// Runs one parsed command. Progress lines for the acceptance table go to
/// standard error.
pub fn run(cli: &Cli) -> reconf_core::Result<Reply> {
    let cap = cli.state_cap;
    match &cli.command {
        Command::Solve { file, witness } => {
            let inst: DsrInstance = load(file)?;
            let r = solve_with(
                &inst,
                &SolveOptions {
                    state_cap: cap,
                    ..SolveOptions::default()
                },
            )?;
            let mut out = json!({ "reachable": r.reachable, "witnessLength": r.witness_length() });
            if *witness {
                out["witness"] = serde_json::to_value(&r.witness).expect("sets serialize");
            }
            Ok(Reply::ok(canonical(&out)))
        }
        Command::SolveTape { file, witness } => {
            let text = read(file)?;
            let out = if peek_kind(&text)?.as_deref() == Some(MultiTapeInstance::KIND) {
                let r = solve_multi_with(&decode(&text)?, cap)?;
                let mut out = json!({ "positive": r.positive, "selection": r.selection });
                if *witness {
                    out["witness"] = json!(r.witness);
                }
                out
            } else {
                let r = solve_tape_with(&decode(&text)?, cap)?;
                let mut out = json!({ "reachable": r.reachable, "witnessLength": r.witness_length() });
                if *witness {
                    out["witness"] = json!(r.witness);
                }
                out
            };
            Ok(Reply::ok(canonical(&out)))
        }
        Command::Reduce { from, to, file, k } => Ok(Reply::ok(reduce(*from, *to, file, *k)?)),
        Command::ReduceTapes { file } => {
            let inst: TapeInstance = load(file)?;
            let (reduced, log) = reduce_to_bound(&inst)?;
            let out = json!({
                "instance": serde_json::from_str::<Value>(&encode(&reduced)).expect("own output parses"),
                "log": log,
            });
            Ok(Reply::ok(canonical(&out)))
        }
        Command::Kernelize { file, d, family } => {
            let inst = dcr_input(file, *d, (*family).into())?;
            Ok(Reply::ok(encode(&kernelize(&inst)?)))
        }
        Command::VerifyReduction { lemma, file, k } => {
            let (before, after) = verify_reduction(*lemma, file, *k, cap)?;
            eprintln!("source side {before}, target side {after}");
            let out = json!({ "agree": before == after });
            Ok(Reply::verdict(canonical(&out), before == after))
        }
        Command::VerifyWitness { instance, witness } => {
            let inst: DsrInstance = load(instance)?;
            let w: Witness = load(witness)?;
            let valid = verify_witness(&inst, &w.sequence);
            Ok(Reply::verdict(canonical(&json!({ "valid": valid })), valid))
        }
        Command::Gen { what } => Ok(Reply::ok(generate(what)?)),
        Command::Acceptance {
            seed,
            trials,
            sequential,
        } => {
            let settings = acceptance::Settings {
                seed: *seed,
                trials: *trials,
                state_cap: cap,
                parallel: !sequential,
            };
            let outcomes = acceptance::run_all(&settings);
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let pass = outcomes.iter().all(|o| o.pass);
            let out = json!({ "criteria": outcomes, "pass": pass });
            Ok(Reply::verdict(canonical(&out), pass))
        }
    }
}
