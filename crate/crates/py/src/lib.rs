//! Python bindings. Instances travel as the same JSON envelopes the CLI
//! reads; results come back as Python dictionaries.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::json;

use reconf_core::engine::{self, SolveOptions, DEFAULT_STATE_CAP};
use reconf_core::generate::{gen_random_graph, GraphConstraints};
use reconf_core::io::{canonical, decode, encode, peek_kind, Kind};
use reconf_core::kernel::{self, DcrInstance, Family};
use reconf_core::reductions;
use reconf_core::tape::{solve_multi_with, solve_tape_with};
use reconf_core::tape_reduce::reduce_to_bound;
use reconf_core::{graph, DsrInstance, Error, Graph, MultiTapeInstance, TapeInstance, VertexSet};

create_exception!(reconf, ReconfError, PyValueError);
create_exception!(reconf, CapExceeded, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::StateCap { .. } | Error::SizeCap { .. } | Error::RetryBudget(_) => CapExceeded::new_err(e.to_string()),
        _ => ReconfError::new_err(e.to_string()),
    }
}

fn loads(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn graph_of(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Graph> {
    Graph::from_edges(n, &edges).map_err(py_err)
}

/// Reachability of a dominating-set instance given as JSON.
#[pyfunction]
#[pyo3(signature = (instance, state_cap = DEFAULT_STATE_CAP))]
fn solve(py: Python<'_>, instance: &str, state_cap: usize) -> PyResult<Py<PyAny>> {
    let inst: DsrInstance = decode(instance).map_err(py_err)?;
    let opts = SolveOptions {
        state_cap,
        ..SolveOptions::default()
    };
    let r = py.detach(|| engine::solve_with(&inst, &opts)).map_err(py_err)?;
    let out = json!({ "reachable": r.reachable, "witnessLength": r.witness_length(), "witness": r.witness });
    loads(py, &canonical(&out))
}

/// Reachability of a tape or multi-tape instance given as JSON.
#[pyfunction]
#[pyo3(signature = (instance, state_cap = DEFAULT_STATE_CAP))]
fn solve_tape(py: Python<'_>, instance: &str, state_cap: usize) -> PyResult<Py<PyAny>> {
    let multi = peek_kind(instance).map_err(py_err)?.as_deref() == Some(MultiTapeInstance::KIND);
    let out = if multi {
        let inst: MultiTapeInstance = decode(instance).map_err(py_err)?;
        let r = py.detach(|| solve_multi_with(&inst, state_cap)).map_err(py_err)?;
        json!({ "positive": r.positive, "selection": r.selection, "witness": r.witness })
    } else {
        let inst: TapeInstance = decode(instance).map_err(py_err)?;
        let r = py.detach(|| solve_tape_with(&inst, state_cap)).map_err(py_err)?;
        json!({ "reachable": r.reachable, "witnessLength": r.witness_length(), "witness": r.witness })
    };
    loads(py, &canonical(&out))
}

#[pyfunction]
fn verify_witness(instance: &str, sequence: Vec<Vec<usize>>) -> PyResult<bool> {
    let inst: DsrInstance = decode(instance).map_err(py_err)?;
    let seq: Vec<VertexSet> = sequence.into_iter().map(|d| d.into_iter().collect()).collect();
    Ok(engine::verify_witness(&inst, &seq))
}

/// Whether `d` dominates `x` (all of `V` when omitted).
#[pyfunction]
#[pyo3(signature = (n, edges, d, x = None))]
fn dominates(n: usize, edges: Vec<(usize, usize)>, d: Vec<usize>, x: Option<Vec<usize>>) -> PyResult<bool> {
    let g = graph_of(n, edges)?;
    let x = x.map_or_else(|| VertexSet::all(n), |x| x.into_iter().collect());
    graph::dominates(&g, &d.into_iter().collect(), &x).map_err(py_err)
}

#[pyfunction]
fn domination_number(n: usize, edges: Vec<(usize, usize)>) -> PyResult<usize> {
    engine::domination_number(&graph_of(n, edges)?).map_err(py_err)
}

/// Kernel of a dcr-instance or plain sliding dsr-instance, with its report.
#[pyfunction]
#[pyo3(signature = (instance, d = 2, family = "k3d-free"))]
fn kernelize(py: Python<'_>, instance: &str, d: usize, family: &str) -> PyResult<Py<PyAny>> {
    let family = match family {
        "k3d-free" => Family::K3dFree,
        "k4d-minor-free" => Family::K4dMinorFree,
        other => return Err(ReconfError::new_err(format!("unknown family {other:?}"))),
    };
    let inst: DcrInstance = match peek_kind(instance).map_err(py_err)?.as_deref() {
        Some("dsr-instance") => DcrInstance::from_dsr(&decode(instance).map_err(py_err)?, d, family),
        _ => decode(instance),
    }
    .map_err(py_err)?;
    let k = py.detach(|| kernel::kernelize(&inst)).map_err(py_err)?;
    loads(py, &encode(&k))
}

/// Tape deletions down to at most twice the alphabet size.
#[pyfunction]
fn reduce_tapes(py: Python<'_>, instance: &str) -> PyResult<Py<PyAny>> {
    let inst: TapeInstance = decode(instance).map_err(py_err)?;
    let (reduced, log) = reduce_to_bound(&inst).map_err(py_err)?;
    let out = json!({
        "instance": serde_json::from_str::<serde_json::Value>(&encode(&reduced)).expect("own output parses"),
        "log": log,
    });
    loads(py, &canonical(&out))
}

/// The TS-DSR instance built from an irreducible tape instance, as an
/// artifact envelope.
#[pyfunction]
fn tape_to_ts_dsr(py: Python<'_>, instance: &str) -> PyResult<Py<PyAny>> {
    let inst: TapeInstance = decode(instance).map_err(py_err)?;
    loads(py, &encode(&reductions::tape_to_ts_dsr(&inst).map_err(py_err)?))
}

/// A seeded random graph as a JSON envelope.
#[pyfunction]
#[pyo3(signature = (seed, n, p = 0.5, connected = false))]
fn gen_graph(seed: u64, n: usize, p: f64, connected: bool) -> PyResult<String> {
    let g = gen_random_graph(
        seed,
        n,
        p,
        GraphConstraints {
            connected,
            k3d_free: None,
        },
    )
    .map_err(py_err)?;
    Ok(encode(&g))
}

#[pymodule]
fn reconf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ReconfError", m.py().get_type::<ReconfError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_tape, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(domination_number, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_tapes, m)?)?;
    m.add_function(wrap_pyfunction!(tape_to_ts_dsr, m)?)?;
    m.add_function(wrap_pyfunction!(gen_graph, m)?)?;
    Ok(())
}
