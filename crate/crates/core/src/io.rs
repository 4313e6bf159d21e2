//! JSON formats. Every artifact travels in an envelope
//! `{"kind": ..., "version": 1, ...fields}`; bare field objects are accepted on
//! input. Output is canonical: keys sorted, edges sorted.

use std::collections::BTreeMap;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::bitset::BitSet;
use crate::engine::{DsrInstance, MoveRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, TreeDecomposition, VertexSet};
use crate::kernel::{DcrInstance, Family, Kernel};
use crate::reductions::{Artifact, NormalizedFormula};
use crate::tape::{MultiTapeInstance, Tape, TapeInstance};

pub const FORMAT_VERSION: u64 = 1;

/// Serializes through `$wire` and deserializes through `TryFrom<$wire>`.
macro_rules! via_wire {
    ($ty:ty, $wire:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$wire>::from(self).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let w = <$wire>::deserialize(d)?;
                <$ty>::try_from(w).map_err(D::Error::custom)
            }
        }
    };
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(d)?.into_iter().collect())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<usize, String>,
}

impl From<&Graph> for GraphWire {
    fn from(g: &Graph) -> Self {
        GraphWire {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().clone(),
        }
    }
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = w.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(w.n, &edges)?;
        for (v, l) in w.labels {
            g.check_vertex(v)?;
            g.set_label(v, l);
        }
        Ok(g)
    }
}

via_wire!(Graph, GraphWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TapeWire {
    cells: Graph,
    /// Cell → letters; cells left out are empty.
    content: BTreeMap<usize, Vec<usize>>,
    start: usize,
    end: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    number: Option<BTreeMap<usize, u32>>,
}

impl From<&Tape> for TapeWire {
    fn from(t: &Tape) -> Self {
        TapeWire {
            cells: t.cells.clone(),
            content: t
                .content
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_empty())
                .map(|(i, c)| (i, c.iter().collect()))
                .collect(),
            start: t.start,
            end: t.end,
            number: t.number.as_ref().map(|nb| nb.iter().copied().enumerate().collect()),
        }
    }
}

impl TryFrom<TapeWire> for Tape {
    type Error = Error;

    fn try_from(w: TapeWire) -> Result<Tape> {
        let n = w.cells.n();
        if n == 0 {
            return Err(Error::Malformed("tape without cells".into()));
        }
        if w.start >= n || w.end >= n {
            return Err(Error::Malformed("start or end cell out of range".into()));
        }
        let mut content = vec![BitSet::new(); n];
        for (c, letters) in w.content {
            let slot = content
                .get_mut(c)
                .ok_or_else(|| Error::Malformed(format!("content for missing cell {c}")))?;
            *slot = letters.into_iter().collect();
        }
        let mut tape = Tape::new(w.cells, content, w.start, w.end);
        if let Some(map) = w.number {
            if map.len() != n || map.keys().any(|&c| c >= n) {
                return Err(Error::Malformed("numbering must cover every cell exactly once".into()));
            }
            tape.number = Some(map.into_values().collect());
        }
        Ok(tape)
    }
}

via_wire!(Tape, TapeWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TapeInstanceWire {
    sigma: usize,
    tapes: Vec<Tape>,
    cs: Vec<usize>,
    ct: Vec<usize>,
    #[serde(default)]
    sync: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
}

impl From<&TapeInstance> for TapeInstanceWire {
    fn from(t: &TapeInstance) -> Self {
        TapeInstanceWire {
            sigma: t.sigma,
            tapes: t.tapes.clone(),
            cs: t.cs.clone(),
            ct: t.ct.clone(),
            sync: t.sync,
            r: t.r,
        }
    }
}

impl TryFrom<TapeInstanceWire> for TapeInstance {
    type Error = Error;

    fn try_from(w: TapeInstanceWire) -> Result<TapeInstance> {
        let inst = TapeInstance {
            sigma: w.sigma,
            tapes: w.tapes,
            cs: w.cs,
            ct: w.ct,
            sync: w.sync,
            r: w.r,
        };
        inst.check_shape()?;
        Ok(inst)
    }
}

via_wire!(TapeInstance, TapeInstanceWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiWire {
    sigma: usize,
    tuples: Vec<Vec<Tape>>,
    #[serde(default)]
    sync: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
}

impl From<&MultiTapeInstance> for MultiWire {
    fn from(m: &MultiTapeInstance) -> Self {
        MultiWire {
            sigma: m.sigma,
            tuples: m.tuples.clone(),
            sync: m.sync,
            r: m.r,
        }
    }
}

impl TryFrom<MultiWire> for MultiTapeInstance {
    type Error = Error;

    fn try_from(w: MultiWire) -> Result<MultiTapeInstance> {
        if w.tuples.iter().any(Vec::is_empty) {
            return Err(Error::Malformed("empty tuple".into()));
        }
        if w.tuples
            .iter()
            .flatten()
            .any(|t| t.content.iter().any(|c| c.bound() > w.sigma))
        {
            return Err(Error::Malformed("letter outside the alphabet".into()));
        }
        Ok(MultiTapeInstance {
            sigma: w.sigma,
            tuples: w.tuples,
            sync: w.sync,
            r: w.r,
        })
    }
}

via_wire!(MultiTapeInstance, MultiWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DsrWire {
    graph: Graph,
    k: usize,
    source: VertexSet,
    target: VertexSet,
    rule: MoveRule,
    #[serde(default)]
    connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    core: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<VertexSet>>,
}

impl From<&DsrInstance> for DsrWire {
    fn from(i: &DsrInstance) -> Self {
        DsrWire {
            graph: i.graph.clone(),
            k: i.k,
            source: i.source.clone(),
            target: i.target.clone(),
            rule: i.rule,
            connected: i.connected,
            core: i.core.clone(),
            partition: i.partition.clone(),
        }
    }
}

impl TryFrom<DsrWire> for DsrInstance {
    type Error = Error;

    fn try_from(w: DsrWire) -> Result<DsrInstance> {
        let inst = DsrInstance {
            graph: w.graph,
            k: w.k,
            source: w.source,
            target: w.target,
            rule: w.rule,
            connected: w.connected,
            core: w.core,
            partition: w.partition,
        };
        inst.check_shape()?;
        Ok(inst)
    }
}

via_wire!(DsrInstance, DsrWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DcrWire {
    graph: Graph,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    core: Option<VertexSet>,
    source: VertexSet,
    target: VertexSet,
    d: usize,
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    universal: Option<usize>,
    #[serde(default)]
    augmented: bool,
}

impl From<&DcrInstance> for DcrWire {
    fn from(i: &DcrInstance) -> Self {
        DcrWire {
            graph: i.graph.clone(),
            k: i.k,
            core: i.core.clone(),
            source: i.source.clone(),
            target: i.target.clone(),
            d: i.d,
            family: i.family,
            universal: i.universal,
            augmented: i.augmented,
        }
    }
}

impl TryFrom<DcrWire> for DcrInstance {
    type Error = Error;

    fn try_from(w: DcrWire) -> Result<DcrInstance> {
        let inst = DcrInstance {
            graph: w.graph,
            k: w.k,
            core: w.core,
            source: w.source,
            target: w.target,
            d: w.d,
            family: w.family,
            universal: w.universal,
            augmented: w.augmented,
        };
        inst.to_dsr().check_shape()?;
        if let Some(y) = inst.universal {
            inst.graph.check_vertex(y)?;
        }
        Ok(inst)
    }
}

via_wire!(DcrInstance, DcrWire);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct DecompositionWire {
    bags: Vec<VertexSet>,
    tree: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tape_of: Option<BTreeMap<usize, usize>>,
}

impl From<&TreeDecomposition> for DecompositionWire {
    fn from(t: &TreeDecomposition) -> Self {
        DecompositionWire {
            bags: t.bags.clone(),
            tree: t.tree.iter().map(|&(a, b)| [a, b]).collect(),
            tape_of: t.tape_of.clone(),
        }
    }
}

impl TryFrom<DecompositionWire> for TreeDecomposition {
    type Error = Error;

    fn try_from(w: DecompositionWire) -> Result<TreeDecomposition> {
        let nb = w.bags.len();
        if w.tree.iter().flatten().any(|&b| b >= nb) {
            return Err(Error::Malformed("tree edge names a missing bag".into()));
        }
        Ok(TreeDecomposition {
            bags: w.bags,
            tree: w.tree.iter().map(|e| (e[0], e[1])).collect(),
            tape_of: w.tape_of,
        })
    }
}

via_wire!(TreeDecomposition, DecompositionWire);

/// A reconfiguration sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sequence: Vec<VertexSet>,
}

/// Types that travel in an envelope.
pub trait Kind: Serialize + DeserializeOwned {
    const KIND: &'static str;
}

macro_rules! kinds {
    ($($ty:ty => $name:literal),* $(,)?) => {
        $(impl Kind for $ty {
            const KIND: &'static str = $name;
        })*
    };
}

kinds! {
    Graph => "graph",
    DsrInstance => "dsr-instance",
    TapeInstance => "tape-instance",
    MultiTapeInstance => "multi-tape-instance",
    DcrInstance => "dcr-instance",
    NormalizedFormula => "formula",
    Artifact<TapeInstance> => "tape-artifact",
    Artifact<MultiTapeInstance> => "multi-tape-artifact",
    Artifact<DsrInstance> => "dsr-artifact",
    Kernel => "kernel",
    TreeDecomposition => "decomposition",
    Witness => "witness",
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Malformed(e.to_string())
}

/// Canonical JSON of any serializable value: object keys sorted.
pub fn canonical<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("in-memory values serialize");
    serde_json::to_string_pretty(&v).expect("values print")
}

/// The envelope around `x`.
pub fn encode<T: Kind>(x: &T) -> String {
    let mut v = serde_json::to_value(x).expect("in-memory values serialize");
    let obj = v.as_object_mut().expect("enveloped kinds serialize as objects");
    obj.insert("kind".into(), Value::from(T::KIND));
    obj.insert("version".into(), Value::from(FORMAT_VERSION));
    serde_json::to_string_pretty(&v).expect("values print")
}

/// The `kind` of an enveloped document, if it has one.
pub fn peek_kind(s: &str) -> Result<Option<String>> {
    let v: Value = serde_json::from_str(s).map_err(json_err)?;
    Ok(v.get("kind").and_then(Value::as_str).map(str::to_string))
}

/// Reads a `T`, enveloped or bare. A witness may also be a bare list of vertex
/// lists.
pub fn decode<T: Kind>(s: &str) -> Result<T> {
    let mut v: Value = serde_json::from_str(s).map_err(json_err)?;
    if T::KIND == Witness::KIND && v.is_array() {
        v = serde_json::json!({ "sequence": v });
    }
    if let Some(obj) = v.as_object_mut() {
        if let Some(kind) = obj.remove("kind") {
            if kind.as_str() != Some(T::KIND) {
                return Err(Error::Malformed(format!("expected kind {:?}, found {kind}", T::KIND)));
            }
            match obj.remove("version") {
                Some(ver) if ver.as_u64() == Some(FORMAT_VERSION) => {}
                other => return Err(Error::Malformed(format!("unsupported version {other:?}"))),
            }
        }
    }
    serde_json::from_value(v).map_err(json_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_random_tape_instance, TapeParams};

    #[test]
    fn graph_edges_sorted() {
        let g = Graph::from_edges(3, &[(2, 1), (1, 0)]).unwrap();
        let s = encode(&g);
        assert!(s.contains("\"kind\": \"graph\""));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["edges"], serde_json::json!([[0, 1], [1, 2]]));
        assert_eq!(decode::<Graph>(&s).unwrap(), g);
        assert_eq!(decode::<Graph>(r#"{"n":2,"edges":[[0,1]]}"#).unwrap(), Graph::path(2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(decode::<Graph>(r#"{"kind":"graph","version":2,"n":1,"edges":[]}"#).is_err());
        assert!(decode::<Graph>(r#"{"kind":"tape-instance","version":1,"n":1,"edges":[]}"#).is_err());
        assert!(decode::<Graph>("{").is_err());
    }

    #[test]
    fn round_trips() {
        let mut d = DsrInstance::new(
            Graph::path(3),
            1,
            VertexSet::from([1]),
            VertexSet::from([1]),
            MoveRule::Slide,
        );
        d.core = Some(VertexSet::from([0, 1]));
        assert_eq!(decode::<DsrInstance>(&encode(&d)).unwrap(), d);
        for sync in [false, true] {
            let t = gen_random_tape_instance(3, &TapeParams::new(2, 5, 3, sync)).unwrap();
            assert_eq!(decode::<TapeInstance>(&encode(&t)).unwrap(), t);
            assert_eq!(encode(&decode::<TapeInstance>(&encode(&t)).unwrap()), encode(&t));
        }
        let w: Witness = decode(r#"[[0,1],[1,2]]"#).unwrap();
        assert_eq!(w.sequence.len(), 2);
    }
}
