//! Explicit tree decompositions of construction outputs, rebuilt from the
//! provenance record.

use std::collections::BTreeMap;

use crate::bitset::BitSet;
use crate::engine::DsrInstance;
use crate::error::{Error, Result};
use crate::graph::{Graph, TreeDecomposition, VertexSet};
use crate::tape::{extended_graph, ExtendedGraph, Tape, TapeInstance};

use super::dsr::VertexRole;
use super::stars::Star;
use super::{Artifact, Provenance};

/// One bag per tape holding its cells and the whole alphabet, chained into a
/// path. Valid for any instance and 1-structured.
pub fn base_decomposition(inst: &TapeInstance) -> TreeDecomposition {
    let eg = extended_graph(inst);
    let letters: Vec<usize> = (0..inst.sigma).map(|a| eg.letter(a)).collect();
    let mut td = TreeDecomposition {
        tape_of: Some(eg.tape_of()),
        ..Default::default()
    };
    for (i, t) in inst.tapes.iter().enumerate() {
        let bag: VertexSet = (0..t.len())
            .map(|c| eg.cell(i, c))
            .chain(letters.iter().copied())
            .collect();
        let b = td.push_bag(bag);
        if b > 0 {
            td.link(b - 1, b);
        }
    }
    if td.bags.is_empty() {
        td.push_bag(letters.into_iter().collect());
    }
    td
}

/// The decomposition that accompanies the construction recorded in the
/// artifact, over its extended graph.
pub fn derive_decomposition(artifact: &Artifact<TapeInstance>) -> Result<TreeDecomposition> {
    decompose_tapes(&artifact.instance, &artifact.provenance)
}

fn decompose_tapes(inst: &TapeInstance, prov: &Provenance) -> Result<TreeDecomposition> {
    match prov {
        Provenance::Input | Provenance::Selector { .. } | Provenance::PathDesync { .. } => Ok(base_decomposition(inst)),
        Provenance::PartitionedStars { k, m, .. } => stars_decomposition(inst, *k, *m),
        Provenance::TriangleDesync {
            parent,
            parent_sigma,
            parent_tapes,
        } => triangle_decomposition(inst, parent, *parent_sigma, *parent_tapes),
        other => Err(Error::UnknownProvenance(format!(
            "{} does not produce a tape instance",
            other.name()
        ))),
    }
}

fn stars_decomposition(inst: &TapeInstance, k: usize, m: usize) -> Result<TreeDecomposition> {
    if inst.tapes.len() != k + 1 || inst.sigma != k + 1 {
        return Err(Error::UnknownProvenance(
            "instance does not match the star layout".into(),
        ));
    }
    let eg = extended_graph(inst);
    let check = eg.letter(k);
    let center = eg.cell(k, 0);
    let mut td = TreeDecomposition {
        tape_of: Some(eg.tape_of()),
        ..Default::default()
    };
    let root = td.push_bag([center, check].into_iter().collect());
    // a chain of {cell, parent, letter, ✓} bags for every cell but the center
    let hang = |td: &mut TreeDecomposition, tape: usize, letter: usize, anchor: usize, only_branch: Option<usize>| {
        let t = &inst.tapes[tape];
        let star = Star {
            m,
            branches: (t.len() - 1) / (2 * m + 1),
        };
        let mut bag_of = vec![anchor; t.len()];
        for c in 1..t.len() {
            let (b, off) = star.locate(c).expect("not the center");
            if only_branch.is_some_and(|ob| ob != b) {
                continue;
            }
            let p = if off == 0 { 0 } else { c - 1 };
            let bag = [eg.cell(tape, c), eg.cell(tape, p), eg.letter(letter), check]
                .into_iter()
                .collect();
            let id = td.push_bag(bag);
            td.link(bag_of[p], id);
            bag_of[c] = id;
        }
    };
    for i in 0..k {
        let h = td.push_bag([center, eg.letter(i), check].into_iter().collect());
        td.link(root, h);
        let g = td.push_bag([eg.cell(i, 0), eg.letter(i), check].into_iter().collect());
        td.link(h, g);
        hang(&mut td, i, i, g, None);
        hang(&mut td, k, i, h, Some(i));
    }
    Ok(td)
}

/// The first `tapes` tapes of `inst` restricted to the letters below `sigma`.
fn parent_view(inst: &TapeInstance, sigma: usize, tapes: usize) -> Result<TapeInstance> {
    if tapes > inst.tapes.len() || sigma > inst.sigma {
        return Err(Error::UnknownProvenance("parent is larger than the artifact".into()));
    }
    let keep = BitSet::full(sigma);
    let mut view = TapeInstance::new(
        sigma,
        inst.tapes[..tapes]
            .iter()
            .map(|t| {
                let mut t = t.clone();
                for c in t.content.iter_mut() {
                    c.intersect_with(&keep);
                }
                t
            })
            .collect(),
        inst.cs[..tapes].to_vec(),
        inst.ct[..tapes].to_vec(),
    );
    view.sync = true;
    Ok(view)
}

/// Moves a decomposition of the parent's extended graph onto the child's,
/// where the parent's tapes come first and its letters keep their ids.
fn lift(td: &TreeDecomposition, parent: &ExtendedGraph, child: &ExtendedGraph) -> Vec<VertexSet> {
    td.bags
        .iter()
        .map(|bag| {
            bag.map(|v| {
                Some(if v >= parent.letter_base {
                    child.letter(v - parent.letter_base)
                } else {
                    v
                })
            })
        })
        .collect()
}

fn triangle_decomposition(
    inst: &TapeInstance,
    parent: &Provenance,
    parent_sigma: usize,
    parent_tapes: usize,
) -> Result<TreeDecomposition> {
    if inst.tapes.len() != parent_tapes + 1 || inst.sigma != parent_sigma + 3 * parent_tapes {
        return Err(Error::UnknownProvenance(
            "instance does not match the triangle layout".into(),
        ));
    }
    let view = parent_view(inst, parent_sigma, parent_tapes)?;
    let inner = decompose_tapes(&view, parent)?;
    let (pe, ce) = (extended_graph(&view), extended_graph(inst));
    let tape_of = ce.tape_of();
    let triangle: Vec<usize> = (0..3).map(|c| ce.cell(parent_tapes, c)).collect();
    let bags = lift(&inner, &pe, &ce)
        .into_iter()
        .map(|bag| {
            let mut out: Vec<usize> = bag.to_vec();
            let touched: std::collections::BTreeSet<usize> =
                bag.iter().filter_map(|v| tape_of.get(&v).copied()).collect();
            for i in touched {
                out.extend((0..3).map(|x| ce.letter(parent_sigma + 3 * i + x)));
            }
            out.extend(triangle.iter().copied());
            out.into_iter().collect()
        })
        .collect();
    Ok(TreeDecomposition {
        bags,
        tree: inner.tree,
        tape_of: Some(tape_of),
    })
}

/// Reads the tape instance back out of a [`super::tape_to_ts_dsr`] graph,
/// with the vertex id of every extended-graph vertex.
fn recover_tapes(g: &Graph, tapes: usize) -> Result<(TapeInstance, BTreeMap<VertexRole, usize>)> {
    let mut ids = BTreeMap::new();
    let mut sizes = vec![0usize; tapes];
    let mut sigma = 0;
    for v in 0..g.n() {
        let role = VertexRole::of(g, v);
        match role {
            VertexRole::Cell { tape, cell } if tape < tapes => sizes[tape] = sizes[tape].max(cell + 1),
            VertexRole::Letter(a) => sigma = sigma.max(a + 1),
            _ => {}
        }
        ids.insert(role, v);
    }
    let mut out = Vec::with_capacity(tapes);
    for (i, &len) in sizes.iter().enumerate() {
        let mut cells = Graph::new(len);
        let mut content = vec![BitSet::new(); len];
        for c in 0..len {
            let v = *ids
                .get(&VertexRole::Cell { tape: i, cell: c })
                .ok_or_else(|| Error::UnknownProvenance(format!("cell {c} of tape {i} is missing")))?;
            for &w in g.neighbors(v) {
                match VertexRole::of(g, w as usize) {
                    VertexRole::Cell { tape, cell } if tape == i => {
                        cells.add_edge(c, cell);
                    }
                    VertexRole::Letter(a) => {
                        content[c].insert(a);
                    }
                    _ => {}
                }
            }
        }
        out.push(Tape::new(cells, content, 0, 0));
    }
    Ok((TapeInstance::new(sigma, out, vec![0; tapes], vec![0; tapes]), ids))
}

/// The decomposition accompanying a dominating-set artifact: the tape
/// instance's decomposition with `x_i` beside the cells of tape `i`, `y` in
/// every bag and a leaf bag `{y, z}`.
pub fn derive_dsr_decomposition(artifact: &Artifact<DsrInstance>) -> Result<TreeDecomposition> {
    let Provenance::TapeToTsDsr { parent, tapes } = &artifact.provenance else {
        return Err(Error::UnknownProvenance(format!(
            "no explicit decomposition for {}",
            artifact.provenance.name()
        )));
    };
    let g = &artifact.instance.graph;
    let (inst, ids) = recover_tapes(g, *tapes)?;
    let inner = decompose_tapes(&inst, parent)?;
    let eg = extended_graph(&inst);
    let role_of_ext: Vec<VertexRole> = (0..eg.graph.n()).map(|v| VertexRole::of(&eg.graph, v)).collect();
    let get = |r: VertexRole| -> Result<usize> {
        ids.get(&r)
            .copied()
            .ok_or_else(|| Error::UnknownProvenance(format!("vertex {r:?} is missing")))
    };
    let (y, z) = (get(VertexRole::Y)?, get(VertexRole::Z)?);
    let xs: Vec<usize> = (0..*tapes).map(|i| get(VertexRole::X(i))).collect::<Result<_>>()?;
    let mut tape_of = BTreeMap::new();
    for (&role, &v) in &ids {
        match role {
            VertexRole::Cell { tape, .. } => {
                tape_of.insert(v, tape);
            }
            VertexRole::X(i) => {
                tape_of.insert(v, i);
            }
            _ => {}
        }
    }
    let mut bags = Vec::with_capacity(inner.bags.len() + 1);
    for bag in &inner.bags {
        let mut out = Vec::with_capacity(bag.len() + 2);
        let mut touched = std::collections::BTreeSet::new();
        for v in bag.iter() {
            let w = get(role_of_ext[v])?;
            if let VertexRole::Cell { tape, .. } = role_of_ext[v] {
                touched.insert(tape);
            }
            out.push(w);
        }
        out.extend(touched.into_iter().map(|i| xs[i]));
        out.push(y);
        bags.push(out.into_iter().collect::<VertexSet>());
    }
    let mut td = TreeDecomposition {
        bags,
        tree: inner.tree,
        tape_of: Some(tape_of),
    };
    let leaf = td.push_bag([y, z].into_iter().collect());
    td.link(0, leaf);
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::MoveRule;
    use crate::graph::verify_decomposition;
    use crate::reductions::{desynchronize_triangle, partitioned_dsr_to_sync_stars, tape_to_ts_dsr};

    fn l(ls: &[usize]) -> BitSet {
        ls.iter().copied().collect()
    }

    #[test]
    fn stars_width_three() {
        let mut d = DsrInstance::new(
            Graph::path(4),
            2,
            VertexSet::from([1, 2]),
            VertexSet::from([0, 3]),
            MoveRule::Jump,
        );
        d.partition = Some(vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
        let a = partitioned_dsr_to_sync_stars(&d).unwrap();
        let td = derive_decomposition(&a).unwrap();
        let rep = verify_decomposition(&extended_graph(&a.instance).graph, &td, Some(1));
        assert!(rep.valid, "{:?}", rep.violations);
        assert!(rep.structured);
        assert!(rep.width <= 3);
    }

    #[test]
    fn triangle_then_dsr() {
        let a = Tape::path(vec![l(&[0]), l(&[0, 1]), l(&[1])]).numbered(vec![1, 2, 3]);
        let b = Tape::path(vec![l(&[1]), l(&[]), l(&[0])]).numbered(vec![1, 2, 3]);
        let inst = TapeInstance::new(2, vec![a, b], vec![0, 0], vec![2, 2]).synchronized(None);
        let base = base_decomposition(&inst);
        let w = verify_decomposition(&extended_graph(&inst).graph, &base, Some(1)).width;
        let tri = desynchronize_triangle(&inst).unwrap();
        let td = derive_decomposition(&tri).unwrap();
        let rep = verify_decomposition(&extended_graph(&tri.instance).graph, &td, Some(2));
        assert!(rep.valid && rep.structured, "{:?}", rep.violations);
        assert!(rep.width <= w + 3 + 3);

        let dsr = tape_to_ts_dsr(&tri.instance).unwrap().after(&tri.provenance);
        let td2 = derive_dsr_decomposition(&dsr).unwrap();
        let rep2 = verify_decomposition(&dsr.instance.graph, &td2, Some(2));
        assert!(rep2.valid && rep2.structured, "{:?}", rep2.violations);
        assert!(rep2.width <= rep.width + 2 + 1);
    }

    #[test]
    fn unknown_provenance() {
        let inst = TapeInstance::new(1, vec![Tape::path(vec![l(&[0])])], vec![0], vec![0]);
        let a = Artifact {
            instance: inst,
            provenance: Provenance::AndCompose { parts: 1, k: 1 },
            fresh_letters: vec![],
        };
        assert!(matches!(derive_decomposition(&a), Err(Error::UnknownProvenance(_))));
    }
}
