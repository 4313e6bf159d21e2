use proptest::prelude::*;

use reconf_core::engine::{minimum_dominating_sets, solve, verify_witness};
use reconf_core::generate::{
    gen_random_graph, gen_random_multi, gen_random_tape_instance, GraphConstraints, MultiParams, TapeParams,
};
use reconf_core::graph::{dominates, max_bipartite_matching, neighborhood_classes};
use reconf_core::io::{decode, encode};
use reconf_core::kernel::{
    add_universal_and_prune_zero_class, compute_core, contract_class_components, kernelize, prune_small_type_edges,
    reduce_twins,
};
use reconf_core::tape::{is_valid_configuration, numbers_close, solve_multi, solve_tape};
use reconf_core::tape_reduce::{extract_reducible_subset, reduce_to_bound, Extraction};
use reconf_core::{DcrInstance, DsrInstance, Family, Graph, MoveRule, MultiTapeInstance, TapeInstance, VertexSet};

fn graph(seed: u64, n: usize, p: f64) -> Graph {
    gen_random_graph(seed, n, p, GraphConstraints::default()).unwrap()
}

fn mask_set(n: usize, mask: u32) -> VertexSet {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

/// Endpoints drawn from all dominating `k`-sets; `None` when there are none.
fn dsr(seed: u64, n: usize, k: usize, pick: (usize, usize), slide: bool, connected: bool) -> Option<DsrInstance> {
    let g = graph(seed, n, 0.45);
    let sets: Vec<VertexSet> = minimum_dominating_sets(&g, k)
        .unwrap()
        .into_iter()
        .filter(|d| !connected || g.induces_connected(&d.to_u32()))
        .collect();
    if sets.is_empty() {
        return None;
    }
    let rule = if slide { MoveRule::Slide } else { MoveRule::Jump };
    let mut inst = DsrInstance::new(
        g,
        k,
        sets[pick.0 % sets.len()].clone(),
        sets[pick.1 % sets.len()].clone(),
        rule,
    );
    inst.connected = connected;
    Some(inst)
}

fn tapes(seed: u64, t: usize, cells: usize, sigma: usize, sync: bool) -> TapeInstance {
    gen_random_tape_instance(seed, &TapeParams::new(t, cells, sigma, sync)).unwrap()
}

fn kernel_input(seed: u64, n: usize, k: usize, pick: (usize, usize)) -> Option<DcrInstance> {
    let g = gen_random_graph(
        seed,
        n,
        0.4,
        GraphConstraints {
            connected: true,
            k3d_free: Some(2),
        },
    )
    .ok()?;
    let sets = minimum_dominating_sets(&g, k).unwrap();
    if sets.is_empty() {
        return None;
    }
    let (s, t) = (sets[pick.0 % sets.len()].clone(), sets[pick.1 % sets.len()].clone());
    Some(DcrInstance::new(g, k, s, t, 2, Family::K3dFree))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn domination_by_scan(seed in any::<u64>(), n in 1usize..10, mask in any::<u32>()) {
        let g = graph(seed, n, 0.3);
        let d = mask_set(n, mask);
        let scan = (0..n).all(|v| d.contains(v) || g.neighbors(v).iter().any(|&w| d.contains(w as usize)));
        prop_assert_eq!(dominates(&g, &d, &VertexSet::all(n)).unwrap(), scan);
    }

    #[test]
    fn classes_partition_outside(seed in any::<u64>(), n in 1usize..10, mask in any::<u32>()) {
        let g = graph(seed, n, 0.4);
        let x = mask_set(n, mask);
        let mut seen = VertexSet::new();
        for (key, members) in neighborhood_classes(&g, &x).unwrap() {
            for v in members.iter() {
                prop_assert!(!x.contains(v) && !seen.contains(v));
                let nx: VertexSet = g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| x.contains(w)).collect();
                prop_assert_eq!(&nx, &key);
                seen.insert(v);
            }
        }
        prop_assert_eq!(seen, VertexSet::all(n).difference(&x));
    }

    #[test]
    fn matching_is_maximum(left in 0usize..=8, right in 0usize..=6, bits in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..left)
            .flat_map(|l| (0..right).map(move |r| (l, r)))
            .filter(|&(l, r)| bits >> (l * 6 + r) & 1 == 1)
            .collect();
        let m = max_bipartite_matching(left, right, &edges);
        let mut used_r = vec![false; right];
        for &(l, r) in &m {
            prop_assert!(edges.contains(&(l, r)) && !used_r[r]);
            used_r[r] = true;
        }
        fn best(l: usize, left: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
            if l == left {
                return 0;
            }
            let mut b = best(l + 1, left, edges, used);
            for &(_, r) in edges.iter().filter(|e| e.0 == l) {
                if !used[r] {
                    used[r] = true;
                    b = b.max(1 + best(l + 1, left, edges, used));
                    used[r] = false;
                }
            }
            b
        }
        prop_assert_eq!(m.len(), best(0, left, &edges, &mut vec![false; right]));
    }

    #[test]
    fn reachability_is_symmetric(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=3, pick in any::<(usize, usize)>(), slide in any::<bool>(), connected in any::<bool>()) {
        let inst = dsr(seed, n, k.min(n), pick, slide, connected);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let there = solve(&inst).unwrap();
        let back = solve(&inst.swapped()).unwrap();
        prop_assert_eq!(there.reachable, back.reachable);
        prop_assert_eq!(there.witness_length(), back.witness_length());
        if let Some(w) = &there.witness {
            prop_assert!(verify_witness(&inst, w));
        }
    }

    #[test]
    fn slide_implies_jump(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=3, pick in any::<(usize, usize)>()) {
        let inst = dsr(seed, n, k.min(n), pick, true, false);
        prop_assume!(inst.is_some());
        let slide = inst.unwrap();
        let jump = DsrInstance { rule: MoveRule::Jump, ..slide.clone() };
        if solve(&slide).unwrap().reachable {
            prop_assert!(solve(&jump).unwrap().reachable);
        }
    }

    #[test]
    fn tape_witnesses_are_walks(seed in any::<u64>(), t in 1usize..=3, cells in 1usize..=4, sigma in 1usize..=3, sync in any::<bool>()) {
        let inst = tapes(seed, t, cells, sigma, sync);
        let r = solve_tape(&inst).unwrap();
        prop_assert_eq!(r.reachable, solve_tape(&inst.swapped()).unwrap().reachable);
        let Some(w) = r.witness else { return Ok(()) };
        prop_assert_eq!(w.first(), Some(&inst.cs));
        prop_assert_eq!(w.last(), Some(&inst.ct));
        for cfg in &w {
            prop_assert!(is_valid_configuration(&inst, cfg));
            if inst.sync {
                let nums: Vec<u32> = inst.tapes.iter().zip(cfg).filter_map(|(tp, &c)| tp.number_of(c)).collect();
                for a in &nums {
                    for b in &nums {
                        prop_assert!(numbers_close(*a, *b, inst.r));
                    }
                }
            }
        }
        for pair in w.windows(2) {
            let moved: Vec<usize> = (0..t).filter(|&i| pair[0][i] != pair[1][i]).collect();
            prop_assert_eq!(moved.len(), 1);
            let i = moved[0];
            prop_assert!(inst.tapes[i].cells.has_edge(pair[0][i], pair[1][i]));
        }
    }

    #[test]
    fn singleton_tuples_match_flat(seed in any::<u64>(), t in 1usize..=3, cells in 1usize..=4, sigma in 1usize..=3) {
        let inst = gen_random_tape_instance(seed, &TapeParams::new(t, cells, sigma, false).paths()).unwrap();
        let multi = MultiTapeInstance {
            sigma: inst.sigma,
            tuples: inst.tapes.iter().map(|tp| vec![tp.clone()]).collect(),
            sync: false,
            r: None,
        };
        let flat = multi.flatten(&vec![0; t]).unwrap();
        let ends_valid = is_valid_configuration(&flat, &flat.cs) && is_valid_configuration(&flat, &flat.ct);
        let flat_answer = ends_valid && solve_tape(&flat).unwrap().reachable;
        prop_assert_eq!(solve_multi(&multi).unwrap().positive, flat_answer);
    }

    #[test]
    fn reduction_to_bound_keeps_answer(seed in any::<u64>(), sigma in 1usize..=2, extra in 1usize..=3, cells in 1usize..=3) {
        let inst = tapes(seed, 2 * sigma + extra, cells, sigma, false);
        let (reduced, steps) = reduce_to_bound(&inst).unwrap();
        prop_assert!(reduced.tapes.len() <= 2 * reduced.sigma.max(inst.sigma));
        prop_assert!(!steps.is_empty());
        prop_assert_eq!(solve_tape(&inst).unwrap().reachable, solve_tape(&reduced).unwrap().reachable);
    }

    #[test]
    fn extracted_subset_is_deficient(seed in any::<u64>(), sigma in 1usize..=3, extra in 1usize..=3, cells in 1usize..=3) {
        let inst = tapes(seed, sigma + extra, cells, sigma, false);
        match extract_reducible_subset(&inst.tapes, inst.sigma).unwrap() {
            Extraction::EmptyTape { tape } => prop_assert!(inst.tapes[tape].alphabet().is_empty()),
            Extraction::Subset { tapes: l, matching } => {
                let mut alpha = inst.tapes[l[0]].alphabet();
                for &i in &l[1..] {
                    alpha.union_with(&inst.tapes[i].alphabet());
                }
                prop_assert!(!alpha.is_empty() && alpha.len() < l.len());
                prop_assert_eq!(matching.len(), alpha.len());
            }
        }
    }

    #[test]
    fn kernel_is_idempotent_and_certified(seed in any::<u64>(), n in 2usize..=8, k in 1usize..=2, pick in any::<(usize, usize)>()) {
        let inst = kernel_input(seed, n, k, pick);
        prop_assume!(inst.is_some());
        let once = kernelize(&inst.unwrap()).unwrap();
        prop_assert!(once.report.holds(2));
        let twice = kernelize(&once.kernel).unwrap();
        prop_assert_eq!(twice.kernel, once.kernel);
    }

    #[test]
    fn rules_shrink_and_keep_answer(seed in any::<u64>(), n in 2usize..=8, k in 1usize..=2, pick in any::<(usize, usize)>()) {
        let inst = kernel_input(seed, n, k, pick);
        prop_assume!(inst.is_some());
        let mut inst = inst.unwrap();
        let must = inst.source.union(&inst.target);
        inst.core = Some(compute_core(&inst.graph, k, &must, 2).unwrap());
        // The universal vertex step is checked by neither property.
        let mut cur = inst;
        type Rule = fn(&DcrInstance) -> reconf_core::Result<DcrInstance>;
        let pipeline: [(Rule, bool); 4] = [
            (contract_class_components, true),
            (add_universal_and_prune_zero_class, false),
            (prune_small_type_edges, true),
            (reduce_twins, true),
        ];
        for (rule, checked) in pipeline {
            let out = rule(&cur).unwrap();
            if checked {
                if out != cur {
                    prop_assert!(out.graph.n() + out.graph.m() < cur.graph.n() + cur.graph.m());
                }
                prop_assert_eq!(solve(&out.to_dsr()).unwrap().reachable, solve(&cur.to_dsr()).unwrap().reachable);
            }
            cur = out;
        }
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), n in 1usize..12, t in 1usize..4) {
        prop_assert_eq!(graph(seed, n, 0.5), graph(seed, n, 0.5));
        prop_assert_eq!(tapes(seed, t, 3, 2, true), tapes(seed, t, 3, 2, true));
        let mp = MultiParams { tuples: t, members: 2, cells: 3, sigma: 2, letter_prob: 0.4 };
        prop_assert_eq!(gen_random_multi(seed, &mp).unwrap(), gen_random_multi(seed, &mp).unwrap());
    }

    #[test]
    fn envelopes_round_trip(seed in any::<u64>(), n in 1usize..=6, t in 1usize..4, sync in any::<bool>(), pick in any::<(usize, usize)>()) {
        let g = graph(seed, n, 0.5);
        prop_assert_eq!(decode::<Graph>(&encode(&g)).unwrap(), g);
        let inst = tapes(seed, t, 3, 2, sync);
        prop_assert_eq!(decode::<TapeInstance>(&encode(&inst)).unwrap(), inst);
        if let Some(d) = dsr(seed, n, 1.max(n / 2), pick, true, false) {
            let text = encode(&d);
            prop_assert_eq!(encode(&decode::<DsrInstance>(&text).unwrap()), text);
        }
    }
}
