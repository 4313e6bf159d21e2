use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reconf_core::engine::{minimum_dominating_sets, solve};
use reconf_core::generate::{gen_random_graph, GraphConstraints};
use reconf_core::kernel::is_domination_core;
use reconf_core::kernel::{
    add_universal_and_prune_zero_class, compute_core, contract_class_components, kernelize, prune_small_type_edges,
    prune_three_classes, reduce_twins, solve_via_kernel, DcrInstance, Family,
};
use reconf_core::{Graph, VertexSet};

/// Random sliding instances on connected `K_{3,2}`-free graphs.
fn suite(count: usize, max_n: usize, seed: u64) -> Vec<DcrInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let free = GraphConstraints {
        connected: true,
        k3d_free: Some(2),
    };
    while out.len() < count {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.2..0.45);
        let g = gen_random_graph(rng.gen(), n, p, free).unwrap();
        let k = rng.gen_range(1..=2);
        let sets = minimum_dominating_sets(&g, k).unwrap();
        if sets.is_empty() {
            continue;
        }
        let s = sets[rng.gen_range(0..sets.len())].clone();
        let t = sets[rng.gen_range(0..sets.len())].clone();
        out.push(DcrInstance::new(g, k, s, t, 2, Family::K3dFree));
    }
    out
}

fn with_core(inst: &DcrInstance) -> DcrInstance {
    let must: VertexSet = inst.source.union(&inst.target);
    let mut out = inst.clone();
    out.core = Some(compute_core(&inst.graph, inst.k, &must, inst.d).unwrap());
    out
}

#[test]
fn kernel_agrees_with_direct_search() {
    let mut yes = 0;
    for inst in suite(300, 8, 11) {
        let direct = solve(&inst.to_dsr()).unwrap().reachable;
        let k = kernelize(&inst).unwrap();
        assert!(k.report.holds(inst.d), "{:?}", k.report);
        assert_eq!(
            solve_via_kernel(&inst).unwrap().reachable,
            direct,
            "{inst:?}\n{:?}",
            k.kernel
        );
        assert_eq!(kernelize(&k.kernel).unwrap().kernel, k.kernel);
        yes += direct as usize;
    }
    assert!(yes > 0 && yes < 300, "{yes}");
}

#[test]
fn each_rule_preserves_the_answer() {
    for inst in suite(200, 9, 12) {
        let cored = with_core(&inst);
        let want = solve(&cored.to_dsr()).unwrap().reachable;
        assert_eq!(solve(&inst.to_dsr()).unwrap().reachable, want);
        let check = |next: &DcrInstance, what: &str| {
            assert_eq!(solve(&next.to_dsr()).unwrap().reachable, want, "{what} on {cored:?}");
        };
        check(&reduce_twins(&cored).unwrap(), "twins");
        check(&contract_class_components(&cored).unwrap(), "contract");
        let aug = add_universal_and_prune_zero_class(&cored).unwrap();
        let aug_answer = solve(&aug.to_dsr()).unwrap().reachable;
        let pruned = prune_small_type_edges(&aug).unwrap();
        assert_eq!(
            solve(&pruned.to_dsr()).unwrap().reachable,
            aug_answer,
            "small edges on {aug:?}"
        );
        let minor = DcrInstance {
            family: Family::K4dMinorFree,
            ..cored.clone()
        };
        check(&prune_three_classes(&minor).unwrap(), "three classes");
    }
}

/// Sliding through the added universal vertex can bypass a token that no
/// path in the original graph avoids, so that rule alone may turn a no into a
/// yes. Here the token on 2 must stay to dominate 0 and blocks the only route
/// from {3, 4} to 5.
#[test]
fn universal_vertex_can_open_a_route() {
    let g = Graph::from_edges(6, &[(0, 2), (1, 2), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)]).unwrap();
    let mut inst = DcrInstance::new(
        g,
        2,
        VertexSet::from([2, 3]),
        VertexSet::from([2, 5]),
        2,
        Family::K3dFree,
    );
    let x = VertexSet::from([0, 2, 3, 5]);
    assert!(is_domination_core(&inst.graph, 2, &x).unwrap());
    inst.core = Some(x);
    assert!(!solve(&inst.to_dsr()).unwrap().reachable);
    let aug = add_universal_and_prune_zero_class(&inst).unwrap();
    assert!(solve(&aug.to_dsr()).unwrap().reachable);
}
