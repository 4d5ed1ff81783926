mod common;

use brpart::json::{to_json_pretty, InstanceJson};
use brpart::nae::generate_random_instance;
use brpart::solver::{decide_partition, extract_color_classes, verify_witness, Budget, Decision};
use brpart::{
    build_reduction, find_m_orientation, is_spanning_tree, out_degrees, DegreeVector, MultiGraph, Orientation,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_vertices)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 1..n), 0..=max_edges)))
        .prop_map(|(n, raw)| {
            // second coordinate is an offset, so endpoints always differ
            let edges = raw.into_iter().map(|(a, off)| (a, (a + off) % n)).collect();
            MultiGraph::new(n, edges).unwrap()
        })
}

proptest! {
    #[test]
    fn out_degrees_sum_to_edge_count(g in graph_strategy(7, 12), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut o = Orientation::new();
        for e in 0..g.edge_count() {
            if rng.gen_bool(0.7) {
                let (a, b) = g.endpoints(e);
                o.orient(&g, e, if rng.gen_bool(0.5) { a } else { b }).unwrap();
            }
        }
        prop_assert_eq!(out_degrees(&g, &o).sum(), o.len());
    }

    #[test]
    fn spanning_tree_is_relabel_invariant(g in graph_strategy(7, 10), mask: u32, seed: u64) {
        let subset: Vec<usize> = (0..g.edge_count()).filter(|e| mask >> e & 1 == 1).collect();
        let perm = common::random_permutation(&mut ChaCha8Rng::seed_from_u64(seed), g.vertex_count());
        let h = g.relabel(&perm);
        prop_assert_eq!(is_spanning_tree(&g, &subset), is_spanning_tree(&h, &subset));
        prop_assert_eq!(is_spanning_tree(&g, &subset), common::naive_is_tree(&g, &subset));
    }

    #[test]
    fn complementary_trees_fix_edge_count(g in graph_strategy(5, 8), mask: u32) {
        let subset: Vec<usize> = (0..g.edge_count()).filter(|e| mask >> e & 1 == 1).collect();
        let rest: Vec<usize> = (0..g.edge_count()).filter(|e| mask >> e & 1 == 0).collect();
        if is_spanning_tree(&g, &subset) && is_spanning_tree(&g, &rest) {
            prop_assert_eq!(g.edge_count(), 2 * (g.vertex_count() - 1));
        }
    }

    #[test]
    fn orientation_sound_and_relabel_stable(g in graph_strategy(6, 10), m in prop::collection::vec(0usize..=3, 6), seed: u64) {
        let m: DegreeVector = m[..g.vertex_count()].to_vec().into();
        let edges: Vec<usize> = (0..g.edge_count()).collect();
        let found = find_m_orientation(&g, &edges, &m).unwrap();
        prop_assert_eq!(found.is_some(), common::naive_orientable(&g, &edges, m.values()));
        if let Some(o) = &found {
            let out = out_degrees(&g, o);
            for v in 0..g.vertex_count() {
                let want = if g.degree(v) > 0 { m[v] } else { 0 };
                prop_assert_eq!(out[v], want);
            }
            // deterministic
            prop_assert_eq!(find_m_orientation(&g, &edges, &m).unwrap(), Some(o.clone()));
        }
        let perm = common::random_permutation(&mut ChaCha8Rng::seed_from_u64(seed), g.vertex_count());
        let h = g.relabel(&perm);
        let mut moved = vec![0; g.vertex_count()];
        for v in 0..g.vertex_count() {
            moved[perm[v]] = m[v];
        }
        prop_assert_eq!(found.is_some(), find_m_orientation(&h, &edges, &moved.into()).unwrap().is_some());
    }

    #[test]
    fn solver_matches_naive_oracle(g in graph_strategy(5, 8), b in prop::collection::vec(0usize..=3, 5), r in prop::collection::vec(0usize..=3, 5)) {
        let n = g.vertex_count();
        let (b, r) = (b[..n].to_vec(), r[..n].to_vec());
        let oracle = common::PartitionOracle::new(&g);
        let report = decide_partition(&g, &b.clone().into(), &r.clone().into(), Budget::unlimited()).unwrap();
        prop_assert_eq!(report.decision.is_yes(), oracle.has_partition(&b, &r));
    }
}

/// Targets realised by some spanning-tree pair, so the yes side gets exercised.
fn realisable_targets(g: &MultiGraph, rng: &mut ChaCha8Rng) -> Option<(DegreeVector, DegreeVector)> {
    let pairs = common::tree_pairs(g);
    if pairs.is_empty() {
        return None;
    }
    let (blue, red) = &pairs[rng.gen_range(0..pairs.len())];
    let pick = |set: &[usize], rng: &mut ChaCha8Rng| {
        let mut out = vec![0; g.vertex_count()];
        for &e in set {
            let (a, b) = g.endpoints(e);
            out[if rng.gen_bool(0.5) { a } else { b }] += 1;
        }
        DegreeVector::new(out)
    };
    Some((pick(blue, rng), pick(red, rng)))
}

#[test]
fn yes_witnesses_verify_and_colors_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(2..=5);
        let g = common::random_multigraph(&mut rng, n, 2 * (n - 1));
        if g.edge_count() != 2 * (g.vertex_count() - 1) {
            continue;
        }
        let Some((b, r)) = realisable_targets(&g, &mut rng) else { continue };
        let report = decide_partition(&g, &b, &r, Budget::unlimited()).unwrap();
        let Decision::Yes(w) = report.decision else {
            panic!("realisable targets refuted on {g:?} b={b:?} r={r:?}");
        };
        assert!(verify_witness(&g, &b, &r, &w).unwrap().is_accept());
        let (blue, red) = extract_color_classes(&w);
        assert_eq!(blue.len(), g.vertex_count() - 1);
        assert_eq!(red.len(), g.vertex_count() - 1);

        let swapped = decide_partition(&g, &r, &b, Budget::unlimited()).unwrap();
        assert!(swapped.decision.is_yes());
        assert!(verify_witness(&g, &r, &b, &w.swapped()).unwrap().is_accept());
        let (sb, sr) = extract_color_classes(&w.swapped());
        assert_eq!((sb, sr), (red, blue));

        // same inputs, same witness
        assert_eq!(decide_partition(&g, &b, &r, Budget::unlimited()).unwrap().decision, Decision::Yes(w));
        checked += 1;
    }
}

#[test]
fn k4_example() {
    let g = MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let b = DegreeVector::new(vec![1, 1, 1, 0]);
    let r = DegreeVector::new(vec![0, 1, 1, 1]);
    let report = decide_partition(&g, &b, &r, Budget::unlimited()).unwrap();
    assert!(verify_witness(&g, &b, &r, report.decision.witness().unwrap()).unwrap().is_accept());
    assert!(common::PartitionOracle::new(&g).has_partition(b.values(), r.values()));
}

#[test]
fn node_budgets_are_deterministic() {
    let inst = brpart::NaeInstance::new(4, vec![[1, 2, 3], [2, 3, 4]]).unwrap();
    let art = build_reduction(&inst).unwrap();
    let run = |nodes| decide_partition(art.graph(), art.b(), art.r(), Budget::nodes(nodes)).unwrap();
    let small = run(1000);
    assert_eq!(small.decision, Decision::BudgetExhausted);
    assert_eq!(small, run(1000));
    let full = run(u64::MAX);
    assert!(full.decision.is_yes());
    assert_eq!(full, run(u64::MAX));
}

#[test]
fn reduction_serialization_is_byte_identical() {
    for seed in 0..20 {
        let inst = generate_random_instance(8, 1 + seed as usize % 6, seed).unwrap();
        let a = to_json_pretty(&InstanceJson::from_artifact(&build_reduction(&inst).unwrap()));
        let b = to_json_pretty(&InstanceJson::from_artifact(&build_reduction(&inst).unwrap()));
        assert_eq!(a, b);
    }
}
