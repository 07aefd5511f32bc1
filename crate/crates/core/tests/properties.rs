use std::collections::BTreeSet;

use proptest::prelude::*;
use tgr_core::oracle::{generate_random_instance, random_compatible_target, random_reachable_target, valid_relabels};
use tgr_core::{compute_change_table, compute_cross, reachability_partition, RelabelOp, TemporalEdge, TemporalGraph};

prop_compose! {
    fn graph(max_n: usize, max_t: u32)(n in 1..=max_n, t in 1..=max_t, seed in any::<u64>(), fill in 0.0..1.0f64)
        -> TemporalGraph
    {
        let capacity = n * n.saturating_sub(1) / 2 - n.saturating_sub(1);
        let extra = (capacity as f64 * fill * fill) as usize;
        generate_random_instance(n, t, extra, seed).unwrap()
    }
}

fn naive_bridges(g: &TemporalGraph) -> BTreeSet<TemporalEdge> {
    g.edges()
        .filter(|te| {
            let without = g.with_edges(g.edges().filter(|x| x != te)).unwrap();
            !without.snapshot(te.time).unwrap().is_connected()
        })
        .collect()
}

/// Every `(edge, new time)` pair, valid or not.
fn all_moves(g: &TemporalGraph) -> Vec<RelabelOp> {
    let mut out = Vec::new();
    for te in g.edges() {
        for to in 1..=g.lifetime() {
            if to != te.time {
                out.push(RelabelOp::new(te.edge, te.time, to).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bridges_match_removal_check(g in graph(9, 4)) {
        prop_assert!(g.is_always_connected());
        let fast = g.find_bridges().unwrap();
        prop_assert_eq!(&fast, &naive_bridges(&g));
        for te in g.edges() {
            prop_assert_eq!(g.is_bridge(te), fast.contains(&te));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn valid_relabel_iff_result_is_always_connected(g in graph(6, 3)) {
        let valid: BTreeSet<RelabelOp> = valid_relabels(&g).into_iter().collect();
        for op in all_moves(&g) {
            let free = !g.contains(op.target());
            let expected = free && g.apply_relabel(&op).unwrap().is_always_connected();
            prop_assert_eq!(g.is_valid_relabel(&op), expected, "{:?}", op);
            prop_assert_eq!(valid.contains(&op), expected);
        }
    }

    #[test]
    fn relabels_are_reversible(g in graph(7, 4)) {
        for op in valid_relabels(&g) {
            let h = g.apply_relabel(&op).unwrap();
            let back = op.reversed();
            prop_assert!(h.is_valid_relabel(&back));
            prop_assert_eq!(h.apply_relabel(&back).unwrap(), g.clone());
        }
    }

    #[test]
    fn difference_is_symmetric(g in graph(8, 4), seed in any::<u64>(), steps in 0usize..30) {
        let walked = random_reachable_target(&g, steps, seed);
        prop_assert_eq!(g.difference(&walked).unwrap(), walked.difference(&g).unwrap());
        if let Some(other) = random_compatible_target(&g, seed, 10) {
            prop_assert!(g.check_pair_counts(&other));
            prop_assert_eq!(g.difference(&other).unwrap(), other.difference(&g).unwrap());
        }
    }

    #[test]
    fn cross_map_matches_definition(g in graph(7, 3)) {
        let cross = compute_cross(&g).unwrap();
        let bridges: Vec<TemporalEdge> = cross.bridges().collect();
        prop_assert_eq!(bridges.iter().copied().collect::<BTreeSet<_>>(), g.find_bridges().unwrap());
        let partitions: Vec<_> = bridges.iter().map(|&b| reachability_partition(&g, b).unwrap()).collect();
        for te in g.edges() {
            let expected: Vec<TemporalEdge> = partitions
                .iter()
                .filter(|p| p.bridge() != te && p.is_crossing(te.edge))
                .map(|p| p.bridge())
                .collect();
            prop_assert_eq!(cross.get(te).unwrap(), expected);
        }
        for p in &partitions {
            let mut all: Vec<_> = p.comp_u();
            all.extend(p.comp_v());
            all.sort();
            prop_assert_eq!(all.len(), g.vertex_count());
            all.dedup();
            prop_assert_eq!(all.len(), g.vertex_count());
        }
    }

    #[test]
    fn cross_work_per_bridge_is_linear(g in graph(12, 4)) {
        let cross = compute_cross(&g).unwrap();
        let stats = cross.stats();
        let widest = (1..=g.lifetime()).map(|t| g.snapshot(t).unwrap().len()).max().unwrap_or(0);
        prop_assert!(stats.max_bridge_work <= 2 * widest + g.vertex_count() + g.edge_count());
        prop_assert_eq!(stats.edge_checks, stats.bridges * g.edge_count());
    }

    #[test]
    fn change_table_never_hits_a_collision_in_its_sequences(g in graph(6, 3)) {
        let table = compute_change_table(&g, &compute_cross(&g).unwrap()).unwrap();
        for (te, level) in table.iter() {
            if level.is_changeable() {
                let seq = tgr_core::sequence_to_nonbridge(&g, &table, te).unwrap();
                let mut h = g.clone();
                for op in &seq {
                    prop_assert!(h.is_valid_relabel(op), "{:?} in {:?}", op, seq);
                    h = h.apply_relabel(op).unwrap();
                }
                prop_assert!(h.contains(te) && !h.is_bridge(te));
            }
        }
    }
}
