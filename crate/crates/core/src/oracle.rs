//! Exhaustive ground truth for small instances, and random instance generators.
//!
//! The oracle runs a breadth-first search over the always-connected graphs
//! reachable from a start graph by valid relabels. States are identified by
//! their canonical edge list only; vertex names and lifetime are fixed.

use std::collections::{BTreeMap, HashSet};

use indexmap::map::Entry;
use indexmap::IndexMap;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{StaticEdge, TemporalEdge, TemporalGraph, Time, VertexId};
use crate::sequence::{ReconfigSequence, RelabelOp};

pub const DEFAULT_MAX_STATES: usize = 5_000_000;

/// Canonical identity of a search state: the sorted temporal edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalState(Vec<TemporalEdge>);

impl CanonicalState {
    pub fn of(g: &TemporalGraph) -> Self {
        CanonicalState(g.edges().collect())
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_states: usize,
    pub max_depth: Option<usize>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_states: DEFAULT_MAX_STATES, max_depth: None }
    }
}

impl OracleBudget {
    pub fn states(max_states: usize) -> Self {
        OracleBudget { max_states: max_states.max(1), max_depth: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortestOutcome {
    Found(ReconfigSequence),
    /// The whole reachable component was explored without meeting the target.
    Unreachable,
    /// Every state within `max_depth` steps was explored without a hit.
    NoneWithinDepth,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinStepsOutcome {
    Steps(usize),
    Never,
    NoneWithinDepth,
    BudgetExceeded,
}

enum Search {
    Goal(ReconfigSequence),
    Exhausted,
    DepthLimited,
    Budget,
}

struct Node {
    parent: usize,
    op: Option<RelabelOp>,
    depth: usize,
}

/// Valid relabels of an always-connected graph, in canonical order.
pub fn valid_relabels(g: &TemporalGraph) -> Vec<RelabelOp> {
    let bridges = g.find_bridges().unwrap_or_default();
    let mut ops = Vec::new();
    for te in g.edges().filter(|te| !bridges.contains(te)) {
        for to in 1..=g.lifetime() {
            if to != te.time && !g.contains(te.edge.at(to)) {
                ops.push(RelabelOp { edge: te.edge, from: te.time, to });
            }
        }
    }
    ops
}

fn search(start: &TemporalGraph, budget: OracleBudget, is_goal: impl Fn(&TemporalGraph) -> bool) -> Search {
    let mut nodes: IndexMap<CanonicalState, Node> = IndexMap::new();
    nodes.insert(CanonicalState::of(start), Node { parent: usize::MAX, op: None, depth: 0 });
    let path_to = |nodes: &IndexMap<CanonicalState, Node>, mut i: usize| {
        let mut ops = Vec::new();
        while let Some(op) = nodes[i].op {
            ops.push(op);
            i = nodes[i].parent;
        }
        ops.reverse();
        ReconfigSequence::from(ops)
    };
    if is_goal(start) {
        return Search::Goal(ReconfigSequence::new());
    }

    let mut pruned = false;
    let mut cursor = 0;
    while cursor < nodes.len() {
        let (state, node) = nodes.get_index(cursor).expect("cursor in range");
        let depth = node.depth;
        if budget.max_depth.is_some_and(|d| depth >= d) {
            pruned = true;
            cursor += 1;
            continue;
        }
        let g = start.with_edges(state.edges().iter().copied()).expect("states are valid graphs");
        for op in valid_relabels(&g) {
            let next = g.apply_relabel(&op).expect("op was checked");
            match nodes.entry(CanonicalState::of(&next)) {
                Entry::Occupied(_) => continue,
                Entry::Vacant(slot) => {
                    if slot.index() >= budget.max_states {
                        return Search::Budget;
                    }
                    let index = slot.index();
                    slot.insert(Node { parent: cursor, op: Some(op), depth: depth + 1 });
                    if is_goal(&next) {
                        return Search::Goal(path_to(&nodes, index));
                    }
                }
            }
        }
        cursor += 1;
    }
    if pruned {
        Search::DepthLimited
    } else {
        Search::Exhausted
    }
}

/// Shortest valid sequence from `g1` to `g2` by exhaustive BFS.
pub fn oracle_shortest_sequence(g1: &TemporalGraph, g2: &TemporalGraph, budget: OracleBudget) -> ShortestOutcome {
    let goal = CanonicalState::of(g2);
    match search(g1, budget, |g| g.edge_count() == goal.0.len() && g.edges().eq(goal.0.iter().copied())) {
        Search::Goal(seq) => ShortestOutcome::Found(seq),
        Search::Exhausted => ShortestOutcome::Unreachable,
        Search::DepthLimited => ShortestOutcome::NoneWithinDepth,
        Search::Budget => ShortestOutcome::BudgetExceeded,
    }
}

/// Fewest valid relabels after which the slot `target` holds a non-bridge.
///
/// Intermediate states where the slot is empty do not count as success.
pub fn oracle_min_steps_to_nonbridge(g: &TemporalGraph, target: TemporalEdge, budget: OracleBudget) -> MinStepsOutcome {
    match search(g, budget, |s| s.contains(target) && !s.is_bridge(target)) {
        Search::Goal(seq) => MinStepsOutcome::Steps(seq.len()),
        Search::Exhausted => MinStepsOutcome::Never,
        Search::DepthLimited => MinStepsOutcome::NoneWithinDepth,
        Search::Budget => MinStepsOutcome::BudgetExceeded,
    }
}

/// Every state reachable from `g` (including `g`), or `None` over budget.
pub fn reachable_states(g: &TemporalGraph, max_states: usize) -> Option<Vec<TemporalGraph>> {
    let mut seen: IndexMap<CanonicalState, ()> = IndexMap::new();
    seen.insert(CanonicalState::of(g), ());
    let mut cursor = 0;
    while cursor < seen.len() {
        let state = seen.get_index(cursor).expect("in range").0.clone();
        let current = g.with_edges(state.0).expect("valid");
        for op in valid_relabels(&current) {
            let next = current.apply_relabel(&op).expect("checked");
            let key = CanonicalState::of(&next);
            if !seen.contains_key(&key) {
                if seen.len() >= max_states {
                    return None;
                }
                seen.insert(key, ());
            }
        }
        cursor += 1;
    }
    Some(seen.into_keys().map(|s| g.with_edges(s.0).expect("valid")).collect())
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn pair(a: usize, b: usize) -> StaticEdge {
    StaticEdge::new(VertexId(a as u32), VertexId(b as u32)).expect("distinct endpoints")
}

/// Uniformly random labelled spanning tree via a random Prüfer sequence.
fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<StaticEdge> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![pair(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        edges.push(pair(leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push(pair(leaf, n - 1));
    edges
}

/// Random always-connected graph: per snapshot a uniform spanning tree plus
/// `extra` distinct non-tree pairs. Vertices are named `v0..v{n-1}`.
pub fn generate_random_instance(n: usize, lifetime: Time, extra: usize, seed: u64) -> Result<TemporalGraph> {
    if n == 0 {
        return Err(Error::InvalidInstance("need at least one vertex".into()));
    }
    if lifetime == 0 {
        return Err(Error::ZeroLifetime);
    }
    let capacity = n * (n - 1) / 2 - (n - 1);
    if extra > capacity {
        return Err(Error::InvalidInstance(format!(
            "{extra} extra edges requested but only {capacity} non-tree pairs exist for n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for t in 1..=lifetime {
        let tree = random_tree(n, &mut rng);
        let mut used: HashSet<StaticEdge> = tree.iter().copied().collect();
        let mut layer = tree;
        if extra * 2 <= capacity {
            while layer.len() < n - 1 + extra {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if a != b && used.insert(pair(a, b)) {
                    layer.push(pair(a, b));
                }
            }
        } else {
            let mut free: Vec<StaticEdge> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| pair(a, b))).filter(|e| !used.contains(e)).collect();
            free.shuffle(&mut rng);
            layer.extend(free.into_iter().take(extra));
        }
        edges.extend(layer.into_iter().map(|e| e.at(t)));
    }
    TemporalGraph::new(vertex_names(n), lifetime, edges)
}

/// Applies up to `steps` random valid relabels. The result is reachable from
/// `g` by construction. Stops early when no valid relabel turns up.
pub fn random_reachable_target(g: &TemporalGraph, steps: usize, seed: u64) -> TemporalGraph {
    const ATTEMPTS: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = g.clone();
    if g.lifetime() < 2 {
        return current;
    }
    let mut edges: Vec<TemporalEdge> = current.edges().collect();
    'walk: for _ in 0..steps {
        for _ in 0..ATTEMPTS {
            let i = rng.random_range(0..edges.len().max(1));
            let Some(&te) = edges.get(i) else { break 'walk };
            let to = rng.random_range(1..=g.lifetime());
            let Ok(op) = RelabelOp::new(te.edge, te.time, to) else { continue };
            if current.is_valid_relabel(&op) {
                current.relabel_in_place(&op).expect("valid");
                edges[i] = op.target();
                continue 'walk;
            }
        }
        break;
    }
    current
}

/// A graph with the same pair multiplicities as `g` but independently random
/// time labels, retried until always-connected. Not necessarily reachable.
pub fn random_compatible_target(g: &TemporalGraph, seed: u64, max_tries: usize) -> Option<TemporalGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut multiplicity: BTreeMap<StaticEdge, usize> = BTreeMap::new();
    for te in g.edges() {
        *multiplicity.entry(te.edge).or_default() += 1;
    }
    let times: Vec<Time> = (1..=g.lifetime()).collect();
    for _ in 0..max_tries {
        let edges = multiplicity.iter().flat_map(|(&e, &m)| {
            let chosen: Vec<Time> = times.choose_multiple(&mut rng, m).copied().collect();
            chosen.into_iter().map(move |t| e.at(t))
        });
        let candidate = g.with_edges(edges.collect::<Vec<_>>()).expect("distinct slots");
        if candidate.is_always_connected() {
            return Some(candidate);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sequence::validate_sequence;

    fn te(g: &TemporalGraph, a: &str, b: &str, t: u32) -> TemporalEdge {
        g.edge_by_names(a, b).unwrap().at(t)
    }

    #[test]
    fn shortest_on_fixtures() {
        let (g1, g2) = fixtures::tri();
        match oracle_shortest_sequence(&g1, &g2, OracleBudget::default()) {
            ShortestOutcome::Found(seq) => {
                assert_eq!(seq.len(), 1);
                assert!(validate_sequence(&g1, &seq, &g2).unwrap().ok);
            }
            other => panic!("unexpected {other:?}"),
        }
        let (i1, i2) = fixtures::infeas();
        assert_eq!(oracle_shortest_sequence(&i1, &i2, OracleBudget::default()), ShortestOutcome::Unreachable);
        assert_eq!(
            oracle_shortest_sequence(&g1, &g1, OracleBudget::default()),
            ShortestOutcome::Found(ReconfigSequence::new())
        );
    }

    #[test]
    fn min_steps_on_fixtures() {
        let g = fixtures::chain2();
        let b = OracleBudget::default();
        assert_eq!(oracle_min_steps_to_nonbridge(&g, te(&g, "a", "d", 1), b), MinStepsOutcome::Steps(2));
        assert_eq!(oracle_min_steps_to_nonbridge(&g, te(&g, "a", "b", 1), b), MinStepsOutcome::Steps(0));
        let (i1, _) = fixtures::infeas();
        for e in i1.edges() {
            assert_eq!(oracle_min_steps_to_nonbridge(&i1, e, b), MinStepsOutcome::Never);
        }
    }

    #[test]
    fn budget_is_not_unreachable() {
        let g = fixtures::chain2();
        let far = te(&g, "a", "d", 1);
        assert_eq!(oracle_min_steps_to_nonbridge(&g, far, OracleBudget::states(1)), MinStepsOutcome::BudgetExceeded);
        let depth_capped = OracleBudget { max_states: 100, max_depth: Some(1) };
        assert_eq!(oracle_min_steps_to_nonbridge(&g, far, depth_capped), MinStepsOutcome::NoneWithinDepth);
        let deep_enough = OracleBudget { max_states: 100, max_depth: Some(2) };
        assert_eq!(oracle_min_steps_to_nonbridge(&g, far, deep_enough), MinStepsOutcome::Steps(2));
    }

    #[test]
    fn chain2_reachable_component_is_consistent() {
        let g = fixtures::chain2();
        let states = reachable_states(&g, 10_000).unwrap();
        assert!(states.iter().all(TemporalGraph::is_always_connected));
        let (i1, _) = fixtures::infeas();
        assert_eq!(reachable_states(&i1, 10).unwrap().len(), 1);
    }

    #[test]
    fn generator_shapes() {
        let g = generate_random_instance(4, 2, 1, 7).unwrap();
        assert!(g.is_always_connected());
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g, generate_random_instance(4, 2, 1, 7).unwrap());

        let trees = generate_random_instance(6, 3, 0, 1).unwrap();
        assert_eq!(trees.find_bridges().unwrap().len(), trees.edge_count());

        assert!(generate_random_instance(4, 2, 4, 0).is_err());
        let full = generate_random_instance(4, 2, 3, 0).unwrap();
        assert_eq!(full.edge_count(), 12);
        assert_eq!(generate_random_instance(1, 2, 0, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn random_targets_are_compatible() {
        let g = generate_random_instance(5, 3, 2, 11).unwrap();
        let walked = random_reachable_target(&g, 20, 3);
        assert!(walked.is_always_connected());
        assert!(g.check_pair_counts(&walked));
        let shuffled = random_compatible_target(&g, 5, 200).unwrap();
        assert!(shuffled.is_always_connected());
        assert!(g.check_pair_counts(&shuffled));
    }
}
