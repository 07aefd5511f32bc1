//! Level-by-level classification of temporal edges by how many relabels it
//! takes to turn them into non-bridges.
//!
//! Level 0 is the set of non-bridges. A bridge gets level `k + 1` when some
//! level-`k` edge crosses its reachability partition: once that edge is a
//! non-bridge it can be moved into the bridge's snapshot, closing a cycle
//! through the bridge. The search stops at the first empty level; whatever is
//! left unlevelled can never become a non-bridge.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};
use crate::reachability::{compute_cross, CrossMap};
use crate::sequence::{ReconfigSequence, RelabelOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Changeability {
    /// Becomes a non-bridge after this many relabels, and no fewer.
    Changeable(u32),
    Unchangeable,
}

impl Changeability {
    pub fn level(self) -> Option<u32> {
        match self {
            Changeability::Changeable(k) => Some(k),
            Changeability::Unchangeable => None,
        }
    }

    pub fn is_changeable(self) -> bool {
        matches!(self, Changeability::Changeable(_))
    }
}

impl fmt::Display for Changeability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Changeability::Changeable(k) => write!(f, "{k}"),
            Changeability::Unchangeable => f.write_str("unchangeable"),
        }
    }
}

/// Result of the level computation, with one back reference per levelled bridge.
#[derive(Clone, Debug)]
pub struct ChangeTable {
    edges: Vec<TemporalEdge>,
    level: Vec<Option<u32>>,
    back_ref: Vec<Option<u32>>,
    levels: Vec<Vec<u32>>,
    cross_visits: usize,
    skipped_collisions: usize,
}

impl ChangeTable {
    fn index_of(&self, te: TemporalEdge) -> Option<usize> {
        self.edges.binary_search(&te).ok()
    }

    /// `None` if `te` is not an edge of the graph the table was built for.
    pub fn level(&self, te: TemporalEdge) -> Option<Changeability> {
        let i = self.index_of(te)?;
        Some(match self.level[i] {
            Some(k) => Changeability::Changeable(k),
            None => Changeability::Unchangeable,
        })
    }

    /// The level-`(k-1)` edge that must be changed first; `None` at level 0.
    pub fn back_ref(&self, te: TemporalEdge) -> Option<TemporalEdge> {
        let i = self.index_of(te)?;
        self.back_ref[i].map(|j| self.edges[j as usize])
    }

    /// Largest non-empty level, `None` if every edge is unchangeable.
    pub fn max_level(&self) -> Option<u32> {
        self.levels.len().checked_sub(1).map(|k| k as u32)
    }

    /// Members of `Change(k)` in the order they were processed (canonical).
    pub fn level_set(&self, k: u32) -> Vec<TemporalEdge> {
        self.levels.get(k as usize).map(|l| l.iter().map(|&i| self.edges[i as usize]).collect()).unwrap_or_default()
    }

    /// All edges with their classification, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (TemporalEdge, Changeability)> + '_ {
        self.edges
            .iter()
            .zip(&self.level)
            .map(|(te, l)| (*te, l.map_or(Changeability::Unchangeable, Changeability::Changeable)))
    }

    /// Number of `Cross` entries inspected during expansion.
    pub fn cross_visits(&self) -> usize {
        self.cross_visits
    }

    /// Expansions dropped because the enabling relabel would collide.
    pub fn skipped_collisions(&self) -> usize {
        self.skipped_collisions
    }
}

/// Level-synchronous search over `cross`, which must have been computed from `g`.
///
/// Levels and their members are processed in canonical order, so each
/// back reference points at the canonically first enabling edge.
pub fn compute_change_table(g: &TemporalGraph, cross: &CrossMap) -> Result<ChangeTable> {
    if cross.edges().len() != g.edge_count() || !cross.edges().iter().copied().eq(g.edges()) {
        return Err(Error::Internal("cross map was computed for a different graph".into()));
    }
    let edges = cross.edges().to_vec();
    let m = edges.len();
    let mut level = vec![None; m];
    let mut back_ref = vec![None; m];
    let mut levels: Vec<Vec<u32>> = Vec::new();
    let mut cross_visits = 0;
    let mut skipped_collisions = 0;

    let mut current: Vec<u32> = (0..m as u32).filter(|&i| !cross.is_bridge_at(i as usize)).collect();
    for &i in &current {
        level[i as usize] = Some(0);
    }
    let mut k = 0u32;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            let enabler = edges[i as usize];
            for &b in cross.entries(i as usize) {
                cross_visits += 1;
                let bi = b as usize;
                if level[bi].is_some() {
                    continue;
                }
                // Moving the enabler into the bridge's snapshot must not land on an existing edge.
                if g.contains(enabler.edge.at(edges[bi].time)) {
                    skipped_collisions += 1;
                    continue;
                }
                level[bi] = Some(k + 1);
                back_ref[bi] = Some(i);
                next.push(b);
            }
        }
        next.sort_unstable();
        levels.push(std::mem::replace(&mut current, next));
        k += 1;
    }
    Ok(ChangeTable { edges, level, back_ref, levels, cross_visits, skipped_collisions })
}

/// Shortest relabel sequence after which `target` is a non-bridge.
///
/// Walks the back references `target = c_k, c_{k-1}, ..., c_0`; op `j`
/// moves `c_{j-1}` into the snapshot of `c_j`.
pub fn sequence_to_nonbridge(g: &TemporalGraph, table: &ChangeTable, target: TemporalEdge) -> Result<ReconfigSequence> {
    match table.level(target) {
        None => return Err(Error::MissingEdge(target)),
        Some(Changeability::Unchangeable) => return Err(Error::Unchangeable(target)),
        Some(Changeability::Changeable(_)) => {}
    }
    let mut chain = vec![target];
    while let Some(prev) = table.back_ref(*chain.last().expect("non-empty")) {
        chain.push(prev);
    }
    chain.reverse();
    let ops = chain.windows(2).map(|w| RelabelOp::new(w[0].edge, w[0].time, w[1].time)).collect::<Result<Vec<_>>>()?;
    debug_assert!(ops.iter().all(|op| op.edge.v().index() < g.vertex_count()));
    Ok(ops.into())
}

/// Classification of every temporal edge of an always-connected graph.
pub fn classify(g: &TemporalGraph) -> Result<BTreeMap<TemporalEdge, Changeability>> {
    let cross = compute_cross(g)?;
    Ok(compute_change_table(g, &cross)?.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sequence::validate_sequence;

    fn te(g: &TemporalGraph, a: &str, b: &str, t: u32) -> TemporalEdge {
        g.edge_by_names(a, b).unwrap().at(t)
    }

    fn table(g: &TemporalGraph) -> ChangeTable {
        compute_change_table(g, &compute_cross(g).unwrap()).unwrap()
    }

    #[test]
    fn chain2_levels() {
        let g = fixtures::chain2();
        let t = table(&g);
        let level = |a, b, time| t.level(te(&g, a, b, time)).unwrap();
        for (a, b) in [("a", "b"), ("b", "c"), ("c", "a")] {
            assert_eq!(level(a, b, 1), Changeability::Changeable(0));
        }
        for (a, b) in [("a", "b"), ("d", "c"), ("a", "d")] {
            assert_eq!(level(a, b, 2), Changeability::Changeable(1));
        }
        assert_eq!(level("a", "d", 1), Changeability::Changeable(2));
        assert_eq!(t.max_level(), Some(2));
        assert_eq!(t.level_set(2), [te(&g, "a", "d", 1)]);
        assert!(t.level_set(3).is_empty());
    }

    #[test]
    fn chain2_sequences() {
        let g = fixtures::chain2();
        let t = table(&g);

        assert!(sequence_to_nonbridge(&g, &t, te(&g, "a", "b", 1)).unwrap().is_empty());

        // (cd,2) is enabled by the canonically first level-0 crosser, ac.
        let seq = sequence_to_nonbridge(&g, &t, te(&g, "d", "c", 2)).unwrap();
        let ac = g.edge_by_names("a", "c").unwrap();
        assert_eq!(seq.ops(), [RelabelOp::new(ac, 1, 2).unwrap()]);

        let target = te(&g, "a", "d", 1);
        let seq = sequence_to_nonbridge(&g, &t, target).unwrap();
        assert_eq!(seq.len(), 2);
        let cd = g.edge_by_names("c", "d").unwrap();
        assert_eq!(seq.ops()[1], RelabelOp::new(cd, 2, 1).unwrap());
        let after = seq.apply_to(&g).unwrap();
        assert!(validate_sequence(&g, &seq, &after).unwrap().ok);
        assert!(!after.is_bridge(target));
        // a-d-c-a closes at time 1
        assert!(after.contains(te(&g, "c", "d", 1)) && after.contains(te(&g, "a", "c", 2)));
    }

    #[test]
    fn infeasible_fixture_is_all_unchangeable() {
        let (g, _) = fixtures::infeas();
        let t = table(&g);
        assert!(t.iter().all(|(_, c)| c == Changeability::Unchangeable));
        assert_eq!(t.max_level(), None);
        let any = g.edges().next().unwrap();
        assert_eq!(sequence_to_nonbridge(&g, &t, any).unwrap_err(), Error::Unchangeable(any));
    }

    #[test]
    fn tri_classification() {
        let (g, _) = fixtures::tri();
        let c = classify(&g).unwrap();
        for (a, b) in [("a", "b"), ("b", "c"), ("a", "c")] {
            assert_eq!(c[&te(&g, a, b, 1)], Changeability::Changeable(0));
        }
        for (a, b) in [("a", "b"), ("b", "c")] {
            assert_eq!(c[&te(&g, a, b, 2)], Changeability::Changeable(1));
        }
    }

    #[test]
    fn bridgeless_graph_is_level_zero() {
        let g = TemporalGraph::from_named(&["a", "b", "c"], 1, &[("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]).unwrap();
        assert!(classify(&g).unwrap().values().all(|&c| c == Changeability::Changeable(0)));
    }

    #[test]
    fn mismatched_cross_map_is_rejected() {
        let (g1, g2) = fixtures::tri();
        let cross = compute_cross(&g2).unwrap();
        assert!(matches!(compute_change_table(&g1, &cross), Err(Error::Internal(_))));
    }
}
