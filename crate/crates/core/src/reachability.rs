//! Reachability partitions of bridges and the crossing-edge index built from them.
//!
//! Removing a bridge `({u,v}, t)` from a connected snapshot leaves exactly two
//! components, one holding `u` and one holding `v`. A pair with one endpoint
//! in each is a *crossing* pair: relabeling a non-bridge copy of it into time
//! `t` is precisely what turns the bridge into a non-bridge.

use crate::connectivity::{self, Adjacency};
use crate::error::{Error, Result};
use crate::graph::{StaticEdge, TemporalEdge, TemporalGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Component of the bridge's smaller endpoint.
    U,
    /// Component of the bridge's larger endpoint.
    V,
}

/// The two components of a snapshot with one bridge removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityPartition {
    bridge: TemporalEdge,
    // true = same component as bridge.u()
    on_u_side: Vec<bool>,
}

impl ReachabilityPartition {
    pub fn bridge(&self) -> TemporalEdge {
        self.bridge
    }

    pub fn side(&self, x: VertexId) -> Side {
        if self.on_u_side[x.index()] {
            Side::U
        } else {
            Side::V
        }
    }

    /// Vertices reachable from the bridge's `u` endpoint, ascending.
    pub fn comp_u(&self) -> Vec<VertexId> {
        self.collect(true)
    }

    /// Vertices reachable from the bridge's `v` endpoint, ascending.
    pub fn comp_v(&self) -> Vec<VertexId> {
        self.collect(false)
    }

    fn collect(&self, side: bool) -> Vec<VertexId> {
        self.on_u_side.iter().enumerate().filter(|(_, &s)| s == side).map(|(i, _)| VertexId(i as u32)).collect()
    }

    /// One endpoint on each side.
    pub fn is_crossing(&self, e: StaticEdge) -> bool {
        self.on_u_side[e.u().index()] != self.on_u_side[e.v().index()]
    }
}

fn snapshot_adjacency(g: &TemporalGraph, time: u32) -> (Vec<StaticEdge>, Adjacency) {
    let es: Vec<_> = g.layer(time).iter().copied().collect();
    let adj = Adjacency::new(g.vertex_count(), &es);
    (es, adj)
}

/// Partition of `V` by reachability from each endpoint of `bridge` in its
/// snapshot with the bridge removed.
///
/// Fails if `bridge` is missing, is not a bridge, or its snapshot is not connected.
pub fn reachability_partition(g: &TemporalGraph, bridge: TemporalEdge) -> Result<ReachabilityPartition> {
    if !g.contains(bridge) {
        return Err(Error::MissingEdge(bridge));
    }
    let (es, adj) = snapshot_adjacency(g, bridge.time);
    let skip = es.binary_search(&bridge.edge).expect("present") as u32;
    let (from_u, _) = connectivity::reachable_from(&adj, bridge.edge.u().index(), Some(skip));
    let (from_v, _) = connectivity::reachable_from(&adj, bridge.edge.v().index(), Some(skip));
    if from_u[bridge.edge.v().index()] {
        return Err(Error::NotABridge(bridge));
    }
    if from_u.iter().zip(&from_v).any(|(a, b)| !a && !b) {
        return Err(Error::NotAlwaysConnected { time: bridge.time });
    }
    Ok(ReachabilityPartition { bridge, on_u_side: from_u })
}

/// Work counters from [`compute_cross`], used to check the per-bridge cost.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CrossStats {
    pub bridges: usize,
    /// Adjacency entries scanned by all partition searches.
    pub partition_work: usize,
    /// Crossing tests performed, one per (bridge, temporal edge).
    pub edge_checks: usize,
    /// Largest partition search plus crossing scan for a single bridge.
    pub max_bridge_work: usize,
}

/// `Cross(e,t)` for every temporal edge: the bridges whose partition `e` crosses.
///
/// Indexed by canonical edge position; each entry lists bridges in canonical order.
#[derive(Clone, Debug)]
pub struct CrossMap {
    edges: Vec<TemporalEdge>,
    cross: Vec<Vec<u32>>,
    is_bridge: Vec<bool>,
    stats: CrossStats,
}

impl CrossMap {
    /// Temporal edges in canonical order; positions are the map's indices.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn index_of(&self, te: TemporalEdge) -> Option<usize> {
        self.edges.binary_search(&te).ok()
    }

    pub(crate) fn entries(&self, index: usize) -> &[u32] {
        &self.cross[index]
    }

    pub(crate) fn is_bridge_at(&self, index: usize) -> bool {
        self.is_bridge[index]
    }

    /// `Cross(te)`, or `None` if `te` is not an edge of the graph.
    pub fn get(&self, te: TemporalEdge) -> Option<Vec<TemporalEdge>> {
        let i = self.index_of(te)?;
        Some(self.cross[i].iter().map(|&j| self.edges[j as usize]).collect())
    }

    pub fn bridges(&self) -> impl Iterator<Item = TemporalEdge> + '_ {
        self.edges.iter().zip(&self.is_bridge).filter_map(|(te, &b)| b.then_some(*te))
    }

    /// Total number of entries over all `Cross` sets.
    pub fn total_entries(&self) -> usize {
        self.cross.iter().map(Vec::len).sum()
    }

    pub fn stats(&self) -> CrossStats {
        self.stats
    }
}

/// Computes [`CrossMap`] for an always-connected graph.
///
/// Each bridge gets one partition search over its snapshot (`O(n + m_t)`)
/// and one crossing test per temporal edge (`O(M)`), so `O(M^2)` overall.
/// A bridge is never listed in its own `Cross` entry.
pub fn compute_cross(g: &TemporalGraph) -> Result<CrossMap> {
    let bridge_set = g.find_bridges()?;
    let edges: Vec<TemporalEdge> = g.edges().collect();
    let is_bridge: Vec<bool> = edges.iter().map(|te| bridge_set.contains(te)).collect();
    let mut cross = vec![Vec::new(); edges.len()];
    let mut stats = CrossStats::default();

    let mut cached: Option<(u32, Vec<StaticEdge>, Adjacency)> = None;
    for (bi, bridge) in edges.iter().enumerate() {
        if !is_bridge[bi] {
            continue;
        }
        if cached.as_ref().map(|c| c.0) != Some(bridge.time) {
            let (es, adj) = snapshot_adjacency(g, bridge.time);
            cached = Some((bridge.time, es, adj));
        }
        let (_, es, adj) = cached.as_ref().expect("filled above");
        let skip = es.binary_search(&bridge.edge).expect("present") as u32;
        // The snapshot is connected, so everything not reached from u is on v's side.
        let (on_u_side, work) = connectivity::reachable_from(adj, bridge.edge.u().index(), Some(skip));
        let partition = ReachabilityPartition { bridge: *bridge, on_u_side };

        for (ei, te) in edges.iter().enumerate() {
            if ei != bi && partition.is_crossing(te.edge) {
                cross[ei].push(bi as u32);
            }
        }
        stats.bridges += 1;
        stats.partition_work += work;
        stats.edge_checks += edges.len();
        stats.max_bridge_work = stats.max_bridge_work.max(work + edges.len());
    }
    Ok(CrossMap { edges, cross, is_bridge, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(g: &TemporalGraph, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    fn te(g: &TemporalGraph, a: &str, b: &str, t: u32) -> TemporalEdge {
        g.edge_by_names(a, b).unwrap().at(t)
    }

    #[test]
    fn chain2_partitions() {
        let g = fixtures::chain2();
        let p = reachability_partition(&g, te(&g, "a", "d", 1)).unwrap();
        assert_eq!(names(&g, &p.comp_u()), ["a", "b", "c"]);
        assert_eq!(names(&g, &p.comp_v()), ["d"]);
        assert!(p.is_crossing(g.edge_by_names("d", "c").unwrap()));
        assert!(!p.is_crossing(g.edge_by_names("b", "c").unwrap()));
        assert!(p.is_crossing(p.bridge().edge));

        let p = reachability_partition(&g, te(&g, "a", "d", 2)).unwrap();
        assert_eq!(names(&g, &p.comp_u()), ["a", "b"]);
        assert_eq!(names(&g, &p.comp_v()), ["c", "d"]);
    }

    #[test]
    fn partition_errors() {
        let g = fixtures::chain2();
        assert_eq!(
            reachability_partition(&g, te(&g, "a", "b", 1)).unwrap_err(),
            Error::NotABridge(te(&g, "a", "b", 1))
        );
        assert!(matches!(reachability_partition(&g, te(&g, "b", "c", 2)), Err(Error::MissingEdge(_))));
        let broken = TemporalGraph::from_named(&["a", "b", "c"], 1, &[("a", "b", 1)]).unwrap();
        assert_eq!(
            reachability_partition(&broken, te(&broken, "a", "b", 1)).unwrap_err(),
            Error::NotAlwaysConnected { time: 1 }
        );
    }

    #[test]
    fn seven_vertex_partition_covers_all_vertices() {
        // Two triangles joined by the bridge CD at time 2, plus a tail.
        let g = TemporalGraph::from_named(
            &["A", "B", "C", "D", "E", "F", "G"],
            2,
            &[
                ("A", "B", 2),
                ("B", "C", 2),
                ("A", "C", 2),
                ("C", "D", 2),
                ("D", "E", 2),
                ("E", "F", 2),
                ("D", "F", 2),
                ("F", "G", 2),
                ("A", "B", 1),
                ("B", "C", 1),
                ("C", "D", 1),
                ("D", "E", 1),
                ("E", "F", 1),
                ("F", "G", 1),
            ],
        )
        .unwrap();
        let p = reachability_partition(&g, te(&g, "C", "D", 2)).unwrap();
        let (cu, cv) = (p.comp_u(), p.comp_v());
        assert_eq!(cu.len() + cv.len(), 7);
        assert_eq!(names(&g, &cu), ["A", "B", "C"]);
        assert_eq!(names(&g, &cv), ["D", "E", "F", "G"]);
    }

    #[test]
    fn chain2_cross_entries() {
        let g = fixtures::chain2();
        let cross = compute_cross(&g).unwrap();
        let bc = cross.get(te(&g, "b", "c", 1)).unwrap();
        assert!(bc.contains(&te(&g, "a", "b", 2)) && bc.contains(&te(&g, "c", "d", 2)));
        assert!(cross.get(te(&g, "c", "a", 1)).unwrap().contains(&te(&g, "a", "d", 2)));
        assert!(cross.get(te(&g, "d", "c", 2)).unwrap().contains(&te(&g, "a", "d", 1)));
        assert_eq!(cross.bridges().count(), 4);
        for b in cross.bridges() {
            assert!(!cross.get(b).unwrap().contains(&b));
        }
    }

    #[test]
    fn tri_cross_of_ac() {
        let (g, _) = fixtures::tri();
        let cross = compute_cross(&g).unwrap();
        assert_eq!(cross.get(te(&g, "a", "c", 1)).unwrap(), [te(&g, "a", "b", 2), te(&g, "b", "c", 2)]);
    }

    #[test]
    fn bridgeless_graph_has_empty_cross() {
        let g = TemporalGraph::from_named(
            &["a", "b", "c"],
            2,
            &[("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("a", "b", 2), ("b", "c", 2), ("a", "c", 2)],
        )
        .unwrap();
        let cross = compute_cross(&g).unwrap();
        assert_eq!(cross.total_entries(), 0);
        assert_eq!(cross.stats().bridges, 0);
    }
}
