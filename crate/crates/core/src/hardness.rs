//! Vertex Cover reduction to shortest reconfiguration, with lifetime 2.
//!
//! Every source vertex `v` becomes a triangle `v.1 v.2 v.3` whose two
//! time-2 edges at `v.2` are its *activation edges*, plus a time-1 path
//! from `v.1` to `v.2` through a pair `v>u`, `v>u'` per neighbour `u`.
//! Every source edge `{u,v}` becomes a gadget `e:u-v`, `e:u-v.1`, `e:u-v.2`
//! whose two single-label edges are swapped between `g1` and `g2`, and is
//! wired to the path vertices of both endpoints at time 2: `e:u-v` to
//! `u>v` and `v>u`, and `e:u-v.2` (the gadget's own second vertex) to `u>v'`
//! and `v>u'`. A backbone path active at both times joins all `v.3` and
//! gadget centres.
//!
//! Gadget vertex names are part of the file contract:
//!
//! | role | name |
//! |------|------|
//! | triangle of `v` | `v.1`, `v.2`, `v.3` |
//! | path vertices of `v` for neighbour `u` | `v>u`, `v>u'` |
//! | gadget of `{u,v}` (`u < v`) | `e:u-v`, `e:u-v.1`, `e:u-v.2` |

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{StaticEdge, TemporalEdge, TemporalGraph, VertexId};
use crate::sequence::{ReconfigSequence, RelabelOp};

/// Simple undirected graph with a cover budget `k`. Vertices are indexed in
/// sorted name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcInstance {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    k: usize,
}

fn valid_vc_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VcInstance {
    /// `vertices` lists extra (possibly isolated) vertices; edge endpoints are added automatically.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>, k: usize) -> Result<Self> {
        let mut all: BTreeSet<String> = vertices.into_iter().collect();
        for (a, b) in &edges {
            all.insert(a.clone());
            all.insert(b.clone());
        }
        if let Some(bad) = all.iter().find(|n| !valid_vc_name(n)) {
            return Err(Error::InvalidInstance(format!(
                "vertex name `{bad}` must consist of ASCII letters, digits and `_`"
            )));
        }
        if all.is_empty() {
            return Err(Error::InvalidInstance("vertex cover instance has no vertices".into()));
        }
        let names: Vec<String> = all.into_iter().collect();
        let index = |s: &str| names.binary_search_by(|n| n.as_str().cmp(s)).expect("collected");
        let mut list = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (a, b) in &edges {
            let (x, y) = (index(a), index(b));
            if x == y {
                return Err(Error::InvalidInstance(format!("self-loop on `{a}`")));
            }
            let e = (x.min(y), x.max(y));
            if !seen.insert(e) {
                return Err(Error::InvalidInstance(format!("duplicate edge `{a} {b}`")));
            }
            list.push(e);
        }
        list.sort_unstable();
        Ok(VcInstance { names, edges: list, k })
    }

    /// Convenience constructor for tests and examples.
    pub fn from_edges(edges: &[(&str, &str)], k: usize) -> Result<Self> {
        Self::new(Vec::new(), edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(), k)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Edges as `(smaller, larger)` index pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Self {
        VcInstance { k, ..self.clone() }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.neighbors(v).is_empty()).collect()
    }

    pub fn is_cover(&self, cover: &[usize]) -> bool {
        let set: BTreeSet<usize> = cover.iter().copied().collect();
        self.edges.iter().all(|(a, b)| set.contains(a) || set.contains(b))
    }
}

/// Gadget vertices of one source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGadget {
    pub v1: VertexId,
    pub v2: VertexId,
    pub v3: VertexId,
    /// `(neighbour, v>u, v>u')` in path order.
    pub path: Vec<(usize, VertexId, VertexId)>,
}

/// Gadget vertices of one source edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub edge: (usize, usize),
    pub center: VertexId,
    pub one: VertexId,
    pub two: VertexId,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: VcInstance,
    pub g1: TemporalGraph,
    pub g2: TemporalGraph,
    /// Length budget `2k + 4|E|`.
    pub ell: usize,
    pub vertex_gadgets: Vec<VertexGadget>,
    pub edge_gadgets: Vec<EdgeGadget>,
}

fn pair(a: VertexId, b: VertexId) -> StaticEdge {
    StaticEdge::new(a, b).expect("gadget vertices are distinct")
}

impl ReductionOutput {
    fn gadget_index(&self, edge: (usize, usize)) -> Result<usize> {
        let key = (edge.0.min(edge.1), edge.0.max(edge.1));
        self.edge_gadgets
            .iter()
            .position(|g| g.edge == key)
            .ok_or_else(|| Error::InvalidInstance(format!("{edge:?} is not an edge of the instance")))
    }

    /// `({e, e.1}, 1)` and `({e, e.2}, 2)` as they appear in `g1`.
    pub fn gadget_edges(&self, edge: (usize, usize)) -> Result<[TemporalEdge; 2]> {
        let g = self.edge_gadgets[self.gadget_index(edge)?];
        Ok([pair(g.center, g.one).at(1), pair(g.center, g.two).at(2)])
    }

    /// The time-2 edges at `v.2` in `g1`.
    pub fn activation_edges(&self, v: usize) -> [TemporalEdge; 2] {
        let g = &self.vertex_gadgets[v];
        [pair(g.v1, g.v2).at(2), pair(g.v2, g.v3).at(2)]
    }

    /// `(v>u, v>u')` for vertex `v` and neighbour `u`.
    fn path_pair(&self, v: usize, u: usize) -> (VertexId, VertexId) {
        let (_, a, b) = *self.vertex_gadgets[v].path.iter().find(|(n, _, _)| *n == u).expect("u is a neighbour of v");
        (a, b)
    }
}

/// Builds `(g1, g2, ℓ)` from a vertex-cover instance.
pub fn build_reduction(inst: &VcInstance) -> Result<ReductionOutput> {
    let mut names: Vec<String> = Vec::new();
    let mut add = |name: String| {
        names.push(name);
        VertexId(names.len() as u32 - 1)
    };

    let mut vertex_gadgets = Vec::with_capacity(inst.vertex_count());
    for v in 0..inst.vertex_count() {
        let n = inst.name(v);
        vertex_gadgets.push(VertexGadget {
            v1: add(format!("{n}.1")),
            v2: add(format!("{n}.2")),
            v3: add(format!("{n}.3")),
            path: Vec::new(),
        });
    }
    let mut edge_gadgets = Vec::with_capacity(inst.edges().len());
    for &(a, b) in inst.edges() {
        let base = format!("e:{}-{}", inst.name(a), inst.name(b));
        edge_gadgets.push(EdgeGadget {
            edge: (a, b),
            center: add(base.clone()),
            one: add(format!("{base}.1")),
            two: add(format!("{base}.2")),
        });
    }
    for (v, gadget) in vertex_gadgets.iter_mut().enumerate() {
        for u in inst.neighbors(v) {
            let stem = format!("{}>{}", inst.name(v), inst.name(u));
            let first = add(stem.clone());
            let second = add(format!("{stem}'"));
            gadget.path.push((u, first, second));
        }
    }

    let mut edges: Vec<TemporalEdge> = Vec::new();
    let both = |edges: &mut Vec<TemporalEdge>, e: StaticEdge| {
        edges.push(e.at(1));
        edges.push(e.at(2));
    };
    for g in &vertex_gadgets {
        edges.push(pair(g.v1, g.v2).at(2));
        edges.push(pair(g.v2, g.v3).at(2));
        both(&mut edges, pair(g.v3, g.v1));
    }
    for g in &edge_gadgets {
        edges.push(pair(g.center, g.one).at(1));
        edges.push(pair(g.center, g.two).at(2));
        both(&mut edges, pair(g.one, g.two));
    }
    for g in &vertex_gadgets {
        let mut walk = vec![g.v1];
        for &(_, a, b) in &g.path {
            walk.extend([a, b]);
        }
        walk.push(g.v2);
        edges.extend(walk.windows(2).map(|w| pair(w[0], w[1]).at(1)));
    }
    for eg in &edge_gadgets {
        let (u, v) = eg.edge;
        let find = |x: usize, y: usize| {
            let (_, a, b) = *vertex_gadgets[x].path.iter().find(|(n, _, _)| *n == y).expect("neighbour");
            (a, b)
        };
        let (u_v, u_v2) = find(u, v);
        let (v_u, v_u2) = find(v, u);
        edges.push(pair(eg.center, u_v).at(2));
        edges.push(pair(eg.center, v_u).at(2));
        edges.push(pair(eg.two, u_v2).at(2));
        edges.push(pair(eg.two, v_u2).at(2));
    }
    let backbone: Vec<VertexId> =
        vertex_gadgets.iter().map(|g| g.v3).chain(edge_gadgets.iter().map(|g| g.center)).collect();
    for w in backbone.windows(2) {
        both(&mut edges, pair(w[0], w[1]));
    }

    let g1 = TemporalGraph::new(names, 2, edges)?;
    let flipped: BTreeSet<TemporalEdge> =
        edge_gadgets.iter().flat_map(|g| [pair(g.center, g.one).at(2), pair(g.center, g.two).at(1)]).collect();
    let originals: BTreeSet<TemporalEdge> =
        edge_gadgets.iter().flat_map(|g| [pair(g.center, g.one).at(1), pair(g.center, g.two).at(2)]).collect();
    let g2 = g1.with_edges(g1.edges().filter(|te| !originals.contains(te)).chain(flipped).collect::<Vec<_>>())?;
    let ell = 2 * inst.k() + 4 * inst.edges().len();
    Ok(ReductionOutput { instance: inst.clone(), g1, g2, ell, vertex_gadgets, edge_gadgets })
}

/// The forward construction: a valid `g1 -> g2` sequence of length
/// `2|cover| + 4|E|` built from a vertex cover.
///
/// Cover vertices are processed in index order; each gadget is fixed by the
/// first cover vertex that reaches it. An isolated cover vertex, whose
/// `({v.1, v.2}, 2)` edge cannot move because time 1 is occupied, uses its
/// other activation edge `({v.2, v.3}, 2)` instead.
pub fn cover_to_sequence(red: &ReductionOutput, cover: &[usize]) -> Result<ReconfigSequence> {
    let inst = &red.instance;
    if let Some(&bad) = cover.iter().find(|&&v| v >= inst.vertex_count()) {
        return Err(Error::InvalidInstance(format!("cover vertex index {bad} out of range")));
    }
    if let Some(&(a, b)) = inst.edges().iter().find(|&&(a, b)| !cover.contains(&a) && !cover.contains(&b)) {
        return Err(Error::InvalidInstance(format!(
            "not a vertex cover: edge `{} {}` is uncovered",
            inst.name(a),
            inst.name(b)
        )));
    }
    let ordered: BTreeSet<usize> = cover.iter().copied().collect();
    let mut fixed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut ops = Vec::new();
    let flip = |te: StaticEdge, from: u32| RelabelOp::new(te, from, 3 - from).expect("times differ");

    for v in ordered {
        let g = &red.vertex_gadgets[v];
        let activation = if red.g1.contains(pair(g.v1, g.v2).at(1)) { pair(g.v2, g.v3) } else { pair(g.v1, g.v2) };
        ops.push(flip(activation, 2));
        for u in inst.neighbors(v) {
            let key = (u.min(v), u.max(v));
            if !fixed.insert(key) {
                continue;
            }
            let eg = red.edge_gadgets[red.gadget_index(key)?];
            let (v_u, v_u2) = red.path_pair(v, u);
            ops.push(flip(pair(v_u, v_u2), 1));
            ops.push(flip(pair(eg.center, eg.two), 2));
            ops.push(flip(pair(eg.center, eg.one), 1));
            ops.push(flip(pair(v_u, v_u2), 2));
        }
        ops.push(flip(activation, 1));
    }
    Ok(ops.into())
}

/// Edges that must be relabeled before the gadget of `edge` can change:
/// crossers of the gadget's two bridges that lie outside the gadget.
pub fn prerequisite_edges(red: &ReductionOutput, edge: (usize, usize)) -> Result<BTreeSet<TemporalEdge>> {
    let eg = red.edge_gadgets[red.gadget_index(edge)?];
    let (u, v) = eg.edge;
    let (_, u_v2) = red.path_pair(u, v);
    let (_, v_u2) = red.path_pair(v, u);
    let mut out: BTreeSet<TemporalEdge> = [pair(u_v2, eg.two).at(2), pair(v_u2, eg.two).at(2)].into();
    out.extend(
        red.g1
            .edges()
            .filter(|te| te.time == 1)
            .filter(|te| [u_v2, v_u2].iter().any(|&x| te.edge.u() == x || te.edge.v() == x)),
    );
    Ok(out)
}

/// Smallest vertex cover of size at most `k` by exhaustive search; among
/// covers of equal size the lexicographically smallest index list wins.
pub fn brute_force_vertex_cover(inst: &VcInstance) -> Option<Vec<usize>> {
    let n = inst.vertex_count();
    for size in 0..=inst.k().min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if inst.is_cover(&combo) {
                return Some(combo);
            }
            // advance to the next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else { break };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

/// Minimum cover size, ignoring `k`.
pub fn minimum_cover_size(inst: &VcInstance) -> usize {
    brute_force_vertex_cover(&inst.with_k(inst.vertex_count()))
        .map(|c| c.len())
        .expect("all vertices always form a cover")
}

/// Counts of the construction, for reporting.
pub fn expected_sizes(inst: &VcInstance) -> BTreeMap<&'static str, usize> {
    let (v, e) = (inst.vertex_count(), inst.edges().len());
    BTreeMap::from([("vertices", 3 * v + 7 * e), ("temporal_edges", 7 * v + 14 * e - 2), ("difference", 2 * e)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reachability::reachability_partition;
    use crate::sequence::validate_sequence;

    fn single_edge() -> ReductionOutput {
        build_reduction(&VcInstance::from_edges(&[("u", "v")], 1).unwrap()).unwrap()
    }

    #[test]
    fn single_edge_counts() {
        let red = single_edge();
        assert_eq!(red.g1.vertex_count(), 13);
        assert_eq!(red.g1.edge_count(), 26);
        assert_eq!(red.ell, 6);
        assert!(red.g1.is_always_connected() && red.g2.is_always_connected());
        assert_eq!(red.g1.difference(&red.g2).unwrap(), 2);
        assert!(red.g1.check_pair_counts(&red.g2));
        assert_eq!(expected_sizes(&red.instance)["temporal_edges"], 26);
    }

    #[test]
    fn gadget_names_are_stable() {
        let red = single_edge();
        for name in ["u.1", "u.2", "u.3", "v.1", "e:u-v", "e:u-v.1", "e:u-v.2", "u>v", "u>v'", "v>u", "v>u'"] {
            assert!(red.g1.vertex_id(name).is_some(), "missing {name}");
        }
    }

    #[test]
    fn no_edges_means_no_difference() {
        let inst = VcInstance::new(vec!["a".into(), "b".into()], vec![], 3).unwrap();
        let red = build_reduction(&inst).unwrap();
        assert_eq!(red.g1.difference(&red.g2).unwrap(), 0);
        assert_eq!(red.ell, 6);
        assert_eq!(red.g1.edge_count(), 7 * 2 - 2);
        assert!(red.g1.is_always_connected());
    }

    #[test]
    fn single_edge_cover_sequence() {
        let red = single_edge();
        let u = red.instance.index_of("u").unwrap();
        let seq = cover_to_sequence(&red, &[u]).unwrap();
        assert_eq!(seq.len(), 6);
        assert!(validate_sequence(&red.g1, &seq, &red.g2).unwrap().ok);
        assert!(cover_to_sequence(&red, &[]).is_err());
    }

    #[test]
    fn isolated_cover_vertex_uses_other_activation_edge() {
        let inst = VcInstance::new(vec!["z".into()], vec![("a".into(), "b".into())], 2).unwrap();
        let red = build_reduction(&inst).unwrap();
        let cover = [inst.index_of("a").unwrap(), inst.index_of("z").unwrap()];
        let seq = cover_to_sequence(&red, &cover).unwrap();
        assert_eq!(seq.len(), 2 * 2 + 4);
        assert!(validate_sequence(&red.g1, &seq, &red.g2).unwrap().ok);
    }

    #[test]
    fn prerequisite_sets() {
        let red = single_edge();
        let p = prerequisite_edges(&red, (0, 1)).unwrap();
        assert_eq!(p.len(), 6);
        let gadget = red.gadget_edges((0, 1)).unwrap();
        assert!(gadget.iter().all(|g| !p.contains(g)));
        assert!(prerequisite_edges(&red, (0, 0)).is_err());

        let two = build_reduction(&VcInstance::from_edges(&[("a", "b"), ("c", "d")], 2).unwrap()).unwrap();
        let p1 = prerequisite_edges(&two, two.edge_gadgets[0].edge).unwrap();
        let p2 = prerequisite_edges(&two, two.edge_gadgets[1].edge).unwrap();
        assert!(p1.is_disjoint(&p2));
    }

    #[test]
    fn gadget_bridges_cross_each_other() {
        let red = single_edge();
        let [one, two] = red.gadget_edges((0, 1)).unwrap();
        let p_one = reachability_partition(&red.g1, one).unwrap();
        let p_two = reachability_partition(&red.g1, two).unwrap();
        assert!(p_one.is_crossing(two.edge));
        assert!(p_two.is_crossing(one.edge));
    }

    #[test]
    fn brute_force_covers() {
        let single = VcInstance::from_edges(&[("u", "v")], 1).unwrap();
        assert_eq!(brute_force_vertex_cover(&single), Some(vec![0]));
        let tri = VcInstance::from_edges(&[("a", "b"), ("b", "c"), ("a", "c")], 1).unwrap();
        assert_eq!(brute_force_vertex_cover(&tri), None);
        let cover = brute_force_vertex_cover(&tri.with_k(2)).unwrap();
        assert_eq!(cover.len(), 2);
        assert!(tri.is_cover(&cover));
        let empty = VcInstance::new(vec!["x".into()], vec![], 0).unwrap();
        assert_eq!(brute_force_vertex_cover(&empty), Some(vec![]));
    }

    #[test]
    fn instance_validation() {
        assert!(VcInstance::from_edges(&[("a", "a")], 1).is_err());
        assert!(VcInstance::from_edges(&[("a", "b"), ("b", "a")], 1).is_err());
        assert!(VcInstance::from_edges(&[("a.b", "c")], 1).is_err());
        assert!(VcInstance::new(vec![], vec![], 0).is_err());
    }
}
