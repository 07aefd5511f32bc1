//! Temporal graph value types.
//!
//! A [`TemporalGraph`] is a fixed, named vertex set plus a set of
//! [`TemporalEdge`]s, each an unordered vertex pair active at one integer
//! time label in `1..=lifetime`. Edge sets iterate in canonical
//! `(smaller endpoint, larger endpoint, time)` order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::connectivity;
use crate::error::{Error, Result};
use crate::sequence::RelabelOp;

/// Time label. Valid labels are `1..=lifetime`.
pub type Time = u32;

/// Dense vertex index into a graph's name table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Unordered pair of distinct vertices, stored with the smaller index first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StaticEdge {
    u: VertexId,
    v: VertexId,
}

impl StaticEdge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(StaticEdge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(StaticEdge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a.0)),
        }
    }

    /// Smaller endpoint.
    #[inline]
    pub fn u(self) -> VertexId {
        self.u
    }

    /// Larger endpoint.
    #[inline]
    pub fn v(self) -> VertexId {
        self.v
    }

    #[inline]
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn at(self, time: Time) -> TemporalEdge {
        TemporalEdge { edge: self, time }
    }
}

impl fmt::Debug for StaticEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u.0, self.v.0)
    }
}

/// A static pair active at one time label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemporalEdge {
    pub edge: StaticEdge,
    pub time: Time,
}

impl TemporalEdge {
    pub fn new(edge: StaticEdge, time: Time) -> Self {
        TemporalEdge { edge, time }
    }
}

impl fmt::Debug for TemporalEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{})", self.edge, self.time)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct VertexNames {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

/// Immutable temporal graph. Relabeling returns a new value.
#[derive(Clone)]
pub struct TemporalGraph {
    names: Arc<VertexNames>,
    lifetime: Time,
    edges: BTreeSet<TemporalEdge>,
    // layers[t - 1] holds the pairs of snapshot t
    layers: Vec<BTreeSet<StaticEdge>>,
}

impl PartialEq for TemporalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.lifetime == other.lifetime
            && (Arc::ptr_eq(&self.names, &other.names) || self.names.names == other.names.names)
            && self.edges == other.edges
    }
}

impl Eq for TemporalGraph {}

impl fmt::Debug for TemporalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TemporalGraph")
            .field("vertices", &self.names.names)
            .field("lifetime", &self.lifetime)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Edges of one snapshot, borrowed from the graph.
#[derive(Debug, Clone, Copy)]
pub struct Snapshot<'a> {
    pub time: Time,
    pub vertex_count: usize,
    edges: &'a BTreeSet<StaticEdge>,
}

impl<'a> Snapshot<'a> {
    pub fn edges(&self) -> impl Iterator<Item = StaticEdge> + 'a {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: StaticEdge) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_connected(&self) -> bool {
        let es: Vec<_> = self.edges().collect();
        connectivity::is_connected(self.vertex_count, &es)
    }
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(char::is_whitespace) || name.starts_with('#') {
        return Err(Error::InvalidInstance(format!(
            "vertex name `{name}` must be a non-empty token without whitespace or leading `#`"
        )));
    }
    Ok(())
}

impl TemporalGraph {
    /// Builds a graph over `names` (vertex `i` is `names[i]`).
    pub fn new<I>(names: Vec<String>, lifetime: Time, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        if lifetime == 0 {
            return Err(Error::ZeroLifetime);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            validate_name(name)?;
            if index.insert(name.clone(), i as u32).is_some() {
                return Err(Error::DuplicateVertexName(name.clone()));
            }
        }
        let names = Arc::new(VertexNames { names, index });
        Self::with_names(names, lifetime, edges)
    }

    fn with_names<I>(names: Arc<VertexNames>, lifetime: Time, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        let n = names.names.len();
        let mut g =
            TemporalGraph { names, lifetime, edges: BTreeSet::new(), layers: vec![BTreeSet::new(); lifetime as usize] };
        for te in edges {
            if te.edge.v().index() >= n {
                return Err(Error::UnknownVertex { index: te.edge.v().0, n });
            }
            g.check_time(te.time)?;
            if !g.edges.insert(te) {
                return Err(Error::DuplicateEdge(te));
            }
            g.layers[te.time as usize - 1].insert(te.edge);
        }
        Ok(g)
    }

    /// Same vertex names and lifetime as `self`, different edge set.
    pub fn with_edges<I>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        Self::with_names(Arc::clone(&self.names), self.lifetime, edges)
    }

    /// Convenience constructor over string names, mostly for fixtures.
    pub fn from_named(names: &[&str], lifetime: Time, edges: &[(&str, &str, Time)]) -> Result<Self> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let skeleton = Self::new(owned, lifetime, std::iter::empty())?;
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b, t) in edges {
            list.push(skeleton.edge_by_names(a, b)?.at(t));
        }
        skeleton.with_edges(list)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.names.len()
    }

    pub fn lifetime(&self) -> Time {
        self.lifetime
    }

    /// Number of temporal edges, `M`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Temporal edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = TemporalEdge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<TemporalEdge> {
        &self.edges
    }

    pub fn contains(&self, te: TemporalEdge) -> bool {
        self.edges.contains(&te)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names.names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names.names[v.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.names.index.get(name).map(|&i| VertexId(i))
    }

    pub fn edge_by_names(&self, a: &str, b: &str) -> Result<StaticEdge> {
        let lookup = |s: &str| self.vertex_id(s).ok_or_else(|| Error::InvalidInstance(format!("unknown vertex `{s}`")));
        StaticEdge::new(lookup(a)?, lookup(b)?)
    }

    /// `"u v t"` with vertex names.
    pub fn describe_edge(&self, te: TemporalEdge) -> String {
        format!("{} {}", self.describe_pair(te.edge), te.time)
    }

    pub fn describe_pair(&self, e: StaticEdge) -> String {
        format!("{} {}", self.vertex_name(e.u()), self.vertex_name(e.v()))
    }

    /// Same vertex names (in the same order) and the same lifetime.
    pub fn is_compatible_with(&self, other: &TemporalGraph) -> bool {
        self.lifetime == other.lifetime
            && (Arc::ptr_eq(&self.names, &other.names) || self.names.names == other.names.names)
    }

    pub(crate) fn check_time(&self, time: Time) -> Result<()> {
        if time == 0 || time > self.lifetime {
            return Err(Error::TimeOutOfRange { time, lifetime: self.lifetime });
        }
        Ok(())
    }

    pub fn snapshot(&self, time: Time) -> Result<Snapshot<'_>> {
        self.check_time(time)?;
        Ok(Snapshot { time, vertex_count: self.vertex_count(), edges: &self.layers[time as usize - 1] })
    }

    pub(crate) fn layer(&self, time: Time) -> &BTreeSet<StaticEdge> {
        &self.layers[time as usize - 1]
    }

    /// Times at which the pair is active, ascending.
    pub fn times_of(&self, e: StaticEdge) -> impl Iterator<Item = Time> + '_ {
        self.edges.range(e.at(0)..=e.at(Time::MAX)).map(|te| te.time)
    }

    /// First snapshot that is not connected, if any.
    pub fn first_disconnected_snapshot(&self) -> Option<Time> {
        (1..=self.lifetime).find(|&t| {
            let es: Vec<_> = self.layer(t).iter().copied().collect();
            !connectivity::is_connected(self.vertex_count(), &es)
        })
    }

    /// Every snapshot connected. Graphs with at most one vertex always are.
    pub fn is_always_connected(&self) -> bool {
        self.first_disconnected_snapshot().is_none()
    }

    pub(crate) fn require_always_connected(&self) -> Result<()> {
        match self.first_disconnected_snapshot() {
            Some(time) => Err(Error::NotAlwaysConnected { time }),
            None => Ok(()),
        }
    }

    /// Bridges of one snapshot, in canonical order.
    pub(crate) fn snapshot_bridges(&self, time: Time) -> Vec<StaticEdge> {
        let es: Vec<_> = self.layer(time).iter().copied().collect();
        let flags = connectivity::bridge_flags(self.vertex_count(), &es);
        es.into_iter().zip(flags).filter_map(|(e, b)| b.then_some(e)).collect()
    }

    /// All temporal edges whose removal disconnects their snapshot.
    ///
    /// Requires an always-connected graph; each snapshot costs `O(n + m_t)`.
    pub fn find_bridges(&self) -> Result<BTreeSet<TemporalEdge>> {
        self.require_always_connected()?;
        let mut out = BTreeSet::new();
        for t in 1..=self.lifetime {
            out.extend(self.snapshot_bridges(t).into_iter().map(|e| e.at(t)));
        }
        Ok(out)
    }

    /// Whether an existing temporal edge is a bridge of its snapshot.
    pub fn is_bridge(&self, te: TemporalEdge) -> bool {
        if !self.contains(te) {
            return false;
        }
        let es: Vec<_> = self.layer(te.time).iter().copied().collect();
        let pos = es.binary_search(&te.edge).expect("edge is present");
        connectivity::bridge_flags(self.vertex_count(), &es)[pos]
    }

    /// Structural checks shared by `apply_relabel` and validation.
    pub(crate) fn check_relabel(&self, op: &RelabelOp) -> Result<()> {
        if op.from == op.to {
            return Err(Error::SameTime(op.from));
        }
        self.check_time(op.from)?;
        self.check_time(op.to)?;
        if op.edge.v().index() >= self.vertex_count() {
            return Err(Error::UnknownVertex { index: op.edge.v().0, n: self.vertex_count() });
        }
        if !self.contains(op.source()) {
            return Err(Error::MissingEdge(op.source()));
        }
        if self.contains(op.target()) {
            return Err(Error::Collision(op.target()));
        }
        Ok(())
    }

    pub(crate) fn relabel_in_place(&mut self, op: &RelabelOp) -> Result<()> {
        self.check_relabel(op)?;
        self.edges.remove(&op.source());
        self.edges.insert(op.target());
        self.layers[op.from as usize - 1].remove(&op.edge);
        self.layers[op.to as usize - 1].insert(op.edge);
        Ok(())
    }

    /// Moves one temporal edge to another time. Does not check connectivity.
    pub fn apply_relabel(&self, op: &RelabelOp) -> Result<TemporalGraph> {
        let mut g = self.clone();
        g.relabel_in_place(op)?;
        Ok(g)
    }

    /// A relabel is valid when the source exists, the target slot is free and
    /// the source is not a bridge (so its snapshot stays connected).
    pub fn is_valid_relabel(&self, op: &RelabelOp) -> bool {
        self.check_relabel(op).is_ok() && !self.is_bridge(op.source())
    }

    /// `|E(self) \ E(other)|`.
    pub fn difference(&self, other: &TemporalGraph) -> Result<usize> {
        if !self.is_compatible_with(other) {
            return Err(Error::IncompatibleGraphs);
        }
        Ok(self.edges.difference(&other.edges).count())
    }

    /// Canonically first pair whose number of time labels differs, if any.
    pub fn pair_count_mismatch(&self, other: &TemporalGraph) -> Option<StaticEdge> {
        let count = |g: &TemporalGraph| {
            let mut counts: HashMap<StaticEdge, usize> = HashMap::new();
            for te in g.edges() {
                *counts.entry(te.edge).or_default() += 1;
            }
            counts
        };
        let (a, b) = (count(self), count(other));
        let mut bad: Vec<StaticEdge> = a
            .iter()
            .filter(|(e, c)| b.get(e) != Some(c))
            .map(|(e, _)| *e)
            .chain(b.keys().filter(|e| !a.contains_key(e)).copied())
            .collect();
        bad.sort();
        bad.into_iter().next()
    }

    /// Every pair has the same number of time labels in both graphs.
    pub fn check_pair_counts(&self, other: &TemporalGraph) -> bool {
        self.pair_count_mismatch(other).is_none()
    }
}
