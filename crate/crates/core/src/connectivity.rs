//! Static-graph primitives used on individual snapshots.
//!
//! Everything here works on a plain edge slice over vertices `0..n`. Snapshots
//! never contain parallel edges, but the bridge search skips the tree edge by
//! id rather than by endpoint so it would stay correct if they did.

use crate::graph::StaticEdge;

/// Compressed adjacency lists: `(neighbor, edge id)` per vertex.
pub(crate) struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<(u32, u32)>,
}

impl Adjacency {
    pub(crate) fn new(n: usize, edges: &[StaticEdge]) -> Self {
        let mut degree = vec![0usize; n + 1];
        for e in edges {
            degree[e.u().index() + 1] += 1;
            degree[e.v().index() + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut targets = vec![(0u32, 0u32); 2 * edges.len()];
        for (id, e) in edges.iter().enumerate() {
            let (a, b) = (e.u().index(), e.v().index());
            targets[fill[a]] = (b as u32, id as u32);
            fill[a] += 1;
            targets[fill[b]] = (a as u32, id as u32);
            fill[b] += 1;
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    pub(crate) fn neighbors(&self, v: usize) -> &[(u32, u32)] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub(crate) fn len(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// Marks every vertex reachable from `start`, ignoring the edge with id `skip`.
///
/// Returns the marker vector and the number of adjacency entries scanned.
pub(crate) fn reachable_from(adj: &Adjacency, start: usize, skip: Option<u32>) -> (Vec<bool>, usize) {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    let mut work = 0;
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(w, id) in adj.neighbors(v) {
            work += 1;
            if Some(id) == skip || seen[w as usize] {
                continue;
            }
            seen[w as usize] = true;
            stack.push(w as usize);
        }
    }
    (seen, work)
}

/// True iff the graph on `n` vertices is connected. Zero or one vertex counts as connected.
pub(crate) fn is_connected(n: usize, edges: &[StaticEdge]) -> bool {
    if n <= 1 {
        return true;
    }
    if edges.len() + 1 < n {
        return false;
    }
    let adj = Adjacency::new(n, edges);
    let (seen, _) = reachable_from(&adj, 0, None);
    seen.into_iter().all(|s| s)
}

/// Connectivity of the graph after deleting edge `skip`.
pub(crate) fn is_connected_without(n: usize, edges: &[StaticEdge], skip: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let adj = Adjacency::new(n, edges);
    let (seen, _) = reachable_from(&adj, 0, Some(skip as u32));
    seen.into_iter().all(|s| s)
}

/// Bridge flags per edge, via an iterative low-link DFS. Linear in `n + edges.len()`.
pub(crate) fn bridge_flags(n: usize, edges: &[StaticEdge]) -> Vec<bool> {
    const UNSEEN: u32 = u32::MAX;
    let adj = Adjacency::new(n, edges);
    let mut bridge = vec![false; edges.len()];
    let mut tin = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    // (vertex, id of the tree edge we came through, cursor into adjacency)
    let mut stack: Vec<(usize, u32, usize)> = Vec::new();

    for root in 0..n {
        if tin[root] != UNSEEN {
            continue;
        }
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, u32::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let v = frame.0;
            let nbrs = adj.neighbors(v);
            if frame.2 < nbrs.len() {
                let (w, id) = nbrs[frame.2];
                frame.2 += 1;
                if id == frame.1 {
                    continue;
                }
                let w = w as usize;
                if tin[w] == UNSEEN {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
            } else {
                let (child, via, _) = stack.pop().expect("non-empty");
                if let Some(parent) = stack.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[child]);
                    if low[child] > tin[p] {
                        bridge[via as usize] = true;
                    }
                }
            }
        }
    }
    bridge
}
