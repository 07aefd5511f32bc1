//! Small hand-checked instances used throughout the tests and the docs.

use crate::graph::TemporalGraph;

/// Triangle at time 1, path `a-b-c` at time 2; the two graphs differ in `ac` only.
pub fn tri() -> (TemporalGraph, TemporalGraph) {
    let names = ["a", "b", "c"];
    let g1 = TemporalGraph::from_named(
        &names,
        2,
        &[("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("a", "b", 2), ("b", "c", 2)],
    )
    .expect("valid fixture");
    let g2 = TemporalGraph::from_named(
        &names,
        2,
        &[("a", "b", 1), ("b", "c", 1), ("a", "c", 2), ("a", "b", 2), ("b", "c", 2)],
    )
    .expect("valid fixture");
    (g1, g2)
}

/// Every snapshot of both graphs is a spanning tree, so no relabel is ever valid.
pub fn infeas() -> (TemporalGraph, TemporalGraph) {
    let names = ["a", "b", "c"];
    let g1 = TemporalGraph::from_named(&names, 2, &[("a", "b", 1), ("a", "c", 1), ("a", "c", 2), ("b", "c", 2)])
        .expect("valid fixture");
    let g2 = TemporalGraph::from_named(&names, 2, &[("b", "c", 1), ("a", "c", 1), ("a", "c", 2), ("a", "b", 2)])
        .expect("valid fixture");
    (g1, g2)
}

/// Triangle `abc` plus pendant `ad` at time 1; path `b-a-d-c` at time 2.
///
/// Levels: the triangle is 0-changeable, `(ab,2)`, `(ad,2)`, `(cd,2)` are
/// 1-changeable and `(ad,1)` is 2-changeable.
pub fn chain2() -> TemporalGraph {
    TemporalGraph::from_named(
        &["a", "b", "c", "d"],
        2,
        &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("a", "d", 1), ("a", "b", 2), ("a", "d", 2), ("d", "c", 2)],
    )
    .expect("valid fixture")
}

/// Two 4-vertex graphs with four differing slots whose shortest valid
/// sequence has length exactly 4, i.e. five graphs including both ends.
///
/// Substitute for the illustrated five-graph example, which cannot be read
/// off exactly; found by exhaustive search over small random instances.
pub fn shift4() -> (TemporalGraph, TemporalGraph) {
    let names = ["a", "b", "c", "d"];
    let g1 = TemporalGraph::from_named(
        &names,
        2,
        &[
            ("a", "b", 2),
            ("a", "c", 1),
            ("a", "c", 2),
            ("a", "d", 1),
            ("b", "c", 1),
            ("b", "d", 1),
            ("b", "d", 2),
            ("c", "d", 2),
        ],
    )
    .expect("valid fixture");
    let g2 = TemporalGraph::from_named(
        &names,
        2,
        &[
            ("a", "b", 1),
            ("a", "c", 1),
            ("a", "c", 2),
            ("a", "d", 2),
            ("b", "c", 2),
            ("b", "d", 1),
            ("b", "d", 2),
            ("c", "d", 1),
        ],
    )
    .expect("valid fixture");
    (g1, g2)
}
