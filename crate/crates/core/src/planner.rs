//! Feasibility decision and sequence synthesis between two temporal graphs.
//!
//! A pair `(g1, g2)` is reconfigurable iff every edge of `g1` missing from
//! `g2` is changeable in `g1`. The planner then works in phases: pick the
//! differing edge with the smallest level, make it a non-bridge, and move it
//! onto a slot `g2` occupies. The make-non-bridge prefix is replayed on `g2`
//! as well, except for moves onto slots `g2` already holds, so both graphs
//! walk toward a common meeting graph; the final answer is the `g1` side
//! followed by the inverted `g2` side.

use crate::changeability::{compute_change_table, sequence_to_nonbridge, ChangeTable, Changeability};
use crate::error::{Error, Result};
use crate::graph::{StaticEdge, TemporalEdge, TemporalGraph, Time};
use crate::reachability::compute_cross;
use crate::sequence::{ReconfigSequence, RelabelOp};

/// Why no valid sequence exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// A differing edge of `g1` that can never become a non-bridge.
    Unchangeable(TemporalEdge),
    /// A pair with a different number of time labels in the two graphs.
    PairCountMismatch(StaticEdge),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible(Infeasibility),
}

/// One difference-reducing phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhaseSummary {
    /// The differing edge of the current `g1` that was moved.
    pub target: TemporalEdge,
    /// Its level, i.e. the length of the shared prefix.
    pub level: u32,
    /// Time label it was moved to.
    pub new_time: Time,
}

/// Output of [`decrease_difference`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceStep {
    /// The shared prefix followed by the move of the target edge.
    pub seq1: ReconfigSequence,
    /// The shared prefix, minus moves onto slots `g2` already holds.
    pub seq2: ReconfigSequence,
    pub phase: PhaseSummary,
}

#[derive(Clone, Debug)]
pub struct Plan {
    pub sequence: ReconfigSequence,
    /// Graph both sides reach before the `g2` side is inverted.
    pub meeting_graph: TemporalGraph,
    pub phases: Vec<PhaseSummary>,
}

#[derive(Clone, Debug)]
pub enum PlanOutcome {
    Feasible(Plan),
    Infeasible(Infeasibility),
}

fn check_inputs(g1: &TemporalGraph, g2: &TemporalGraph) -> Result<()> {
    if !g1.is_compatible_with(g2) {
        return Err(Error::IncompatibleGraphs);
    }
    g1.require_always_connected()?;
    g2.require_always_connected()
}

fn full_table(g: &TemporalGraph) -> Result<ChangeTable> {
    compute_change_table(g, &compute_cross(g)?)
}

/// Canonically first unchangeable edge of `g1 \ g2`, given `g1`'s table.
fn first_unchangeable(g1: &TemporalGraph, g2: &TemporalGraph, table: &ChangeTable) -> Option<TemporalEdge> {
    g1.edge_set().difference(g2.edge_set()).copied().find(|&te| table.level(te) == Some(Changeability::Unchangeable))
}

/// Target edge and its make-non-bridge prefix for the next phase.
fn choose_phase(g1: &TemporalGraph, g2: &TemporalGraph) -> Result<(TemporalEdge, u32, ReconfigSequence)> {
    let differing: Vec<TemporalEdge> = g1.edge_set().difference(g2.edge_set()).copied().collect();
    if differing.is_empty() {
        return Err(Error::NoDifference);
    }
    // Level 0 means non-bridge; the canonically first one wins the tie, so no table is needed.
    let bridges = g1.find_bridges()?;
    if let Some(&te) = differing.iter().find(|te| !bridges.contains(te)) {
        return Ok((te, 0, ReconfigSequence::new()));
    }
    let table = full_table(g1)?;
    if let Some(witness) = first_unchangeable(g1, g2, &table) {
        return Err(Error::Unchangeable(witness));
    }
    let (target, level) = differing
        .iter()
        .map(|&te| (te, table.level(te).and_then(Changeability::level).expect("all changeable")))
        .min_by_key(|&(te, k)| (k, te))
        .expect("non-empty");
    Ok((target, level, sequence_to_nonbridge(g1, &table, target)?))
}

fn relabel_checked(g: &mut TemporalGraph, op: &RelabelOp, side: &str) -> Result<()> {
    if g.is_bridge(op.source()) {
        return Err(Error::Internal(format!(
            "{side}: relabel of bridge {:?} would disconnect its snapshot",
            op.source()
        )));
    }
    g.relabel_in_place(op).map_err(|e| Error::Internal(format!("{side}: {e}")))
}

/// Runs one phase on mutable working copies, returning the ops applied to each side.
fn run_phase(w1: &mut TemporalGraph, w2: &mut TemporalGraph) -> Result<DifferenceStep> {
    let (target, level, prefix) = choose_phase(w1, w2)?;
    let mut seq2 = ReconfigSequence::new();
    for op in &prefix {
        relabel_checked(w1, op, "g1 side")?;
        // With T >= 3, g2 may already hold the target slot; the differing sets stay the same either way.
        if !w2.contains(op.target()) {
            relabel_checked(w2, op, "g2 side")?;
            seq2.push(*op);
        }
    }
    let new_time = w2
        .times_of(target.edge)
        .find(|&t| !w1.contains(target.edge.at(t)))
        .ok_or(Error::PairCountMismatch(target.edge))?;
    if !w1.contains(target) {
        return Err(Error::Internal(format!("target {target:?} moved by its own prefix")));
    }
    let last = RelabelOp::new(target.edge, target.time, new_time)?;
    relabel_checked(w1, &last, "g1 side")?;

    let mut seq1 = prefix;
    seq1.push(last);
    Ok(DifferenceStep { seq1, seq2, phase: PhaseSummary { target, level, new_time } })
}

/// One phase of the planner: both returned sequences are valid on their
/// respective graphs and `δ` drops by exactly one.
///
/// Requires `δ(g1, g2) > 0`, equal pair counts, and every edge of
/// `g1 \ g2` changeable in `g1`.
pub fn decrease_difference(g1: &TemporalGraph, g2: &TemporalGraph) -> Result<DifferenceStep> {
    check_inputs(g1, g2)?;
    if let Some(pair) = g1.pair_count_mismatch(g2) {
        return Err(Error::PairCountMismatch(pair));
    }
    if g1.difference(g2)? == 0 {
        return Err(Error::NoDifference);
    }
    let table = full_table(g1)?;
    if let Some(witness) = first_unchangeable(g1, g2, &table) {
        return Err(Error::Unchangeable(witness));
    }
    let (mut w1, mut w2) = (g1.clone(), g2.clone());
    run_phase(&mut w1, &mut w2)
}

/// Decides reconfigurability without building the sequence.
pub fn feasible(g1: &TemporalGraph, g2: &TemporalGraph) -> Result<Feasibility> {
    check_inputs(g1, g2)?;
    if let Some(pair) = g1.pair_count_mismatch(g2) {
        return Ok(Feasibility::Infeasible(Infeasibility::PairCountMismatch(pair)));
    }
    if g1.difference(g2)? == 0 {
        return Ok(Feasibility::Feasible);
    }
    let table = full_table(g1)?;
    Ok(match first_unchangeable(g1, g2, &table) {
        Some(te) => Feasibility::Infeasible(Infeasibility::Unchangeable(te)),
        None => Feasibility::Feasible,
    })
}

/// Decides reconfigurability and, when possible, returns a valid sequence of
/// length at most `2 M^2`.
pub fn plan(g1: &TemporalGraph, g2: &TemporalGraph) -> Result<PlanOutcome> {
    plan_with_progress(g1, g2, |_| {})
}

/// [`plan`], reporting each finished phase to `on_phase`.
pub fn plan_with_progress(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    mut on_phase: impl FnMut(&PhaseSummary),
) -> Result<PlanOutcome> {
    if let Feasibility::Infeasible(why) = feasible(g1, g2)? {
        return Ok(PlanOutcome::Infeasible(why));
    }
    let (mut w1, mut w2) = (g1.clone(), g2.clone());
    let mut forward = ReconfigSequence::new();
    let mut backward = ReconfigSequence::new();
    let mut phases = Vec::new();
    let mut delta = g1.difference(g2)?;
    while delta > 0 {
        let step = run_phase(&mut w1, &mut w2)?;
        let next = w1.difference(&w2)?;
        if next + 1 != delta {
            return Err(Error::Internal(format!("difference went from {delta} to {next}")));
        }
        delta = next;
        forward.extend(step.seq1.ops().iter().copied());
        backward.extend(step.seq2.ops().iter().copied());
        on_phase(&step.phase);
        phases.push(step.phase);
    }
    let mut sequence = forward;
    sequence.extend(backward.inverse().ops().iter().copied());

    let m = g1.edge_count();
    if sequence.len() > 2 * m * m {
        return Err(Error::Internal(format!("sequence length {} exceeds 2M^2", sequence.len())));
    }
    Ok(PlanOutcome::Feasible(Plan { sequence, meeting_graph: w1, phases }))
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
    fn tri_single_phase() {
        let (g1, g2) = fixtures::tri();
        let step = decrease_difference(&g1, &g2).unwrap();
        let ac = g1.edge_by_names("a", "c").unwrap();
        assert_eq!(step.seq1.ops(), [RelabelOp::new(ac, 1, 2).unwrap()]);
        assert!(step.seq2.is_empty());
        assert_eq!(step.phase.level, 0);
        let after = step.seq1.apply_to(&g1).unwrap();
        assert_eq!(after.difference(&g2).unwrap(), 0);
    }

    #[test]
    fn decrease_difference_preconditions() {
        let (g1, _) = fixtures::tri();
        assert_eq!(decrease_difference(&g1, &g1).unwrap_err(), Error::NoDifference);
        let (i1, i2) = fixtures::infeas();
        assert_eq!(decrease_difference(&i1, &i2).unwrap_err(), Error::Unchangeable(te(&i1, "a", "b", 1)));
    }

    #[test]
    fn plan_fixtures() {
        let (g1, g2) = fixtures::tri();
        let PlanOutcome::Feasible(p) = plan(&g1, &g2).unwrap() else { panic!("tri is feasible") };
        assert_eq!(p.sequence.len(), 1);
        assert!(validate_sequence(&g1, &p.sequence, &g2).unwrap().ok);
        assert_eq!(p.meeting_graph, g2);

        let (i1, i2) = fixtures::infeas();
        match plan(&i1, &i2).unwrap() {
            PlanOutcome::Infeasible(Infeasibility::Unchangeable(w)) => assert_eq!(w, te(&i1, "a", "b", 1)),
            other => panic!("unexpected {other:?}"),
        }

        let c = fixtures::chain2();
        let PlanOutcome::Feasible(p) = plan(&c, &c).unwrap() else { panic!() };
        assert!(p.sequence.is_empty() && p.phases.is_empty());
    }

    #[test]
    fn feasible_decisions() {
        let (g1, g2) = fixtures::tri();
        assert_eq!(feasible(&g1, &g2).unwrap(), Feasibility::Feasible);
        assert_eq!(feasible(&g1, &g1).unwrap(), Feasibility::Feasible);
        let (i1, i2) = fixtures::infeas();
        assert_eq!(
            feasible(&i1, &i2).unwrap(),
            Feasibility::Infeasible(Infeasibility::Unchangeable(te(&i1, "a", "b", 1)))
        );
    }

    #[test]
    fn pair_count_mismatch_is_its_own_infeasibility() {
        let a = TemporalGraph::from_named(
            &["x", "y", "z"],
            2,
            &[("x", "y", 1), ("y", "z", 1), ("x", "y", 2), ("y", "z", 2)],
        )
        .unwrap();
        let b = TemporalGraph::from_named(
            &["x", "y", "z"],
            2,
            &[("x", "y", 1), ("y", "z", 1), ("x", "z", 2), ("y", "z", 2)],
        )
        .unwrap();
        let xy = a.edge_by_names("x", "y").unwrap();
        assert!(matches!(
            plan(&a, &b).unwrap(),
            PlanOutcome::Infeasible(Infeasibility::PairCountMismatch(p)) if p == xy
        ));
        assert_eq!(decrease_difference(&a, &b).unwrap_err(), Error::PairCountMismatch(xy));
    }

    #[test]
    fn rejects_disconnected_or_incompatible_inputs() {
        let (g1, _) = fixtures::tri();
        let cut = g1.with_edges(g1.edges().filter(|&e| e != te(&g1, "a", "b", 2))).unwrap();
        assert_eq!(plan(&g1, &cut).unwrap_err(), Error::NotAlwaysConnected { time: 2 });
        let c = fixtures::chain2();
        assert_eq!(feasible(&g1, &c).unwrap_err(), Error::IncompatibleGraphs);
    }
}
