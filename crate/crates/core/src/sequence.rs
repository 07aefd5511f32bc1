//! Relabel operations, reconfiguration sequences and their validation.

use crate::connectivity;
use crate::error::{Error, Result};
use crate::graph::{StaticEdge, TemporalEdge, TemporalGraph, Time};

/// Move the pair `edge` from time `from` to time `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelabelOp {
    pub edge: StaticEdge,
    pub from: Time,
    pub to: Time,
}

impl RelabelOp {
    pub fn new(edge: StaticEdge, from: Time, to: Time) -> Result<Self> {
        if from == to {
            return Err(Error::SameTime(from));
        }
        Ok(RelabelOp { edge, from, to })
    }

    /// The temporal edge removed by this op.
    pub fn source(&self) -> TemporalEdge {
        self.edge.at(self.from)
    }

    /// The temporal edge created by this op.
    pub fn target(&self) -> TemporalEdge {
        self.edge.at(self.to)
    }

    /// The op that undoes this one.
    pub fn reversed(&self) -> RelabelOp {
        RelabelOp { edge: self.edge, from: self.to, to: self.from }
    }
}

/// Ordered list of relabel operations. Its length is the number of ops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReconfigSequence {
    ops: Vec<RelabelOp>,
}

impl ReconfigSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[RelabelOp] {
        &self.ops
    }

    pub fn push(&mut self, op: RelabelOp) {
        self.ops.push(op);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = RelabelOp>) {
        self.ops.extend(other);
    }

    /// Undoes the whole sequence: ops reversed in order, each one inverted.
    pub fn inverse(&self) -> ReconfigSequence {
        self.ops.iter().rev().map(RelabelOp::reversed).collect()
    }

    /// Applies every op without connectivity checks.
    pub fn apply_to(&self, g: &TemporalGraph) -> Result<TemporalGraph> {
        let mut g = g.clone();
        for op in &self.ops {
            g.relabel_in_place(op)?;
        }
        Ok(g)
    }
}

impl From<Vec<RelabelOp>> for ReconfigSequence {
    fn from(ops: Vec<RelabelOp>) -> Self {
        ReconfigSequence { ops }
    }
}

impl FromIterator<RelabelOp> for ReconfigSequence {
    fn from_iter<I: IntoIterator<Item = RelabelOp>>(iter: I) -> Self {
        ReconfigSequence { ops: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a ReconfigSequence {
    type Item = &'a RelabelOp;
    type IntoIter = std::slice::Iter<'a, RelabelOp>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Time label outside the lifetime, unknown vertex, or `from == to`.
    Malformed,
    MissingEdge,
    Collision,
    /// The moved edge was a bridge, so its snapshot fell apart.
    DisconnectsSnapshot,
}

impl FailureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureKind::Malformed => "malformed",
            FailureKind::MissingEdge => "missing-edge",
            FailureKind::Collision => "collision",
            FailureKind::DisconnectsSnapshot => "disconnects-snapshot",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepFailure {
    /// 0-based op index.
    pub step: usize,
    pub kind: FailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub failure: Option<StepFailure>,
    /// Meaningful only when every step succeeded.
    pub reaches_target: bool,
    pub length: usize,
}

/// Replays `seq` on `g1`, checking each intermediate graph stays always-connected,
/// and whether the final graph equals `g2`.
///
/// Inputs that are not always-connected or not compatible are reported as
/// errors; everything that goes wrong during replay is part of the report.
pub fn validate_sequence(g1: &TemporalGraph, seq: &ReconfigSequence, g2: &TemporalGraph) -> Result<ValidationReport> {
    if !g1.is_compatible_with(g2) {
        return Err(Error::IncompatibleGraphs);
    }
    g1.require_always_connected()?;
    g2.require_always_connected()?;

    let mut current = g1.clone();
    for (step, op) in seq.ops().iter().enumerate() {
        let kind = match current.check_relabel(op) {
            Err(Error::MissingEdge(_)) => Some(FailureKind::MissingEdge),
            Err(Error::Collision(_)) => Some(FailureKind::Collision),
            Err(_) => Some(FailureKind::Malformed),
            Ok(()) => {
                let layer: Vec<_> = current.layer(op.from).iter().copied().collect();
                let pos = layer.binary_search(&op.edge).expect("source exists");
                (!connectivity::is_connected_without(current.vertex_count(), &layer, pos))
                    .then_some(FailureKind::DisconnectsSnapshot)
            }
        };
        if let Some(kind) = kind {
            return Ok(ValidationReport {
                ok: false,
                failure: Some(StepFailure { step, kind }),
                reaches_target: false,
                length: seq.len(),
            });
        }
        current.relabel_in_place(op)?;
    }
    let reaches_target = current == *g2;
    Ok(ValidationReport { ok: reaches_target, failure: None, reaches_target, length: seq.len() })
}
