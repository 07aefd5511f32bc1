//! Connectivity-preserving reconfiguration of temporal graphs.
//!
//! Given two temporal graphs over the same vertices whose snapshots are all
//! connected, decide whether one can be turned into the other by moving one
//! temporal edge to a different time label per step while every snapshot
//! stays connected, and if so produce such a sequence.
//!
//! ```
//! use tgr_core::{fixtures, planner, validate_sequence};
//!
//! let (g1, g2) = fixtures::tri();
//! let planner::PlanOutcome::Feasible(plan) = planner::plan(&g1, &g2)? else {
//!     unreachable!()
//! };
//! assert!(validate_sequence(&g1, &plan.sequence, &g2)?.ok);
//! # Ok::<(), tgr_core::Error>(())
//! ```
//!
//! Module map:
//!
//! - [`graph`], [`sequence`]: value types, snapshots, bridges, relabels, validation
//! - [`reachability`]: bridge partitions and the crossing index
//! - [`changeability`]: per-edge levels and shortest make-non-bridge sequences
//! - [`planner`]: the feasibility decision and sequence synthesis
//! - [`oracle`]: exhaustive search and random instances for cross-checking
//! - [`hardness`]: the vertex-cover reduction and its forward construction
//! - [`format`](mod@format): `.tg` / `.tgs` / edge-list text formats

#![forbid(unsafe_code)]

pub mod changeability;
mod connectivity;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod hardness;
pub mod oracle;
pub mod planner;
pub mod reachability;
pub mod sequence;

pub use changeability::{classify, compute_change_table, sequence_to_nonbridge, ChangeTable, Changeability};
pub use error::{Error, Result};
pub use graph::{Snapshot, StaticEdge, TemporalEdge, TemporalGraph, Time, VertexId};
pub use planner::{feasible, plan, Feasibility, Infeasibility, PlanOutcome};
pub use reachability::{compute_cross, reachability_partition, CrossMap, ReachabilityPartition};
pub use sequence::{validate_sequence, FailureKind, ReconfigSequence, RelabelOp, ValidationReport};
