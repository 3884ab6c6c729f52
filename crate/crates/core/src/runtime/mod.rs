//! A distributed-computer model: qubits owned by nodes, Bell pairs shared
//! between nodes, point-to-point classical messages, and local (possibly
//! classically-controlled) operations.
//!
//! Programs are built with [`ProgramBuilder`], which rejects locality and
//! knowledge violations as instructions are added, and run with [`run_protocol`]
//! (every measurement branch) or [`run_sampled`] (one seeded trajectory). The
//! executor re-validates every instruction, so hand-assembled [`Program`]s get
//! the same guarantees.

mod context;
mod exec;
mod program;
mod transcript;

pub use exec::{ run_protocol, run_sampled, run_traced, Branch, RunOutcome, TraceEvent };
pub use program::{ Instr, Program, ProgramBuilder };
pub use transcript::{
    directed_counts, BranchRecord, DirectedCount, InputRecord, LedgerRecord, OutcomeRecord, RunRecord,
};

use std::{ collections::BTreeMap, fmt };
use serde::{ Deserialize, Serialize };
use thiserror::Error;
use crate::qstate::StateError;

/// A party in the distributed computer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Self { Self(name.into()) }

    pub fn as_str(&self) -> &str { &self.0 }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(&self.0) }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self { Self(s.to_string()) }
}

/// A qubit in the global register together with the node that owns it.
///
/// Ownership is fixed for the qubit's lifetime; moving quantum information to
/// another node (teleportation) produces a new qubit there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitRef {
    pub owner: NodeId,
    pub label: String,
}

impl QubitRef {
    pub fn new(owner: impl Into<NodeId>, label: impl Into<String>) -> Self {
        Self { owner: owner.into(), label: label.into() }
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self { Self(s) }
}

impl fmt::Display for QubitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.label, self.owner)
    }
}

/// Handle to the classical outcome of one measurement.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitRef(pub usize);

impl fmt::Display for BitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "m{}", self.0) }
}

/// One classical message on one branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalRecord {
    pub from: NodeId,
    pub to: NodeId,
    pub bit: u8,
    /// Position of this message in the branch's transcript, from 0.
    pub step: usize,
}

/// Entanglement and classical communication consumed by one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResourceLedger {
    pub ebits_consumed: usize,
    pub bits_sent: BTreeMap<(NodeId, NodeId), usize>,
}

impl ResourceLedger {
    pub fn bits(&self, from: &NodeId, to: &NodeId) -> usize {
        self.bits_sent.get(&(from.clone(), to.clone())).copied().unwrap_or(0)
    }

    pub fn bits_total(&self) -> usize { self.bits_sent.values().sum() }

    pub(crate) fn record_bit(&mut self, from: &NodeId, to: &NodeId) {
        *self.bits_sent.entry((from.clone(), to.clone())).or_insert(0) += 1;
    }
}

impl fmt::Display for ResourceLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ebit(s)", self.ebits_consumed)?;
        for ((from, to), n) in &self.bits_sent {
            write!(f, ", {from}→{to}: {n} bit(s)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuntimeError {
    #[error(transparent)]
    State(#[from] StateError),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("node `{0}` declared twice")]
    DuplicateNode(String),

    #[error("both ends of a Bell pair or message are at `{0}`")]
    SameNode(NodeId),

    #[error("`{node}` cannot act on qubit `{qubit}` owned by `{owner}`")]
    LocalityViolation { node: NodeId, qubit: String, owner: NodeId },

    #[error("`{node}` does not know bit {bit}")]
    KnowledgeViolation { node: NodeId, bit: BitRef },

    #[error("branches disagree on resource use: {0}")]
    NonUniformCommunication(String),

    #[error("program expects {expected} input state(s), got {found}")]
    MissingInput { expected: usize, found: usize },

    #[error("malformed program: {0}")]
    Malformed(String),
}

pub type RuntimeResult<T> = Result<T, RuntimeError>;
