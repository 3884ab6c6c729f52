//! Non-local gate protocols built on [`runtime`][crate::runtime].
//!
//! Each construction comes in two forms: a builder-level function that appends
//! the protocol to a [`ProgramBuilder`] for arbitrary qubits (so protocols
//! compose), and a ready-made [`Protocol`] in [`standard`] that bundles the
//! program with its ideal gate and declared cost.

mod baseline;
mod demos;
mod multi_party;
mod two_party;
mod verify;

pub mod standard;

pub use baseline::{ baseline_costs, BaselineCosts };
pub use demos::{
    dense_coding_demo, swap_entangling_demo, DenseCodingCase, DenseCodingReport, SwapEntanglingReport,
};
pub use multi_party::{ nonlocal_n_party_control_u, nonlocal_three_party_control_u, nonlocal_toffoli };
pub use two_party::{
    nonlocal_cnot, nonlocal_control_u, nonlocal_generic_two_qubit, nonlocal_swap, swap_via_three_cnots,
    teleport,
};
pub use verify::{ basis_inputs, random_inputs, Mode, Verification };

use std::collections::{ BTreeMap, BTreeSet };
use serde::{ Serialize, Serializer };
use thiserror::Error;
use crate::{
    qstate::{ StateError, Unitary },
    runtime::{ directed_counts, DirectedCount, NodeId, Program, QubitRef, ResourceLedger, RuntimeError },
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error(transparent)]
    Runtime(#[from] RuntimeError),

    #[error(transparent)]
    State(#[from] StateError),

    #[error("operands must sit at distinct nodes: {0}")]
    NotNonlocal(String),

    #[error("party count must be at least 2, got {0}")]
    BadArity(usize),
}

pub type ProtocolResult<T> = Result<T, ProtocolError>;

pub(crate) fn require_distinct(qubits: &[&QubitRef]) -> ProtocolResult<()> {
    let owners: BTreeSet<&NodeId> = qubits.iter().map(|q| &q.owner).collect();
    if owners.len() != qubits.len() {
        let names: Vec<String> = qubits.iter().map(|q| q.to_string()).collect();
        return Err(ProtocolError::NotNonlocal(names.join(", ")));
    }
    Ok(())
}

/// The gate a protocol is meant to implement. Slot `i` of `ideal` reads its
/// input from `inputs[i]` and leaves its output on `outputs[i]` (these differ
/// when the protocol teleports the qubit).
#[derive(Clone, Debug, PartialEq)]
pub struct GateSpec {
    pub ideal: Unitary,
    pub inputs: Vec<QubitRef>,
    pub outputs: Vec<QubitRef>,
}

impl GateSpec {
    pub fn new(ideal: Unitary, inputs: Vec<QubitRef>, outputs: Vec<QubitRef>) -> ProtocolResult<Self> {
        let expected = 1 << inputs.len();
        if ideal.dim() != expected || outputs.len() != inputs.len() {
            return Err(StateError::DimensionMismatch { expected, found: ideal.dim() }.into());
        }
        Ok(Self { ideal, inputs, outputs })
    }

    /// Number of distinct nodes holding the inputs.
    pub fn node_span(&self) -> usize {
        self.inputs.iter().map(|q| &q.owner).collect::<BTreeSet<_>>().len()
    }
}

/// Entanglement and directed classical communication of a protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostReport {
    pub ebits: usize,
    pub bits_by_direction: BTreeMap<(NodeId, NodeId), usize>,
    pub bits_total: usize,
}

impl CostReport {
    pub fn new(ebits: usize, directed: &[(&str, &str, usize)]) -> Self {
        let bits_by_direction: BTreeMap<(NodeId, NodeId), usize> = directed
            .iter()
            .filter(|(_, _, n)| *n > 0)
            .map(|(f, t, n)| ((NodeId::new(*f), NodeId::new(*t)), *n))
            .collect();
        let bits_total = bits_by_direction.values().sum();
        Self { ebits, bits_by_direction, bits_total }
    }

    pub fn bits(&self, from: &str, to: &str) -> usize {
        self.bits_by_direction.get(&(NodeId::new(from), NodeId::new(to))).copied().unwrap_or(0)
    }
}

impl From<&ResourceLedger> for CostReport {
    fn from(ledger: &ResourceLedger) -> Self {
        Self {
            ebits: ledger.ebits_consumed,
            bits_by_direction: ledger.bits_sent.clone(),
            bits_total: ledger.bits_total(),
        }
    }
}

impl Serialize for CostReport {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            ebits: usize,
            bits_by_direction: Vec<DirectedCount>,
            bits_total: usize,
        }
        Wire {
            ebits: self.ebits,
            bits_by_direction: directed_counts(&self.bits_by_direction),
            bits_total: self.bits_total,
        }
        .serialize(ser)
    }
}

/// A complete protocol: program, target gate and the resources it is declared
/// to consume.
#[derive(Clone, Debug, PartialEq)]
pub struct Protocol {
    pub program: Program,
    pub spec: GateSpec,
    pub declared: CostReport,
}

impl Protocol {
    pub fn name(&self) -> &str { &self.program.name }
}
