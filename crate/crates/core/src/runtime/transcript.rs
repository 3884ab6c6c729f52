//! JSON export of a run:
//! `{protocol, inputs, branches: [{probability, outcomes, transcript}],
//! ledger: {ebits, bits: [{from, to, count}]}}`.

use std::collections::BTreeMap;
use serde::{ Deserialize, Serialize };
use super::{ ClassicalRecord, NodeId, ResourceLedger, RunOutcome };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub protocol: String,
    pub inputs: Vec<InputRecord>,
    pub branches: Vec<BranchRecord>,
    pub ledger: LedgerRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub qubit: String,
    pub owner: NodeId,
    /// `[re, im]` pairs.
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub probability: f64,
    pub outcomes: Vec<OutcomeRecord>,
    pub transcript: Vec<ClassicalRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub qubit: String,
    pub owner: NodeId,
    pub bit: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub ebits: usize,
    pub bits: Vec<DirectedCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedCount {
    pub from: NodeId,
    pub to: NodeId,
    pub count: usize,
}

/// Flattens a directed bit-count map in `(from, to)` order.
pub fn directed_counts(map: &BTreeMap<(NodeId, NodeId), usize>) -> Vec<DirectedCount> {
    map.iter()
        .map(|((from, to), &count)| DirectedCount { from: from.clone(), to: to.clone(), count })
        .collect()
}

impl From<&ResourceLedger> for LedgerRecord {
    fn from(ledger: &ResourceLedger) -> Self {
        Self { ebits: ledger.ebits_consumed, bits: directed_counts(&ledger.bits_sent) }
    }
}

impl RunOutcome {
    pub fn record(&self) -> RunRecord {
        RunRecord {
            protocol: self.protocol.clone(),
            inputs: self
                .inputs
                .iter()
                .map(|(q, s)| InputRecord {
                    qubit: q.label.clone(),
                    owner: q.owner.clone(),
                    amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
                })
                .collect(),
            branches: self
                .branches
                .iter()
                .map(|b| BranchRecord {
                    probability: b.probability,
                    outcomes: b
                        .outcomes
                        .iter()
                        .map(|(q, bit)| OutcomeRecord { qubit: q.label.clone(), owner: q.owner.clone(), bit: *bit })
                        .collect(),
                    transcript: b.transcript.clone(),
                })
                .collect(),
            ledger: (&self.ledger).into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.record()).expect("run record serializes")
    }
}
