use std::collections::{ BTreeSet, HashMap, HashSet };
use crate::qstate::StateError;
use super::{
    BitRef, ClassicalRecord, Instr, NodeId, QubitRef, ResourceLedger, RuntimeError, RuntimeResult,
};

/// Classical bookkeeping of one (partial) run: who owns which qubit, who
/// knows which measurement outcome, and what has been spent.
#[derive(Clone, Debug, Default)]
pub(crate) struct Context {
    nodes: BTreeSet<NodeId>,
    /// Every label ever introduced; entries are never modified.
    owners: HashMap<String, NodeId>,
    live: HashSet<String>,
    known: HashMap<BitRef, BTreeSet<NodeId>>,
    values: HashMap<BitRef, u8>,
    pub ledger: ResourceLedger,
    pub transcript: Vec<ClassicalRecord>,
    pub outcomes: Vec<(QubitRef, u8)>,
}

impl Context {
    pub fn new(nodes: &[NodeId]) -> RuntimeResult<Self> {
        let mut ctx = Self::default();
        for n in nodes {
            if !ctx.nodes.insert(n.clone()) {
                return Err(RuntimeError::DuplicateNode(n.to_string()));
            }
        }
        Ok(ctx)
    }

    pub fn declare_node(&mut self, node: NodeId) { self.nodes.insert(node); }

    fn check_node(&self, node: &NodeId) -> RuntimeResult<()> {
        if self.nodes.contains(node) {
            Ok(())
        } else {
            Err(RuntimeError::UnknownNode(node.to_string()))
        }
    }

    pub fn check_owned(&self, node: &NodeId, qubit: &QubitRef) -> RuntimeResult<()> {
        self.check_node(node)?;
        if !self.live.contains(&qubit.label) {
            return Err(StateError::UnknownQubit(qubit.label.clone()).into());
        }
        let owner = &self.owners[&qubit.label];
        if owner != node {
            return Err(RuntimeError::LocalityViolation {
                node: node.clone(),
                qubit: qubit.label.clone(),
                owner: owner.clone(),
            });
        }
        Ok(())
    }

    pub fn check_known(&self, node: &NodeId, bit: BitRef) -> RuntimeResult<()> {
        self.check_node(node)?;
        match self.known.get(&bit) {
            Some(nodes) if nodes.contains(node) => Ok(()),
            _ => Err(RuntimeError::KnowledgeViolation { node: node.clone(), bit }),
        }
    }

    fn add_qubit(&mut self, qubit: &QubitRef) -> RuntimeResult<()> {
        self.check_node(&qubit.owner)?;
        if self.owners.contains_key(&qubit.label) {
            return Err(StateError::DuplicateQubit(qubit.label.clone()).into());
        }
        self.owners.insert(qubit.label.clone(), qubit.owner.clone());
        self.live.insert(qubit.label.clone());
        Ok(())
    }

    pub fn value(&self, bit: BitRef) -> Option<u8> { self.values.get(&bit).copied() }

    pub fn set_outcome(&mut self, qubit: &QubitRef, bit: BitRef, value: u8) {
        self.values.insert(bit, value);
        self.outcomes.push((qubit.clone(), value));
    }

    /// Validates `instr` and applies its classical effects. `When` blocks go
    /// through [`check_when`][Self::check_when] and are executed by the caller.
    pub fn admit(&mut self, instr: &Instr) -> RuntimeResult<()> {
        match instr {
            Instr::Input { qubit, .. } => self.add_qubit(qubit),
            Instr::Alloc { qubit, init } => {
                if init.num_qubits() != 1 {
                    return Err(StateError::DimensionMismatch {
                        expected: 2,
                        found: init.amplitudes().len(),
                    }
                    .into());
                }
                self.add_qubit(qubit)
            }
            Instr::BellPair { a, b } => {
                if a.owner == b.owner {
                    return Err(RuntimeError::SameNode(a.owner.clone()));
                }
                if a.label == b.label {
                    return Err(StateError::DuplicateQubit(a.label.clone()).into());
                }
                self.check_node(&a.owner)?;
                self.check_node(&b.owner)?;
                self.add_qubit(a)?;
                self.add_qubit(b)?;
                self.ledger.ebits_consumed += 1;
                Ok(())
            }
            Instr::Local { node, gate, qubits, .. } => {
                for q in qubits {
                    self.check_owned(node, q)?;
                }
                if gate.dim() != 1 << qubits.len() {
                    return Err(StateError::DimensionMismatch {
                        expected: 1 << qubits.len(),
                        found: gate.dim(),
                    }
                    .into());
                }
                Ok(())
            }
            Instr::Measure { node, qubit, bit } => {
                self.check_owned(node, qubit)?;
                if self.known.contains_key(bit) {
                    return Err(RuntimeError::Malformed(format!("bit {bit} assigned twice")));
                }
                self.known.insert(*bit, BTreeSet::from([node.clone()]));
                self.live.remove(&qubit.label);
                Ok(())
            }
            Instr::Send { from, to, bit } => {
                self.check_node(to)?;
                if from == to {
                    return Err(RuntimeError::SameNode(from.clone()));
                }
                self.check_known(from, *bit)?;
                self.known.get_mut(bit).expect("checked").insert(to.clone());
                self.ledger.record_bit(from, to);
                if let Some(value) = self.value(*bit) {
                    let step = self.transcript.len();
                    self.transcript.push(ClassicalRecord { from: from.clone(), to: to.clone(), bit: value, step });
                }
                Ok(())
            }
            Instr::When { .. } => self.check_when(instr),
        }
    }

    /// Validates a `When` block by dry-running its body on a copy of the
    /// current bookkeeping. The result does not depend on the bit's value.
    pub fn check_when(&self, instr: &Instr) -> RuntimeResult<()> {
        let Instr::When { node, bit, body } = instr else {
            return Err(RuntimeError::Malformed("expected a conditional block".into()));
        };
        self.check_known(node, *bit)?;
        let mut scratch = self.clone();
        for step in body {
            match step {
                Instr::Local { .. } | Instr::Send { .. } | Instr::When { .. } => {}
                other => {
                    return Err(RuntimeError::Malformed(format!(
                        "`{other}` is not allowed inside a conditional block"
                    )))
                }
            }
            let actor = step.actor().expect("single-node step");
            scratch.check_known(actor, *bit)?;
            scratch.admit(step)?;
        }
        Ok(())
    }
}
