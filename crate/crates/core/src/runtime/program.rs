use std::{ collections::HashSet, fmt };
use crate::qstate::{ gates, PureState, Unitary };
use super::{
    context::Context, BitRef, NodeId, QubitRef, RuntimeError, RuntimeResult,
};

/// One step of a protocol program.
#[derive(Clone, Debug, PartialEq)]
pub enum Instr {
    /// Introduce the caller-supplied input state `slot` as `qubit`.
    Input { qubit: QubitRef, slot: usize },
    /// Introduce a fixed single-qubit state.
    Alloc { qubit: QubitRef, init: PureState },
    /// Share `|φ⁺⟩` between two different nodes; costs one ebit.
    BellPair { a: QubitRef, b: QubitRef },
    /// A unitary applied by `node` to qubits it owns.
    Local { node: NodeId, name: String, gate: Unitary, qubits: Vec<QubitRef> },
    /// Computational-basis measurement by `node`; the qubit is discarded and
    /// the outcome is known at `node` only.
    Measure { node: NodeId, qubit: QubitRef, bit: BitRef },
    /// One bit of classical communication.
    Send { from: NodeId, to: NodeId, bit: BitRef },
    /// Run `body` at `node` in the branches where `bit` is 1. The body may
    /// contain only `Local`, `Send` and nested `When` steps.
    When { node: NodeId, bit: BitRef, body: Vec<Instr> },
}

impl Instr {
    /// The node performing this step, if it is a single-node action.
    pub fn actor(&self) -> Option<&NodeId> {
        match self {
            Self::Local { node, .. } | Self::Measure { node, .. } | Self::When { node, .. } => Some(node),
            Self::Send { from, .. } => Some(from),
            Self::Input { qubit, .. } | Self::Alloc { qubit, .. } => Some(&qubit.owner),
            Self::BellPair { .. } => None,
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |qs: &[QubitRef]| qs.iter().map(|q| q.label.as_str()).collect::<Vec<_>>().join(", ");
        match self {
            Self::Input { qubit, slot } => write!(f, "{}: input #{slot} -> {}", qubit.owner, qubit.label),
            Self::Alloc { qubit, .. } => write!(f, "{}: prepare {}", qubit.owner, qubit.label),
            Self::BellPair { a, b } => write!(f, "share |φ+⟩ on {a}, {b}"),
            Self::Local { node, name, qubits, .. } => write!(f, "{node}: {name}({})", list(qubits)),
            Self::Measure { node, qubit, bit } => write!(f, "{node}: measure {} -> {bit}", qubit.label),
            Self::Send { from, to, bit } => write!(f, "{from} -> {to}: send {bit}"),
            Self::When { node, bit, body } => {
                write!(f, "{node}: if {bit} then [")?;
                for (i, step) in body.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{step}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A straight-line protocol over named nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub name: String,
    pub nodes: Vec<NodeId>,
    pub instructions: Vec<Instr>,
    /// Qubits holding the result, in gate-slot order.
    pub outputs: Vec<QubitRef>,
}

impl Program {
    /// Assembles a program without validation; [`run_protocol`][super::run_protocol]
    /// validates every step.
    pub fn new(
        name: impl Into<String>,
        nodes: Vec<NodeId>,
        instructions: Vec<Instr>,
        outputs: Vec<QubitRef>,
    ) -> Self {
        Self { name: name.into(), nodes, instructions, outputs }
    }

    /// Input qubits ordered by slot.
    pub fn inputs(&self) -> Vec<QubitRef> {
        let mut slots: Vec<(usize, &QubitRef)> = self
            .instructions
            .iter()
            .filter_map(|i| match i {
                Instr::Input { qubit, slot } => Some((*slot, qubit)),
                _ => None,
            })
            .collect();
        slots.sort_by_key(|(s, _)| *s);
        slots.into_iter().map(|(_, q)| q.clone()).collect()
    }

    pub fn measurement_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instr::Measure { .. })).count()
    }
}

/// Incremental construction of a [`Program`], validating each step against
/// qubit ownership and classical knowledge as it is added.
#[derive(Clone, Debug)]
pub struct ProgramBuilder {
    name: String,
    nodes: Vec<NodeId>,
    instructions: Vec<Instr>,
    ctx: Context,
    labels: HashSet<String>,
    next_bit: usize,
    next_slot: usize,
}

impl ProgramBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            nodes: Vec::new(),
            instructions: Vec::new(),
            ctx: Context::default(),
            labels: HashSet::new(),
            next_bit: 0,
            next_slot: 0,
        }
    }

    /// Declares a node (idempotent) and returns its id.
    pub fn node(&mut self, name: &str) -> NodeId {
        let id = NodeId::new(name);
        if !self.nodes.contains(&id) {
            self.nodes.push(id.clone());
            self.ctx.declare_node(id.clone());
        }
        id
    }

    pub fn nodes(&self) -> &[NodeId] { &self.nodes }

    /// `base` if unused, otherwise `base_2`, `base_3`, ...
    pub fn fresh_label(&self, base: &str) -> String {
        if !self.labels.contains(base) {
            return base.to_string();
        }
        (2..).map(|k| format!("{base}_{k}")).find(|l| !self.labels.contains(l)).unwrap()
    }

    fn push(&mut self, instr: Instr) -> RuntimeResult<()> {
        self.ctx.admit(&instr)?;
        self.instructions.push(instr);
        Ok(())
    }

    fn new_qubit(&mut self, node: &NodeId, label: &str) -> QubitRef {
        let label = self.fresh_label(label);
        self.labels.insert(label.clone());
        QubitRef::new(node.clone(), label)
    }

    /// Declares the next input slot, owned by `node`.
    pub fn input(&mut self, node: &NodeId, label: &str) -> RuntimeResult<QubitRef> {
        let qubit = self.new_qubit(node, label);
        let slot = self.next_slot;
        self.push(Instr::Input { qubit: qubit.clone(), slot })?;
        self.next_slot += 1;
        Ok(qubit)
    }

    pub fn alloc_qubit(&mut self, node: &NodeId, label: &str, init: PureState) -> RuntimeResult<QubitRef> {
        let qubit = self.new_qubit(node, label);
        self.push(Instr::Alloc { qubit: qubit.clone(), init })?;
        Ok(qubit)
    }

    /// Shares `|φ⁺⟩` between `a` and `b`, consuming one ebit.
    pub fn alloc_bell_pair(
        &mut self,
        a: &NodeId,
        label_a: &str,
        b: &NodeId,
        label_b: &str,
    ) -> RuntimeResult<(QubitRef, QubitRef)> {
        if a == b {
            return Err(RuntimeError::SameNode(a.clone()));
        }
        let qa = self.new_qubit(a, label_a);
        let qb = self.new_qubit(b, label_b);
        self.push(Instr::BellPair { a: qa.clone(), b: qb.clone() })?;
        Ok((qa, qb))
    }

    pub fn local_apply(&mut self, node: &NodeId, u: &Unitary, qubits: &[&QubitRef]) -> RuntimeResult<()> {
        self.local_named(node, "U", u, qubits)
    }

    /// [`local_apply`][Self::local_apply] with a display name for traces.
    pub fn local_named(&mut self, node: &NodeId, name: &str, u: &Unitary, qubits: &[&QubitRef]) -> RuntimeResult<()> {
        self.push(Instr::Local {
            node: node.clone(),
            name: name.to_string(),
            gate: u.clone(),
            qubits: qubits.iter().map(|&q| q.clone()).collect(),
        })
    }

    pub fn measure(&mut self, node: &NodeId, qubit: &QubitRef) -> RuntimeResult<BitRef> {
        let bit = BitRef(self.next_bit);
        self.push(Instr::Measure { node: node.clone(), qubit: qubit.clone(), bit })?;
        self.next_bit += 1;
        Ok(bit)
    }

    pub fn send_bit(&mut self, from: &NodeId, to: &NodeId, bit: BitRef) -> RuntimeResult<()> {
        self.push(Instr::Send { from: from.clone(), to: to.clone(), bit })
    }

    /// Applies `u` at `node` in the branches where `bit` is 1.
    pub fn conditional_apply(
        &mut self,
        node: &NodeId,
        bit: BitRef,
        name: &str,
        u: &Unitary,
        qubits: &[&QubitRef],
    ) -> RuntimeResult<()> {
        self.when(node, bit, |b| b.local_named(node, name, u, qubits))
    }

    /// Builds a classically-controlled block run at `node` when `bit` is 1.
    ///
    /// Classical knowledge gained inside the block is not visible to later
    /// steps, since it only exists on some branches.
    pub fn when(
        &mut self,
        node: &NodeId,
        bit: BitRef,
        body: impl FnOnce(&mut Self) -> RuntimeResult<()>,
    ) -> RuntimeResult<()> {
        self.ctx.check_known(node, bit)?;
        let snapshot = self.ctx.clone();
        let outer = std::mem::take(&mut self.instructions);
        let result = body(self);
        let inner = std::mem::replace(&mut self.instructions, outer);
        self.ctx = snapshot;
        result?;
        let instr = Instr::When { node: node.clone(), bit, body: inner };
        self.ctx.check_when(&instr)?;
        self.instructions.push(instr);
        Ok(())
    }

    /// Pauli-X correction: `σ_x` on `qubit` when `bit` is 1.
    pub fn correct_x(&mut self, node: &NodeId, bit: BitRef, qubit: &QubitRef) -> RuntimeResult<()> {
        self.conditional_apply(node, bit, "X", &gates::not(), &[qubit])
    }

    /// Pauli-Z correction: `σ_z` on `qubit` when `bit` is 1.
    pub fn correct_z(&mut self, node: &NodeId, bit: BitRef, qubit: &QubitRef) -> RuntimeResult<()> {
        self.conditional_apply(node, bit, "Z", &gates::pauli_z(), &[qubit])
    }

    pub fn finish(self, outputs: Vec<QubitRef>) -> Program {
        Program::new(self.name, self.nodes, self.instructions, outputs)
    }
}
