use rand::Rng;
use crate::{
    qstate::{ random, PureState },
    runtime::{ run_protocol, run_sampled, ResourceLedger, RunOutcome },
};
use super::{ CostReport, Protocol, ProtocolResult };

/// How measurement outcomes are explored during verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every branch of every run.
    Branch,
    /// One seeded trajectory per run.
    Sample { seed: u64 },
}

/// Aggregate result of checking a protocol against its ideal gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub runs: usize,
    /// Total branches examined over all runs.
    pub branches: usize,
    /// Minimum over all branches of `|⟨ideal|branch⟩|`.
    pub worst_fidelity: f64,
    /// Maximum entrywise deviation from the ideal output with no phase
    /// freedom.
    pub worst_exact_diff: f64,
    /// Largest `|Σ p − 1|` over the branch-exhaustive runs.
    pub worst_probability_defect: f64,
    /// Resources of the last run.
    pub ledger: ResourceLedger,
    /// Whether every run's ledger equals the declared cost exactly.
    pub ledger_matches: bool,
}

impl Verification {
    pub fn passed(&self, tol: f64) -> bool { self.worst_fidelity >= 1.0 - tol && self.ledger_matches }
}

/// All `2^k` computational basis product inputs, in binary order.
pub fn basis_inputs(k: usize) -> Vec<Vec<PureState>> {
    (0..1usize << k)
        .map(|x| {
            (0..k)
                .map(|j| {
                    let bit = ((x >> (k - 1 - j)) & 1) as u8;
                    PureState::basis(vec![format!("in{j}")], &[bit]).expect("basis state")
                })
                .collect()
        })
        .collect()
}

/// `count` random product inputs of `k` qubits each.
pub fn random_inputs<R: Rng + ?Sized>(rng: &mut R, k: usize, count: usize) -> Vec<Vec<PureState>> {
    (0..count)
        .map(|_| (0..k).map(|j| random::qubit(rng, format!("in{j}"))).collect())
        .collect()
}

impl Protocol {
    /// The ideal gate applied to `inputs`, on the protocol's output labels.
    pub fn ideal_output(&self, inputs: &[PureState]) -> ProtocolResult<PureState> {
        let outputs = &self.spec.outputs;
        if inputs.len() != outputs.len() {
            return Err(crate::runtime::RuntimeError::MissingInput {
                expected: outputs.len(),
                found: inputs.len(),
            }
            .into());
        }
        let mut state = PureState::new(Vec::<String>::new(), vec![crate::qstate::C64::new(1.0, 0.0)])?;
        for (input, out) in inputs.iter().zip(outputs) {
            let mut q = input.clone();
            let old = q.register().first().cloned().unwrap_or_default();
            q.relabel(&old, &out.label)?;
            state = state.tensor(&q)?;
        }
        let labels: Vec<&str> = outputs.iter().map(|q| q.label.as_str()).collect();
        Ok(state.apply_unitary(&self.spec.ideal, &labels)?)
    }

    pub fn run(&self, inputs: &[PureState]) -> ProtocolResult<RunOutcome> {
        Ok(run_protocol(&self.program, inputs)?)
    }

    /// Runs every input set and compares each branch with the ideal output.
    pub fn verify(&self, input_sets: &[Vec<PureState>], mode: Mode) -> ProtocolResult<Verification> {
        let mut rng = match mode {
            Mode::Sample { seed } => Some(random::seeded(seed)),
            Mode::Branch => None,
        };
        let mut v = Verification {
            runs: 0,
            branches: 0,
            worst_fidelity: 1.0,
            worst_exact_diff: 0.0,
            worst_probability_defect: 0.0,
            ledger: ResourceLedger::default(),
            ledger_matches: true,
        };
        for inputs in input_sets {
            let run = match rng.as_mut() {
                Some(rng) => run_sampled(&self.program, inputs, rng)?,
                None => run_protocol(&self.program, inputs)?,
            };
            let ideal = self.ideal_output(inputs)?;
            for branch in &run.branches {
                let f = ideal.fidelity_up_to_phase(&branch.state)?;
                v.worst_fidelity = v.worst_fidelity.min(f);
                v.worst_exact_diff = v.worst_exact_diff.max(ideal.max_abs_diff(&branch.state)?);
            }
            if rng.is_none() {
                v.worst_probability_defect = v.worst_probability_defect.max((run.total_probability() - 1.0).abs());
            }
            v.ledger_matches &= CostReport::from(&run.ledger) == self.declared;
            v.runs += 1;
            v.branches += run.branches.len();
            v.ledger = run.ledger;
        }
        Ok(v)
    }
}
