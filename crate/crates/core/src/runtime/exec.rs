use rand::{ Rng, RngCore };
use crate::qstate::{ MeasurementBranch, PureState, StateError, C64 };
use super::{
    context::Context, ClassicalRecord, Instr, Program, QubitRef, ResourceLedger, RuntimeError,
    RuntimeResult,
};

/// One measurement-outcome path through a program.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub probability: f64,
    /// State of the qubits still alive at the end of the run.
    pub state: PureState,
    pub transcript: Vec<ClassicalRecord>,
    pub outcomes: Vec<(QubitRef, u8)>,
}

/// Every branch of a run plus the resources it consumed.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub protocol: String,
    pub inputs: Vec<(QubitRef, PureState)>,
    pub branches: Vec<Branch>,
    pub ledger: ResourceLedger,
}

impl RunOutcome {
    pub fn total_probability(&self) -> f64 { self.branches.iter().map(|b| b.probability).sum() }
}

/// Snapshot handed to a trace observer after each executed step.
#[derive(Debug)]
pub struct TraceEvent<'a> {
    pub index: usize,
    pub instruction: &'a Instr,
    /// Set for measurements.
    pub outcome: Option<u8>,
    /// Probability of the trajectory so far.
    pub probability: f64,
    pub state: &'a PureState,
    pub ledger: &'a ResourceLedger,
}

enum Chooser<'r> {
    All,
    Sample(&'r mut dyn RngCore),
}

struct Driver<'p, 'r, 'o> {
    program: &'p Program,
    inputs: &'p [PureState],
    chooser: Chooser<'r>,
    observer: Option<&'o mut dyn FnMut(&TraceEvent)>,
    finished: Vec<(Branch, ResourceLedger)>,
}

impl<'p> Driver<'p, '_, '_> {
    fn observe(&mut self, index: usize, outcome: Option<u8>, probability: f64, state: &PureState, ctx: &Context) {
        if let Some(obs) = self.observer.as_mut() {
            obs(&TraceEvent {
                index,
                instruction: &self.program.instructions[index],
                outcome,
                probability,
                state,
                ledger: &ctx.ledger,
            });
        }
    }

    fn introduce(&self, state: &mut PureState, qubit: &QubitRef, init: &PureState) -> RuntimeResult<()> {
        if init.num_qubits() != 1 {
            return Err(StateError::DimensionMismatch { expected: 2, found: init.amplitudes().len() }.into());
        }
        let mut init = init.clone();
        let old = init.register()[0].clone();
        init.relabel(&old, &qubit.label)?;
        *state = state.tensor(&init)?;
        Ok(())
    }

    /// Executes a non-measurement step.
    fn execute(&self, instr: &Instr, ctx: &mut Context, state: &mut PureState) -> RuntimeResult<()> {
        match instr {
            Instr::Input { qubit, slot } => {
                ctx.admit(instr)?;
                let init = self.inputs.get(*slot).ok_or(RuntimeError::MissingInput {
                    expected: slot + 1,
                    found: self.inputs.len(),
                })?;
                self.introduce(state, qubit, init)
            }
            Instr::Alloc { qubit, init } => {
                ctx.admit(instr)?;
                self.introduce(state, qubit, init)
            }
            Instr::BellPair { a, b } => {
                ctx.admit(instr)?;
                *state = state.tensor(&PureState::phi_plus(a.label.clone(), b.label.clone())?)?;
                Ok(())
            }
            Instr::Local { gate, qubits, .. } => {
                ctx.admit(instr)?;
                let labels: Vec<&str> = qubits.iter().map(|q| q.label.as_str()).collect();
                state.apply_in_place(gate, &labels)?;
                Ok(())
            }
            Instr::Send { .. } => ctx.admit(instr),
            Instr::When { bit, body, .. } => {
                ctx.check_when(instr)?;
                if ctx.value(*bit) == Some(1) {
                    for step in body {
                        self.execute(step, ctx, state)?;
                    }
                }
                Ok(())
            }
            Instr::Measure { .. } => Err(RuntimeError::Malformed("nested measurement".into())),
        }
    }

    fn choose(&mut self, mut options: Vec<MeasurementBranch>) -> Vec<MeasurementBranch> {
        match &mut self.chooser {
            Chooser::All => options,
            Chooser::Sample(rng) => {
                let total: f64 = options.iter().map(|b| b.probability).sum();
                let r = rng.random::<f64>() * total;
                let mut acc = 0.0;
                let pick = options
                    .iter()
                    .position(|b| {
                        acc += b.probability;
                        r < acc
                    })
                    .unwrap_or(options.len() - 1);
                vec![options.swap_remove(pick)]
            }
        }
    }

    /// Depth-first over measurement outcomes, outcome 0 first.
    fn explore(&mut self, start: usize, mut ctx: Context, mut state: PureState, probability: f64) -> RuntimeResult<()> {
        let instrs = &self.program.instructions;
        for (pc, instr) in instrs.iter().enumerate().skip(start) {
            if let Instr::Measure { qubit, bit, .. } = instr {
                ctx.admit(instr)?;
                let outcomes = state.measure_branches(&qubit.label)?;
                for mb in self.choose(outcomes) {
                    let mut branch_ctx = ctx.clone();
                    branch_ctx.set_outcome(qubit, *bit, mb.outcome);
                    let p = probability * mb.probability;
                    self.observe(pc, Some(mb.outcome), p, &mb.post, &branch_ctx);
                    self.explore(pc + 1, branch_ctx, mb.post, p)?;
                }
                return Ok(());
            }
            self.execute(instr, &mut ctx, &mut state)?;
            self.observe(pc, None, probability, &state, &ctx);
        }
        self.finished.push((
            Branch { probability, state, transcript: ctx.transcript, outcomes: ctx.outcomes },
            ctx.ledger,
        ));
        Ok(())
    }
}

fn drive(
    program: &Program,
    inputs: &[PureState],
    chooser: Chooser,
    observer: Option<&mut dyn FnMut(&TraceEvent)>,
) -> RuntimeResult<RunOutcome> {
    let declared = program.inputs();
    if declared.len() != inputs.len() {
        return Err(RuntimeError::MissingInput { expected: declared.len(), found: inputs.len() });
    }
    let ctx = Context::new(&program.nodes)?;
    let empty = PureState::new(Vec::<String>::new(), vec![C64::new(1.0, 0.0)])?;
    let mut driver = Driver { program, inputs, chooser, observer, finished: Vec::new() };
    driver.explore(0, ctx, empty, 1.0)?;

    let ledger = driver.finished[0].1.clone();
    for (i, (_, other)) in driver.finished.iter().enumerate().skip(1) {
        if *other != ledger {
            return Err(RuntimeError::NonUniformCommunication(format!(
                "branch 0 uses {ledger}; branch {i} uses {other}"
            )));
        }
    }
    Ok(RunOutcome {
        protocol: program.name.clone(),
        inputs: declared.into_iter().zip(inputs.iter().cloned()).collect(),
        branches: driver.finished.into_iter().map(|(b, _)| b).collect(),
        ledger,
    })
}

/// Runs `program` on every measurement branch.
///
/// Fails if any step violates locality or classical knowledge, or if the
/// branches do not all consume the same ebits and directed bit counts.
pub fn run_protocol(program: &Program, inputs: &[PureState]) -> RuntimeResult<RunOutcome> {
    drive(program, inputs, Chooser::All, None)
}

/// Runs a single trajectory, drawing each measurement outcome from `rng`.
pub fn run_sampled<R: Rng>(program: &Program, inputs: &[PureState], rng: &mut R) -> RuntimeResult<RunOutcome> {
    drive(program, inputs, Chooser::Sample(rng), None)
}

/// [`run_sampled`] with a callback after every step.
pub fn run_traced<R: Rng>(
    program: &Program,
    inputs: &[PureState],
    rng: &mut R,
    mut observer: impl FnMut(&TraceEvent),
) -> RuntimeResult<RunOutcome> {
    drive(program, inputs, Chooser::Sample(rng), Some(&mut observer))
}
