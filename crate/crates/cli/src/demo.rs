use std::process::ExitCode;
use locc_core::{
    protocols::{ dense_coding_demo, random_inputs, swap_entangling_demo, CostReport },
    qstate::{ random, PureState },
    runtime::{ run_traced, TraceEvent },
};
use crate::{ usage_error, verify, DemoArgs, DemoName };

const SHOWN_AMPLITUDES: usize = 8;
const TOL: f64 = 1e-9;

fn fmt_num(x: f64) -> String {
    let x = if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{x:+.6}")
}

/// The largest amplitudes of `s`, ties broken by basis index.
pub fn top_amplitudes(s: &PureState, k: usize) -> Vec<String> {
    let n = s.num_qubits();
    let mut idx: Vec<usize> = (0..s.amplitudes().len()).collect();
    idx.sort_by(|&a, &b| {
        s.amplitudes()[b].norm().total_cmp(&s.amplitudes()[a].norm()).then(a.cmp(&b))
    });
    idx.into_iter()
        .take(k)
        .filter(|&i| s.amplitudes()[i].norm() > 5e-7)
        .map(|i| {
            let z = s.amplitudes()[i];
            let bits: String = (0..n).map(|q| if (i >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' }).collect();
            format!("({}{}i)|{}⟩", fmt_num(z.re), fmt_num(z.im), bits)
        })
        .collect()
}

fn ledger_line(c: &CostReport) -> String {
    let dirs: Vec<String> = c.bits_by_direction.iter().map(|((f, t), n)| format!("{f}→{t}: {n}")).collect();
    format!("ledger: {} ebit(s), {} bit(s) [{}]", c.ebits, c.bits_total, dirs.join(", "))
}

fn dense_coding() -> ExitCode {
    let report = match dense_coding_demo() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    for case in &report.cases {
        say!(
            "message {}{} encoded with {:<7} decoded with probability {:.12} over {} branches{}",
            case.message[0],
            case.message[1],
            case.encoding,
            case.decode_probability,
            case.branches,
            if case.deterministic { "" } else { " (not deterministic)" }
        );
    }
    let decoded = report.decoded(TOL);
    say!("{decoded}/4 messages decoded");
    say!("{}", ledger_line(&report.ledger));
    if decoded == 4 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

fn swap_entangle() -> ExitCode {
    let r = match swap_entangling_demo() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    say!("entanglement across the Alice/Bob cut before the swap: {:.12} ebits", r.entropy_before.abs());
    say!("entanglement across the Alice/Bob cut after the swap:  {:.12} ebits (worst of {} branches)", r.entropy_after, r.branches);
    say!("cross-node pair Schmidt coefficients: ({:.12}, {:.12})", r.pair_schmidt[0], r.pair_schmidt[1]);
    say!("{}", ledger_line(&r.ledger));
    let ok = (r.entropy_after - 2.0).abs() <= TOL;
    say!("{}", if ok { "two ebits established" } else { "fewer than two ebits established" });
    if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

fn trace(args: &DemoArgs) -> ExitCode {
    let p = match verify::build(args.gate, args.n, args.seed) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };
    let inputs = random_inputs(&mut random::seeded(args.seed.wrapping_add(1)), p.spec.inputs.len(), 1).remove(0);
    say!("protocol {} (seed {})", p.name(), args.seed);
    let mut observer = |ev: &TraceEvent| {
        let outcome = ev.outcome.map(|b| format!(" => {b}")).unwrap_or_default();
        say!("[{:>2}] {}{outcome}  p={:.6}", ev.index, ev.instruction, ev.probability);
        say!("     register [{}]", ev.state.register().join(", "));
        say!("     {}", top_amplitudes(ev.state, SHOWN_AMPLITUDES).join(" "));
    };
    let run = match run_traced(&p.program, &inputs, &mut random::seeded(args.seed), &mut observer) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let branch = &run.branches[0];
    for rec in &branch.transcript {
        say!("message {}: {} → {} bit {}", rec.step, rec.from, rec.to, rec.bit);
    }
    let ideal = p.ideal_output(&inputs).expect("ideal output");
    let f = ideal.fidelity_up_to_phase(&branch.state).unwrap_or(0.0);
    say!("fidelity with ideal output {:.12}", f);
    say!("{}", ledger_line(&CostReport::from(&run.ledger)));
    if f >= 1.0 - TOL { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

pub fn run(args: &DemoArgs) -> ExitCode {
    if args.demo != DemoName::Trace && args.n.is_some() {
        return usage_error("--n only applies to the trace demo");
    }
    match args.demo {
        DemoName::Densecoding => dense_coding(),
        DemoName::SwapEntangle => swap_entangle(),
        DemoName::Trace => trace(args),
    }
}
