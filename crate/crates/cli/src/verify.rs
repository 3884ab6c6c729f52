use std::process::ExitCode;
use serde::Serialize;
use locc_core::{
    protocols::{ basis_inputs, baseline_costs, random_inputs, standard, BaselineCosts, CostReport, Mode, Protocol },
    qstate::random,
};
use crate::{ usage_error, Gate, ModeArg, VerifyArgs };

#[derive(Serialize)]
struct Report {
    protocol: String,
    verified: bool,
    worst_fidelity: f64,
    branches: usize,
    ledger: CostReport,
    baselines: Option<BaselineCosts>,
    seed: u64,
}

/// Builds the protocol for `gate`. Random `U`s are drawn from `seed`.
pub fn build(gate: Gate, n: Option<usize>, seed: u64) -> Result<Protocol, String> {
    if n.is_some() && gate != Gate::Ncu {
        return Err("--n only applies to ncu".into());
    }
    let mut rng = random::seeded(seed);
    let p = match gate {
        Gate::Cnot => standard::cnot(),
        Gate::Cu => standard::control_u(&random::unitary(&mut rng, 2)).map_err(|e| e.to_string())?,
        Gate::Swap => standard::swap(),
        Gate::Toffoli => standard::toffoli(),
        Gate::Tcu => standard::three_party_control_u(&random::unitary(&mut rng, 2)).map_err(|e| e.to_string())?,
        Gate::Ncu => {
            let n = n.ok_or("ncu needs --n")?;
            if !(2..=8).contains(&n) {
                return Err(format!("--n must be between 2 and 8, got {n}"));
            }
            standard::n_party_control_u(n, &random::unitary(&mut rng, 2)).map_err(|e| e.to_string())?
        }
    };
    Ok(p)
}

fn baselines(gate: Gate, p: &Protocol) -> Option<BaselineCosts> {
    match gate {
        Gate::Swap => None,
        _ => baseline_costs(p.spec.inputs.len()).ok(),
    }
}

pub fn run(args: &VerifyArgs) -> ExitCode {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return usage_error("--tol must be a nonnegative number");
    }
    let p = match build(args.gate, args.n, args.seed) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };
    let k = p.spec.inputs.len();
    let mut sets = basis_inputs(k);
    // Offset so the inputs do not reuse the stream that drew U.
    sets.extend(random_inputs(&mut random::seeded(args.seed.wrapping_add(1)), k, args.samples));
    let mode = match args.mode {
        ModeArg::Branch => Mode::Branch,
        ModeArg::Sample => Mode::Sample { seed: args.seed },
    };
    let v = match p.verify(&sets, mode) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let report = Report {
        protocol: p.name().to_string(),
        verified: v.passed(args.tol),
        worst_fidelity: v.worst_fidelity,
        branches: v.branches,
        ledger: CostReport::from(&v.ledger),
        baselines: baselines(args.gate, &p),
        seed: args.seed,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => say!("{json}"),
    }
    if report.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
