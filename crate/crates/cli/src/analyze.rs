use std::process::ExitCode;
use serde_json::{ json, Value };
use locc_core::{
    analysis::*,
    qstate::{ gates, random, HermitianGenerator, C64 },
};
use crate::{ usage_error, AnalyzeArgs, Check };

fn quad_json(q: &SymmetrizerQuad) -> Value {
    let m = |u: &locc_core::qstate::Unitary| -> Vec<Vec<[f64; 2]>> {
        (0..2).map(|i| (0..2).map(|j| {
            let z = u.matrix()[(i, j)];
            [clean(z.re), clean(z.im)]
        }).collect()).collect()
    };
    json!({ "u1": m(&q.u1), "u2": m(&q.u2), "u3": m(&q.u3), "u4": m(&q.u4) })
}

/// Rounds away the last few ulps so that printed matrices are stable and
/// free of `-0`.
fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 { 0.0 } else { r }
}

fn evaluate(args: &AnalyzeArgs) -> Result<(bool, Value), AnalysisError> {
    let mut rng = random::seeded(args.seed);
    Ok(match args.check {
        Check::Condition => {
            let h = SymmetrizerQuad::uniform(&gates::hadamard());
            let with_h = check_condition(&gates::cnot(), &h)?;
            let bare = check_condition(&gates::cnot(), &SymmetrizerQuad::identities())?;
            (with_h && !bare, json!({ "gate": "CNOT", "hadamard_quad": with_h, "identity_quad": bare }))
        }
        Check::Rank1 => {
            let v = random::amplitudes(&mut rng, 4);
            let h = HermitianGenerator::from_spectrum(&[(args.l3, v)])?;
            let q = rank1_symmetrizers(&h)?;
            let ok = check_condition(&h.exp_i(), &q)?;
            (ok, json!({ "eigenvalue": args.l3, "quad": quad_json(&q) }))
        }
        Check::Bell => {
            let values: Vec<f64> = (0..4).map(|_| random::uniform(&mut rng, -3.0, 3.0)).collect();
            let pairs: Vec<(f64, Vec<C64>)> =
                bell_basis().iter().zip(&values).map(|(b, &l)| (l, b.to_vec())).collect();
            let h = HermitianGenerator::from_spectrum(&pairs)?;
            let q = bell_diagonal_symmetrizers(&h)?;
            let ok = check_condition(&h.exp_i(), &q)?;
            (ok, json!({ "bell_eigenvalues": values }))
        }
        Check::Lemma5 => {
            let q = lemma5_unitaries(args.l3, args.l4);
            let ok = check_condition(&controlled_phase_gate(args.l3, args.l4), &q)?;
            (ok, json!({ "l3": args.l3, "l4": args.l4, "quad": quad_json(&q) }))
        }
        Check::Counterexample => {
            let w = counterexample_witness(args.l3, args.l4);
            let fires = w.fires();
            (fires, json!({
                "l3": args.l3,
                "l4": args.l4,
                "spectrum_a_before": w.spectrum_a_before.iter().map(|&x| clean(x)).collect::<Vec<_>>(),
                "spectrum_a_after": w.spectrum_a_after.iter().map(|&x| clean(x)).collect::<Vec<_>>(),
                "obstruction": fires,
            }))
        }
        Check::Hadamard => (cnot_hadamard_identity(), json!({})),
    })
}

pub fn run(args: &AnalyzeArgs) -> ExitCode {
    if !(args.l3.is_finite() && args.l4.is_finite()) {
        return usage_error("--l3 and --l4 must be finite");
    }
    if args.check == Check::Rank1 && args.l3.abs() <= TOL_RANK {
        return usage_error("rank1 uses --l3 as the nonzero eigenvalue");
    }
    let name = format!("{:?}", args.check).to_lowercase();
    match evaluate(args) {
        Ok((pass, details)) => {
            let mut out = json!({ "check": name, "pass": pass });
            if let (Some(obj), Value::Object(extra)) = (out.as_object_mut(), details) {
                obj.extend(extra);
                obj.insert("seed".into(), json!(args.seed));
            }
            say!("{}", serde_json::to_string_pretty(&out).expect("json"));
            if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
