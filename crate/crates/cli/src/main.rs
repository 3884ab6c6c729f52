use std::process::ExitCode;
use clap::{ Args, Parser, Subcommand, ValueEnum };

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

mod analyze;
mod demo;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "locc", version, about = "Verify non-local gate protocols built from local operations, classical bits and shared ebits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a protocol against its ideal gate on basis and random inputs.
    Verify(VerifyArgs),
    /// Run one of the swap-symmetry checks.
    Analyze(AnalyzeArgs),
    /// Walk through a demonstration protocol.
    Demo(DemoArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Cnot,
    /// Control-U with a seeded random U.
    Cu,
    Swap,
    Toffoli,
    /// Three-party control-U with a seeded random U.
    Tcu,
    /// N-party control-U with a seeded random U; needs --n.
    Ncu,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Branch,
    Sample,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    gate: Gate,
    /// Party count for `ncu`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random product inputs on top of the basis inputs.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Branch)]
    mode: ModeArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Fidelity tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Condition,
    Rank1,
    Bell,
    Lemma5,
    Counterexample,
    Hadamard,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    l3: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    l4: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoName {
    Densecoding,
    SwapEntangle,
    Trace,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(value_enum)]
    demo: DemoName,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Protocol to trace.
    #[arg(long, value_enum, default_value_t = Gate::Cnot)]
    gate: Gate,
    /// Party count when tracing `ncu`.
    #[arg(long)]
    n: Option<usize>,
}

/// Exit status for argument errors, matching clap's own.
pub const BAD_ARGS: u8 = 2;

pub fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(BAD_ARGS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Analyze(args) => analyze::run(&args),
        Command::Demo(args) => demo::run(&args),
    }
}
