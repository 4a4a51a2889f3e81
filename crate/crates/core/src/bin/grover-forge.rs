use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grover_forge::cli::{
    cmd_compare, cmd_simulate, cmd_synth, max_qubits_from_env, parse_list, CompareInput, CompareOutput,
    KChoice, SweepSpec, SynthVariant,
};
use grover_forge::complexity::{write_sweep_csv, CostModel};
use grover_forge::{Error, PermutationMode, Result, RunOptions, TargetSet, Variant};

#[derive(Parser)]
#[command(name = "grover-forge", version, about = "Multi-target Grover oracle synthesis and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit and write it as JSON.
    Synth(SynthArgs),
    /// Run Grover iterations on the state-vector simulator.
    Simulate(SimulateArgs),
    /// Gate-cost comparison between the reduced and conventional pipelines.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    targets: PathBuf,
    /// u, u-tilde, pi-sigma, oracle or oracle-conv
    #[arg(long, default_value = "u")]
    variant: SynthVariant,
    #[arg(long, default_value = "paper")]
    mode: PermutationMode,
    /// Circuit JSON destination; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the lowered circuit as OpenQASM 2.0.
    #[arg(long)]
    qasm: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    targets: PathBuf,
    /// conventional, modified or reduced
    #[arg(long, default_value = "modified")]
    variant: Variant,
    /// Iteration count, or `auto` for the analytic optimum.
    #[arg(long, default_value = "auto")]
    k: KChoice,
    #[arg(long, default_value = "paper")]
    mode: PermutationMode,
    /// Fail instead of switching to exact mode when paper mode is rejected.
    #[arg(long)]
    no_fallback: bool,
    #[arg(long)]
    elide_pi_dagger: bool,
    /// Include final amplitudes in the report.
    #[arg(long)]
    amplitudes: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the full JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, conflicts_with_all = ["n", "s", "sweep"])]
    targets: Option<PathBuf>,
    /// Comma-separated qubit counts.
    #[arg(long, requires = "s")]
    n: Option<String>,
    /// Comma-separated target counts.
    #[arg(long, requires = "n")]
    s: Option<String>,
    /// `n=<list> gamma=<start:stop:step|list>`
    #[arg(long, num_args = 1..=2, value_name = "TERM")]
    sweep: Option<Vec<String>>,
    #[arg(long)]
    k: Option<u64>,
    /// Count lowered gates instead of the quadratic model.
    #[arg(long)]
    lowered: bool,
    /// CSV (sweep) or JSON destination; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn synth(a: SynthArgs) -> Result<()> {
    let targets = TargetSet::load(&a.targets)?;
    let out = cmd_synth(&targets, a.variant, a.mode, a.qasm.is_some())?;
    if let (Some(path), Some(q)) = (&a.qasm, &out.qasm) {
        fs::write(path, q)?;
    }
    let json = out.circuit.to_json_pretty() + "\n";
    match &a.out {
        Some(p) => {
            fs::write(p, json)?;
            if a.json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("{}", out.summary());
            }
        }
        None => {
            io::stdout().write_all(json.as_bytes())?;
            eprintln!("{}", out.summary());
        }
    }
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let targets = TargetSet::load(&a.targets)?;
    let opts = RunOptions {
        mode: a.mode,
        fallback_to_exact: !a.no_fallback,
        elide_pi_dagger: a.elide_pi_dagger,
    };
    let report = cmd_simulate(&targets, a.variant, a.k, opts, max_qubits_from_env()?, a.amplitudes)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if a.json || a.out.is_some() {
        emit(&a.out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    } else {
        println!("variant {} n={} |S|={} k*={}", report.variant, report.n, report.s, report.k_star);
        println!("{:>6} {:>20} {:>20}", "k", "success", "analytic");
        for r in &report.iterations {
            println!("{:>6} {:>20.15} {:>20.15}", r.k, r.success, r.analytic);
        }
        println!("max deviation {:.3e}", report.max_deviation);
    }
    Ok(())
}

fn compare(a: CompareArgs) -> Result<()> {
    let model = if a.lowered { CostModel::Lowered } else { CostModel::Quadratic };
    let targets;
    let (ns, ss, spec);
    let input = if let Some(path) = &a.targets {
        targets = TargetSet::load(path)?;
        CompareInput::Targets {
            targets: &targets,
            k: a.k,
            model,
        }
    } else if let Some(terms) = &a.sweep {
        spec = SweepSpec::parse(terms)?;
        CompareInput::Sweep(&spec)
    } else if let (Some(n), Some(s)) = (&a.n, &a.s) {
        ns = parse_list::<u64>(n)?;
        ss = parse_list::<u64>(s)?;
        CompareInput::Ranges { ns: &ns, ss: &ss }
    } else {
        return Err(Error::Parse("compare needs --targets, --n/--s or --sweep".into()));
    };
    match cmd_compare(input)? {
        CompareOutput::Sweep(rows) if !a.json => {
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(&a.out, &String::from_utf8_lossy(&buf))
        }
        CompareOutput::Table(rows) if !a.json => {
            let mut text = format!("{:>8} {:>22} {:>4} {:>10} {:>14} {:>14}  verdict\n", "n", "s", "l", "gamma", "Gamma", "Gamma_approx");
            for r in rows {
                text += &format!(
                    "{:>8} {:>22} {:>4} {:>10.6} {:>14.6e} {:>14.6e}  {:?}\n",
                    r.n, r.s, r.ratio.l, r.ratio.gamma, r.ratio.exact, r.ratio.approx, r.verdict
                );
            }
            emit(&a.out, &text)
        }
        other => emit(&a.out, &(serde_json::to_string_pretty(&other)? + "\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Simulate(a) => simulate(a),
        Command::Compare(a) => compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
