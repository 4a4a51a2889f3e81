//! Search through `S̃ = {0, …, |S| − 1}` and map back with a permutation.

use grover_forge::reduced::{build_pi_sigma, build_u_tilde, canonical_targets, PermutationMode};
use grover_forge::synth::build_u;
use grover_forge::{AnalyticSchedule, GroverEngine, RunOptions, TargetSet, Variant};

fn main() -> grover_forge::Result<()> {
    let s = TargetSet::new(10, [37, 301, 618, 902, 1000])?;
    let (canonical, l) = canonical_targets(&s);
    println!("S = {s}\nS~ = {canonical}, l = {l}");

    let u = build_u(&s)?;
    let u_tilde = build_u_tilde(s.len() as u64, s.n())?;
    println!("U(S): {} gates, U(S~): {} gates on qubits {:?}", u.len(), u_tilde.len(), u_tilde.touched_qubits());

    let (pi, plan) = build_pi_sigma(&s, PermutationMode::Exact)?;
    println!("pi: {} gates\n{}", pi.len(), serde_json::to_string_pretty(&plan)?);

    let a = AnalyticSchedule::new(s.n(), s.len() as u64)?;
    let engine = GroverEngine::new(&s, Variant::Reduced, RunOptions::default())?;
    for w in engine.warnings() {
        println!("warning: {w}");
    }
    let trace = engine.trace(a.k_star)?;
    println!(
        "mode {}, k* = {}, success {:.12} (analytic {:.12})",
        engine.mode_used().unwrap(),
        a.k_star,
        trace[a.k_star as usize],
        a.success(a.k_star)
    );
    Ok(())
}
