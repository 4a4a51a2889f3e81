//! Dichotomy of a four-element target set and the circuit preparing `|S⟩`.

use grover_forge::circuit::{Gate, StateVector};
use grover_forge::dichotomy::PrefixTable;
use grover_forge::synth::{build_stages, build_u};
use grover_forge::targets::to_bitstring;
use grover_forge::TargetSet;

fn main() -> grover_forge::Result<()> {
    let s = TargetSet::from_bitstrings(3, &["000", "001", "010", "100"])?;
    let table = PrefixTable::build(&s);
    println!("S = {s}");
    for m in 0..s.n() {
        for alpha in table.support(m) {
            let p0 = table.conditional_prob(m, 0, alpha)?;
            let prefix = if m == 0 { "ε".to_string() } else { to_bitstring(alpha, m) };
            println!("  p(0 | {prefix}) = {p0}");
        }
    }

    for (m, stage) in build_stages(&s)?.iter().enumerate() {
        for g in stage.gates() {
            let (controls, target, u) = match g {
                Gate::Single { target, u } => (vec![], *target, u),
                Gate::Controlled { controls, target, u } => (controls.clone(), *target, u),
                Gate::PatternPhase { .. } => unreachable!(),
            };
            let cs: Vec<String> = controls.iter().map(|c| format!("q{}={}", c.qubit, c.bit as u8)).collect();
            println!(
                "stage {}: target q{target} [{}]  [[{:+.4}, {:+.4}], [{:+.4}, {:+.4}]]",
                m + 1,
                cs.join(", "),
                u[0][0].re,
                u[0][1].re,
                u[1][0].re,
                u[1][1].re
            );
        }
    }

    let mut st = StateVector::zero(3)?;
    build_u(&s)?.apply_to(&mut st)?;
    for (x, a) in st.amplitudes().iter().enumerate() {
        if a.norm() > 1e-12 {
            println!("|{}⟩  {:+.6}", to_bitstring(x as u64, 3), a.re);
        }
    }
    Ok(())
}
