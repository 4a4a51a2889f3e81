//! Lowers the reflection oracle to single-qubit gates and CNOTs and prints
//! it as OpenQASM.

use grover_forge::circuit::dense::unitary_of;
use grover_forge::circuit::lower::{control_histogram, lower, LoweredCounts};
use grover_forge::circuit::qasm::to_qasm;
use grover_forge::complexity::{count, CostModel};
use grover_forge::synth::build_oracle_o;
use grover_forge::TargetSet;

fn main() -> grover_forge::Result<()> {
    let s = TargetSet::from_bitstrings(3, &["000", "001", "010", "100"])?;
    let o = build_oracle_o(&s)?;
    let l = lower(&o)?;
    let counts = LoweredCounts::of(&l);
    eprintln!("controls per gate: {:?}", control_histogram(&o));
    eprintln!(
        "{} gates (quadratic cost {}) → {} single-qubit + {} CNOT",
        o.len(),
        count(&o, CostModel::Quadratic)?,
        counts.single,
        counts.cnot
    );
    let diff = unitary_of(&o)?.max_abs_diff(&unitary_of(&l)?);
    eprintln!("max entry difference after lowering: {diff:.2e}");
    print!("{}", to_qasm(&l)?);
    Ok(())
}
