//! `O(S)` and `O_conv(S)` differ as matrices but act identically on every
//! Grover iterate.

use grover_forge::circuit::dense::unitary_of;
use grover_forge::grover::{build_d, build_o_conv, uniform_state};
use grover_forge::synth::build_oracle_o;
use grover_forge::TargetSet;

fn main() -> grover_forge::Result<()> {
    let s = TargetSet::new(5, [2, 9, 10, 27])?;
    let (o, oc) = (build_oracle_o(&s)?, build_o_conv(&s));
    let matrix_gap = unitary_of(&o)?.max_abs_diff(&unitary_of(&oc)?);
    println!("S = {s}\nmax |O(S) − O_conv(S)| entry: {matrix_gap:.4}");

    let d = build_d(s.n());
    let mut st = uniform_state(s.n())?;
    for k in 0..6 {
        let (mut a, mut b) = (st.clone(), st.clone());
        o.apply_to(&mut a)?;
        oc.apply_to(&mut b)?;
        println!("k = {k}: |O ψ_k − O_conv ψ_k| = {:.2e}", a.max_abs_diff(&b));
        d.apply_to(&mut a)?;
        st = a;
    }
    Ok(())
}
