//! Gray-path permutations in both modes, including a set where the chained
//! form is rejected.

use grover_forge::reduced::{build_pi_sigma, permute_label, PermutationMode, PermutationPlan};
use grover_forge::targets::to_bitstring;
use grover_forge::TargetSet;

fn show(s: &TargetSet) {
    println!("S = {s}");
    for pair in &PermutationPlan::new(s, PermutationMode::Paper).pairs {
        let path: Vec<String> = pair.path.iter().map(|&x| to_bitstring(x, s.n())).collect();
        println!("  path {}", path.join(" → "));
    }
    for mode in [PermutationMode::Paper, PermutationMode::Exact] {
        match build_pi_sigma(s, mode) {
            Ok((pi, _)) => {
                let image: Vec<String> = (0..s.len() as u64)
                    .map(|x| format!("{}↦{}", to_bitstring(x, s.n()), to_bitstring(permute_label(&pi, x).unwrap(), s.n())))
                    .collect();
                println!("  {mode}: {} gates, {}", pi.len(), image.join(" "));
            }
            Err(e) => println!("  {mode}: {e} (exit code {})", e.exit_code()),
        }
    }
}

fn main() -> grover_forge::Result<()> {
    show(&TargetSet::from_bitstrings(3, &["000", "001", "010", "100"])?);
    show(&TargetSet::from_bitstrings(2, &["01", "10", "11"])?);
    show(&TargetSet::from_bitstrings(4, &["0011", "0110", "1001", "1111"])?);
    Ok(())
}
