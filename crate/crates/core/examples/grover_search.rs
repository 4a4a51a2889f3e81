//! The three iterations side by side against `sin²((2k + 1)φ)`.
//!
//! `cargo run --example grover_search -- 12 5 77 3000`: qubit count, then labels.

use grover_forge::{AnalyticSchedule, GroverEngine, RunOptions, TargetSet, Variant};

fn main() -> grover_forge::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, labels) = match args.split_first() {
        Some((&n, rest)) if !rest.is_empty() => (n as usize, rest.to_vec()),
        _ => (12, vec![5, 77, 3000]),
    };
    let s = TargetSet::new(n, labels)?;
    let a = AnalyticSchedule::new(n, s.len() as u64)?;
    println!("S = {s}, φ = {:.6}, k* = {}", a.phi, a.k_star);

    let traces: Vec<Vec<f64>> = Variant::ALL
        .iter()
        .map(|&v| GroverEngine::new(&s, v, RunOptions::default())?.trace(a.k_star))
        .collect::<grover_forge::Result<_>>()?;
    println!("{:>4} {:>16} {:>16} {:>16} {:>16}", "k", "conventional", "modified", "reduced", "analytic");
    for k in 0..=a.k_star as usize {
        println!(
            "{k:>4} {:>16.12} {:>16.12} {:>16.12} {:>16.12}",
            traces[0][k],
            traces[1][k],
            traces[2][k],
            a.success(k as u64)
        );
    }
    Ok(())
}
