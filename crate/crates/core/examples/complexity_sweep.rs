//! `Γ_approx` over γ for a few register sizes, as CSV on stdout, plus the
//! upper edge of the region where the reduced pipeline is cheaper.

use grover_forge::complexity::{grid, sweep_gamma, upper_crossover, write_sweep_csv, ComplexityReport, CostModel};
use grover_forge::TargetSet;

fn main() -> grover_forge::Result<()> {
    let ns = [10, 100, 1000];
    let rows = sweep_gamma(&ns, &grid(0.0, 1.0, 0.02)?);
    write_sweep_csv(&rows, std::io::stdout())?;
    for n in ns {
        match upper_crossover(n as f64) {
            Some(g) => eprintln!("n = {n}: reduced pipeline cheaper up to γ ≈ {g:.4}"),
            None => eprintln!("n = {n}: Γ_approx ≥ 1 everywhere"),
        }
    }
    let s = TargetSet::new(6, [3, 17, 40, 41, 62])?;
    let r = ComplexityReport::new(&s, None, CostModel::Quadratic)?;
    eprintln!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
