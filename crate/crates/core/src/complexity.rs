//! Gate counting, closed-form cost bounds and the cost ratio `Γ` between the
//! reduced pipeline and the conventional oracle.
//!
//! The default model charges `m²` elementary gates for a gate with `m ≥ 2`
//! controls and one gate otherwise.

use std::io::Write;

use serde::Serialize;

use crate::circuit::lower::lower;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::grover::{build_d, build_o_conv, AnalyticSchedule};
use crate::reduced::{bits_needed, build_pi_sigma_unchecked, build_u_tilde, PermutationMode};
use crate::synth::{build_oracle_o, build_p, build_u};
use crate::targets::TargetSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CostModel {
    /// `cost(m) = 1` for `m ≤ 1`, `m²` otherwise.
    #[default]
    Quadratic,
    /// Number of gates after lowering to single-qubit gates and CNOTs.
    Lowered,
}

/// Elementary-gate cost of one gate with `m` controls.
pub fn cost(m: u64) -> u64 {
    if m <= 1 {
        1
    } else {
        m * m
    }
}

pub fn count(c: &Circuit, model: CostModel) -> Result<u64> {
    match model {
        CostModel::Lowered => Ok(lower(c)?.len() as u64),
        CostModel::Quadratic => {
            let n = c.n();
            Ok(c.gates()
                .iter()
                .map(|g| match g {
                    Gate::PatternPhase { pattern, .. } => {
                        let zeros = n as u64 - pattern.count_ones() as u64;
                        cost(n as u64 - 1) + 2 * zeros
                    }
                    g => cost(g.control_count(n) as u64),
                })
                .sum())
        }
    }
}

/// `1 + Σ_{m=1}^{n−1} m² s`, bounding the cost of `U(S)`.
pub fn bound_u(n: u64, s: u64) -> u128 {
    1 + (1..n).map(|m| (m * m) as u128 * s as u128).sum::<u128>()
}

/// The asymptotic form `n³ s / 6` of [`bound_u`].
pub fn bound_u_headline(n: u64, s: u64) -> f64 {
    (n as f64).powi(3) * s as f64 / 6.0
}

/// `1 + Σ_{m=1}^{l−1} m² 2^m`, bounding the cost of `U(S̃)`.
pub fn bound_u_tilde(l: u64) -> u128 {
    1 + (1..l.max(1)).map(|m| (m * m) as u128 * (1u128 << m)).sum::<u128>()
}

/// `s · n · cost(n − 1)`: at most `s` pairs of at most `n` transpositions.
pub fn bound_pi(n: u64, s: u64) -> u128 {
    s as u128 * n as u128 * cost(n.saturating_sub(1)) as u128
}

/// `s · (2n + cost(n − 1) + 2n)`: per target two `X` layers and `P` with its
/// own `X` conjugation.
pub fn bound_o_conv(n: u64, s: u64) -> u128 {
    s as u128 * (4 * n as u128 + cost(n.saturating_sub(1)) as u128)
}

/// `2n³s + 2kn² + 2k l² 2^l` with `l = ⌈log₂ s⌉`.
pub fn total_reduced_cost(n: u64, s: u64, k: u64) -> u128 {
    let (n, s, k) = (n as u128, s as u128, k as u128);
    let l = bits_needed(s as u64) as u128;
    2 * n * n * n * s + 2 * k * n * n + 2 * k * l * l * (1u128 << l)
}

/// `Γ_approx = 2[n 2^{−n(1−γ)/2} + 2^{−nγ} + γ²]`.
pub fn gamma_approx(n: f64, gamma: f64) -> f64 {
    let a = (n.log2() - n * (1.0 - gamma) / 2.0).exp2();
    let b = (-n * gamma).exp2();
    2.0 * (a + b + gamma * gamma)
}

/// Exact `Γ` for `s = 2^{log2_s}` targets among `2^n` labels.
pub fn gamma_exact_log2(n: f64, log2_s: f64) -> f64 {
    let l = log2_s.ceil().max(0.0);
    // log₂(s + 1)
    let log2_s1 = log2_s + (-log2_s).exp2().ln_1p() / std::f64::consts::LN_2;
    let first = (1.0 + n.log2() + log2_s - log2_s1 - (n - log2_s) / 2.0).exp2();
    let tail = if l == 0.0 {
        0.0
    } else {
        (2.0 * l.log2() + l - 2.0 * n.log2() - log2_s1).exp2()
    };
    first + 2.0 * ((-log2_s1).exp2() + tail)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaRatio {
    pub l: u64,
    pub gamma: f64,
    pub exact: f64,
    pub approx: f64,
}

impl GammaRatio {
    /// Ties go to the conventional pipeline.
    pub fn verdict(&self) -> Verdict {
        if self.exact < 1.0 {
            Verdict::Reduced
        } else {
            Verdict::Conventional
        }
    }
}

/// Preferred pipeline by circuit cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Reduced,
    Conventional,
}

pub fn gamma_ratio(n: u64, s: u64) -> Result<GammaRatio> {
    if n == 0 || (n < 64 && s > 1u64 << n) || s == 0 {
        return Err(Error::OutOfRange {
            what: "target count",
            value: s,
            allowed: format!("1..=2^{n}"),
        });
    }
    let l = bits_needed(s) as u64;
    let gamma = l as f64 / n as f64;
    Ok(GammaRatio {
        l,
        gamma,
        exact: gamma_exact_log2(n as f64, (s as f64).log2()),
        approx: gamma_approx(n as f64, gamma),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub gamma: f64,
    #[serde(rename = "Gamma")]
    pub gamma_value: f64,
    pub dominates: bool,
}

/// `Γ_approx` over the product of `ns` and `gammas`, row-major in `n`.
pub fn sweep_gamma(ns: &[u64], gammas: &[f64]) -> Vec<SweepRow> {
    ns.iter()
        .flat_map(|&n| {
            gammas.iter().map(move |&gamma| {
                let g = gamma_approx(n as f64, gamma);
                SweepRow {
                    n,
                    gamma,
                    gamma_value: g,
                    dominates: g <= 1.0,
                }
            })
        })
        .collect()
}

/// Writes rows with header `n,gamma,Gamma,dominates`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `start, start + step, …` up to and including `stop` (within rounding).
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Parse(format!("bad grid {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    // rounding keeps `0.1 + 2 × 0.1` printing as `0.3`
    Ok((0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Upper edge of the region `Γ_approx < 1`: the first `γ ∈ (0, 1]` where
/// `Γ_approx` climbs back to 1 after having dipped below it. `None` if it
/// never dips.
pub fn upper_crossover(n: f64) -> Option<f64> {
    const STEPS: usize = 10_000;
    let f = |g: f64| gamma_approx(n, g) - 1.0;
    let mut inside = false;
    let mut prev = 0.0;
    for i in 1..=STEPS {
        let g = i as f64 / STEPS as f64;
        let v = f(g);
        if v < 0.0 {
            inside = true;
        } else if inside {
            let (mut lo, mut hi) = (prev, g);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if f(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(hi);
        }
        prev = g;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counted {
    pub u: u64,
    pub u_tilde: u64,
    pub pi_sigma: u64,
    pub oracle: u64,
    pub oracle_tilde: u64,
    pub oracle_conv: u64,
    pub d: u64,
    pub p: u64,
    /// `π`, `π†` and `k` copies of `D O(S̃)`.
    pub reduced_run: u64,
    /// `k` copies of `D O_conv(S)`.
    pub conventional_run: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub u: u128,
    pub u_headline: f64,
    pub u_tilde: u128,
    pub pi_sigma: u128,
    pub oracle_conv: u128,
    pub total_reduced: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub n: u64,
    pub s: u64,
    pub l: u64,
    pub gamma: f64,
    pub k: u64,
    pub model: CostModel,
    pub counted: Counted,
    pub bounds: Bounds,
    pub gamma_exact: f64,
    pub gamma_approx: f64,
    pub verdict: Verdict,
}

impl ComplexityReport {
    /// Counts every construction for `targets`; `k` defaults to the optimal
    /// iteration count.
    pub fn new(targets: &TargetSet, k: Option<u64>, model: CostModel) -> Result<Self> {
        let n = targets.n();
        let s = targets.len() as u64;
        let k = match k {
            Some(k) => k,
            None => AnalyticSchedule::new(n, s)?.k_star,
        };
        let c = |circ: &Circuit| count(circ, model);
        let u_tilde = build_u_tilde(s, n)?;
        let (pi, _) = build_pi_sigma_unchecked(targets, PermutationMode::Paper);
        let oracle_tilde = crate::synth::reflection_about(&u_tilde)?;
        let d = c(&build_d(n))?;
        let pi_cost = c(&pi)?;
        let oracle_tilde_cost = c(&oracle_tilde)?;
        let oracle_conv = c(&build_o_conv(targets))?;
        let counted = Counted {
            u: c(&build_u(targets)?)?,
            u_tilde: c(&u_tilde)?,
            pi_sigma: pi_cost,
            oracle: c(&build_oracle_o(targets)?)?,
            oracle_tilde: oracle_tilde_cost,
            oracle_conv,
            d,
            p: c(&build_p(n))?,
            reduced_run: 2 * pi_cost + k * (oracle_tilde_cost + d),
            conventional_run: k * (oracle_conv + d),
        };
        let (n64, l) = (n as u64, bits_needed(s) as u64);
        let ratio = gamma_ratio(n64, s)?;
        Ok(Self {
            n: n64,
            s,
            l,
            gamma: ratio.gamma,
            k,
            model,
            counted,
            bounds: Bounds {
                u: bound_u(n64, s),
                u_headline: bound_u_headline(n64, s),
                u_tilde: bound_u_tilde(l),
                pi_sigma: bound_pi(n64, s),
                oracle_conv: bound_o_conv(n64, s),
                total_reduced: total_reduced_cost(n64, s, k),
            },
            gamma_exact: ratio.exact,
            gamma_approx: ratio.approx,
            verdict: ratio.verdict(),
        })
    }

    /// Counted costs that exceed their bound, as `(name, counted, bound)`.
    pub fn violations(&self) -> Vec<(&'static str, u64, u128)> {
        let c = &self.counted;
        let b = &self.bounds;
        [
            ("u", c.u, b.u),
            ("u_tilde", c.u_tilde, b.u_tilde),
            ("pi_sigma", c.pi_sigma, b.pi_sigma),
            ("oracle_conv", c.oracle_conv, b.oracle_conv),
        ]
        .into_iter()
        .filter(|&(_, got, bound)| got as u128 > bound)
        .collect()
    }
}
