//! Library side of the `grover-forge` command: each subcommand is a function
//! returning a serializable report so it can be driven from tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::lower::lower;
use crate::circuit::qasm::to_qasm;
use crate::circuit::Circuit;
use crate::complexity::{
    self, bound_o_conv, bound_pi, bound_u, bound_u_tilde, count, cost, ComplexityReport, CostModel,
    GammaRatio, SweepRow,
};
use crate::error::{Error, Result};
use crate::grover::{build_o_conv, AnalyticSchedule, GroverEngine, RunOptions, Variant};
use crate::reduced::{bits_needed, build_pi_sigma, build_u_tilde, PermutationMode, PermutationPlan};
use crate::synth::{build_oracle_o, build_u};
use crate::targets::TargetSet;

pub const DEFAULT_MAX_QUBITS: usize = 22;
pub const MAX_QUBITS_ENV: &str = "GROVER_FORGE_MAX_QUBITS";

/// Simulator limit from `GROVER_FORGE_MAX_QUBITS`, else [`DEFAULT_MAX_QUBITS`].
pub fn max_qubits_from_env() -> Result<usize> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{MAX_QUBITS_ENV}={v} is not a qubit count"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SynthVariant {
    U,
    UTilde,
    PiSigma,
    Oracle,
    OracleConv,
}

impl fmt::Display for SynthVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthVariant::U => "u",
            SynthVariant::UTilde => "u-tilde",
            SynthVariant::PiSigma => "pi-sigma",
            SynthVariant::Oracle => "oracle",
            SynthVariant::OracleConv => "oracle-conv",
        })
    }
}

impl FromStr for SynthVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "u" => SynthVariant::U,
            "u-tilde" => SynthVariant::UTilde,
            "pi-sigma" => SynthVariant::PiSigma,
            "oracle" => SynthVariant::Oracle,
            "oracle-conv" => SynthVariant::OracleConv,
            _ => return Err(Error::Parse(format!("unknown circuit variant `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthOutput {
    pub variant: SynthVariant,
    pub n: usize,
    pub gates: usize,
    pub cost: u64,
    pub bound: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PermutationPlan>,
    #[serde(skip)]
    pub circuit: Circuit,
    #[serde(skip)]
    pub qasm: Option<String>,
}

impl SynthOutput {
    pub fn summary(&self) -> String {
        format!(
            "{}: {} gates on {} qubits, cost {} (bound {})",
            self.variant, self.gates, self.n, self.cost, self.bound
        )
    }
}

pub fn cmd_synth(
    targets: &TargetSet,
    variant: SynthVariant,
    mode: PermutationMode,
    with_qasm: bool,
) -> Result<SynthOutput> {
    let n = targets.n();
    let (n64, s) = (n as u64, targets.len() as u64);
    let p_cost = cost(n64 - 1) as u128 + 2 * n64 as u128;
    let mut plan = None;
    let (circuit, bound) = match variant {
        SynthVariant::U => (build_u(targets)?, bound_u(n64, s)),
        SynthVariant::UTilde => (build_u_tilde(s, n)?, bound_u_tilde(bits_needed(s) as u64)),
        SynthVariant::PiSigma => {
            let (c, p) = build_pi_sigma(targets, mode)?;
            let bound = match mode {
                PermutationMode::Paper => bound_pi(n64, s),
                PermutationMode::Exact => 2 * bound_pi(n64, s),
            };
            plan = Some(p);
            (c, bound)
        }
        SynthVariant::Oracle => (build_oracle_o(targets)?, 2 * bound_u(n64, s) + p_cost),
        SynthVariant::OracleConv => (build_o_conv(targets), bound_o_conv(n64, s)),
    };
    let qasm = if with_qasm { Some(to_qasm(&lower(&circuit)?)?) } else { None };
    Ok(SynthOutput {
        variant,
        n,
        gates: circuit.len(),
        cost: count(&circuit, CostModel::Quadratic)?,
        bound,
        plan,
        circuit,
        qasm,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KChoice {
    Auto,
    Fixed(u64),
}

impl FromStr for KChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(KChoice::Auto);
        }
        s.parse()
            .map(KChoice::Fixed)
            .map_err(|_| Error::Parse(format!("--k expects a non-negative integer or `auto`, got `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IterationRecord {
    pub k: u64,
    pub success: f64,
    pub analytic: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulationReport {
    pub variant: Variant,
    pub n: usize,
    pub s: usize,
    pub k: u64,
    pub k_star: u64,
    pub phi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<PermutationMode>,
    pub iterations: Vec<IterationRecord>,
    pub final_success: f64,
    pub max_deviation: f64,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

pub fn cmd_simulate(
    targets: &TargetSet,
    variant: Variant,
    k: KChoice,
    opts: RunOptions,
    max_qubits: usize,
    with_amplitudes: bool,
) -> Result<SimulationReport> {
    let n = targets.n();
    if n > max_qubits {
        return Err(Error::TooManyQubits { n, limit: max_qubits });
    }
    let schedule = AnalyticSchedule::new(n, targets.len() as u64)?;
    let k = match k {
        KChoice::Auto => schedule.k_star,
        KChoice::Fixed(k) => k,
    };
    let engine = GroverEngine::new(targets, variant, opts)?;
    let iterations: Vec<IterationRecord> = engine
        .trace(k)?
        .into_iter()
        .enumerate()
        .map(|(i, success)| {
            let analytic = schedule.success(i as u64);
            IterationRecord {
                k: i as u64,
                success,
                analytic,
                deviation: (success - analytic).abs(),
            }
        })
        .collect();
    let amplitudes = if with_amplitudes {
        let st = engine.run(k)?;
        Some(st.amplitudes().iter().map(|a| [a.re, a.im]).collect())
    } else {
        None
    };
    Ok(SimulationReport {
        variant,
        n,
        s: targets.len(),
        k,
        k_star: schedule.k_star,
        phi: schedule.phi,
        mode: engine.mode_used(),
        final_success: iterations.last().map_or(0.0, |r| r.success),
        max_deviation: iterations.iter().map(|r| r.deviation).fold(0.0, f64::max),
        iterations,
        warnings: engine.warnings().to_vec(),
        amplitudes,
    })
}

/// `n=<list> gamma=<start:stop:step | list>`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub ns: Vec<u64>,
    pub gammas: Vec<f64>,
}

impl SweepSpec {
    pub fn parse<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        let mut ns = None;
        let mut gammas = None;
        for part in parts {
            let part = part.as_ref();
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("sweep term `{part}` is not key=value")))?;
            match key {
                "n" => ns = Some(parse_list::<u64>(value)?),
                "gamma" => gammas = Some(parse_grid(value)?),
                _ => return Err(Error::Parse(format!("unknown sweep key `{key}`"))),
            }
        }
        let ns = ns.ok_or_else(|| Error::Parse("sweep needs n=<list>".into()))?;
        let gammas = gammas.unwrap_or_else(|| complexity::grid(0.0, 1.0, 0.01).expect("valid grid"));
        if ns.contains(&0) {
            return Err(Error::Parse("sweep n must be positive".into()));
        }
        Ok(Self { ns, gammas })
    }
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad list entry `{x}` in `{s}`")))
        })
        .collect()
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => {
            let f = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad grid `{s}`")));
            complexity::grid(f(a)?, f(b)?, f(c)?)
        }
        [_] => parse_list(s),
        _ => Err(Error::Parse(format!("bad grid `{s}`"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    pub n: u64,
    pub s: u64,
    #[serde(flatten)]
    pub ratio: GammaRatio,
    pub verdict: complexity::Verdict,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CompareOutput {
    Report(Box<ComplexityReport>),
    Table(Vec<GammaRow>),
    Sweep(Vec<SweepRow>),
}

pub enum CompareInput<'a> {
    Targets {
        targets: &'a TargetSet,
        k: Option<u64>,
        model: CostModel,
    },
    Ranges {
        ns: &'a [u64],
        ss: &'a [u64],
    },
    Sweep(&'a SweepSpec),
}

pub fn cmd_compare(input: CompareInput<'_>) -> Result<CompareOutput> {
    Ok(match input {
        CompareInput::Targets { targets, k, model } => {
            CompareOutput::Report(Box::new(ComplexityReport::new(targets, k, model)?))
        }
        CompareInput::Ranges { ns, ss } => {
            let mut rows = Vec::new();
            for &n in ns {
                for &s in ss {
                    let ratio = complexity::gamma_ratio(n, s)?;
                    rows.push(GammaRow {
                        n,
                        s,
                        verdict: ratio.verdict(),
                        ratio,
                    });
                }
            }
            CompareOutput::Table(rows)
        }
        CompareInput::Sweep(spec) => CompareOutput::Sweep(complexity::sweep_gamma(&spec.ns, &spec.gammas)),
    })
}
