//! Grover iterations with the three oracle choices.
//!
//! `D` is realized as `H^n P H^n`, which is `−D`. The engine multiplies the
//! state by `−1` after every application so the returned states follow the
//! operator convention `D = 2|ψ⟩⟨ψ| − 1` exactly.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, StateVector};
use crate::error::{Error, Result};
use crate::reduced::{build_pi_sigma, build_u_tilde, PermutationMode};
use crate::synth::{build_oracle_o, build_p, reflection_about};
use crate::targets::{qubit_bit, TargetSet};

/// `|ψ⟩ = H^n|0…0⟩`.
pub fn uniform_state(n: usize) -> Result<StateVector> {
    StateVector::uniform(n)
}

/// `H^n P H^n = 1 − 2|ψ⟩⟨ψ|`.
pub fn build_d(n: usize) -> Circuit {
    let mut d = Circuit::new(n);
    for q in 0..n {
        d.push_unchecked(Gate::h(q));
    }
    d.append(&build_p(n)).expect("same width");
    for q in 0..n {
        d.push_unchecked(Gate::h(q));
    }
    d
}

/// `1 − 2 Σ_{x∈S} |x⟩⟨x|` as one `X`-conjugated `P` per target.
pub fn build_o_conv(targets: &TargetSet) -> Circuit {
    let n = targets.n();
    let p = build_p(n);
    let mut o = Circuit::new(n);
    for &x in targets.labels() {
        let flips: Vec<Gate> = (0..n).filter(|&q| qubit_bit(x, n, q)).map(Gate::x).collect();
        flips.iter().for_each(|g| o.push_unchecked(g.clone()));
        o.append(&p).expect("same width");
        flips.iter().for_each(|g| o.push_unchecked(g.clone()));
    }
    o
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `[D O_conv(S)]^k |ψ⟩`.
    Conventional,
    /// `[D O(S)]^k |ψ⟩`.
    Modified,
    /// `π [D O(S̃)]^k π† |ψ⟩`.
    Reduced,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Conventional, Variant::Modified, Variant::Reduced];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Conventional => "conventional",
            Variant::Modified => "modified",
            Variant::Reduced => "reduced",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conventional" => Ok(Variant::Conventional),
            "modified" => Ok(Variant::Modified),
            "reduced" => Ok(Variant::Reduced),
            _ => Err(Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: PermutationMode,
    /// Retry with [`PermutationMode::Exact`] when paper mode fails validation.
    pub fallback_to_exact: bool,
    /// Skip `π†`, which fixes `|ψ⟩`.
    pub elide_pi_dagger: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            mode: PermutationMode::Paper,
            fallback_to_exact: true,
            elide_pi_dagger: false,
        }
    }
}

/// Prebuilt circuits for one target set and variant.
#[derive(Clone, Debug)]
pub struct GroverEngine {
    targets: TargetSet,
    variant: Variant,
    oracle: Circuit,
    diffusion: Circuit,
    pi: Option<Circuit>,
    mode_used: Option<PermutationMode>,
    elide_pi_dagger: bool,
    warnings: Vec<String>,
}

impl GroverEngine {
    pub fn new(targets: &TargetSet, variant: Variant, opts: RunOptions) -> Result<Self> {
        let n = targets.n();
        let mut warnings = Vec::new();
        let (oracle, pi, mode_used) = match variant {
            Variant::Conventional => (build_o_conv(targets), None, None),
            Variant::Modified => (build_oracle_o(targets)?, None, None),
            Variant::Reduced => {
                let (pi, mode) = match build_pi_sigma(targets, opts.mode) {
                    Ok((pi, _)) => (pi, opts.mode),
                    Err(Error::PermutationValidation(msg)) if opts.fallback_to_exact => {
                        warnings.push(format!("paper-mode permutation rejected ({msg}); using exact mode"));
                        (build_pi_sigma(targets, PermutationMode::Exact)?.0, PermutationMode::Exact)
                    }
                    Err(e) => return Err(e),
                };
                let o = reflection_about(&build_u_tilde(targets.len() as u64, n)?)?;
                (o, Some(pi), Some(mode))
            }
        };
        let schedule = AnalyticSchedule::new(n, targets.len() as u64)?;
        if !schedule.iteration_helps() {
            warnings.push(format!(
                "|S| = {} is at least half of |N| = {}; iterating does not raise the success probability",
                schedule.s_size, schedule.n_size
            ));
        }
        Ok(Self {
            targets: targets.clone(),
            variant,
            oracle,
            diffusion: build_d(n),
            pi,
            mode_used,
            elide_pi_dagger: opts.elide_pi_dagger,
            warnings,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn targets(&self) -> &TargetSet {
        &self.targets
    }

    /// Permutation mode actually used by the reduced variant.
    pub fn mode_used(&self) -> Option<PermutationMode> {
        self.mode_used
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn oracle(&self) -> &Circuit {
        &self.oracle
    }

    pub fn permutation(&self) -> Option<&Circuit> {
        self.pi.as_ref()
    }

    /// The state before the first iteration, in the frame the oracle acts on.
    pub fn initial_state(&self) -> Result<StateVector> {
        let mut s = uniform_state(self.targets.n())?;
        if let (Some(pi), false) = (&self.pi, self.elide_pi_dagger) {
            pi.dagger().apply_to(&mut s)?;
        }
        Ok(s)
    }

    /// One application of `D · O`.
    pub fn step(&self, state: &mut StateVector) -> Result<()> {
        self.oracle.apply_to(state)?;
        self.diffusion.apply_to(state)?;
        state.scale(Complex64::new(-1.0, 0.0));
        Ok(())
    }

    /// Maps an iterate back to the target frame.
    pub fn finish(&self, state: &mut StateVector) -> Result<()> {
        match &self.pi {
            Some(pi) => pi.apply_to(state),
            None => Ok(()),
        }
    }

    pub fn run(&self, k: u64) -> Result<StateVector> {
        let mut s = self.initial_state()?;
        for _ in 0..k {
            self.step(&mut s)?;
        }
        self.finish(&mut s)?;
        Ok(s)
    }

    /// Success probability after each of `0..=k` iterations.
    pub fn trace(&self, k: u64) -> Result<Vec<f64>> {
        let mut s = self.initial_state()?;
        let mut out = Vec::with_capacity(k as usize + 1);
        for i in 0..=k {
            if i > 0 {
                self.step(&mut s)?;
            }
            let p = match &self.pi {
                Some(_) => {
                    let mut t = s.clone();
                    self.finish(&mut t)?;
                    success_probability(&t, &self.targets)
                }
                None => success_probability(&s, &self.targets),
            };
            out.push(p);
        }
        Ok(out)
    }
}

pub fn grover_run(targets: &TargetSet, variant: Variant, k: u64) -> Result<StateVector> {
    GroverEngine::new(targets, variant, RunOptions::default())?.run(k)
}

/// `Σ_{x∈S} |⟨x|state⟩|²`.
pub fn success_probability(state: &StateVector, targets: &TargetSet) -> f64 {
    state.probability_of(targets.labels())
}

/// Closed-form amplitude evolution for `s` targets among `2^n` labels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalyticSchedule {
    pub n_size: u64,
    pub s_size: u64,
    pub phi: f64,
    pub k_star: u64,
}

impl AnalyticSchedule {
    pub fn new(n: usize, s: u64) -> Result<Self> {
        if n == 0 || n > crate::targets::MAX_LABEL_BITS {
            return Err(Error::InvalidQubitCount {
                n,
                max: crate::targets::MAX_LABEL_BITS,
            });
        }
        let n_size = 1u64 << n;
        if s == 0 || s > n_size {
            return Err(Error::OutOfRange {
                what: "target count",
                value: s,
                allowed: format!("1..={n_size}"),
            });
        }
        let phi = (s as f64 / n_size as f64).sqrt().asin();
        let k_star = if 2 * s >= n_size { 0 } else { (PI / (4.0 * phi)).floor() as u64 };
        Ok(Self { n_size, s_size: s, phi, k_star })
    }

    /// `sin²((2k + 1)φ)`.
    pub fn success(&self, k: u64) -> f64 {
        ((2 * k + 1) as f64 * self.phi).sin().powi(2)
    }

    /// False once `φ ≥ π/4`: no iteration count beats `k = 0`.
    pub fn iteration_helps(&self) -> bool {
        2 * self.s_size < self.n_size
    }
}
