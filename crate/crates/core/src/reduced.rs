//! Search through the canonical target set `S̃ = {0, …, |S| − 1}`.
//!
//! `S̃` lives entirely in the last `l = ⌈log₂|S|⌉` qubits, so its preparation
//! circuit only touches those qubits. A permutation circuit `π` with
//! `π|S̃⟩ = |S⟩` then carries the search back to the real targets. `π` is
//! assembled from transpositions between neighbouring labels of a Gray path,
//! each of which is a single multi-controlled `X`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::circuit::{mat2, Circuit, Control, Gate};
use crate::error::{Error, Result};
use crate::synth::build_u;
use crate::targets::{qubit_bit, to_bitstring, TargetSet};

/// `⌈log₂ size⌉`, i.e. the number of bits needed to write `0..size`.
pub fn bits_needed(size: u64) -> usize {
    if size <= 1 {
        0
    } else {
        (64 - (size - 1).leading_zeros()) as usize
    }
}

/// `S̃ = {0, …, |S| − 1}` on the same register, and `l`.
pub fn canonical_targets(targets: &TargetSet) -> (TargetSet, usize) {
    let size = targets.len() as u64;
    let canonical = TargetSet::new(targets.n(), 0..size).expect("prefix of the label range is valid");
    (canonical, bits_needed(size))
}

/// Preparation of `|S̃⟩` acting on the last `l` qubits only.
pub fn build_u_tilde(size: u64, n: usize) -> Result<Circuit> {
    if n == 0 || n > crate::targets::MAX_LABEL_BITS {
        return Err(Error::InvalidQubitCount {
            n,
            max: crate::targets::MAX_LABEL_BITS,
        });
    }
    if size == 0 {
        return Err(Error::EmptyTargetSet);
    }
    if size > 1u64 << n {
        return Err(Error::OutOfRange {
            what: "target count",
            value: size,
            allowed: format!("1..=2^{n}"),
        });
    }
    let l = bits_needed(size);
    if l == 0 {
        return Ok(Circuit::new(n));
    }
    let compact = TargetSet::new(l, 0..size)?;
    build_u(&compact)?.shifted(n - l, n)
}

/// Labels from `x` to `y` where neighbours differ in one bit. Differing bits
/// are flipped from the least significant upwards.
pub fn gray_path(x: u64, y: u64, n: usize) -> Result<Vec<u64>> {
    if x == y {
        return Err(Error::DegeneratePath(x));
    }
    for v in [x, y] {
        if n < 64 && v >> n != 0 {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
    }
    let mut path = vec![x];
    let mut cur = x;
    let mut diff = x ^ y;
    while diff != 0 {
        let low = diff & diff.wrapping_neg();
        cur ^= low;
        diff ^= low;
        path.push(cur);
    }
    Ok(path)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PermutationMode {
    /// One transposition per Gray step, chained along the path.
    #[default]
    Paper,
    /// Conjugated chain realizing the exact transposition of each pair.
    Exact,
}

impl fmt::Display for PermutationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermutationMode::Paper => "paper",
            PermutationMode::Exact => "exact",
        })
    }
}

impl std::str::FromStr for PermutationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(PermutationMode::Paper),
            "exact" => Ok(PermutationMode::Exact),
            _ => Err(Error::Parse(format!("unknown permutation mode `{s}`"))),
        }
    }
}

/// One pair `x ∈ S \ S̃`, `y ∈ S̃ \ S` with its Gray path from `x` to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPlan {
    pub from: u64,
    pub to: u64,
    pub path: Vec<u64>,
}

/// Audit record of how `π` was assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationPlan {
    pub n: usize,
    pub mode: PermutationMode,
    pub pairs: Vec<PairPlan>,
}

impl Serialize for PermutationPlan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair {
            from: String,
            to: String,
            path: Vec<String>,
        }
        #[derive(Serialize)]
        struct Plan {
            n: usize,
            mode: PermutationMode,
            pairs: Vec<Pair>,
        }
        let bits = |x: u64| to_bitstring(x, self.n);
        Plan {
            n: self.n,
            mode: self.mode,
            pairs: self
                .pairs
                .iter()
                .map(|p| Pair {
                    from: bits(p.from),
                    to: bits(p.to),
                    path: p.path.iter().map(|&x| bits(x)).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl PermutationPlan {
    /// Pairs `sorted(B)` with `sorted(C)`.
    pub fn new(targets: &TargetSet, mode: PermutationMode) -> Self {
        let n = targets.n();
        let size = targets.len() as u64;
        let b = targets.labels().iter().copied().filter(|&x| x >= size);
        let c = (0..size).filter(|&y| !targets.contains(y));
        let pairs = b
            .zip(c)
            .map(|(from, to)| PairPlan {
                from,
                to,
                path: gray_path(from, to, n).expect("paired labels differ"),
            })
            .collect();
        Self { n, mode, pairs }
    }

    /// The circuit this plan describes, without validation.
    pub fn circuit(&self) -> Circuit {
        let n = self.n;
        let mut c = Circuit::new(n);
        for pair in &self.pairs {
            let steps: Vec<Gate> = pair.path.windows(2).map(|w| transposition(w[0], w[1], n)).collect();
            let k = steps.len();
            match self.mode {
                // the step into `to` acts first so the chain carries `to` back to `from`
                PermutationMode::Paper => steps.iter().rev().for_each(|g| c.push_unchecked(g.clone())),
                PermutationMode::Exact => {
                    for g in steps[..k - 1].iter().chain(std::iter::once(&steps[k - 1])) {
                        c.push_unchecked(g.clone());
                    }
                    for g in steps[..k - 1].iter().rev() {
                        c.push_unchecked(g.clone());
                    }
                }
            }
        }
        c
    }

    /// Gray-path intermediates of each pair that also belong to `S ∪ S̃` or to
    /// another pair's path.
    pub fn collisions(&self, targets: &TargetSet) -> Vec<(usize, u64)> {
        let size = targets.len() as u64;
        let mut out = Vec::new();
        for (i, pair) in self.pairs.iter().enumerate() {
            let inner = &pair.path[1..pair.path.len() - 1];
            for &s in inner {
                let in_sets = targets.contains(s) || s < size;
                let in_other = self
                    .pairs
                    .iter()
                    .enumerate()
                    .any(|(j, p)| j != i && p.path.contains(&s));
                if in_sets || in_other {
                    out.push((i, s));
                }
            }
        }
        out
    }
}

/// Multi-controlled `X` swapping two labels that differ in exactly one bit.
fn transposition(a: u64, b: u64, n: usize) -> Gate {
    let diff = a ^ b;
    debug_assert_eq!(diff.count_ones(), 1);
    let target = n - 1 - diff.trailing_zeros() as usize;
    let controls = (0..n)
        .filter(|&q| q != target)
        .map(|q| Control {
            qubit: q,
            bit: qubit_bit(a, n, q),
        })
        .collect();
    Gate::controlled(controls, target, mat2::PAULI_X)
}

/// Image of basis label `x` under a circuit built from (controlled) `X` gates.
pub fn permute_label(circuit: &Circuit, x: u64) -> Result<u64> {
    let n = circuit.n();
    let mut cur = x;
    for g in circuit.gates() {
        let (controls, target, u): (&[Control], usize, _) = match g {
            Gate::Single { target, u } => (&[], *target, u),
            Gate::Controlled { controls, target, u } => (controls.as_slice(), *target, u),
            Gate::PatternPhase { .. } => {
                return Err(Error::InvalidGate("pattern phase in a permutation circuit".into()))
            }
        };
        if mat2::max_abs_diff(u, &mat2::PAULI_X) > crate::circuit::UNITARY_TOL {
            return Err(Error::InvalidGate("non-X gate in a permutation circuit".into()));
        }
        if controls.iter().all(|c| qubit_bit(cur, n, c.qubit) == c.bit) {
            cur ^= 1 << (n - 1 - target);
        }
    }
    Ok(cur)
}

/// `π` without the paper-mode validation pass.
pub fn build_pi_sigma_unchecked(targets: &TargetSet, mode: PermutationMode) -> (Circuit, PermutationPlan) {
    let plan = PermutationPlan::new(targets, mode);
    (plan.circuit(), plan)
}

/// `π` with `π|S̃⟩ = |S⟩`. Paper mode is validated: if the chained
/// transpositions fail to map `S̃` onto `S` the colliding labels are reported.
pub fn build_pi_sigma(targets: &TargetSet, mode: PermutationMode) -> Result<(Circuit, PermutationPlan)> {
    let (circuit, plan) = build_pi_sigma_unchecked(targets, mode);
    if mode == PermutationMode::Paper {
        let size = targets.len() as u64;
        let image: BTreeSet<u64> = (0..size)
            .map(|x| permute_label(&circuit, x))
            .collect::<Result<_>>()?;
        if !image.iter().copied().eq(targets.labels().iter().copied()) {
            let n = targets.n();
            let mut msg = String::from("S̃ is not mapped onto S");
            let coll = plan.collisions(targets);
            if !coll.is_empty() {
                msg.push_str("; colliding intermediates:");
                for (i, s) in coll {
                    let p = &plan.pairs[i];
                    msg.push_str(&format!(
                        " {} (path {}→{})",
                        to_bitstring(s, n),
                        to_bitstring(p.from, n),
                        to_bitstring(p.to, n)
                    ));
                }
            }
            return Err(Error::PermutationValidation(msg));
        }
    }
    Ok((circuit, plan))
}
