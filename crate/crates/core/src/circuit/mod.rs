//! Gate-level intermediate representation.
//!
//! Qubit `0` is the most significant bit of a basis label, matching the
//! MSB-first bitstrings used throughout the crate. Gates are listed in time
//! order: the first gate of a [`Circuit`] acts first.

pub mod dense;
mod json;
pub mod lower;
pub mod mat2;
pub mod qasm;
pub mod state;

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use mat2::Mat2;
pub use state::StateVector;

/// Local unitary tolerance.
pub const UNITARY_TOL: f64 = 1e-12;

/// A control condition: the gate fires only when `qubit` reads `bit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub bit: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Self { qubit, bit: true }
    }

    pub fn off(qubit: usize) -> Self {
        Self { qubit, bit: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Single {
        target: usize,
        u: Mat2,
    },
    /// `u` on `target` wherever every control condition holds.
    Controlled {
        controls: Vec<Control>,
        target: usize,
        u: Mat2,
    },
    /// Multiplies the amplitude of the single basis state `pattern` by `phase`.
    PatternPhase {
        pattern: u64,
        phase: Complex64,
    },
}

impl Gate {
    pub fn single(target: usize, u: Mat2) -> Self {
        Gate::Single { target, u }
    }

    pub fn controlled(controls: Vec<Control>, target: usize, u: Mat2) -> Self {
        if controls.is_empty() {
            Gate::Single { target, u }
        } else {
            Gate::Controlled { controls, target, u }
        }
    }

    pub fn x(target: usize) -> Self {
        Gate::single(target, mat2::PAULI_X)
    }

    pub fn h(target: usize) -> Self {
        Gate::single(target, mat2::hadamard())
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Controlled {
            controls: vec![Control::on(control)],
            target,
            u: mat2::PAULI_X,
        }
    }

    /// Number of control qubits (`n − 1` for a pattern phase on `n` qubits).
    pub fn control_count(&self, n: usize) -> usize {
        match self {
            Gate::Single { .. } => 0,
            Gate::Controlled { controls, .. } => controls.len(),
            Gate::PatternPhase { .. } => n.saturating_sub(1),
        }
    }

    pub fn dagger(&self) -> Self {
        match self {
            Gate::Single { target, u } => Gate::Single {
                target: *target,
                u: mat2::dagger(u),
            },
            Gate::Controlled { controls, target, u } => Gate::Controlled {
                controls: controls.clone(),
                target: *target,
                u: mat2::dagger(u),
            },
            Gate::PatternPhase { pattern, phase } => Gate::PatternPhase {
                pattern: *pattern,
                phase: phase.conj(),
            },
        }
    }

    /// Whether this is a plain CNOT (one positive control, `X` target).
    pub fn is_cnot(&self) -> bool {
        match self {
            Gate::Controlled { controls, u, .. } => {
                controls.len() == 1
                    && controls[0].bit
                    && mat2::max_abs_diff(u, &mat2::PAULI_X) <= UNITARY_TOL
            }
            _ => false,
        }
    }

    /// Checks indices and unitarity against a register of `n` qubits.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Gate::Single { target, u } => {
                check_qubit(*target, n)?;
                check_unitary(u)
            }
            Gate::Controlled { controls, target, u } => {
                check_qubit(*target, n)?;
                for (i, c) in controls.iter().enumerate() {
                    check_qubit(c.qubit, n)?;
                    if c.qubit == *target {
                        return Err(Error::InvalidGate(format!(
                            "control qubit {} coincides with target",
                            c.qubit
                        )));
                    }
                    if controls[..i].iter().any(|d| d.qubit == c.qubit) {
                        return Err(Error::InvalidGate(format!(
                            "control qubit {} repeated",
                            c.qubit
                        )));
                    }
                }
                check_unitary(u)
            }
            Gate::PatternPhase { pattern, phase } => {
                if n < 64 && *pattern >> n != 0 {
                    return Err(Error::InvalidGate(format!(
                        "pattern {pattern} does not fit in {n} qubits"
                    )));
                }
                if (phase.norm() - 1.0).abs() > UNITARY_TOL {
                    return Err(Error::InvalidGate(format!("phase {phase} is not unimodular")));
                }
                Ok(())
            }
        }
    }
}

fn check_qubit(q: usize, n: usize) -> Result<()> {
    if q >= n {
        return Err(Error::OutOfRange {
            what: "qubit index",
            value: q as u64,
            allowed: format!("0..{n}"),
        });
    }
    Ok(())
}

fn check_unitary(u: &Mat2) -> Result<()> {
    if !mat2::is_unitary(u, UNITARY_TOL) {
        return Err(Error::InvalidGate(format!("2x2 block is not unitary: {u:?}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    /// Validating constructor.
    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    // Gates produced internally are valid by construction.
    pub(crate) fn push_unchecked(&mut self, gate: Gate) {
        debug_assert!(gate.validate(self.n).is_ok(), "{gate:?}");
        self.gates.push(gate);
    }

    /// Appends all gates of `other` after this circuit's gates.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::InvalidGate(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n, self.n
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// The inverse circuit: gates reversed, each block daggered.
    pub fn dagger(&self) -> Self {
        Self {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::dagger).collect(),
        }
    }

    /// Relabels qubit `q` as `q + offset` on a wider register.
    pub fn shifted(&self, offset: usize, n: usize) -> Result<Self> {
        if self.n + offset > n {
            return Err(Error::OutOfRange {
                what: "qubit offset",
                value: offset as u64,
                allowed: format!("0..={}", n.saturating_sub(self.n)),
            });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::Single { target, u } => Gate::Single {
                    target: target + offset,
                    u: *u,
                },
                Gate::Controlled { controls, target, u } => Gate::Controlled {
                    controls: controls
                        .iter()
                        .map(|c| Control {
                            qubit: c.qubit + offset,
                            bit: c.bit,
                        })
                        .collect(),
                    target: target + offset,
                    u: *u,
                },
                // on a sub-register the pattern becomes a controlled phase
                Gate::PatternPhase { pattern, phase } => {
                    let m = self.n;
                    let controls = (0..m - 1)
                        .map(|q| Control {
                            qubit: q + offset,
                            bit: crate::targets::qubit_bit(*pattern, m, q),
                        })
                        .collect();
                    let u = if pattern & 1 == 1 {
                        mat2::phase(*phase)
                    } else {
                        [[*phase, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]]
                    };
                    Gate::controlled(controls, m - 1 + offset, u)
                }
            })
            .collect();
        Ok(Self { n, gates })
    }

    /// Qubits touched by any gate, ascending.
    pub fn touched_qubits(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for g in &self.gates {
            match g {
                Gate::Single { target, .. } => seen[*target] = true,
                Gate::Controlled { controls, target, .. } => {
                    seen[*target] = true;
                    for c in controls {
                        seen[c.qubit] = true;
                    }
                }
                Gate::PatternPhase { .. } => seen.iter_mut().for_each(|s| *s = true),
            }
        }
        (0..self.n).filter(|&q| seen[q]).collect()
    }

    /// Whether every gate is a single-qubit gate or a CNOT.
    pub fn is_lowered(&self) -> bool {
        self.gates
            .iter()
            .all(|g| matches!(g, Gate::Single { .. }) || g.is_cnot())
    }

    /// Runs the circuit on `state` in place.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.n() != self.n {
            return Err(Error::InvalidGate(format!(
                "{}-qubit circuit applied to a {}-qubit state",
                self.n,
                state.n()
            )));
        }
        for g in &self.gates {
            state.apply(g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_gates() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::x(2)).is_err());
        assert!(c
            .push(Gate::Controlled {
                controls: vec![Control::on(1)],
                target: 1,
                u: mat2::PAULI_X
            })
            .is_err());
        assert!(c
            .push(Gate::Controlled {
                controls: vec![Control::on(0), Control::off(0)],
                target: 1,
                u: mat2::PAULI_X
            })
            .is_err());
        let bad = [[Complex64::new(2.0, 0.0); 2]; 2];
        assert!(c.push(Gate::single(0, bad)).is_err());
        assert!(c
            .push(Gate::PatternPhase {
                pattern: 0,
                phase: Complex64::new(0.5, 0.0)
            })
            .is_err());
        assert!(c
            .push(Gate::PatternPhase {
                pattern: 4,
                phase: Complex64::new(-1.0, 0.0)
            })
            .is_err());
        assert!(c.is_empty());
    }

    #[test]
    fn shift_and_touch() {
        let mut c = Circuit::new(2);
        c.push(Gate::h(0)).unwrap();
        c.push(Gate::cnot(0, 1)).unwrap();
        let s = c.shifted(1, 3).unwrap();
        assert_eq!(s.touched_qubits(), vec![1, 2]);
        assert!(s.is_lowered());
        assert!(c.shifted(2, 3).is_err());
    }
}
