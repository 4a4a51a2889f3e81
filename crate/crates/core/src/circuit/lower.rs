//! Lowering to single-qubit gates plus CNOT.
//!
//! Consecutive controlled `Ry` gates that share a target and a control wire
//! set form a uniformly controlled rotation and are emitted together as
//! `2^m` rotations interleaved with `2^m` CNOTs, with the CNOT controls
//! walking a cyclic Gray code. Any other controlled gate is split into
//! `e^{iα} Rz(β) Ry(γ) Rz(δ)`: each rotation becomes a uniformly controlled
//! rotation with a single nonzero angle, and the phase `e^{iα}` becomes a
//! controlled phase on the last control with one control fewer, which is
//! lowered recursively. The result equals the input exactly, not merely up
//! to a global phase.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::mat2::{self, Mat2, Zyz};
use super::{Circuit, Control, Gate};
use crate::error::Result;
use crate::targets::qubit_bit;

const ANGLE_EPS: f64 = 1e-15;

#[derive(Clone, Copy)]
enum Axis {
    Y,
    Z,
}

/// Rewrites `circuit` using only single-qubit gates and CNOTs.
pub fn lower(circuit: &Circuit) -> Result<Circuit> {
    let n = circuit.n();
    let gates = circuit.gates();
    let mut out = Circuit::new(n);
    let mut i = 0;
    while i < gates.len() {
        match &gates[i] {
            Gate::Single { .. } => {
                out.push(gates[i].clone())?;
                i += 1;
            }
            g @ Gate::Controlled { .. } if g.is_cnot() => {
                out.push(g.clone())?;
                i += 1;
            }
            Gate::Controlled { controls, target, u } => {
                if mat2::as_ry(u, 1e-12).is_some() {
                    i = lower_ry_run(&mut out, gates, i)?;
                } else {
                    out.validate_gate(&gates[i])?;
                    lower_controlled(&mut out, controls, *target, u);
                    i += 1;
                }
            }
            Gate::PatternPhase { pattern, phase } => {
                out.validate_gate(&gates[i])?;
                lower_pattern_phase(&mut out, *pattern, *phase);
                i += 1;
            }
        }
    }
    Ok(out)
}

impl Circuit {
    fn validate_gate(&self, g: &Gate) -> Result<()> {
        g.validate(self.n())
    }
}

fn wire_set(controls: &[Control]) -> Vec<usize> {
    let mut q: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    q.sort_unstable();
    q
}

// Index of a control pattern with `wires[0]` as the most significant bit.
fn pattern_index(wires: &[usize], controls: &[Control]) -> usize {
    let m = wires.len();
    controls
        .iter()
        .filter(|c| c.bit)
        .map(|c| {
            let k = wires.iter().position(|&w| w == c.qubit).expect("control in wire set");
            1usize << (m - 1 - k)
        })
        .sum()
}

fn lower_ry_run(out: &mut Circuit, gates: &[Gate], start: usize) -> Result<usize> {
    let Gate::Controlled { controls, target, .. } = &gates[start] else {
        unreachable!("run starts at a controlled gate")
    };
    let target = *target;
    let wires = wire_set(controls);
    let mut angles = vec![0.0; 1usize << wires.len()];
    let mut end = start;
    while let Some(Gate::Controlled { controls: cs, target: t, u }) = gates.get(end) {
        let Some(theta) = mat2::as_ry(u, 1e-12) else { break };
        if *t != target || wire_set(cs) != wires || gates[end].is_cnot() {
            break;
        }
        gates[end].validate(out.n())?;
        angles[pattern_index(&wires, cs)] += theta;
        end += 1;
    }
    emit_ucr(out, &wires, target, &angles, Axis::Y);
    Ok(end)
}

/// Uniformly controlled rotation: `R(angles[c])` on `target` when the
/// controls read `c` (`controls[0]` most significant).
fn emit_ucr(out: &mut Circuit, controls: &[usize], target: usize, angles: &[f64], axis: Axis) {
    let rot = |theta: f64| match axis {
        Axis::Y => mat2::ry(theta),
        Axis::Z => mat2::rz(theta),
    };
    let m = controls.len();
    if angles.iter().all(|a| a.abs() < ANGLE_EPS) {
        return;
    }
    if m == 0 {
        out.push_unchecked(Gate::single(target, rot(angles[0])));
        return;
    }
    let size = 1usize << m;
    let scale = 1.0 / size as f64;
    for i in 0..size {
        let gray = i ^ (i >> 1);
        let phi: f64 = angles
            .iter()
            .enumerate()
            .map(|(c, &theta)| {
                if (c & gray).count_ones() % 2 == 0 {
                    theta
                } else {
                    -theta
                }
            })
            .sum::<f64>()
            * scale;
        out.push_unchecked(Gate::single(target, rot(phi)));
        let flipped = if i + 1 < size {
            (i + 1).trailing_zeros() as usize
        } else {
            m - 1
        };
        out.push_unchecked(Gate::cnot(controls[m - 1 - flipped], target));
    }
}

fn lower_controlled(out: &mut Circuit, controls: &[Control], target: usize, u: &Mat2) {
    if controls.is_empty() {
        out.push_unchecked(Gate::single(target, *u));
        return;
    }
    let wires = wire_set(controls);
    let idx = pattern_index(&wires, controls);
    let size = 1usize << wires.len();
    let z = Zyz::decompose(u);
    for (axis, theta) in [(Axis::Z, z.delta), (Axis::Y, z.gamma), (Axis::Z, z.beta)] {
        let mut angles = vec![0.0; size];
        angles[idx] = theta;
        emit_ucr(out, &wires, target, &angles, axis);
    }
    let alpha = z.alpha.rem_euclid(2.0 * std::f64::consts::PI);
    if alpha.abs() > ANGLE_EPS && (alpha - 2.0 * std::f64::consts::PI).abs() > ANGLE_EPS {
        controlled_phase(out, controls, Complex64::from_polar(1.0, z.alpha));
    }
}

// Multiplies by `phase` wherever all `controls` hold.
fn controlled_phase(out: &mut Circuit, controls: &[Control], phase: Complex64) {
    let (last, rest) = controls.split_last().expect("at least one control");
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let u = if last.bit {
        [[one, zero], [zero, phase]]
    } else {
        [[phase, zero], [zero, one]]
    };
    lower_controlled(out, rest, last.qubit, &u);
}

fn lower_pattern_phase(out: &mut Circuit, pattern: u64, phase: Complex64) {
    let n = out.n();
    let controls: Vec<Control> = (0..n)
        .map(|q| Control {
            qubit: q,
            bit: qubit_bit(pattern, n, q),
        })
        .collect();
    controlled_phase(out, &controls, phase);
}

/// Gate tally of a lowered circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoweredCounts {
    pub single: usize,
    pub cnot: usize,
}

impl LoweredCounts {
    pub fn of(c: &Circuit) -> Self {
        c.gates().iter().fold(Self::default(), |mut acc, g| {
            if g.is_cnot() {
                acc.cnot += 1;
            } else {
                acc.single += 1;
            }
            acc
        })
    }

    pub fn total(&self) -> usize {
        self.single + self.cnot
    }
}

/// Histogram of control counts, useful when reporting unlowered circuits.
pub fn control_histogram(c: &Circuit) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for g in c.gates() {
        *h.entry(g.control_count(c.n())).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::dense::{oracle::circuit_matrix, unitary_of};

    fn assert_equivalent(c: &Circuit) -> Circuit {
        let l = lower(c).unwrap();
        assert!(l.is_lowered(), "{l:?}");
        let want = circuit_matrix(c);
        let got = unitary_of(&l).unwrap();
        let d = want.phase_aligned_diff(&got);
        assert!(d < 1e-9, "diff {d}");
        // the construction tracks phases exactly
        assert!(want.max_abs_diff(&got) < 1e-9);
        l
    }

    #[test]
    fn single_control_ry_is_two_cnots() {
        let mut c = Circuit::new(2);
        c.push(Gate::controlled(vec![Control::on(0)], 1, mat2::ry(0.8))).unwrap();
        let l = assert_equivalent(&c);
        assert_eq!(LoweredCounts::of(&l), LoweredCounts { single: 2, cnot: 2 });
    }

    #[test]
    fn uncontrolled_passes_through() {
        let mut c = Circuit::new(2);
        c.push(Gate::h(1)).unwrap();
        let l = lower(&c).unwrap();
        assert_eq!(l, c);
    }

    #[test]
    fn paired_stage_merges() {
        // two V gates controlled on opposite values of qubit 1, target 2
        let v = mat2::ry_from_probs(0.5, 0.5).unwrap();
        let mut c = Circuit::new(3);
        c.push(Gate::controlled(vec![Control::off(1)], 2, v)).unwrap();
        c.push(Gate::controlled(vec![Control::on(1)], 2, v)).unwrap();
        let l = assert_equivalent(&c);
        assert_eq!(LoweredCounts::of(&l).cnot, 2);
        assert_eq!(l.touched_qubits(), vec![1, 2]);
        // and the product acts as 1 ⊗ 1 ⊗ V
        let mut v_only = Circuit::new(3);
        v_only.push(Gate::single(2, v)).unwrap();
        assert!(unitary_of(&l).unwrap().max_abs_diff(&unitary_of(&v_only).unwrap()) < 1e-12);
    }

    #[test]
    fn multi_controlled_general_gates() {
        let u = mat2::mul(&mat2::hadamard(), &mat2::rz(0.37));
        for controls in [
            vec![Control::on(0), Control::off(2)],
            vec![Control::off(0), Control::off(1), Control::on(3)],
            vec![Control::on(0), Control::on(1), Control::on(2), Control::on(4)],
        ] {
            let mut c2 = Circuit::new(5);
            let target = (0..5).find(|q| controls.iter().all(|c| c.qubit != *q)).unwrap();
            c2.push(Gate::controlled(controls.clone(), target, u)).unwrap();
            c2.push(Gate::controlled(controls, target, mat2::PAULI_X)).unwrap();
            assert_equivalent(&c2);
        }
    }

    #[test]
    fn pattern_phases() {
        for n in 1..=4 {
            for pattern in [0u64, (1 << n) - 1, 1] {
                let mut c = Circuit::new(n);
                c.push(Gate::PatternPhase {
                    pattern,
                    phase: Complex64::new(-1.0, 0.0),
                })
                .unwrap();
                c.push(Gate::PatternPhase {
                    pattern: pattern ^ 1,
                    phase: Complex64::from_polar(1.0, 1.1),
                })
                .unwrap();
                assert_equivalent(&c);
            }
        }
    }

    #[test]
    fn mixed_runs_do_not_merge_across_targets() {
        let mut c = Circuit::new(3);
        c.push(Gate::controlled(vec![Control::on(0)], 1, mat2::ry(0.3))).unwrap();
        c.push(Gate::controlled(vec![Control::on(0)], 2, mat2::ry(0.5))).unwrap();
        c.push(Gate::controlled(vec![Control::off(0), Control::on(1)], 2, mat2::ry(-0.9))).unwrap();
        c.push(Gate::controlled(vec![Control::on(1), Control::on(0)], 2, mat2::ry(1.9))).unwrap();
        c.push(Gate::cnot(2, 0)).unwrap();
        let l = assert_equivalent(&c);
        // 2 + 2 + 4 CNOTs from the three runs, plus the original CNOT
        assert_eq!(LoweredCounts::of(&l).cnot, 9);
        assert_eq!(control_histogram(&c).get(&2), Some(&2));
    }
}
