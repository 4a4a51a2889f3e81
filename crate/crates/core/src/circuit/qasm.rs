//! OpenQASM 2.0 export for lowered circuits.
//!
//! Register index `q[i]` is qubit `i` of the circuit, i.e. `q[0]` carries the
//! most significant bit of a basis label. Single-qubit blocks are written as
//! `h` or `x` when they match exactly and as `rz`/`ry`/`rz` Euler rotations
//! otherwise; global phases are dropped.

use std::fmt::Write;

use super::mat2::{self, Zyz};
use super::{Circuit, Gate};
use crate::error::{Error, Result};

const EXACT: f64 = 1e-12;
const ANGLE_EPS: f64 = 1e-14;

pub fn to_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "OPENQASM 2.0;");
    let _ = writeln!(out, "include \"qelib1.inc\";");
    let _ = writeln!(out, "qreg q[{}];", circuit.n());
    for (i, g) in circuit.gates().iter().enumerate() {
        match g {
            Gate::Single { target, u } => write_single(&mut out, *target, u),
            g if g.is_cnot() => {
                let Gate::Controlled { controls, target, .. } = g else {
                    unreachable!()
                };
                let _ = writeln!(out, "cx q[{}],q[{}];", controls[0].qubit, target);
            }
            other => {
                return Err(Error::NotLowered(format!(
                    "gate {i} ({other:?}) is not a single-qubit gate or CNOT"
                )))
            }
        }
    }
    Ok(out)
}

fn write_single(out: &mut String, target: usize, u: &mat2::Mat2) {
    if mat2::max_abs_diff(u, &mat2::hadamard()) <= EXACT {
        let _ = writeln!(out, "h q[{target}];");
        return;
    }
    if mat2::max_abs_diff(u, &mat2::PAULI_X) <= EXACT {
        let _ = writeln!(out, "x q[{target}];");
        return;
    }
    if let Some(theta) = mat2::as_ry(u, EXACT) {
        let _ = writeln!(out, "ry({theta:?}) q[{target}];");
        return;
    }
    let z = Zyz::decompose(u);
    for (name, angle) in [("rz", z.delta), ("ry", z.gamma), ("rz", z.beta)] {
        if angle.abs() > ANGLE_EPS {
            let _ = writeln!(out, "{name}({angle:?}) q[{target}];");
        }
    }
}
