//! JSON wire format for circuits.
//!
//! ```json
//! {"n": 3, "gates": [
//!   {"kind": "single", "target": 0, "u": [[re, im], [re, im], [re, im], [re, im]]},
//!   {"kind": "controlled", "controls": [[0, 1], [1, 0]], "target": 2, "u": [...]},
//!   {"kind": "pattern_phase", "pattern": "000", "phase": [-1.0, 0.0]}
//! ]}
//! ```
//!
//! `u` lists the 2×2 block row-major; pattern bitstrings are MSB-first.
//! Floats round-trip bit-exactly.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Circuit, Control, Gate, Mat2};
use crate::error::Result;
use crate::targets::{parse_bitstring, to_bitstring};

type WireMat = [[f64; 2]; 4];

#[derive(Serialize, Deserialize)]
struct CircuitWire {
    n: usize,
    gates: Vec<GateWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum GateWire {
    Single {
        target: usize,
        u: WireMat,
    },
    Controlled {
        controls: Vec<(usize, u8)>,
        target: usize,
        u: WireMat,
    },
    PatternPhase {
        pattern: String,
        phase: [f64; 2],
    },
}

fn mat_to_wire(u: &Mat2) -> WireMat {
    let e = |z: Complex64| [z.re, z.im];
    [e(u[0][0]), e(u[0][1]), e(u[1][0]), e(u[1][1])]
}

fn mat_from_wire(w: &WireMat) -> Mat2 {
    let e = |p: [f64; 2]| Complex64::new(p[0], p[1]);
    [[e(w[0]), e(w[1])], [e(w[2]), e(w[3])]]
}

impl From<&Circuit> for CircuitWire {
    fn from(c: &Circuit) -> Self {
        let n = c.n();
        let gates = c
            .gates()
            .iter()
            .map(|g| match g {
                Gate::Single { target, u } => GateWire::Single {
                    target: *target,
                    u: mat_to_wire(u),
                },
                Gate::Controlled { controls, target, u } => GateWire::Controlled {
                    controls: controls.iter().map(|c| (c.qubit, c.bit as u8)).collect(),
                    target: *target,
                    u: mat_to_wire(u),
                },
                Gate::PatternPhase { pattern, phase } => GateWire::PatternPhase {
                    pattern: to_bitstring(*pattern, n),
                    phase: [phase.re, phase.im],
                },
            })
            .collect();
        CircuitWire { n, gates }
    }
}

impl TryFrom<CircuitWire> for Circuit {
    type Error = crate::error::Error;

    fn try_from(w: CircuitWire) -> Result<Self> {
        let n = w.n;
        let gates = w
            .gates
            .into_iter()
            .map(|g| -> Result<Gate> {
                Ok(match g {
                    GateWire::Single { target, u } => Gate::Single {
                        target,
                        u: mat_from_wire(&u),
                    },
                    GateWire::Controlled { controls, target, u } => Gate::Controlled {
                        controls: controls
                            .into_iter()
                            .map(|(qubit, bit)| match bit {
                                0 | 1 => Ok(Control { qubit, bit: bit == 1 }),
                                _ => Err(crate::error::Error::Parse(format!(
                                    "control bit must be 0 or 1, got {bit}"
                                ))),
                            })
                            .collect::<Result<_>>()?,
                        target,
                        u: mat_from_wire(&u),
                    },
                    GateWire::PatternPhase { pattern, phase } => Gate::PatternPhase {
                        pattern: parse_bitstring(&pattern, n)?,
                        phase: Complex64::new(phase[0], phase[1]),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(n, gates)
    }
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircuitWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = CircuitWire::deserialize(d)?;
        Circuit::try_from(wire).map_err(serde::de::Error::custom)
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
