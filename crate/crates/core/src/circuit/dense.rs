//! Dense unitaries of small circuits, used as a reference when checking
//! syntheses and lowerings.

use num_complex::Complex64;

use super::{Circuit, StateVector};
use crate::error::{Error, Result};

/// Largest register for which [`unitary_of`] builds a matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// `1 − 2 Σ_{x∈labels} |x⟩⟨x|` with `|S⟩` uniform over `labels` when
    /// `coherent` is set, i.e. `1 − 2|S⟩⟨S|`.
    pub fn reflection(dim: usize, labels: &[u64], coherent: bool) -> Self {
        let mut m = Self::identity(dim);
        if coherent {
            let w = 2.0 / labels.len() as f64;
            for &x in labels {
                for &y in labels {
                    m.data[x as usize * dim + y as usize] -= w;
                }
            }
        } else {
            for &x in labels {
                m.data[x as usize * dim + x as usize] -= 2.0;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max difference after removing the global phase that best aligns
    /// `other` with `self` (taken from the largest entry of `self`).
    pub fn phase_aligned_diff(&self, other: &DenseMatrix) -> f64 {
        let (idx, _) = self
            .data
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
        let (a, b) = (self.data[idx], other.data[idx]);
        if b.norm() == 0.0 {
            return f64::INFINITY;
        }
        let phase = (a / b) / (a / b).norm();
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y * phase).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(M†M − 1)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.data[k * d + i].conj() * self.data[k * d + j];
                }
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    /// If every column holds a single entry equal to 1, the induced map on labels.
    pub fn as_permutation(&self, tol: f64) -> Option<Vec<u64>> {
        let d = self.dim;
        (0..d)
            .map(|col| {
                let mut hit = None;
                for row in 0..d {
                    let z = self.data[row * d + col];
                    if (z - 1.0).norm() <= tol {
                        if hit.is_some() {
                            return None;
                        }
                        hit = Some(row as u64);
                    } else if z.norm() > tol {
                        return None;
                    }
                }
                hit
            })
            .collect()
    }
}

/// Dense unitary of `circuit`; column `x` is the circuit applied to `|x⟩`.
pub fn unitary_of(circuit: &Circuit) -> Result<DenseMatrix> {
    let n = circuit.n();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut m = DenseMatrix::zeros(dim);
    for x in 0..dim {
        let mut s = StateVector::basis(n, x as u64)?;
        circuit.apply_to(&mut s)?;
        for (row, a) in s.amplitudes().iter().enumerate() {
            m.data[row * dim + x] = *a;
        }
    }
    Ok(m)
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Reference matrices built entry by entry from each gate's definition.

    use super::*;
    use crate::circuit::Gate;
    use crate::targets::qubit_bit;

    pub fn gate_matrix(gate: &Gate, n: usize) -> DenseMatrix {
        let dim = 1usize << n;
        let mut m = DenseMatrix::zeros(dim);
        for col in 0..dim as u64 {
            for row in 0..dim as u64 {
                let v = match gate {
                    Gate::PatternPhase { pattern, phase } => {
                        if row != col {
                            Complex64::new(0.0, 0.0)
                        } else if row == *pattern {
                            *phase
                        } else {
                            Complex64::new(1.0, 0.0)
                        }
                    }
                    Gate::Single { target, u } => element(n, row, col, &[], *target, u),
                    Gate::Controlled { controls, target, u } => {
                        let cs: Vec<(usize, bool)> = controls.iter().map(|c| (c.qubit, c.bit)).collect();
                        element(n, row, col, &cs, *target, u)
                    }
                };
                m.set(row as usize, col as usize, v);
            }
        }
        m
    }

    fn element(
        n: usize,
        row: u64,
        col: u64,
        controls: &[(usize, bool)],
        target: usize,
        u: &crate::circuit::Mat2,
    ) -> Complex64 {
        let fires = controls.iter().all(|&(q, b)| qubit_bit(col, n, q) == b);
        let others_equal = (0..n).filter(|&q| q != target).all(|q| qubit_bit(row, n, q) == qubit_bit(col, n, q));
        if !others_equal {
            return Complex64::new(0.0, 0.0);
        }
        if fires {
            u[qubit_bit(row, n, target) as usize][qubit_bit(col, n, target) as usize]
        } else if row == col {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Product of gate matrices in time order.
    pub fn circuit_matrix(c: &Circuit) -> DenseMatrix {
        c.gates().iter().fold(DenseMatrix::identity(1 << c.n()), |acc, g| {
            gate_matrix(g, c.n()).mul(&acc)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::circuit::{mat2, Control, Gate};

    #[test]
    fn empty_circuit_is_identity() {
        let u = unitary_of(&Circuit::new(3)).unwrap();
        assert_eq!(u, DenseMatrix::identity(8));
    }

    #[test]
    fn pattern_phase_matrix() {
        let mut c = Circuit::new(3);
        c.push(Gate::PatternPhase {
            pattern: 0,
            phase: Complex64::new(-1.0, 0.0),
        })
        .unwrap();
        let u = unitary_of(&c).unwrap();
        let mut want = DenseMatrix::identity(8);
        want.set(0, 0, Complex64::new(-1.0, 0.0));
        assert_eq!(u, want);
    }

    #[test]
    fn three_gate_product() {
        let mut c = Circuit::new(3);
        c.push(Gate::single(1, mat2::ry(0.4))).unwrap();
        c.push(Gate::Controlled {
            controls: vec![Control::off(1), Control::on(2)],
            target: 0,
            u: mat2::mul(&mat2::hadamard(), &mat2::rz(0.3)),
        })
        .unwrap();
        c.push(Gate::PatternPhase {
            pattern: 5,
            phase: Complex64::from_polar(1.0, 0.7),
        })
        .unwrap();
        let u = unitary_of(&c).unwrap();
        assert!(u.max_abs_diff(&circuit_matrix(&c)) < 1e-14);
        assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn refuses_large_registers() {
        assert!(matches!(
            unitary_of(&Circuit::new(13)),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn phase_alignment_and_permutations() {
        let id = DenseMatrix::identity(4);
        let mut m = id.clone();
        for i in 0..4 {
            m.set(i, i, Complex64::new(0.0, 1.0));
        }
        assert!(id.phase_aligned_diff(&m) < 1e-15);
        assert!(id.max_abs_diff(&m) > 1.0);
        assert_eq!(id.as_permutation(1e-12), Some(vec![0, 1, 2, 3]));
        assert_eq!(m.as_permutation(1e-12), None);
    }
}
