//! Dense state vectors and in-place gate application.

use num_complex::Complex64;

use super::{Control, Gate, Mat2};
use crate::error::{Error, Result};

/// Qubit count above which a dense state is refused outright.
pub const HARD_QUBIT_LIMIT: usize = 30;

/// `2^n` complex amplitudes indexed by basis label.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The basis state `|x⟩`.
    pub fn basis(n: usize, x: u64) -> Result<Self> {
        check_size(n)?;
        if x >> n != 0 {
            return Err(Error::LabelOutOfRange { label: x, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amps[x as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Uniform superposition over all `2^n` labels.
    pub fn uniform(n: usize) -> Result<Self> {
        check_size(n)?;
        let a = Complex64::new(1.0 / ((1usize << n) as f64).sqrt(), 0.0);
        Ok(Self {
            n,
            amps: vec![a; 1usize << n],
        })
    }

    /// Equal-weight superposition `|S|^{-1/2} Σ_{x∈S} |x⟩`.
    pub fn uniform_over(n: usize, labels: &[u64]) -> Result<Self> {
        check_size(n)?;
        if labels.is_empty() {
            return Err(Error::EmptyTargetSet);
        }
        let a = Complex64::new(1.0 / (labels.len() as f64).sqrt(), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        for &x in labels {
            if x >> n != 0 {
                return Err(Error::LabelOutOfRange { label: x, n });
            }
            amps[x as usize] = a;
        }
        Ok(Self { n, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidGate(format!(
                "amplitude vector length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_size(n)?;
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, x: u64) -> Complex64 {
        self.amps[x as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= factor);
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Total probability of measuring one of `labels`.
    pub fn probability_of(&self, labels: &[u64]) -> f64 {
        labels.iter().map(|&x| self.amps[x as usize].norm_sqr()).sum()
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        match gate {
            Gate::Single { target, u } => self.apply_masked(*target, 0, 0, u),
            Gate::Controlled { controls, target, u } => {
                let (mask, value) = self.control_mask(controls);
                self.apply_masked(*target, mask, value, u);
            }
            Gate::PatternPhase { pattern, phase } => self.amps[*pattern as usize] *= phase,
        }
        Ok(())
    }

    fn bit_of(&self, qubit: usize) -> usize {
        1usize << (self.n - 1 - qubit)
    }

    fn control_mask(&self, controls: &[Control]) -> (usize, usize) {
        controls.iter().fold((0, 0), |(m, v), c| {
            let b = self.bit_of(c.qubit);
            (m | b, if c.bit { v | b } else { v })
        })
    }

    // Visits each index pair (i, i | bit) with the target bit clear and the
    // control condition `i & mask == value` satisfied.
    fn apply_masked(&mut self, target: usize, mask: usize, value: usize, u: &Mat2) {
        let bit = self.bit_of(target);
        let low = bit - 1;
        let half = self.amps.len() >> 1;
        for k in 0..half {
            let i0 = ((k & !low) << 1) | (k & low);
            if i0 & mask != value {
                continue;
            }
            let i1 = i0 | bit;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = u[0][0] * a0 + u[0][1] * a1;
            self.amps[i1] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > HARD_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            n,
            limit: HARD_QUBIT_LIMIT,
        });
    }
    Ok(())
}
