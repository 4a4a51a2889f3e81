//! 2×2 complex matrices, row-major.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = [[Complex64; 2]; 2];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const IDENTITY: Mat2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
pub const PAULI_X: Mat2 = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
pub const PAULI_Y: Mat2 = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
pub const PAULI_Z: Mat2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];

pub fn hadamard() -> Mat2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]
}

/// `exp(-i θ Y / 2)`.
pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

/// `exp(-i θ Z / 2)`.
pub fn rz(theta: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

/// `diag(1, phase)`.
pub fn phase(phase: Complex64) -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), phase]]
}

/// Real rotation `√p0·1 − i√p1·σ_y`, i.e. rows `[[√p0, −√p1], [√p1, √p0]]`.
///
/// Maps `|0⟩` to `√p0|0⟩ + √p1|1⟩`.
pub fn ry_from_probs(p0: f64, p1: f64) -> Result<Mat2> {
    if !(p0 >= 0.0 && p1 >= 0.0) || (p0 + p1 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidProbabilities { p0, p1 });
    }
    let (a, b) = (p0.sqrt(), p1.sqrt());
    Ok([[c(a, 0.0), c(-b, 0.0)], [c(b, 0.0), c(a, 0.0)]])
}

/// `a · b` (apply `b` first).
pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(u: &Mat2) -> Mat2 {
    [
        [u[0][0].conj(), u[1][0].conj()],
        [u[0][1].conj(), u[1][1].conj()],
    ]
}

pub fn det(u: &Mat2) -> Complex64 {
    u[0][0] * u[1][1] - u[0][1] * u[1][0]
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub fn is_unitary(u: &Mat2, tol: f64) -> bool {
    u.iter().flatten().all(|z| z.is_finite()) && max_abs_diff(&mul(&dagger(u), u), &IDENTITY) <= tol
}

pub fn is_identity(u: &Mat2, tol: f64) -> bool {
    max_abs_diff(u, &IDENTITY) <= tol
}

/// Angle `θ` when `u` is exactly of the form [`ry`]`(θ)` up to `tol`.
pub fn as_ry(u: &Mat2, tol: f64) -> Option<f64> {
    let real = u.iter().flatten().all(|z| z.im.abs() <= tol);
    let shaped = (u[0][0].re - u[1][1].re).abs() <= tol && (u[0][1].re + u[1][0].re).abs() <= tol;
    (real && shaped).then(|| 2.0 * u[1][0].re.atan2(u[0][0].re))
}

/// Euler angles with `u = e^{iα} Rz(β) Ry(γ) Rz(δ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zyz {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl Zyz {
    pub fn decompose(u: &Mat2) -> Self {
        let alpha = det(u).arg() / 2.0;
        let g = Complex64::from_polar(1.0, -alpha);
        let w = [[u[0][0] * g, u[0][1] * g], [u[1][0] * g, u[1][1] * g]];
        let (cos_half, sin_half) = (w[0][0].norm(), w[1][0].norm());
        let gamma = 2.0 * sin_half.atan2(cos_half);
        // w11 = e^{i(β+δ)/2} cos, w10 = e^{i(β−δ)/2} sin
        let (sum, diff) = if sin_half < 1e-12 {
            (2.0 * w[1][1].arg(), 0.0)
        } else if cos_half < 1e-12 {
            (0.0, 2.0 * w[1][0].arg())
        } else {
            (2.0 * w[1][1].arg(), 2.0 * w[1][0].arg())
        };
        Self {
            alpha,
            beta: (sum + diff) / 2.0,
            gamma,
            delta: (sum - diff) / 2.0,
        }
    }

    pub fn compose(&self) -> Mat2 {
        let m = mul(&rz(self.beta), &mul(&ry(self.gamma), &rz(self.delta)));
        let g = Complex64::from_polar(1.0, self.alpha);
        [[m[0][0] * g, m[0][1] * g], [m[1][0] * g, m[1][1] * g]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probs_to_rotation() {
        assert!(is_identity(&ry_from_probs(1.0, 0.0).unwrap(), 0.0));
        let v1 = ry_from_probs(0.75, 0.25).unwrap();
        let s3 = 3f64.sqrt();
        // (1/2)(√3·1 − iσ_y)
        let expect = [[c(s3 / 2.0, 0.0), c(-0.5, 0.0)], [c(0.5, 0.0), c(s3 / 2.0, 0.0)]];
        assert!(max_abs_diff(&v1, &expect) < 1e-15);
        let v = ry_from_probs(0.5, 0.5).unwrap();
        let h = hadamard();
        assert!((v[0][0] - h[0][0]).norm() < 1e-15 && (v[1][0] - h[1][0]).norm() < 1e-15);
        assert!(ry_from_probs(-0.1, 1.1).is_err());
        assert!(ry_from_probs(0.5, 0.6).is_err());
        assert!(ry_from_probs(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn ry_angle_roundtrip() {
        for &t in &[0.0, 0.3, -1.2, 2.9, std::f64::consts::PI] {
            let back = as_ry(&ry(t), 1e-14).unwrap();
            assert!((back - t).abs() < 1e-12, "{t} -> {back}");
        }
        let u = ry_from_probs(2.0 / 3.0, 1.0 / 3.0).unwrap();
        let t = as_ry(&u, 1e-14).unwrap();
        assert!((t - 2.0 * (1.0f64 / 3.0).sqrt().atan2((2.0f64 / 3.0).sqrt())).abs() < 1e-14);
        assert!(as_ry(&PAULI_X, 1e-12).is_none());
        assert!(as_ry(&hadamard(), 1e-12).is_none());
    }

    #[test]
    fn zyz_reconstructs() {
        let samples = [
            IDENTITY,
            PAULI_X,
            PAULI_Y,
            PAULI_Z,
            hadamard(),
            ry(0.7),
            rz(-1.3),
            phase(Complex64::from_polar(1.0, 0.4)),
            mul(&hadamard(), &mul(&rz(0.9), &ry(2.1))),
            mul(&PAULI_X, &phase(Complex64::new(0.0, 1.0))),
        ];
        for u in samples {
            let z = Zyz::decompose(&u);
            assert!(max_abs_diff(&z.compose(), &u) < 1e-12, "{u:?} {z:?}");
        }
    }

    #[test]
    fn unitarity() {
        assert!(is_unitary(&hadamard(), 1e-12));
        let bad = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(!is_unitary(&bad, 1e-12));
    }
}
