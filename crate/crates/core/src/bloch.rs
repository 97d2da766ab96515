use core::ops::Index;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::matrix::{Mat2, ONE};
use crate::pauli::{dot_sigma, pauli, Axis};

/// Coherence (Bloch) vector of a qubit state, `ρ = (1 + s·σ) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct BlochVector(pub Vec3);

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub const fn axis(a: Axis) -> Self {
        Self(a.unit())
    }

    pub fn norm(&self) -> f64 {
        linalg::norm3(self.0)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn check_in_ball(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if norm > 1.0 + tol || !norm.is_finite() {
            return Err(Error::OutsideBlochBall { norm });
        }
        Ok(())
    }

    pub fn as_array(&self) -> Vec3 {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(linalg::scale3(self.0, -1.0))
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        linalg::norm3(linalg::sub3(self.0, other.0))
    }

    /// Polar parametrisation `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }
}

impl Index<usize> for BlochVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec3> for BlochVector {
    fn from(v: Vec3) -> Self {
        Self(v)
    }
}

/// `s_i = tr(ρ σ_i)`. Requires a Hermitian, unit-trace input.
pub fn to_bloch(rho: &Mat2) -> Result<BlochVector> {
    const TOL: f64 = 1e-9;
    rho.check_hermitian(TOL)?;
    if (rho.trace() - ONE).norm() > TOL {
        return Err(Error::NotDensity { reason: "trace differs from 1" });
    }
    Ok(bloch_components(rho))
}

/// `tr(ρ σ_i)` without validation.
pub fn bloch_components(rho: &Mat2) -> BlochVector {
    BlochVector(Axis::ALL.map(|a| (*rho * pauli(a)).trace().re))
}

/// `(1 + s·σ) / 2`; rejects vectors outside the closed unit ball.
pub fn from_bloch(s: &BlochVector) -> Result<Mat2> {
    s.check_in_ball(1e-9)?;
    Ok(density_from_bloch(s))
}

pub(crate) fn density_from_bloch(s: &BlochVector) -> Mat2 {
    (Mat2::identity() + dot_sigma(s.0)).scale(Complex64::new(0.5, 0.0))
}

/// SO(3) image of a qubit unitary: `R_ij = tr(σ_i U σ_j U†) / 2`, so that
/// the Bloch vector of `U ρ U†` is `R s`.
pub fn bloch_rotation(u: &Mat2) -> Mat3 {
    let ud = u.adjoint();
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let si = pauli(Axis::from_index(i).unwrap_or(Axis::X));
            let sj = pauli(Axis::from_index(j).unwrap_or(Axis::X));
            0.5 * (si * *u * sj * ud).trace().re
        })
    })
}
