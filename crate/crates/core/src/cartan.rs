//! The Cartan subalgebra `i·span{σx⊗σx, σy⊗σy, σz⊗σz}` and the closed-form
//! exponential of its elements.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::matrix::{Mat4, I, ZERO};
use crate::pauli::{pauli_pair, pauli_word, Axis, Pauli};

/// Interaction strengths `(c_x, c_y, c_z)` of `a = i Σ c_k σ_k⊗σ_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CartanCoefficients {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl CartanCoefficients {
    pub const ZERO: CartanCoefficients = CartanCoefficients::new(0.0, 0.0, 0.0);

    pub const fn new(cx: f64, cy: f64, cz: f64) -> Self {
        Self { cx, cy, cz }
    }

    pub const fn from_array(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.cx, self.cy, self.cz]
    }

    pub fn get(&self, axis: Axis) -> f64 {
        self.to_array()[axis.index()]
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.cx * k, self.cy * k, self.cz * k)
    }

    pub fn max_abs(&self) -> f64 {
        self.cx.abs().max(self.cy.abs()).max(self.cz.abs())
    }

    pub fn min_abs(&self) -> f64 {
        self.cx.abs().min(self.cy.abs()).min(self.cz.abs())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let d = [self.cx - other.cx, self.cy - other.cy, self.cz - other.cz];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// Coefficients of `e^{at} = α₀ 1 + Σ α_k σ_k⊗σ_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaCoefficients {
    pub alpha0: Complex64,
    pub alpha_x: Complex64,
    pub alpha_y: Complex64,
    pub alpha_z: Complex64,
}

impl AlphaCoefficients {
    /// `|α₀|² + |α_x|² + |α_y|² + |α_z|²`, equal to one for every `(c, t)`.
    pub fn norm_sqr_sum(&self) -> f64 {
        self.alpha0.norm_sqr() + self.alpha_x.norm_sqr() + self.alpha_y.norm_sqr() + self.alpha_z.norm_sqr()
    }
}

/// `a = i (c_x σx⊗σx + c_y σy⊗σy + c_z σz⊗σz)`.
pub fn cartan_element(c: &CartanCoefficients) -> Mat4 {
    Axis::ALL.iter().fold(Mat4::zeros(), |acc, &k| acc + pauli_pair(k).scale(I * c.get(k)))
}

pub fn alpha_coeffs(c: &CartanCoefficients, t: f64) -> AlphaCoefficients {
    let (sx, cx) = (c.cx * t).sin_cos();
    let (sy, cy) = (c.cy * t).sin_cos();
    let (sz, cz) = (c.cz * t).sin_cos();
    AlphaCoefficients {
        alpha0: Complex64::new(cx * cy * cz, sx * sy * sz),
        alpha_x: Complex64::new(cx * sy * sz, sx * cy * cz),
        alpha_y: Complex64::new(sx * cy * sz, cx * sy * cz),
        alpha_z: Complex64::new(sx * sy * cz, cx * cy * sz),
    }
}

/// `e^{at}` assembled from [`alpha_coeffs`].
pub fn exp_cartan(c: &CartanCoefficients, t: f64) -> Mat4 {
    let al = alpha_coeffs(c, t);
    Mat4::identity().scale(al.alpha0)
        + pauli_pair(Axis::X).scale(al.alpha_x)
        + pauli_pair(Axis::Y).scale(al.alpha_y)
        + pauli_pair(Axis::Z).scale(al.alpha_z)
}

/// Split of a joint Hamiltonian into Cartan interaction and remainder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianProjection {
    /// `c_k = tr(h σ_k⊗σ_k) / 4`.
    pub coeffs: CartanCoefficients,
    /// `h - Σ c_k σ_k⊗σ_k`.
    pub residual: Mat4,
    /// Frobenius weight of the residual on the six off-diagonal products
    /// `σ_j⊗σ_k` (j ≠ k). Non-zero means the interaction is not of Cartan
    /// form and the constant-coefficient analysis does not apply.
    pub nonlocal_residual: f64,
}

impl HamiltonianProjection {
    pub fn is_cartan_compatible(&self, tol: f64) -> bool {
        self.nonlocal_residual <= tol
    }

    /// True when the residual also contains single-body terms.
    pub fn has_local_terms(&self, tol: f64) -> bool {
        let mut weight = 0.0;
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            for w in [pauli_word(p, Pauli::I), pauli_word(Pauli::I, p)] {
                weight += (w.inner(&self.residual) * 0.25).norm_sqr();
            }
        }
        weight.sqrt() > tol
    }
}

/// Projects `h_tot` onto the Cartan basis by Hilbert-Schmidt inner products.
pub fn coeffs_from_hamiltonian(h_tot: &Mat4) -> Result<HamiltonianProjection> {
    h_tot.check_hermitian(1e-9)?;
    let coeff = |k: Axis| (pauli_pair(k) * *h_tot).trace().re / 4.0;
    let coeffs = CartanCoefficients::new(coeff(Axis::X), coeff(Axis::Y), coeff(Axis::Z));
    let interaction = Axis::ALL.iter().fold(Mat4::zeros(), |acc, &k| acc + pauli_pair(k).scale_real(coeffs.get(k)));
    let residual = *h_tot - interaction;

    let mut weight = 0.0;
    for a in [Pauli::X, Pauli::Y, Pauli::Z] {
        for b in [Pauli::X, Pauli::Y, Pauli::Z] {
            if a != b {
                let w = pauli_word(a, b).inner(&residual) * 0.25;
                weight += w.norm_sqr();
            }
        }
    }
    Ok(HamiltonianProjection { coeffs, residual, nonlocal_residual: weight.sqrt() })
}

/// `Σ c_k σ_k⊗σ_k`, the Hamiltonian whose propagator `e^{-iHt}` equals
/// `exp_cartan(-c, t)`.
pub fn cartan_hamiltonian(c: &CartanCoefficients) -> Mat4 {
    Axis::ALL.iter().fold(Mat4::zeros(), |acc, &k| acc + pauli_pair(k).scale_real(c.get(k)))
}

impl Default for AlphaCoefficients {
    fn default() -> Self {
        Self { alpha0: Complex64::new(1.0, 0.0), alpha_x: ZERO, alpha_y: ZERO, alpha_z: ZERO }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kron, Mat2};
    use crate::pauli::pauli;
    use core::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn zero_coefficients_give_zero_element() {
        assert_eq!(cartan_element(&CartanCoefficients::ZERO), Mat4::zeros());
    }

    #[test]
    fn single_term_element() {
        let a = cartan_element(&CartanCoefficients::new(1.0, 0.0, 0.0));
        assert_eq!(a, pauli_pair(Axis::X).scale(I));
    }

    #[test]
    fn alpha_at_time_zero() {
        let al = alpha_coeffs(&CartanCoefficients::new(0.3, -1.2, 2.0), 0.0);
        assert_eq!(al, AlphaCoefficients::default());
    }

    #[test]
    fn heisenberg_alphas_at_quarter_period() {
        let al = alpha_coeffs(&CartanCoefficients::new(1.0, 1.0, 1.0), FRAC_PI_4);
        let expected = Complex64::from_polar(0.5, FRAC_PI_4);
        for a in [al.alpha0, al.alpha_x, al.alpha_y, al.alpha_z] {
            assert!((a - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn heisenberg_quarter_period_is_swap() {
        let u = exp_cartan(&CartanCoefficients::new(1.0, 1.0, 1.0), FRAC_PI_4);
        let swap = (Mat4::identity() + pauli_pair(Axis::X) + pauli_pair(Axis::Y) + pauli_pair(Axis::Z)).scale_real(0.5);
        let phase = Complex64::from_polar(1.0, FRAC_PI_4);
        assert!(u.max_abs_diff(&swap.scale(phase)) < 1e-15);
    }

    #[test]
    fn eighth_period_squares_to_swap() {
        let half = exp_cartan(&CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, FRAC_PI_8), 1.0);
        let full = exp_cartan(&CartanCoefficients::new(1.0, 1.0, 1.0), FRAC_PI_4);
        assert!((half * half).max_abs_diff(&full) < 1e-15);
    }

    #[test]
    fn projection_of_case_hamiltonians() {
        let xx = pauli_pair(Axis::X);
        let p = coeffs_from_hamiltonian(&xx).unwrap();
        assert_eq!(p.coeffs, CartanCoefficients::new(1.0, 0.0, 0.0));
        assert!(p.is_cartan_compatible(1e-12));

        let aniso = xx + pauli_pair(Axis::Y) + pauli_pair(Axis::Z).scale_real(2.0);
        let p = coeffs_from_hamiltonian(&aniso).unwrap();
        assert_eq!(p.coeffs, CartanCoefficients::new(1.0, 1.0, 2.0));
        assert!(p.residual.norm() < 1e-15);

        let local = kron(&Mat2::identity(), &pauli(Axis::Z));
        let p = coeffs_from_hamiltonian(&local).unwrap();
        assert_eq!(p.coeffs, CartanCoefficients::ZERO);
        assert!(p.is_cartan_compatible(1e-12));
        assert!(p.has_local_terms(1e-12));
    }

    #[test]
    fn off_diagonal_coupling_is_flagged() {
        let xy = pauli_word(Pauli::X, Pauli::Y);
        let p = coeffs_from_hamiltonian(&xy).unwrap();
        assert!(!p.is_cartan_compatible(1e-9));
        assert!((p.nonlocal_residual - 1.0).abs() < 1e-15);
    }

    #[test]
    fn projection_rejects_non_hermitian() {
        let h = pauli_pair(Axis::X).scale(I);
        assert!(coeffs_from_hamiltonian(&h).is_err());
    }
}
