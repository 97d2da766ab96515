//! Concurrence of pure joint states and the perfect-entangler tests.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{bloch_rotation, BlochVector};
use crate::cartan::{exp_cartan, CartanCoefficients};
use crate::controllability::CHAMBER_TOL;
use crate::dynamics::{affine_map, closest_probe, ProbeSet};
use crate::error::{Error, Result};
use crate::kak::{kak_decompose, CartanData};
use crate::linalg::{hermitian_eigen, mat3_tvec, mat3_vec};
use crate::matrix::{partial_trace_probe, Mat4};
use crate::optimize::{earliest_refined_zero, nelder_mead};
use crate::pauli::Axis;
use crate::weyl;

const PURITY_TOL: f64 = 1e-9;

/// `√(λ₁λ₂)` of the reduced system state of a pure joint state.
pub fn concurrence(rho4: &Mat4) -> Result<f64> {
    rho4.check_density(PURITY_TOL)?;
    let purity = (*rho4 * *rho4).trace().re;
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::MixedJointState { purity });
    }
    let (vals, _) = hermitian_eigen(&partial_trace_probe(rho4));
    Ok((vals[0] * vals[1]).max(0.0).sqrt())
}

/// `½√(1 − ‖s‖²)`.
pub fn concurrence_from_bloch(s: &BlochVector) -> Result<f64> {
    s.check_in_ball(PURITY_TOL)?;
    Ok(0.5 * (1.0 - s.norm().powi(2)).max(0.0).sqrt())
}

/// `|ψ₀₀ψ₁₁ − ψ₀₁ψ₁₀|` for a normalised state vector.
pub fn concurrence_of_vector(psi: &[Complex64; 4]) -> f64 {
    (psi[0] * psi[3] - psi[1] * psi[2]).norm()
}

/// Magic-basis phases `λ = (a−b+c, −a+b+c, a+b−c, −a−b−c)` of `e^{a}`.
fn magic_phases(c: &CartanCoefficients) -> [f64; 4] {
    let (a, b, z) = (c.cx, c.cy, c.cz);
    [a - b + z, -a + b + z, a + b - z, -a - b - z]
}

/// `0 ∈ conv{e^{2iλ_k}}`: no open half-plane holds all four points, i.e.
/// the largest angular gap between them is at most `π`.
pub fn chamber_is_perfect_entangler(c: &CartanCoefficients, tol: f64) -> bool {
    let tau = 2.0 * PI;
    let mut angles = magic_phases(c).map(|l| 2.0 * l - tau * (2.0 * l / tau).floor());
    angles.sort_by(f64::total_cmp);
    let mut gap = angles[0] + 2.0 * PI - angles[3];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap <= PI + tol
}

/// Some product input is mapped to a maximally entangled state.
///
/// Decided by the Weyl-chamber criterion; see [`max_product_concurrence`]
/// for the numerical cross-check.
pub fn is_perfect_entangler(u: &Mat4) -> Result<bool> {
    let c = kak_decompose(u)?.coeffs;
    Ok(chamber_is_perfect_entangler(&c, CHAMBER_TOL))
}

fn qubit(theta: f64, phi: f64) -> [Complex64; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

/// Largest concurrence of `U(|a⟩⊗|b⟩)` found by Nelder-Mead over product
/// inputs from `starts` seeded random starts.
pub fn max_product_concurrence(u: &Mat4, starts: usize, seed: u64) -> Result<f64> {
    u.check_unitary(1e-9)?;
    let f = |x: &[f64; 4]| {
        let a = qubit(x[0], x[1]);
        let b = qubit(x[2], x[3]);
        let input = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
        let out: [Complex64; 4] = core::array::from_fn(|i| (0..4).map(|j| u[(i, j)] * input[j]).sum());
        -concurrence_of_vector(&out)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    for _ in 0..starts {
        let x0 = [
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..2.0 * PI),
        ];
        let (_, fx) = nelder_mead(f, x0, 0.4, 2000, 1e-15);
        best = best.max(-fx);
        if best >= 0.5 - 1e-12 {
            break;
        }
    }
    Ok(best)
}

/// Every pure system state can be maximally entangled with a suitable
/// probe: the local class of √SWAP or of its inverse.
pub fn is_perfect_entangler_for_all_pure(u: &Mat4) -> Result<bool> {
    let c = kak_decompose(u)?.coeffs;
    Ok(weyl::sqrt_swap_class_distance(&c) <= CHAMBER_TOL)
}

/// Pure probe that drives the pure system state `s0` to the origin under
/// the decomposed operator, with the distance still left.
///
/// Works in the frame of the right local factors: `s0' = R(L₂ˢ) s0` and
/// `p' = R(L₂ᴾ) p`, then solves `A(1, s0') p' + a(1, s0') = 0`.
pub fn entangling_probe(data: &CartanData, s0: &BlochVector) -> (BlochVector, f64) {
    let s0_frame = BlochVector(mat3_vec(&bloch_rotation(&data.l2_s), s0.0));
    let map = affine_map(&data.coeffs, 1.0, &s0_frame);
    let (p_frame, residual) = closest_probe(&map, &BlochVector::ORIGIN, ProbeSet::Sphere);
    let p = BlochVector(mat3_tvec(&bloch_rotation(&data.l2_p), p_frame.0));
    (p, residual)
}

/// [`entangling_probe`] for each state; `None` where the residual exceeds `tol`.
pub fn entangling_probes(u: &Mat4, states: &[BlochVector], tol: f64) -> Result<Vec<Option<BlochVector>>> {
    let data = kak_decompose(u)?;
    Ok(states
        .iter()
        .map(|s0| {
            let (p, r) = entangling_probe(&data, s0);
            (r <= tol).then_some(p)
        })
        .collect())
}

/// Earliest `t ∈ (0, t_max]` at which `exp_cartan(c, t)` is a perfect
/// entangler for all pure system states. Grid-limited.
pub fn check_controllability_via_entanglement(c: &CartanCoefficients, t_max: f64, n_steps: usize) -> Option<f64> {
    let lo = t_max / n_steps as f64;
    earliest_refined_zero(
        |t| weyl::sqrt_swap_class_distance(&c.scaled(t)),
        |t| is_perfect_entangler_for_all_pure(&exp_cartan(c, t)).unwrap_or(false),
        lo,
        t_max,
        n_steps,
    )
}

/// Which solution families of the maximal-entanglement system hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Families {
    /// `cos 2(c₁ ± c₂) = 0` with the probe on the axis (`sin θ = 0`).
    pub polar: bool,
    /// `sin 2c₂ = 0`, `cos 2c₁ = 0`, `cos(2c₃ − φ) = 0`.
    pub equatorial_cos: bool,
    /// `sin 2c₁ = 0`, `cos 2c₂ = 0`, `sin(2c₃ − φ) = 0`.
    pub equatorial_sin: bool,
}

impl Families {
    pub fn any(&self) -> bool {
        self.polar || self.equatorial_cos || self.equatorial_sin
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaxEntanglement {
    pub axis: Axis,
    pub families: Families,
    /// `min ‖s‖` over pure probes.
    pub min_norm: f64,
    pub solvable: bool,
    /// Polar angles `(θ, φ)` of the minimising probe in the lab frame.
    pub probe: (f64, f64),
}

/// Maximal-entanglement conditions for the axis state `s0 = e_axis` under
/// `e^{a}` (coefficients read as angles).
///
/// The families are written for the z axis; the x and y axes use the
/// cyclic relabelings `(c_y, c_z, c_x)` and `(c_z, c_x, c_y)`.
pub fn maximal_entanglement_conditions(c: &CartanCoefficients, axis: Axis, tol: f64) -> MaxEntanglement {
    let (c1, c2) = match axis {
        Axis::X => (c.cy, c.cz),
        Axis::Y => (c.cz, c.cx),
        Axis::Z => (c.cx, c.cy),
    };
    let zero = |x: f64| x.abs() <= tol;
    let families = Families {
        polar: zero((2.0 * (c1 + c2)).cos()) || zero((2.0 * (c1 - c2)).cos()),
        equatorial_cos: zero((2.0 * c2).sin()) && zero((2.0 * c1).cos()),
        equatorial_sin: zero((2.0 * c1).sin()) && zero((2.0 * c2).cos()),
    };
    let map = affine_map(c, 1.0, &BlochVector::axis(axis));
    let (p, min_norm) = closest_probe(&map, &BlochVector::ORIGIN, ProbeSet::Sphere);
    let theta = p[2].clamp(-1.0, 1.0).acos();
    let phi = p[1].atan2(p[0]);
    MaxEntanglement { axis, families, min_norm, solvable: min_norm <= tol, probe: (theta, phi) }
}
