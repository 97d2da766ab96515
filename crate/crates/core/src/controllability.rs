//! Accessibility and (pure-state) controllability decided from the Cartan
//! coefficients, and the SWAP / √SWAP characterisations.
//!
//! The system is controllable iff the coefficients are proportional to
//! three odd integers. Then at `t̂ = (2k₁+1)π/(4c_x)` the propagator is
//! locally equivalent to SWAP and at `t̂/2` to √SWAP or its inverse.

use core::f64::consts::PI;

use num_integer::Integer;
use num_rational::Ratio;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::bloch::BlochVector;
use crate::cartan::{exp_cartan, CartanCoefficients};
use crate::dynamics::{affine_map, closest_probe, ProbeSet};
use crate::error::Result;
use crate::kak::kak_decompose;
use crate::matrix::Mat4;
use crate::optimize::earliest_refined_zero;
use crate::pauli::Axis;
use crate::weyl::{self, chamber_distance, SQRT_SWAP_INV_POINT, SQRT_SWAP_POINT, SWAP_POINT};

/// Coefficients below this fraction of `max |c_k|` count as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Largest denominator tried when reconstructing coefficient ratios.
pub const MAX_DEN: i64 = 4096;
/// Relative accuracy demanded of a reconstructed ratio.
pub const RATIO_TOL: f64 = 1e-9;
/// Slack on Weyl-chamber coordinates for the local-equivalence predicates.
pub const CHAMBER_TOL: f64 = 1e-8;

/// How the controllability decision was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    /// Exact rational input.
    ExactRational,
    /// Floating input whose ratios were recognised as rationals.
    ReconstructedRational,
    /// Floating input without a rational reading within bounds, or an
    /// inaccessible input decided by the zero test alone.
    NumericFallback,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactRational => "exact_rational",
            Method::ReconstructedRational => "reconstructed_rational",
            Method::NumericFallback => "numeric_fallback",
        }
    }
}

/// Times and integers certifying controllability.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub k1: i64,
    pub k2: i64,
    pub k3: i64,
    /// `c_k t̂ = (2k_k + 1)π/4` for every axis.
    pub t_hat: f64,
    pub t_tilde: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub controllable: bool,
    pub pure_state_controllable: bool,
    pub accessible: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Verdict {
    fn negative(accessible: bool, method: Method) -> Self {
        Self { controllable: false, pure_state_controllable: false, accessible, witness: None, method }
    }
}

/// True iff every `|c_k|` exceeds `ZERO_TOL · max |c_k|`.
pub fn check_accessibility(c: &CartanCoefficients) -> bool {
    let scale = c.max_abs();
    scale > 0.0 && scale.is_finite() && c.min_abs() > ZERO_TOL * scale
}

/// Float-input decision. Ratios are reconstructed with denominators up to
/// [`MAX_DEN`]; failure gives "not controllable within reconstruction bounds".
pub fn check_controllability(c: &CartanCoefficients) -> Verdict {
    if !check_accessibility(c) {
        return Verdict::negative(false, Method::NumericFallback);
    }
    let ry = reconstruct_ratio(c.cy, c.cx, MAX_DEN, RATIO_TOL);
    let rz = reconstruct_ratio(c.cz, c.cx, MAX_DEN, RATIO_TOL);
    let (Some((py, qy)), Some((pz, qz))) = (ry, rz) else {
        return Verdict::negative(true, Method::NumericFallback);
    };
    let exact = [Ratio::from_integer(1), Ratio::new(py, qy), Ratio::new(pz, qz)];
    let mut v = decide_integers(&exact, c.cx);
    v.method = Method::ReconstructedRational;
    v
}

/// Exact-input decision.
pub fn check_controllability_exact(c: &[Ratio<i64>; 3]) -> Verdict {
    if c.iter().any(|x| x.is_zero()) {
        return Verdict::negative(false, Method::ExactRational);
    }
    let unit = [Ratio::from_integer(1), c[1] / c[0], c[2] / c[0]];
    let mut v = decide_integers(&unit, ratio_to_f64(&c[0]));
    v.method = Method::ExactRational;
    v
}

fn ratio_to_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `ratios = (1, c_y/c_x, c_z/c_x)`.
fn decide_integers(ratios: &[Ratio<i64>; 3], cx: f64) -> Verdict {
    let l = ratios.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let m: [i64; 3] = core::array::from_fn(|i| (ratios[i] * l).to_integer());
    let g = m.iter().fold(0i64, |acc, x| acc.gcd(x));
    // c = λ n with λ > 0
    let sign_x = if cx < 0.0 { -1 } else { 1 };
    let n = m.map(|x| sign_x * x / g.abs());
    if n.iter().any(|x| x % 2 == 0) {
        return Verdict::negative(true, Method::ExactRational);
    }
    let lambda = cx.abs() / n[0].abs() as f64;
    let k = n.map(|x| Integer::div_floor(&(x - 1), &2));
    let t_hat = PI / (4.0 * lambda);
    Verdict {
        controllable: true,
        pure_state_controllable: true,
        accessible: true,
        witness: Some(Witness { k1: k[0], k2: k[1], k3: k[2], t_hat, t_tilde: t_hat / 2.0 }),
        method: Method::ExactRational,
    }
}

/// First continued-fraction convergent `p/q` of `x/y` with `q ≤ max_den`
/// and `|x/y - p/q| ≤ tol · max(1, |x/y|)`, in lowest terms with `q > 0`.
pub fn reconstruct_ratio(x: f64, y: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if y == 0.0 || !x.is_finite() || !y.is_finite() {
        return None;
    }
    let target = x / y;
    let bound = tol * target.abs().max(1.0);
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rem = target;
    for _ in 0..64 {
        let a = rem.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (target - h2 as f64 / k2 as f64).abs() <= bound {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rem - a;
        if frac == 0.0 {
            return None;
        }
        rem = 1.0 / frac;
    }
    None
}

/// [`reconstruct_ratio`] restricted to odd numerator and denominator.
pub fn rational_odd_ratio(x: f64, y: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    reconstruct_ratio(x, y, max_den, tol).filter(|(p, q)| p % 2 != 0 && q % 2 != 0)
}

/// Canonical coefficients equal `(π/4, π/4, π/4)` within [`CHAMBER_TOL`].
pub fn is_locally_swap(u: &Mat4) -> Result<bool> {
    is_locally_swap_within(u, CHAMBER_TOL)
}

pub fn is_locally_swap_within(u: &Mat4, tol: f64) -> Result<bool> {
    let c = kak_decompose(u)?.coeffs;
    Ok(chamber_distance(&c, &SWAP_POINT) <= tol)
}

/// Canonical coefficients equal the √SWAP point or its mirror, the inverse
/// √SWAP point `(π/8, π/8, -π/8)`, within [`CHAMBER_TOL`].
pub fn is_locally_sqrt_swap(u: &Mat4) -> Result<bool> {
    is_locally_sqrt_swap_within(u, CHAMBER_TOL)
}

pub fn is_locally_sqrt_swap_within(u: &Mat4, tol: f64) -> Result<bool> {
    let c = kak_decompose(u)?.coeffs;
    Ok(chamber_distance(&c, &SQRT_SWAP_POINT) <= tol || chamber_distance(&c, &SQRT_SWAP_INV_POINT) <= tol)
}

/// Largest over the three axis states `q` of the distance from the origin
/// to the states reachable from `q` at time `t` with a pure probe.
///
/// Pure probes keep the joint state pure, so reaching the origin means the
/// pair is maximally entangled. Mixed probes would reach it on whole time
/// intervals and characterise nothing.
pub fn three_transfer_residual(c: &CartanCoefficients, t: f64) -> f64 {
    Axis::ALL
        .iter()
        .map(|&k| {
            let q = BlochVector::axis(k);
            closest_probe(&affine_map(c, t, &q), &BlochVector::ORIGIN, ProbeSet::Sphere).1
        })
        .fold(0.0, f64::max)
}

/// The three axis states can each be sent to the origin at time `t`, each
/// with its own pure probe.
pub fn verify_three_transfers(c: &CartanCoefficients, t: f64) -> bool {
    three_transfer_residual(c, t) <= 1e-9
}

/// Default horizon for the time scans, `4π / min |c_k|`.
pub fn default_horizon(c: &CartanCoefficients) -> f64 {
    let m = c.min_abs();
    if m > ZERO_TOL * c.max_abs() {
        4.0 * PI / m
    } else if c.max_abs() > 0.0 {
        4.0 * PI / c.max_abs()
    } else {
        4.0 * PI
    }
}

/// Earliest `t ∈ (0, t_max]` on the grid (after refinement) at which
/// `exp_cartan(c, t)` is locally SWAP.
pub fn find_swap_time(c: &CartanCoefficients, t_max: f64, n_steps: usize) -> Option<f64> {
    let lo = t_max / n_steps as f64;
    earliest_refined_zero(
        |t| weyl::swap_class_distance(&c.scaled(t)),
        |t| is_locally_swap(&exp_cartan(c, t)).unwrap_or(false),
        lo,
        t_max,
        n_steps,
    )
}

/// Earliest `t ∈ (0, t_max]` at which the three axis transfers succeed.
pub fn find_three_transfer_time(c: &CartanCoefficients, t_max: f64, n_steps: usize) -> Option<f64> {
    let lo = t_max / n_steps as f64;
    earliest_refined_zero(|t| three_transfer_residual(c, t), |t| verify_three_transfers(c, t), lo, t_max, n_steps)
}
