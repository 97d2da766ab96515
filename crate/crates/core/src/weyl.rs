//! Folding Cartan coefficients into the Weyl chamber
//! `π/4 ≥ c_x ≥ c_y ≥ |c_z|`.
//!
//! Every fold is a local equivalence. [`canonicalize_tracked`] reports each
//! one as a [`Correction`] so that a decomposition `L₁ e^{a} L₂` can be
//! rewritten with the folded coefficients.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cartan::CartanCoefficients;
use crate::matrix::{Mat2, ONE};
use crate::pauli::{i_pauli, pauli, Axis};

/// Chamber point of the SWAP class.
pub const SWAP_POINT: CartanCoefficients = CartanCoefficients::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4);
/// Chamber point of the √SWAP class.
pub const SQRT_SWAP_POINT: CartanCoefficients = CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, FRAC_PI_8);
/// Chamber point of the inverse √SWAP class, the mirror image of [`SQRT_SWAP_POINT`].
pub const SQRT_SWAP_INV_POINT: CartanCoefficients = CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, -FRAC_PI_8);

/// Slack used when deciding whether a point sits on the `c_x = π/4` face.
const FACE_TOL: f64 = 1e-12;

/// `e^{a(c_before)} = phase · (left.0 ⊗ left.1) · e^{a(c_after)} · (right.0 ⊗ right.1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correction {
    pub left: (Mat2, Mat2),
    pub right: (Mat2, Mat2),
    pub phase: Complex64,
}

fn ipow(m: Mat2, n: i64) -> Mat2 {
    (0..n.rem_euclid(4)).fold(Mat2::identity(), |acc, _| acc * m)
}

fn third_axis(i: usize, j: usize) -> Axis {
    Axis::from_index(3 - i - j).unwrap_or(Axis::Z)
}

fn axis(i: usize) -> Axis {
    Axis::from_index(i).unwrap_or(Axis::X)
}

/// `c_i -> c_i - n π/2`.
fn shift(c: &mut [f64; 3], i: usize, n: i64, on_move: &mut impl FnMut(Correction)) {
    if n == 0 {
        return;
    }
    c[i] -= n as f64 * FRAC_PI_2;
    let w = ipow(i_pauli(axis(i)), n);
    let phase = (0..n.rem_euclid(4)).fold(ONE, |acc, _| acc * Complex64::new(0.0, -1.0));
    on_move(Correction { left: (w, w), right: (Mat2::identity(), Mat2::identity()), phase });
}

/// `(c_i, c_j) -> (-c_i, -c_j)` by conjugating with `iσ_k ⊗ 1`.
fn negate(c: &mut [f64; 3], i: usize, j: usize, on_move: &mut impl FnMut(Correction)) {
    c[i] = -c[i];
    c[j] = -c[j];
    let w = i_pauli(third_axis(i, j));
    on_move(Correction { left: (w.adjoint(), Mat2::identity()), right: (w, Mat2::identity()), phase: ONE });
}

/// `c_i <-> c_j` by conjugating with `V ⊗ V`, `V = i(σ_i + σ_j)/√2`.
fn swap(c: &mut [f64; 3], i: usize, j: usize, on_move: &mut impl FnMut(Correction)) {
    c.swap(i, j);
    let v = (pauli(axis(i)) + pauli(axis(j))).scale(Complex64::new(0.0, FRAC_1_SQRT_2));
    let vd = v.adjoint();
    on_move(Correction { left: (vd, vd), right: (v, v), phase: ONE });
}

/// Folds `c` into the Weyl chamber, reporting each local move.
pub fn canonicalize_tracked(c: &CartanCoefficients, mut on_move: impl FnMut(Correction)) -> CartanCoefficients {
    let mut c = c.to_array();

    for i in 0..3 {
        let n = (c[i] / FRAC_PI_2).round() as i64;
        shift(&mut c, i, n, &mut on_move);
    }

    // Order by magnitude, descending.
    if c[0].abs() < c[1].abs() {
        swap(&mut c, 0, 1, &mut on_move);
    }
    if c[1].abs() < c[2].abs() {
        swap(&mut c, 1, 2, &mut on_move);
    }
    if c[0].abs() < c[1].abs() {
        swap(&mut c, 0, 1, &mut on_move);
    }

    match (c[0] < 0.0, c[1] < 0.0) {
        (true, true) => negate(&mut c, 0, 1, &mut on_move),
        (true, false) => negate(&mut c, 0, 2, &mut on_move),
        (false, true) => negate(&mut c, 1, 2, &mut on_move),
        (false, false) => {}
    }

    // (π/4, b, c) and (π/4, b, -c) are the same class.
    if c[0] >= FRAC_PI_4 - FACE_TOL && c[2] < 0.0 {
        negate(&mut c, 0, 2, &mut on_move);
        shift(&mut c, 0, -1, &mut on_move);
    }

    CartanCoefficients::from_array(c)
}

/// Folds `c` into the Weyl chamber.
pub fn canonicalize(c: &CartanCoefficients) -> CartanCoefficients {
    canonicalize_tracked(c, |_| {})
}

/// Distance between two chamber points, respecting the identification of
/// the `c_x = π/4` face.
pub fn chamber_distance(a: &CartanCoefficients, b: &CartanCoefficients) -> f64 {
    let direct = a.distance(b);
    let on_face = |p: &CartanCoefficients| p.cx >= FRAC_PI_4 - 1e-9;
    if on_face(a) || on_face(b) {
        let mirrored = CartanCoefficients::new(b.cx, b.cy, -b.cz);
        direct.min(a.distance(&mirrored))
    } else {
        direct
    }
}

/// Distance from the canonical form of `c` to the SWAP class.
pub fn swap_class_distance(c: &CartanCoefficients) -> f64 {
    chamber_distance(&canonicalize(c), &SWAP_POINT)
}

/// Distance from the canonical form of `c` to the union of the √SWAP and
/// inverse √SWAP classes.
pub fn sqrt_swap_class_distance(c: &CartanCoefficients) -> f64 {
    let can = canonicalize(c);
    chamber_distance(&can, &SQRT_SWAP_POINT).min(chamber_distance(&can, &SQRT_SWAP_INV_POINT))
}
