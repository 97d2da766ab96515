#![allow(dead_code)]

use incoq_core::pauli::dot_sigma;
use incoq_core::{kron, mat_exp, BlochVector, CartanCoefficients, Mat2, Mat4, Matrix};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

/// `e^{-iθ n·σ}` from an unnormalised axis-angle vector.
pub fn su2_from(v: [f64; 3]) -> Mat2 {
    let theta = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if theta == 0.0 {
        return Mat2::identity();
    }
    mat_exp(&dot_sigma([v[0] / theta, v[1] / theta, v[2] / theta]), theta).unwrap()
}

pub fn random_su2(rng: &mut impl Rng) -> Mat2 {
    su2_from([rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)])
}

pub fn random_local(rng: &mut impl Rng) -> Mat4 {
    kron(&random_su2(rng), &random_su2(rng))
}

pub fn random_ball(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = BlochVector::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if v.norm() <= 1.0 {
            return v;
        }
    }
}

pub fn random_sphere(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = random_ball(rng);
        let n = v.norm();
        if n > 1e-3 {
            return BlochVector::new(v[0] / n, v[1] / n, v[2] / n);
        }
    }
}

pub fn random_coeffs(rng: &mut impl Rng, scale: f64) -> CartanCoefficients {
    CartanCoefficients::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Point strictly inside the Weyl chamber `π/4 > c_x ≥ c_y ≥ |c_z|`.
pub fn random_chamber(rng: &mut impl Rng) -> CartanCoefficients {
    let cx = rng.gen_range(0.0..0.78);
    let cy = rng.gen_range(0.0..=cx);
    let cz = rng.gen_range(-cy..=cy);
    CartanCoefficients::new(cx, cy, cz)
}

pub fn random_matrix<const N: usize>(rng: &mut impl Rng) -> Matrix<N> {
    Matrix::from_rows(std::array::from_fn(|_| {
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }))
}

/// `G G† / tr(G G†)`.
pub fn random_density<const N: usize>(rng: &mut impl Rng) -> Matrix<N> {
    let g = random_matrix::<N>(rng);
    let rho = g * g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

pub fn vec3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

pub fn ball() -> impl Strategy<Value = BlochVector> {
    vec3().prop_map(|v| {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n <= 1.0 {
            BlochVector(v)
        } else {
            BlochVector([v[0] / n, v[1] / n, v[2] / n])
        }
    })
}

pub fn sphere() -> impl Strategy<Value = BlochVector> {
    (0.0f64..std::f64::consts::PI, -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(t, p)| BlochVector::from_polar(t, p))
}

pub fn coeffs(scale: f64) -> impl Strategy<Value = CartanCoefficients> {
    prop::array::uniform3(-scale..scale).prop_map(CartanCoefficients::from_array)
}

pub fn su2() -> impl Strategy<Value = Mat2> {
    prop::array::uniform3(-4.0f64..4.0).prop_map(su2_from)
}

pub fn local() -> impl Strategy<Value = Mat4> {
    (su2(), su2()).prop_map(|(a, b)| kron(&a, &b))
}

/// Row-major complex entries, each part in `[-1, 1)`.
pub fn matrix2() -> impl Strategy<Value = Mat2> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(|v| {
        Mat2::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| Complex64::new(v[4 * i + 2 * j], v[4 * i + 2 * j + 1]))
        }))
    })
}

pub fn matrix4() -> impl Strategy<Value = Mat4> {
    prop::collection::vec(-1.0f64..1.0, 32).prop_map(|v| {
        Mat4::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| Complex64::new(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]))
        }))
    })
}

pub fn hermitian4() -> impl Strategy<Value = Mat4> {
    matrix4().prop_map(|m| (m + m.adjoint()).scale_real(0.5))
}
