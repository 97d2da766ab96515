//! Brute-force reference: evolve the joint density matrix with a spectral
//! exponential and trace out the probe. Nothing here uses the closed forms
//! of the Cartan exponential or the affine map.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{bloch_components, from_bloch, BlochVector};
use crate::cartan::{cartan_hamiltonian, CartanCoefficients};
use crate::error::{Error, Result};
use crate::linalg::mat_exp;
use crate::matrix::{kron, partial_trace_probe, Mat2, Mat4};

const DENSITY_TOL: f64 = 1e-9;

/// `Tr_P(U (ρ_S ⊗ ρ_P) U†)`.
pub fn evolve_with(u: &Mat4, rho_s: &Mat2, rho_p: &Mat2) -> Result<Mat2> {
    rho_s.check_density(DENSITY_TOL)?;
    rho_p.check_density(DENSITY_TOL)?;
    let joint = *u * kron(rho_s, rho_p) * u.adjoint();
    Ok(partial_trace_probe(&joint))
}

/// `Tr_P(e^{-iht} (ρ_S ⊗ ρ_P) e^{iht})`.
pub fn evolve_exact(h_tot: &Mat4, rho_s: &Mat2, rho_p: &Mat2, t: f64) -> Result<Mat2> {
    let u = mat_exp(h_tot, t)?;
    evolve_with(&u, rho_s, rho_p)
}

/// Reduced evolution under `e^{at}` alone, with `e^{at}` computed as the
/// spectral exponential of `-Σ c_k σ_k⊗σ_k`.
pub fn evolve_cartan_frame(c: &CartanCoefficients, rho_s: &Mat2, rho_p: &Mat2, t: f64) -> Result<Mat2> {
    evolve_exact(&-cartan_hamiltonian(c), rho_s, rho_p, t)
}

/// [`evolve_cartan_frame`] on Bloch vectors.
pub fn evolve_cartan_bloch(c: &CartanCoefficients, s0: &BlochVector, p: &BlochVector, t: f64) -> Result<BlochVector> {
    let out = evolve_cartan_frame(c, &from_bloch(s0)?, &from_bloch(p)?, t)?;
    Ok(bloch_components(&out))
}

/// `n` nearly uniform points on the unit sphere (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<BlochVector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * i as f64).sin_cos();
            BlochVector::new(r * c, r * s, z)
        })
        .collect()
}

/// Uniform samples from the closed unit ball.
pub fn uniform_ball(n: usize, seed: u64) -> Vec<BlochVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = BlochVector::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if v.norm() <= 1.0 {
            out.push(v);
        }
    }
    out
}

/// Final system states for `n_probes` probes: `⌈n/2⌉` pure probes on a
/// Fibonacci sphere and `⌊n/2⌋` seeded interior probes.
pub fn empirical_reachable_cloud(
    c: &CartanCoefficients,
    s0: &BlochVector,
    t: f64,
    n_probes: usize,
    seed: u64,
) -> Result<Vec<BlochVector>> {
    if n_probes == 0 {
        return Err(Error::InvalidArgument("n_probes must be at least 1"));
    }
    let rho_s = from_bloch(s0)?;
    let u = mat_exp(&-cartan_hamiltonian(c), t)?;
    let n_pure = n_probes.div_ceil(2);
    let probes = fibonacci_sphere(n_pure).into_iter().chain(uniform_ball(n_probes - n_pure, seed));
    probes
        .map(|p| {
            let out = evolve_with(&u, &rho_s, &from_bloch(&p)?)?;
            Ok(bloch_components(&out))
        })
        .collect()
}
