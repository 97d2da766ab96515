//! JSON report types. Every top-level report carries `"schema": 1`.

use incoq_core::{CartanCoefficients, CartanData, Mat3, Method, Vec3, Verdict};
use serde::{Deserialize, Serialize};

use crate::angle::format_pi;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub controllable: bool,
    pub pure_state_controllable: bool,
    pub accessible: bool,
    pub k1: Option<i64>,
    pub k2: Option<i64>,
    pub k3: Option<i64>,
    pub t_hat: Option<f64>,
    pub t_hat_pi: Option<String>,
    pub t_tilde: Option<f64>,
    pub t_tilde_pi: Option<String>,
    pub method: Method,
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> Self {
        let w = v.witness.as_ref();
        Self {
            controllable: v.controllable,
            pure_state_controllable: v.pure_state_controllable,
            accessible: v.accessible,
            k1: w.map(|w| w.k1),
            k2: w.map(|w| w.k2),
            k3: w.map(|w| w.k3),
            t_hat: w.map(|w| w.t_hat),
            t_hat_pi: w.and_then(|w| format_pi(w.t_hat)),
            t_tilde: w.map(|w| w.t_tilde),
            t_tilde_pi: w.and_then(|w| format_pi(w.t_tilde)),
            method: v.method,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub hamiltonian: String,
    /// `c_k = tr(H σ_k⊗σ_k)/4`.
    pub coefficients: CartanCoefficients,
    /// `p/q` text of the coefficients when the input was exact.
    pub exact_coefficients: Option<[String; 3]>,
    pub nonlocal_residual: f64,
    pub local_terms: bool,
    /// The interaction has products `σ_j⊗σ_k` with `j ≠ k`; no verdict is given.
    pub inapplicable: bool,
    pub verdict: Option<VerdictReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KakReport {
    #[serde(flatten)]
    pub data: CartanData,
    pub coeffs_pi: [Option<String>; 3],
    pub reconstruction_residual: f64,
}

impl KakReport {
    pub fn new(data: CartanData, u: &incoq_core::Mat4) -> Self {
        let c = data.coeffs;
        Self {
            coeffs_pi: [format_pi(c.cx), format_pi(c.cy), format_pi(c.cz)],
            reconstruction_residual: data.reconstruct().max_abs_diff(u),
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema: u32,
    pub hamiltonian: Option<String>,
    pub unitary_file: Option<String>,
    pub hamiltonian_coefficients: Option<CartanCoefficients>,
    pub nonlocal_residual: Option<f64>,
    pub t: Option<f64>,
    pub t_pi: Option<String>,
    pub kak: Option<KakReport>,
}

/// Reachable set at one time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSummary {
    pub t: f64,
    pub t_pi: Option<String>,
    pub file: String,
    pub center: Vec3,
    pub semi_axes: Vec3,
    pub axes: Mat3,
    pub collapsed_axes: usize,
    pub det: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReachReport {
    pub schema: u32,
    pub hamiltonian: String,
    pub s0: Vec3,
    pub grid: [usize; 2],
    pub format: String,
    /// `analytic` for pure `σ_k⊗σ_k` Hamiltonians, `propagator` otherwise.
    pub map_source: String,
    pub frames: Vec<FrameSummary>,
}

/// Surface samples written in JSON format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub schema: u32,
    pub t: f64,
    pub points: Vec<Vec3>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessProbe {
    pub s0: Vec3,
    pub probe: Vec3,
    /// Distance of the final system state from the origin.
    pub residual: f64,
    pub maximally_entangled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntangleReport {
    pub schema: u32,
    pub hamiltonian: Option<String>,
    pub unitary_file: Option<String>,
    pub t: Option<f64>,
    pub t_pi: Option<String>,
    pub coeffs: CartanCoefficients,
    pub coeffs_pi: [Option<String>; 3],
    pub perfect_entangler: bool,
    pub perfect_entangler_for_all_pure: bool,
    pub locally_swap: bool,
    pub locally_sqrt_swap: bool,
    /// Best concurrence over product inputs found by Nelder-Mead (0.5 is maximal).
    pub max_product_concurrence: f64,
    pub witness_probes: Vec<WitnessProbe>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    pub reproducer: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusResult {
    pub name: String,
    pub coeffs: CartanCoefficients,
    pub controllable: bool,
    pub swap_time: Option<f64>,
    pub entangler_time: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub cases: usize,
    pub fault_injected: bool,
    pub oracle_max_deviation: f64,
    pub exponential_max_deviation: f64,
    pub corpus: Vec<CorpusResult>,
    pub failures: Vec<Failure>,
    pub pass: bool,
}
