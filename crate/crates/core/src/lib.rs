//! Incoherent control of a qubit through a qubit probe.
//!
//! A system qubit `S` and a probe qubit `P` evolve under a fixed joint
//! Hamiltonian. The probe's initial state is the only control. This crate
//! decomposes the joint propagator, maps it to an affine action on the
//! system's Bloch vector, and decides accessibility, controllability and
//! entangling power from the interaction coefficients alone.
//!
//! Tensor products are ordered `S ⊗ P` everywhere; basis index `2·i_s + i_p`.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bloch;
pub mod cartan;
pub mod controllability;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod kak;
pub mod linalg;
pub mod matrix;
pub mod optimize;
pub mod oracle;
pub mod pauli;
pub mod weyl;

pub use bloch::{bloch_rotation, from_bloch, to_bloch, BlochVector};
pub use cartan::{
    alpha_coeffs, cartan_element, cartan_hamiltonian, coeffs_from_hamiltonian, exp_cartan, AlphaCoefficients,
    CartanCoefficients, HamiltonianProjection,
};
pub use controllability::{
    check_accessibility, check_controllability, check_controllability_exact, is_locally_sqrt_swap, is_locally_swap,
    rational_odd_ratio, verify_three_transfers, Method, Verdict, Witness,
};
pub use dynamics::{
    affine_map, det_a, reachable_ellipsoid, reachable_union_membership, sample_reachable_surface, AffineMap, Ellipsoid,
    Membership,
};
pub use entanglement::{
    check_controllability_via_entanglement, concurrence, concurrence_from_bloch, is_perfect_entangler,
    is_perfect_entangler_for_all_pure, maximal_entanglement_conditions, MaxEntanglement,
};
pub use error::{Error, Result};
pub use kak::{kak_decompose, magic_basis, weyl_coordinates, CartanData};
pub use linalg::{mat_exp, Mat3, Vec3};
pub use matrix::{kron, partial_trace_probe, partial_trace_system, Mat2, Mat4, Matrix};
pub use oracle::{empirical_reachable_cloud, evolve_cartan_frame, evolve_exact};
pub use pauli::{pauli, pauli_pair, pauli_word, Axis, Pauli};

/// Numeric tolerances shared by the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Slack for predicates such as `is_hermitian` or chamber membership.
    pub predicate: f64,
    /// Slack for algebraic identities.
    pub identity: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances { predicate: 1e-9, identity: 1e-12 };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
