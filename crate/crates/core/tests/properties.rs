mod common;

use common::*;
use incoq_core::controllability::three_transfer_residual;
use incoq_core::linalg::svd3;
use incoq_core::oracle::{evolve_cartan_bloch, evolve_with, fibonacci_sphere};
use incoq_core::weyl::{chamber_distance, SQRT_SWAP_POINT};
use incoq_core::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_4;

fn reduced_map(u: &Mat4, s0: &BlochVector) -> AffineMap {
    let rho_s = from_bloch(s0).unwrap();
    let image = |p: &BlochVector| to_bloch(&evolve_with(u, &rho_s, &from_bloch(p).unwrap()).unwrap()).unwrap().0;
    let a_vec = image(&BlochVector::ORIGIN);
    let mut a_mat = [[0.0; 3]; 3];
    for k in Axis::ALL {
        let col = image(&BlochVector::axis(k));
        for i in 0..3 {
            a_mat[i][k.index()] = col[i] - a_vec[i];
        }
    }
    AffineMap { a_mat, a_vec, t: 0.0, s0: *s0 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mat_exp_is_unitary(h in hermitian4(), t in -5.0f64..5.0) {
        prop_assert!(mat_exp(&h, t).unwrap().unitary_deviation() < 1e-12);
    }

    #[test]
    fn partial_trace_is_linear_and_trace_preserving(a in matrix4(), b in matrix4(), k in -2.0f64..2.0) {
        let lhs = partial_trace_probe(&(a + b.scale_real(k)));
        let rhs = partial_trace_probe(&a) + partial_trace_probe(&b).scale_real(k);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        prop_assert!((partial_trace_probe(&a).trace() - a.trace()).norm() < 1e-14);
    }

    #[test]
    fn bloch_round_trip(s in ball()) {
        let back = to_bloch(&from_bloch(&s).unwrap()).unwrap();
        prop_assert!(back.distance(&s) < 1e-12);
    }

    #[test]
    fn kron_is_bilinear_and_multiplicative(a in matrix2(), b in matrix2(), c in matrix2(), d in matrix2(), k in -2.0f64..2.0) {
        let left = kron(&(a + c.scale_real(k)), &b);
        prop_assert!(left.max_abs_diff(&(kron(&a, &b) + kron(&c, &b).scale_real(k))) < 1e-14);
        let right = kron(&a, &(b + d.scale_real(k)));
        prop_assert!(right.max_abs_diff(&(kron(&a, &b) + kron(&a, &d).scale_real(k))) < 1e-14);
        let prod = kron(&a, &b) * kron(&c, &d);
        prop_assert!(prod.max_abs_diff(&kron(&(a * c), &(b * d))) < 1e-13);
    }

    #[test]
    fn alpha_coefficients_are_normalised(c in coeffs(3.0), t in -4.0f64..4.0) {
        prop_assert!((alpha_coeffs(&c, t).norm_sqr_sum() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cartan_exponential_is_a_one_parameter_group(c in coeffs(3.0), t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
        let lhs = exp_cartan(&c, t1) * exp_cartan(&c, t2);
        prop_assert!(lhs.max_abs_diff(&exp_cartan(&c, t1 + t2)) < 1e-13);
    }

    #[test]
    fn closed_form_matches_spectral_exponential(c in coeffs(3.0), t in -3.0f64..3.0) {
        let spectral = mat_exp(&-cartan_hamiltonian(&c), t).unwrap();
        prop_assert!(exp_cartan(&c, t).max_abs_diff(&spectral) < 1e-12);
    }

    #[test]
    fn kak_round_trip(
        cx in 0.0f64..0.78, fy in 0.0f64..=1.0, fz in -1.0f64..=1.0,
        l1 in local(), l2 in local(),
    ) {
        let c = CartanCoefficients::new(cx, cx * fy, cx * fy * fz);
        let u = l1 * exp_cartan(&c, 1.0) * l2;
        let data = kak_decompose(&u).unwrap();
        prop_assert!(data.coeffs.distance(&c) < 1e-8, "{:?} vs {:?}", data.coeffs, c);
        prop_assert!(data.reconstruct().max_abs_diff(&u) < 1e-8);
        for f in [data.l1_s, data.l1_p, data.l2_s, data.l2_p] {
            prop_assert!(f.unitary_deviation() < 1e-9);
            prop_assert!((f.det() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn affine_map_matches_oracle(c in coeffs(3.0), t in 0.0f64..4.0, s0 in ball(), p in ball()) {
        let analytic = affine_map(&c, t, &s0).apply(&p);
        let oracle = evolve_cartan_bloch(&c, &s0, &p, t).unwrap();
        prop_assert!(analytic.distance(&oracle) < 1e-10);
    }

    #[test]
    fn det_closed_form(c in coeffs(3.0), t in 0.0f64..4.0, s0 in ball()) {
        prop_assert!((det_a(&c, t, &s0) - affine_map(&c, t, &s0).det()).abs() < 1e-10);
    }

    #[test]
    fn semi_axes_ignore_probe_rotations(c in coeffs(2.0), t in 0.0f64..3.0, s0 in ball(), v in su2()) {
        let u = exp_cartan(&c, t);
        let rotated = u * kron(&Mat2::identity(), &v);
        let plain = svd3(&reduced_map(&u, &s0).a_mat).s;
        let turned = svd3(&reduced_map(&rotated, &s0).a_mat).s;
        for i in 0..3 {
            prop_assert!((plain[i] - turned[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn surface_stays_in_the_ball(c in coeffs(2.0), t in 0.0f64..3.0, s0 in ball()) {
        let e = reachable_ellipsoid(&c, t, &s0);
        for p in sample_reachable_surface(&e, 9, 12).unwrap() {
            prop_assert!((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn witness_time_makes_the_map_orthogonal(
        n in prop::array::uniform3(0i64..6), signs in prop::array::uniform3(any::<bool>()),
        lambda in 0.1f64..3.0, s0 in ball(),
    ) {
        let odd: [f64; 3] = std::array::from_fn(|i| {
            let m = (2 * n[i] + 1) as f64;
            if signs[i] { -m } else { m }
        });
        let c = CartanCoefficients::from_array(odd.map(|x| lambda * x));
        let v = check_controllability(&c);
        prop_assert!(v.controllable);
        let w = v.witness.unwrap();
        let map = affine_map(&c, w.t_hat, &s0);
        let s = svd3(&map.a_mat).s;
        for x in s {
            prop_assert!((x - 1.0).abs() < 1e-9);
        }
        prop_assert!(map.a_vec.iter().all(|x| x.abs() < 1e-9));
        prop_assert!(is_locally_swap(&exp_cartan(&c, w.t_hat)).unwrap());
        prop_assert!(is_locally_sqrt_swap(&exp_cartan(&c, w.t_tilde)).unwrap());
        prop_assert!(three_transfer_residual(&c, w.t_tilde) < 1e-9);
    }

    #[test]
    fn scaling_preserves_the_verdict(
        n in prop::array::uniform3(1i64..9), lambda in 0.05f64..4.0, neg in any::<bool>(),
    ) {
        let c = CartanCoefficients::from_array(n.map(|x| x as f64));
        let k = if neg { -lambda } else { lambda };
        let a = check_controllability(&c);
        let b = check_controllability(&c.scaled(k));
        prop_assert_eq!(a.controllable, b.controllable);
        prop_assert_eq!(a.accessible, b.accessible);
        if let (Some(wa), Some(wb)) = (a.witness, b.witness) {
            prop_assert!((wb.t_hat - wa.t_hat / lambda).abs() < 1e-9 * wa.t_hat / lambda);
        }
    }

    #[test]
    fn concurrence_is_local_invariant_and_bounded(
        psi in prop::array::uniform8(-1.0f64..1.0), l in local(),
    ) {
        let v: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(psi[2 * i], psi[2 * i + 1]));
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let v = v.map(|z| z / norm);
        let rho = Mat4::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| v[i] * v[j].conj())));
        let e = concurrence(&rho).unwrap();
        prop_assert!((-1e-12..=0.5 + 1e-12).contains(&e));
        let moved = l * rho * l.adjoint();
        prop_assert!((concurrence(&moved).unwrap() - e).abs() < 1e-10);
    }

    #[test]
    fn oracle_outputs_are_states(h in hermitian4(), t in 0.0f64..3.0, s in ball(), p in ball()) {
        let out = evolve_exact(&h, &from_bloch(&s).unwrap(), &from_bloch(&p).unwrap(), t).unwrap();
        prop_assert!(out.is_density(1e-10));
    }

    #[test]
    fn pure_probe_hull_matches_the_ellipsoid(c in coeffs(2.0), t in 0.0f64..3.0, s0 in ball()) {
        let e = reachable_ellipsoid(&c, t, &s0);
        let map = affine_map(&c, t, &s0);
        let cloud: Vec<_> = fibonacci_sphere(3000).iter().map(|p| map.apply(p)).collect();
        let mut dirs = Vec::new();
        for i in -1i32..=1 {
            for j in -1i32..=1 {
                for k in -1i32..=1 {
                    if (i, j, k) != (0, 0, 0) {
                        let n = ((i * i + j * j + k * k) as f64).sqrt();
                        dirs.push([i as f64 / n, j as f64 / n, k as f64 / n]);
                    }
                }
            }
        }
        prop_assert_eq!(dirs.len(), 26);
        for n in dirs {
            let hull = cloud.iter().map(|s| s[0] * n[0] + s[1] * n[1] + s[2] * n[2]).fold(f64::NEG_INFINITY, f64::max);
            let exact = e.support(n);
            prop_assert!(hull <= exact + 1e-12);
            prop_assert!(exact - hull < 5e-3, "direction {:?}: {} vs {}", n, hull, exact);
        }
    }
}

#[test]
fn accessible_coefficients_give_nonzero_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let c = random_coeffs(&mut rng, 2.0);
        let s0 = random_ball(&mut rng);
        assert!(check_accessibility(&c));
        let horizon = 10.0;
        let nonzero = (0..10_000).filter(|_| det_a(&c, rng.gen_range(0.0..horizon), &s0).abs() > 1e-12).count();
        assert!(nonzero >= 9_900, "{c:?}: {nonzero}");
    }
}

#[test]
fn sqrt_swap_class_is_a_strict_subset_of_perfect_entanglers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut strict_witness = None;
    for _ in 0..300 {
        let c = random_chamber(&mut rng);
        let u = random_local(&mut rng) * exp_cartan(&c, 1.0) * random_local(&mut rng);
        if is_perfect_entangler_for_all_pure(&u).unwrap() {
            assert!(is_perfect_entangler(&u).unwrap());
        }
        if strict_witness.is_none()
            && is_perfect_entangler(&u).unwrap()
            && chamber_distance(&c, &SQRT_SWAP_POINT) > 1e-3
        {
            strict_witness = Some(c);
        }
    }
    let cnot_class = exp_cartan(&CartanCoefficients::new(FRAC_PI_4, 0.0, 0.0), 1.0);
    assert!(is_perfect_entangler(&cnot_class).unwrap());
    assert!(!is_perfect_entangler_for_all_pure(&cnot_class).unwrap());
    assert!(strict_witness.is_some());
}
