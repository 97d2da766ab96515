//! Acceptance suite: one line per criterion, non-zero exit on any failure.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI, SQRT_2};
use std::fs;
use std::process::Command;
use std::result::Result;
use std::time::Instant;

use incoq_core::controllability::{default_horizon, find_swap_time, find_three_transfer_time};
use incoq_core::dynamics::{closest_probe, ProbeSet, DEFAULT_STEPS};
use incoq_core::oracle::{evolve_cartan_bloch, evolve_with, fibonacci_sphere};
use incoq_core::pauli::dot_sigma;
use incoq_core::*;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ball(r: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let v = BlochVector::new(r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0));
        if v.norm() <= 1.0 {
            return v;
        }
    }
}

fn sphere(r: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let v = ball(r);
        let n = v.norm();
        if n > 1e-3 {
            return BlochVector::new(v[0] / n, v[1] / n, v[2] / n);
        }
    }
}

fn coeffs(r: &mut ChaCha8Rng, scale: f64) -> CartanCoefficients {
    CartanCoefficients::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale), r.gen_range(-scale..scale))
}

fn su2(r: &mut ChaCha8Rng) -> Mat2 {
    let n = sphere(r);
    mat_exp(&dot_sigma(n.0), r.gen_range(0.0..2.0 * PI)).unwrap()
}

fn local(r: &mut ChaCha8Rng) -> Mat4 {
    kron(&su2(r), &su2(r))
}

/// `e^{-iHt}` for `H = Σ c_k σ_k⊗σ_k`.
fn propagator(c: &CartanCoefficients, t: f64) -> Mat4 {
    mat_exp(&cartan_hamiltonian(c), t).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let c = coeffs(&mut r, 3.0);
        let t = r.gen_range(0.0..5.0);
        let s0 = ball(&mut r);
        let p = ball(&mut r);
        let analytic = affine_map(&c, t, &s0).apply(&p);
        let oracle = evolve_cartan_bloch(&c, &s0, &p, t).map_err(|e| e.to_string())?;
        worst = worst.max(analytic.distance(&oracle));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let detail = format!("max deviation {worst:.2e} (tol 1e-10), {elapsed:.2} s (limit 10 s)");
    if worst <= 1e-10 && elapsed < 10.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_exponential() -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let c = coeffs(&mut r, 3.0);
        let t = r.gen_range(-5.0..5.0);
        let spectral = mat_exp(&-cartan_hamiltonian(&c), t).map_err(|e| e.to_string())?;
        worst = worst.max(exp_cartan(&c, t).max_abs_diff(&spectral));
    }
    let detail = format!("max deviation {worst:.2e} (tol 1e-12)");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn case_verdicts() -> Outcome {
    let int = |x: i64| Ratio::from_integer(x);
    let cases =
        [("case 1", [1, 0, 0], false, false), ("case 2", [1, 1, 2], true, false), ("case 3", [1, 1, 1], true, true)];
    let mut notes = Vec::new();
    for (name, n, accessible, controllable) in cases {
        let float = check_controllability(&CartanCoefficients::from_array(n.map(|x| x as f64)));
        let exact = check_controllability_exact(&n.map(int));
        for v in [float, exact] {
            if v.accessible != accessible || v.controllable != controllable {
                return Err(format!("{name}: got accessible={} controllable={}", v.accessible, v.controllable));
            }
            if controllable {
                let t_hat = v.witness.map(|w| w.t_hat).unwrap_or(f64::NAN);
                if (t_hat - FRAC_PI_4).abs() > 1e-9 {
                    return Err(format!("{name}: t_hat = {t_hat}"));
                }
            }
        }
        notes.push(format!("{name} ok"));
    }
    Ok(format!("{}, t_hat = pi/4", notes.join(", ")))
}

fn swap_characterization() -> Outcome {
    let mut r = rng(4);
    let heis = CartanCoefficients::new(1.0, 1.0, 1.0);
    let u = exp_cartan(&heis, FRAC_PI_4);
    if !is_locally_swap(&u).map_err(|e| e.to_string())? {
        return Err("exp_cartan((1,1,1), pi/4) not locally SWAP".into());
    }
    for i in 0..50 {
        let dressed = local(&mut r) * u * local(&mut r);
        if !is_locally_swap(&dressed).map_err(|e| e.to_string())? {
            return Err(format!("dressing {i} lost the SWAP class"));
        }
    }
    let case2 = CartanCoefficients::new(1.0, 1.0, 2.0);
    let horizon = default_horizon(&case2);
    for i in 0..1000 {
        let t = horizon * i as f64 / 999.0;
        let identity = propagator(&CartanCoefficients::ZERO, t);
        if is_locally_swap(&identity).unwrap_or(true) || is_locally_swap(&propagator(&case2, t)).unwrap_or(true) {
            return Err(format!("locally SWAP at grid point t = {t}"));
        }
    }
    Ok("SWAP class stable under 50 dressings; identity and case 2 never SWAP on 1000 times".into())
}

/// Reduced map `p ↦ A p + a` read from the partial-trace oracle.
fn oracle_map(u: &Mat4, s0: &BlochVector) -> AffineMap {
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
    AffineMap { a_mat, a_vec, t: 1.0, s0: *s0 }
}

/// Every pure `s0` on a grid has a pure probe sending it to the origin.
fn entangles_every_pure_state(u: &Mat4, grid: &[BlochVector]) -> bool {
    grid.iter().all(|s0| closest_probe(&oracle_map(u, s0), &BlochVector::ORIGIN, ProbeSet::Sphere).1 <= 1e-7)
}

fn sqrt_swap_equivalence() -> Outcome {
    let mut r = rng(5);
    let named = [
        CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, FRAC_PI_8),
        CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, -FRAC_PI_8),
        CartanCoefficients::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4),
        CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, 0.0),
        CartanCoefficients::new(FRAC_PI_4, 0.0, 0.0),
        CartanCoefficients::new(FRAC_PI_8 + 1e-3, FRAC_PI_8, FRAC_PI_8),
        CartanCoefficients::new(FRAC_PI_4, FRAC_PI_8, 0.0),
        CartanCoefficients::ZERO,
    ];
    let mut corpus: Vec<CartanCoefficients> = named.iter().flat_map(|&c| std::iter::repeat(c).take(12)).collect();
    while corpus.len() < 240 {
        let cx = r.gen_range(0.0..FRAC_PI_4);
        let cy = r.gen_range(0.0..=cx);
        corpus.push(CartanCoefficients::new(cx, cy, r.gen_range(-cy..=cy)));
    }
    let grid = fibonacci_sphere(40);
    let (mut positives, mut disagreements) = (0, Vec::new());
    for (i, c) in corpus.iter().enumerate() {
        let u = local(&mut r) * exp_cartan(c, 1.0) * local(&mut r);
        let all_pure = is_perfect_entangler_for_all_pure(&u).map_err(|e| e.to_string())?;
        let sqrt_swap = is_locally_sqrt_swap(&u).map_err(|e| e.to_string())?;
        let brute = entangles_every_pure_state(&u, &grid);
        positives += all_pure as usize;
        if all_pure != sqrt_swap || all_pure != brute {
            disagreements.push(format!("#{i} {c:?}: all_pure={all_pure} sqrt_swap={sqrt_swap} oracle_grid={brute}"));
        }
    }
    let detail = format!(
        "{} unitaries, {positives} positive, {} disagreements (oracle probe grid of 40 states as third opinion)",
        corpus.len(),
        disagreements.len()
    );
    if disagreements.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", disagreements.join("; ")))
    }
}

fn theorem_equivalence() -> Outcome {
    let odd = [
        (1.0, 1.0, 1.0),
        (3.0, 1.0, 5.0),
        (1.0, 3.0, 5.0),
        (5.0, 3.0, 1.0),
        (1.0, -1.0, 3.0),
        (7.0, 1.0, 1.0),
        (0.5, 1.5, 2.5),
        (3.0, 3.0, 9.0),
        (-1.0, 5.0, 7.0),
        (0.2, 0.6, 1.4),
    ];
    let even = [
        (1.0, 1.0, 2.0),
        (2.0, 1.0, 1.0),
        (1.0, 2.0, 3.0),
        (3.0, 1.0, 4.0),
        (2.0, 4.0, 6.0),
        (1.0, 1.0, 0.5),
        (4.0, 3.0, 5.0),
        (1.0, -2.0, 1.0),
        (6.0, 1.0, 3.0),
        (0.5, 1.0, 1.5),
    ];
    let irrational = [
        (1.0, SQRT_2, 1.0),
        (1.0, 1.0, SQRT_2),
        (SQRT_2, 1.0, 1.0),
        (1.0, 3f64.sqrt(), 5f64.sqrt()),
        (1.0, PI / 3.0, 1.0),
        (1.0, 1.0, std::f64::consts::E),
        (0.7, 0.7 * SQRT_2, 2.1),
        (1.0, (1.0 + 5f64.sqrt()) / 2.0, 1.0),
        (2.0, 2.0, 2.0 * 3f64.sqrt()),
        (1.0, 7f64.sqrt(), 3.0),
    ];
    let corpus = odd.iter().map(|&c| (c, true)).chain(even.iter().chain(&irrational).map(|&c| (c, false)));
    let mut bad = Vec::new();
    let mut n = 0;
    for ((x, y, z), expected) in corpus {
        n += 1;
        let c = CartanCoefficients::new(x, y, z);
        let horizon = default_horizon(&c);
        let verdict = check_controllability(&c).controllable;
        let swap = find_swap_time(&c, horizon, DEFAULT_STEPS);
        let entangler = check_controllability_via_entanglement(&c, horizon, DEFAULT_STEPS);
        let transfers = find_three_transfer_time(&c, horizon, DEFAULT_STEPS);
        let agree = verdict == expected
            && swap.is_some() == expected
            && entangler.is_some() == expected
            && transfers.is_some() == expected;
        if !agree {
            bad.push(format!(
                "({x}, {y}, {z}): verdict={verdict} swap={swap:?} entangler={entangler:?} transfers={transfers:?}"
            ));
        }
    }
    let detail = format!("{n} triples, 10^4-point scans over [0, 4pi/min|c|], {} mismatches", bad.len());
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", bad.join("; ")))
    }
}

fn determinant() -> Outcome {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let c = coeffs(&mut r, 3.0);
        let t = r.gen_range(0.0..5.0);
        let s0 = ball(&mut r);
        worst = worst.max((det_a(&c, t, &s0) - affine_map(&c, t, &s0).det()).abs());
    }
    let case1 = CartanCoefficients::new(1.0, 0.0, 0.0);
    let case2 = CartanCoefficients::new(1.0, 1.0, 2.0);
    let s0 = BlochVector::new(0.0, 0.0, 0.5);
    let mut nonzero = 0;
    let mut case1_max: f64 = 0.0;
    for _ in 0..10_000 {
        let t = r.gen_range(0.0..default_horizon(&case2));
        if det_a(&case2, t, &s0).abs() > 1e-12 {
            nonzero += 1;
        }
        case1_max = case1_max.max(det_a(&case1, t, &s0).abs());
    }
    let detail = format!(
        "max |closed - numeric| {worst:.2e} (tol 1e-10); case 2 nonzero at {nonzero}/10000; case 1 max |det| {case1_max:.1e}"
    );
    if worst <= 1e-10 && nonzero >= 9_900 && case1_max == 0.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn witness_probe() -> Outcome {
    let mut r = rng(8);
    let c = CartanCoefficients::new(FRAC_PI_8, FRAC_PI_8, FRAC_PI_8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s0 = sphere(&mut r);
        let analytic = affine_map(&c, 1.0, &s0).apply(&s0.neg());
        let oracle = evolve_cartan_bloch(&c, &s0, &s0.neg(), 1.0).map_err(|e| e.to_string())?;
        worst = worst.max(analytic.norm()).max(oracle.norm());
    }
    let detail = format!("max |s| {worst:.2e} over 100 pure s0 (tol 1e-9)");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Euclidean-style excess of `x` beyond the ellipsoid; collapsed axes count
/// their offset directly.
fn outward_deviation(e: &Ellipsoid, x: &[f64; 3]) -> f64 {
    let d: [f64; 3] = std::array::from_fn(|j| (0..3).map(|i| e.axes[i][j] * (x[i] - e.center[i])).sum());
    let mut q = 0.0;
    let mut flat: f64 = 0.0;
    let mut largest: f64 = 0.0;
    for i in 0..3 {
        if e.semi_axes[i] > 1e-12 {
            q += (d[i] / e.semi_axes[i]).powi(2);
            largest = largest.max(e.semi_axes[i]);
        } else {
            flat = flat.max(d[i].abs());
        }
    }
    flat.max((q.sqrt() - 1.0).max(0.0) * largest)
}

fn ellipsoid_geometry() -> Outcome {
    let c = CartanCoefficients::new(1.0, 1.0, 1.0);
    let s0 = BlochVector::new(0.0, 0.0, 1.0);
    let mut axis_err: f64 = 0.0;
    let mut outward: f64 = 0.0;
    for i in 0..100 {
        let t = 0.03 + 3.1 * i as f64 / 99.0;
        let e = reachable_ellipsoid(&c, t, &s0);
        let s = (2.0 * t).sin().abs();
        let mut want = [s, s, s * s];
        want.sort_by(|a, b| b.total_cmp(a));
        for k in 0..3 {
            axis_err = axis_err.max((e.semi_axes[k] - want[k]).abs());
        }
        let cloud = empirical_reachable_cloud(&c, &s0, t, 200, i).map_err(|e| e.to_string())?;
        for p in &cloud {
            outward = outward.max(outward_deviation(&e, &p.0));
        }
    }
    let detail =
        format!("semi-axis error {axis_err:.2e} (tol 1e-10), cloud outward deviation {outward:.2e} (tol 1e-9)");
    if axis_err <= 1e-10 && outward < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_incoq")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_round_trip() -> Outcome {
    let cases = [("1 XX", false, false), ("1 XX; 1 YY; 2 ZZ", true, false), ("1 XX; 1 YY; 1 ZZ", true, true)];
    for (h, accessible, controllable) in cases {
        let (code, stdout) = run_cli(&["check", "--h", h])?;
        let json: Value = serde_json::from_str(&stdout).map_err(|e| format!("check {h}: {e}"))?;
        let v = &json["verdict"];
        let ok = code == 0
            && json["schema"] == 1
            && v["accessible"] == accessible
            && v["controllable"] == controllable
            && (!controllable || (v["t_hat"].as_f64().unwrap_or(f64::NAN) - FRAC_PI_4).abs() <= 1e-9);
        if !ok {
            return Err(format!("check `{h}` gave exit {code}: {v}"));
        }
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().ok_or("non-UTF-8 temp path")?;
    let (code, _) = run_cli(&["reach", "--h", "1 XX", "--s0", "0,0,0.5", "--t", "pi/12,pi/8,pi/4", "--out", out])?;
    if code != 0 {
        return Err(format!("reach exited {code}"));
    }
    let mut rows = 0;
    for i in 0..3 {
        let text = fs::read_to_string(dir.path().join(format!("reach_{i:03}.csv"))).map_err(|e| e.to_string())?;
        for line in text.lines().skip(1) {
            let x: f64 = line.split(',').nth(1).and_then(|x| x.parse().ok()).ok_or(format!("bad row `{line}`"))?;
            if x.abs() > 1e-12 {
                return Err(format!("reach row with x = {x}"));
            }
            rows += 1;
        }
    }

    let (clean, _) = run_cli(&["verify"])?;
    let (faulty, _) = run_cli(&["verify", "--inject-fault", "--cases", "20"])?;
    if clean != 0 || faulty == 0 {
        return Err(format!("verify exit codes: clean {clean}, injected fault {faulty}"));
    }
    Ok(format!("check verdicts match; {rows} reach rows with x = 0; verify exits 0 clean, {faulty} with fault"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("closed-form exponential", closed_form_exponential),
        ("worked-case verdicts", case_verdicts),
        ("SWAP characterization", swap_characterization),
        ("sqrt(SWAP) / perfect entangler equivalence", sqrt_swap_equivalence),
        ("theorem equivalence corpus", theorem_equivalence),
        ("det A closed form and accessibility", determinant),
        ("witness probe p = -s0", witness_probe),
        ("ellipsoid geometry", ellipsoid_geometry),
        ("CLI round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
