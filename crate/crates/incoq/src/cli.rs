//! Command-line front end. JSON goes to `out`, a short summary to `err`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use incoq_core::bloch::bloch_components;
use incoq_core::controllability::{default_horizon, find_swap_time, CHAMBER_TOL};
use incoq_core::dynamics::DEFAULT_STEPS;
use incoq_core::entanglement::{chamber_is_perfect_entangler, entangling_probe, max_product_concurrence};
use incoq_core::oracle::{evolve_cartan_bloch, evolve_with};
use incoq_core::weyl::{chamber_distance, sqrt_swap_class_distance, SQRT_SWAP_INV_POINT, SQRT_SWAP_POINT, SWAP_POINT};
use incoq_core::{
    affine_map, cartan_hamiltonian, check_controllability, check_controllability_exact,
    check_controllability_via_entanglement, coeffs_from_hamiltonian, exp_cartan, from_bloch, kak_decompose, mat_exp,
    sample_reachable_surface, AffineMap, Axis, BlochVector, CartanCoefficients, Ellipsoid, Mat4, Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::{format_pi, parse_angle, parse_angle_list};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::report::*;
use crate::unitary::parse_matrix;

#[derive(Debug, Parser)]
#[command(name = "incoq", version, about = "Incoherent control of a qubit through a qubit probe")]
pub struct Cli {
    /// Predicate tolerance (defaults per check).
    #[arg(long, global = true, env = "INCOQ_TOL")]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan coefficients of a Hamiltonian, or KAK of a propagator.
    Decompose(DecomposeArgs),
    /// Accessibility and controllability verdict.
    Check(HamiltonianArg),
    /// Reachable-set surface samples and ellipsoid summaries.
    Reach(ReachArgs),
    /// Entangling-power classification of a propagator.
    Entangle(PropagatorArgs),
    /// Cross-check the closed forms against the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct HamiltonianArg {
    /// Hamiltonian, e.g. "1 XX; 1 YY; 2 ZZ".
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "input")]
pub struct Input {
    /// Hamiltonian, e.g. "1 XX; 1 YY; 2 ZZ".
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: Option<String>,
    /// File with a 4×4 unitary, one row per line.
    #[arg(long)]
    pub unitary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: Input,
    /// Evolution time for a Hamiltonian input.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

#[derive(Debug, Args)]
pub struct PropagatorArgs {
    #[command(flatten)]
    pub input: Input,
    /// Evolution time; required with --h.
    #[arg(long, allow_hyphen_values = true, required_if_eq("input", "h"))]
    pub t: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ReachArgs {
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: String,
    /// Initial system Bloch vector `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub s0: String,
    /// Comma-separated times, e.g. "pi/12,pi/8,pi/4".
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Surface grid `N_THETAxN_PHI`.
    #[arg(long, default_value = "16x32")]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random oracle-equivalence cases.
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    /// Perturb `c_x` in the closed form (negative control).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if let Some(tol) = cli.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    let (json, summary, code) = match &cli.command {
        Command::Decompose(a) => {
            let r = decompose(a, cli.tol)?;
            let s = decompose_summary(&r);
            (serde_json::to_string_pretty(&r)?, s, 0)
        }
        Command::Check(a) => {
            let r = check(&a.h, cli.tol)?;
            let s = check_summary(&r);
            (serde_json::to_string_pretty(&r)?, s, 0)
        }
        Command::Reach(a) => {
            let r = reach(a, cli.tol)?;
            let s = format!("wrote {} frames to {}", r.frames.len(), a.out.display());
            (serde_json::to_string_pretty(&r)?, s, 0)
        }
        Command::Entangle(a) => {
            let r = entangle(a, cli.tol)?;
            let s = entangle_summary(&r);
            (serde_json::to_string_pretty(&r)?, s, 0)
        }
        Command::Verify(a) => {
            let r = verify(a.seed, a.cases, a.inject_fault)?;
            let s = verify_summary(&r);
            let code = if r.pass { 0 } else { 2 };
            (serde_json::to_string_pretty(&r)?, s, code)
        }
    };
    writeln!(out, "{json}").map_err(|e| Error::Io { path: "<stdout>".into(), source: e })?;
    let _ = writeln!(err, "{summary}");
    Ok(code)
}

fn parse_hamiltonian(text: &str) -> Result<HamiltonianSpec> {
    text.parse().map_err(Error::Hamiltonian)
}

fn read_unitary(path: &Path) -> Result<Mat4> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.into(), source: e })?;
    let u = parse_matrix(&text).map_err(|e| Error::UnitaryFile { path: path.into(), source: e })?;
    u.check_unitary(1e-9)?;
    Ok(u)
}

fn parse_time(text: &str) -> Result<f64> {
    parse_angle(text).map_err(Error::Usage)
}

/// Propagator `e^{-iHt}` or the unitary from file, with the optional time.
fn propagator(input: &Input, t: Option<&str>) -> Result<(Mat4, Option<f64>)> {
    match (&input.h, &input.unitary) {
        (Some(h), _) => {
            let t = parse_time(t.ok_or_else(|| Error::Usage("--t is required with --h".into()))?)?;
            let h = parse_hamiltonian(h)?.to_matrix();
            Ok((mat_exp(&h, t)?, Some(t)))
        }
        (None, Some(path)) => Ok((read_unitary(path)?, None)),
        (None, None) => Err(Error::Usage("one of --h or --unitary is required".into())),
    }
}

pub fn decompose(a: &DecomposeArgs, _tol: Option<f64>) -> Result<DecomposeReport> {
    let mut report = DecomposeReport {
        schema: SCHEMA,
        hamiltonian: None,
        unitary_file: a.input.unitary.as_ref().map(|p| p.display().to_string()),
        hamiltonian_coefficients: None,
        nonlocal_residual: None,
        t: None,
        t_pi: None,
        kak: None,
    };
    if let Some(text) = &a.input.h {
        let spec = parse_hamiltonian(text)?;
        let proj = coeffs_from_hamiltonian(&spec.to_matrix())?;
        report.hamiltonian = Some(spec.to_string());
        report.hamiltonian_coefficients = Some(proj.coeffs);
        report.nonlocal_residual = Some(proj.nonlocal_residual);
        if a.t.is_none() {
            return Ok(report);
        }
    }
    let (u, t) = propagator(&a.input, a.t.as_deref())?;
    report.t = t;
    report.t_pi = t.and_then(format_pi);
    report.kak = Some(KakReport::new(kak_decompose(&u)?, &u));
    Ok(report)
}

fn decompose_summary(r: &DecomposeReport) -> String {
    let mut lines = Vec::new();
    if let Some(c) = r.hamiltonian_coefficients {
        lines.push(format!("c = ({}, {}, {})", c.cx, c.cy, c.cz));
    }
    if let Some(k) = &r.kak {
        let c = k.data.coeffs;
        let show = |x: f64, p: &Option<String>| p.clone().unwrap_or_else(|| format!("{x:.12}"));
        lines.push(format!(
            "canonical c = ({}, {}, {}), reconstruction residual {:.2e}",
            show(c.cx, &k.coeffs_pi[0]),
            show(c.cy, &k.coeffs_pi[1]),
            show(c.cz, &k.coeffs_pi[2]),
            k.reconstruction_residual
        ));
    }
    lines.join("\n")
}

pub fn check(text: &str, tol: Option<f64>) -> Result<CheckReport> {
    let tol = tol.unwrap_or(Tolerances::DEFAULT.predicate);
    let spec = parse_hamiltonian(text)?;
    let proj = coeffs_from_hamiltonian(&spec.to_matrix())?;
    let exact = spec.exact_cartan();
    let inapplicable = !proj.is_cartan_compatible(tol);
    let verdict = (!inapplicable).then(|| match &exact {
        Some(r) => check_controllability_exact(r),
        None => check_controllability(&proj.coeffs),
    });
    Ok(CheckReport {
        schema: SCHEMA,
        hamiltonian: spec.to_string(),
        coefficients: proj.coeffs,
        exact_coefficients: exact.map(|r| r.map(|x| crate::hamiltonian::Coefficient::exact(x).to_string())),
        nonlocal_residual: proj.nonlocal_residual,
        local_terms: proj.has_local_terms(tol),
        inapplicable,
        verdict: verdict.as_ref().map(VerdictReport::from),
    })
}

fn check_summary(r: &CheckReport) -> String {
    let c = r.coefficients;
    let head = format!("c = ({}, {}, {})", c.cx, c.cy, c.cz);
    match &r.verdict {
        None => format!(
            "{head}: analysis inapplicable, interaction has off-diagonal Pauli products (residual {:.3e})",
            r.nonlocal_residual
        ),
        Some(v) => {
            let mut s = format!(
                "{head}: {}accessible, {}controllable [{}]",
                if v.accessible { "" } else { "not " },
                if v.controllable { "" } else { "not " },
                v.method.as_str()
            );
            if let (Some(t), Some(k1), Some(k2), Some(k3)) = (v.t_hat, v.k1, v.k2, v.k3) {
                let shown = v.t_hat_pi.clone().unwrap_or_else(|| format!("{t}"));
                s.push_str(&format!(", t_hat = {shown}, k = ({k1}, {k2}, {k3})"));
            }
            if r.local_terms {
                s.push_str("; local terms present");
            }
            s
        }
    }
}

fn parse_vector(text: &str) -> Result<BlochVector> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::Usage(format!("--s0 expects x,y,z, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|_| bad())?;
        if !slot.is_finite() {
            return Err(bad());
        }
    }
    Ok(BlochVector(v))
}

fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Usage(format!("--grid expects NxM, got `{text}`"));
    let (n, m) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((n.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
}

/// Affine map of the reduced dynamics read off the propagator:
/// `a = s(0)` and `A e_i = s(e_i) - s(0)`.
pub fn map_from_propagator(u: &Mat4, s0: &BlochVector, t: f64) -> Result<AffineMap> {
    let rho_s = from_bloch(s0)?;
    let image =
        |p: &BlochVector| -> Result<[f64; 3]> { Ok(bloch_components(&evolve_with(u, &rho_s, &from_bloch(p)?)?).0) };
    let a_vec = image(&BlochVector::ORIGIN)?;
    let mut a_mat = [[0.0; 3]; 3];
    for k in Axis::ALL {
        let col = image(&BlochVector::axis(k))?;
        for i in 0..3 {
            a_mat[i][k.index()] = col[i] - a_vec[i];
        }
    }
    Ok(AffineMap { a_mat, a_vec, t, s0: *s0 })
}

pub fn reach(a: &ReachArgs, tol: Option<f64>) -> Result<ReachReport> {
    let tol = tol.unwrap_or(Tolerances::DEFAULT.predicate);
    let spec = parse_hamiltonian(&a.h)?;
    let s0 = parse_vector(&a.s0)?;
    s0.check_in_ball(Tolerances::DEFAULT.identity)?;
    let times = parse_angle_list(&a.t).map_err(Error::Usage)?;
    let (n_theta, n_phi) = parse_grid(&a.grid)?;
    let h = spec.to_matrix();
    let analytic = spec.is_pure_cartan();
    let c = coeffs_from_hamiltonian(&h)?.coeffs;
    fs::create_dir_all(&a.out).map_err(|e| Error::Io { path: a.out.clone(), source: e })?;

    let mut frames = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        // e^{-iHt} = e^{a t} with the coefficients negated
        let map =
            if analytic { affine_map(&c.scaled(-1.0), t, &s0) } else { map_from_propagator(&mat_exp(&h, t)?, &s0, t)? };
        let e = Ellipsoid::from_map(&map);
        let points = sample_reachable_surface(&e, n_theta, n_phi)?;
        let ext = match a.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let name = format!("reach_{i:03}.{ext}");
        let path = a.out.join(&name);
        let body = match a.format {
            Format::Csv => {
                let mut s = String::from("t,x,y,z\n");
                for p in &points {
                    s.push_str(&format!("{t},{},{},{}\n", p[0], p[1], p[2]));
                }
                s
            }
            Format::Json => serde_json::to_string(&SurfaceFile { schema: SCHEMA, t, points })?,
        };
        fs::write(&path, body).map_err(|e| Error::Io { path: path.clone(), source: e })?;
        frames.push(FrameSummary {
            t,
            t_pi: format_pi(t),
            file: name,
            center: e.center,
            semi_axes: e.semi_axes,
            axes: e.axes,
            collapsed_axes: e.collapsed_axes(tol),
            det: map.det(),
        });
    }
    let report = ReachReport {
        schema: SCHEMA,
        hamiltonian: spec.to_string(),
        s0: s0.0,
        grid: [n_theta, n_phi],
        format: match a.format {
            Format::Csv => "csv".into(),
            Format::Json => "json".into(),
        },
        map_source: if analytic { "analytic" } else { "propagator" }.into(),
        frames,
    };
    let path = a.out.join("summary.json");
    fs::write(&path, serde_json::to_string_pretty(&report)?).map_err(|e| Error::Io { path, source: e })?;
    Ok(report)
}

pub fn entangle(a: &PropagatorArgs, tol: Option<f64>) -> Result<EntangleReport> {
    let chamber_tol = tol.unwrap_or(CHAMBER_TOL);
    let (u, t) = propagator(&a.input, a.t.as_deref())?;
    let data = kak_decompose(&u)?;
    let c = data.coeffs;
    let sqrt_swap = chamber_distance(&c, &SQRT_SWAP_POINT) <= chamber_tol
        || chamber_distance(&c, &SQRT_SWAP_INV_POINT) <= chamber_tol;
    let probe_tol = tol.unwrap_or(Tolerances::DEFAULT.predicate);
    let witness_probes = Axis::ALL
        .iter()
        .flat_map(|&k| [BlochVector::axis(k), BlochVector::axis(k).neg()])
        .map(|s0| {
            let (p, residual) = entangling_probe(&data, &s0);
            WitnessProbe { s0: s0.0, probe: p.0, residual, maximally_entangled: residual <= probe_tol }
        })
        .collect();
    Ok(EntangleReport {
        schema: SCHEMA,
        hamiltonian: a.input.h.as_deref().map(parse_hamiltonian).transpose()?.map(|s| s.to_string()),
        unitary_file: a.input.unitary.as_ref().map(|p| p.display().to_string()),
        t,
        t_pi: t.and_then(format_pi),
        coeffs: c,
        coeffs_pi: [format_pi(c.cx), format_pi(c.cy), format_pi(c.cz)],
        perfect_entangler: chamber_is_perfect_entangler(&c, chamber_tol),
        perfect_entangler_for_all_pure: sqrt_swap_class_distance(&c) <= chamber_tol,
        locally_swap: chamber_distance(&c, &SWAP_POINT) <= chamber_tol,
        locally_sqrt_swap: sqrt_swap,
        max_product_concurrence: max_product_concurrence(&u, 8, 0)?,
        witness_probes,
    })
}

fn entangle_summary(r: &EntangleReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!(
        "perfect entangler: {}, for all pure states: {}, locally SWAP: {}, locally sqrt(SWAP): {}",
        yn(r.perfect_entangler),
        yn(r.perfect_entangler_for_all_pure),
        yn(r.locally_swap),
        yn(r.locally_sqrt_swap)
    )
}

/// Oracle equivalence on `cases` random inputs plus a small theorem corpus.
pub fn verify(seed: u64, cases: usize, inject_fault: bool) -> Result<VerifyReport> {
    const ORACLE_TOL: f64 = 1e-10;
    const EXP_TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut oracle_max: f64 = 0.0;
    let mut exp_max: f64 = 0.0;
    for i in 0..cases {
        let c = CartanCoefficients::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let t = rng.gen_range(0.0..3.0);
        let s0 = ball_point(&mut rng);
        let p = ball_point(&mut rng);
        let closed_c = if inject_fault { CartanCoefficients::new(c.cx + 1e-3, c.cy, c.cz) } else { c };
        let analytic = affine_map(&closed_c, t, &s0).apply(&p);
        let oracle = evolve_cartan_bloch(&c, &s0, &p, t)?;
        let dev = analytic.distance(&oracle);
        let exp_dev = exp_cartan(&closed_c, t).max_abs_diff(&mat_exp(&-cartan_hamiltonian(&c), t)?);
        oracle_max = oracle_max.max(dev);
        exp_max = exp_max.max(exp_dev);
        let reproducer = format!(
            "incoq verify --seed {seed} --cases {} # case {i}: c = ({:?}, {:?}, {:?}), t = {t:?}, s0 = {:?}, p = {:?}",
            i + 1,
            c.cx,
            c.cy,
            c.cz,
            s0.0,
            p.0
        );
        if dev > ORACLE_TOL {
            failures.push(Failure {
                check: "oracle_equivalence".into(),
                detail: format!("Bloch deviation {dev:.3e} > {ORACLE_TOL:e}"),
                reproducer: reproducer.clone(),
            });
        }
        if exp_dev > EXP_TOL {
            failures.push(Failure {
                check: "closed_form_exponential".into(),
                detail: format!("matrix deviation {exp_dev:.3e} > {EXP_TOL:e}"),
                reproducer,
            });
        }
    }

    let corpus_specs = [
        ("identity", CartanCoefficients::ZERO),
        ("ising", CartanCoefficients::new(1.0, 0.0, 0.0)),
        ("anisotropic", CartanCoefficients::new(1.0, 1.0, 2.0)),
        ("heisenberg", CartanCoefficients::new(1.0, 1.0, 1.0)),
        ("odd_ratio", CartanCoefficients::new(3.0, 1.0, 5.0)),
        ("irrational", CartanCoefficients::new(1.0, std::f64::consts::SQRT_2, 1.0)),
    ];
    let corpus: Vec<CorpusResult> = corpus_specs
        .iter()
        .map(|&(name, c)| {
            let horizon = default_horizon(&c);
            let controllable = check_controllability(&c).controllable;
            let swap_time = find_swap_time(&c, horizon, DEFAULT_STEPS);
            let entangler_time = check_controllability_via_entanglement(&c, horizon, DEFAULT_STEPS);
            let pass = controllable == swap_time.is_some() && controllable == entangler_time.is_some();
            CorpusResult { name: name.into(), coeffs: c, controllable, swap_time, entangler_time, pass }
        })
        .collect();
    for r in corpus.iter().filter(|r| !r.pass) {
        failures.push(Failure {
            check: "theorem_equivalence".into(),
            detail: format!(
                "{}: controllable = {}, swap time {:?}, entangler time {:?}",
                r.name, r.controllable, r.swap_time, r.entangler_time
            ),
            reproducer: format!("incoq verify --seed {seed} --cases 0"),
        });
    }
    Ok(VerifyReport {
        schema: SCHEMA,
        seed,
        cases,
        fault_injected: inject_fault,
        oracle_max_deviation: oracle_max,
        exponential_max_deviation: exp_max,
        pass: failures.is_empty(),
        corpus,
        failures,
    })
}

fn ball_point(rng: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let v = BlochVector([rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)]);
        if v.norm() <= 1.0 {
            return v;
        }
    }
}

fn verify_summary(r: &VerifyReport) -> String {
    let mut s = format!(
        "oracle max deviation {:.3e}, exponential max deviation {:.3e}, corpus {}/{}: {}",
        r.oracle_max_deviation,
        r.exponential_max_deviation,
        r.corpus.iter().filter(|c| c.pass).count(),
        r.corpus.len(),
        if r.pass { "PASS" } else { "FAIL" }
    );
    for f in r.failures.iter().take(5) {
        s.push_str(&format!("\n  {}: {}\n    reproduce: {}", f.check, f.detail, f.reproducer));
    }
    if r.failures.len() > 5 {
        s.push_str(&format!("\n  ... {} more", r.failures.len() - 5));
    }
    s
}
