//! Derivative-free minimisers and a one-dimensional scan used by the time
//! searches.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns `(x, f(x))`. Assumes `f` is unimodal on the bracket; otherwise a
/// local minimum is returned.
pub fn golden_section(f: impl Fn(f64) -> f64, lo: f64, hi: f64, x_tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > x_tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    let candidates = [(lo, f(lo)), (hi, f(hi)), (c, fc), (d, fd)];
    candidates.into_iter().fold((c, fc), |best, x| if x.1 < best.1 { x } else { best })
}

/// Nelder-Mead simplex minimisation in `N` dimensions.
pub fn nelder_mead<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    x0: [f64; N],
    step: f64,
    max_iter: usize,
    f_tol: f64,
) -> ([f64; N], f64) {
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }

    let lerp = |a: &[f64; N], b: &[f64; N], t: f64| -> [f64; N] { core::array::from_fn(|k| a[k] + t * (b[k] - a[k])) };

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[N].1;
        if (worst - best).abs() <= f_tol {
            break;
        }
        let centroid: [f64; N] =
            core::array::from_fn(|k| simplex[..N].iter().map(|(x, _)| x[k]).sum::<f64>() / N as f64);
        let xw = simplex[N].0;

        let xr = lerp(&centroid, &xw, -1.0);
        let fr = f(&xr);
        if fr < best {
            let xe = lerp(&centroid, &xw, -2.0);
            let fe = f(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let x = lerp(&centroid, &xr, 0.5);
            (x, f(&x))
        } else {
            let x = lerp(&centroid, &xw, 0.5);
            (x, f(&x))
        };
        if fc < worst.min(fr) {
            simplex[N] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0;
        for entry in simplex.iter_mut().skip(1) {
            let x = lerp(&x_best, &entry.0, 0.5);
            *entry = (x, f(&x));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// Uniform grid of `n` points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n && n > 1 { hi } else { lo + step * i as f64 })
}

/// Samples `margin` on a uniform grid over `[lo, hi]`, refines every local
/// minimum with a golden-section search, and returns the earliest refined
/// time accepted by `accept`.
///
/// `margin` should be a non-negative function that vanishes where `accept`
/// holds. The result is grid-limited: minima narrower than the grid spacing
/// can be missed.
pub fn earliest_refined_zero(
    margin: impl Fn(f64) -> f64,
    accept: impl Fn(f64) -> bool,
    lo: f64,
    hi: f64,
    n_steps: usize,
) -> Option<f64> {
    let ts: Vec<f64> = linspace(lo, hi, n_steps.max(2)).collect();
    let fs: Vec<f64> = ts.iter().map(|&t| margin(t)).collect();
    let n = ts.len();
    for i in 0..n {
        let left = if i == 0 { f64::INFINITY } else { fs[i - 1] };
        let right = if i + 1 == n { f64::INFINITY } else { fs[i + 1] };
        if fs[i] > left || fs[i] > right {
            continue;
        }
        if accept(ts[i]) {
            return Some(ts[i]);
        }
        let a = ts[i.saturating_sub(1)];
        let b = ts[(i + 1).min(n - 1)];
        let (t, _) = golden_section(&margin, a, b, 1e-15 * (1.0 + b.abs()));
        if accept(t) {
            return Some(t);
        }
    }
    None
}
