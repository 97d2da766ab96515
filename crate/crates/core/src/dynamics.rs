//! Affine action of `e^{at}` on the system's coherence vector.
//!
//! With `s0` the system and `p` the probe Bloch vector, the system after
//! `e^{at}` (locals stripped) is `s = A(t, s0) p + a(t, s0)`. Its image as
//! `p` runs over the unit ball is an ellipsoid: the reachable set at `t`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bloch::BlochVector;
use crate::cartan::CartanCoefficients;
use crate::error::{Error, Result};
use crate::linalg::{self, add3, dot3, mat3_tvec, mat3_vec, norm3, sub3, svd3, Mat3, Vec3};
use crate::optimize::{golden_section, linspace};

/// `p ↦ A p + a` at a fixed time and initial system state.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AffineMap {
    pub a_mat: Mat3,
    pub a_vec: Vec3,
    pub t: f64,
    pub s0: BlochVector,
}

impl AffineMap {
    pub fn apply(&self, p: &BlochVector) -> BlochVector {
        BlochVector(add3(mat3_vec(&self.a_mat, p.0), self.a_vec))
    }

    pub fn det(&self) -> f64 {
        linalg::det3(&self.a_mat)
    }
}

/// `A(t, s0)` and `a(t, s0)` in closed form.
///
/// With `S_k = sin 2c_k t`, `C_k = cos 2c_k t`:
///
/// ```text
///     | S_y S_z        -s_z S_y C_z    s_y C_y S_z |
/// A = | s_z S_x C_z     S_x S_z       -s_x C_x S_z |
///     | -s_y C_y S_x    s_x C_x S_y    S_x S_y     |
///
/// a = (s_x C_y C_z, s_y C_x C_z, s_z C_x C_y)
/// ```
pub fn affine_map(c: &CartanCoefficients, t: f64, s0: &BlochVector) -> AffineMap {
    let (sx, cx) = (2.0 * c.cx * t).sin_cos();
    let (sy, cy) = (2.0 * c.cy * t).sin_cos();
    let (sz, cz) = (2.0 * c.cz * t).sin_cos();
    let [x, y, z] = s0.0;
    let a_mat = [
        [sy * sz, -z * sy * cz, y * cy * sz],
        [z * sx * cz, sx * sz, -x * cx * sz],
        [-y * cy * sx, x * cx * sy, sx * sy],
    ];
    let a_vec = [x * cy * cz, y * cx * cz, z * cx * cy];
    AffineMap { a_mat, a_vec, t, s0: *s0 }
}

/// Closed-form `det A(t, s0)`.
pub fn det_a(c: &CartanCoefficients, t: f64, s0: &BlochVector) -> f64 {
    let sx2 = (2.0 * c.cx * t).sin().powi(2);
    let sy2 = (2.0 * c.cy * t).sin().powi(2);
    let sz2 = (2.0 * c.cz * t).sin().powi(2);
    let [x, y, z] = s0.0;
    x * x * sy2 * sz2 + y * y * sx2 * sz2 + z * z * sx2 * sy2 + (1.0 - x * x - y * y - z * z) * sx2 * sy2 * sz2
}

/// `{center + axes · diag(semi_axes) · u : ‖u‖ ≤ 1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Ellipsoid {
    pub center: Vec3,
    /// Descending, non-negative.
    pub semi_axes: Vec3,
    /// Principal directions as columns.
    pub axes: Mat3,
}

impl Ellipsoid {
    /// Image of the unit ball under an affine map.
    pub fn from_map(map: &AffineMap) -> Self {
        let svd = svd3(&map.a_mat);
        Self { center: map.a_vec, semi_axes: svd.s, axes: svd.u }
    }

    /// Point of the surface in direction `u` (unit vector in the principal frame).
    pub fn surface_point(&self, u: Vec3) -> Vec3 {
        let scaled = core::array::from_fn(|i| self.semi_axes[i] * u[i]);
        add3(self.center, mat3_vec(&self.axes, scaled))
    }

    /// Number of semi-axes at most `tol`.
    pub fn collapsed_axes(&self, tol: f64) -> usize {
        self.semi_axes.iter().filter(|&&s| s <= tol).count()
    }

    /// Membership with collapsed directions treated as exact constraints.
    pub fn contains(&self, point: &BlochVector, tol: f64) -> bool {
        let d = mat3_tvec(&self.axes, sub3(point.0, self.center));
        let mut q = 0.0;
        for i in 0..3 {
            if self.semi_axes[i] > tol {
                q += (d[i] / self.semi_axes[i]).powi(2);
            } else if d[i].abs() > tol {
                return false;
            }
        }
        q <= 1.0 + tol
    }

    /// `max_{x ∈ E} n·x` for a unit direction `n`.
    pub fn support(&self, n: Vec3) -> f64 {
        let local = mat3_tvec(&self.axes, n);
        let w: f64 = (0..3).map(|i| (self.semi_axes[i] * local[i]).powi(2)).sum();
        dot3(self.center, n) + w.sqrt()
    }
}

/// Reachable set at time `t`: the ellipsoid centred at `a(t, s0)` with
/// semi-axes the singular values of `A(t, s0)`.
pub fn reachable_ellipsoid(c: &CartanCoefficients, t: f64, s0: &BlochVector) -> Ellipsoid {
    Ellipsoid::from_map(&affine_map(c, t, s0))
}

/// Polar-grid sample of the ellipsoid surface: `n_theta` polar angles from
/// pole to pole and `n_phi` azimuths.
pub fn sample_reachable_surface(e: &Ellipsoid, n_theta: usize, n_phi: usize) -> Result<Vec<Vec3>> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::InvalidGrid { n_theta, n_phi });
    }
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for theta in linspace(0.0, PI, n_theta) {
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            out.push(e.surface_point(BlochVector::from_polar(theta, phi).0));
        }
    }
    Ok(out)
}

/// Constraint on the probe Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeSet {
    /// `‖p‖ ≤ 1`, any probe state.
    Ball,
    /// `‖p‖ = 1`, pure probe states only.
    Sphere,
}

/// Probe that brings `A p + a` closest to `target`, and the remaining distance.
pub fn closest_probe(map: &AffineMap, target: &BlochVector, set: ProbeSet) -> (BlochVector, f64) {
    let svd = svd3(&map.a_mat);
    let b = mat3_tvec(&svd.u, sub3(target.0, map.a_vec));
    let s = svd.s;
    let scale = s[0].max(1.0);
    let rank_tol = 1e-13 * scale;

    let y_of = |mu: f64| -> Vec3 {
        core::array::from_fn(|i| {
            let den = s[i] * s[i] + mu;
            if s[i] <= rank_tol || den <= 0.0 {
                0.0
            } else {
                s[i] * b[i] / den
            }
        })
    };
    let bisect_norm = |lo: f64, hi: f64| -> Vec3 {
        // ‖y(μ)‖ decreases in μ; find ‖y‖ = 1 on (lo, hi].
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if norm3(y_of(mid)) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * (1.0 + hi.abs()) {
                break;
            }
        }
        y_of(hi)
    };

    let y0 = y_of(0.0);
    let n0 = norm3(y0);
    let y = if n0 > 1.0 {
        let mut hi = 1.0;
        while norm3(y_of(hi)) > 1.0 {
            hi *= 2.0;
        }
        bisect_norm(0.0, hi)
    } else if set == ProbeSet::Ball || (n0 - 1.0).abs() <= 1e-15 {
        y0
    } else {
        // Pure probe with an interior minimiser: push outwards.
        let s_min = s[2];
        let smallest: [bool; 3] = core::array::from_fn(|i| s[i] - s_min <= 1e-12 * scale);
        let pull: f64 = (0..3).filter(|&i| smallest[i]).map(|i| (s[i] * b[i]).powi(2)).sum();
        let floor = -s_min * s_min;
        let hard: Vec3 = core::array::from_fn(|i| if smallest[i] { 0.0 } else { s[i] * b[i] / (s[i] * s[i] + floor) });
        if pull.sqrt() <= 1e-14 * scale && norm3(hard) <= 1.0 {
            let mut y = hard;
            let k = (0..3).rev().find(|&i| smallest[i]).unwrap_or(2);
            y[k] = (1.0 - norm3(hard).powi(2)).max(0.0).sqrt();
            y
        } else {
            bisect_norm(floor, 0.0)
        }
    };

    let p = mat3_vec(&svd.v, y);
    let p = match set {
        ProbeSet::Sphere => {
            let n = norm3(p);
            if n > 0.0 {
                linalg::scale3(p, 1.0 / n)
            } else {
                [0.0, 0.0, 1.0]
            }
        }
        ProbeSet::Ball => {
            let n = norm3(p);
            if n > 1.0 {
                linalg::scale3(p, 1.0 / n)
            } else {
                p
            }
        }
    };
    let p = BlochVector(p);
    let residual = map.apply(&p).distance(target);
    (p, residual)
}

/// Outcome of [`reachable_union_membership`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Membership {
    pub reachable: bool,
    /// Earliest time found with the target inside the reachable set.
    pub witness_time: Option<f64>,
    /// The witness ellipsoid has collapsed directions, so membership there
    /// was decided by exact-coordinate constraints.
    pub degenerate: bool,
}

/// Default grid size for [`reachable_union_membership`].
pub const DEFAULT_STEPS: usize = 10_000;

/// Sampled test of `target ∈ ∪_{t ∈ [0, t_max]} R(s0, t)`.
///
/// A uniform grid is scanned; local minima of the distance from `target` to
/// the reachable set are refined by golden-section search, and entries are
/// bisected back to the earliest crossing. Sufficient but grid-limited.
pub fn reachable_union_membership(
    c: &CartanCoefficients,
    s0: &BlochVector,
    target: &BlochVector,
    t_max: f64,
    n_steps: usize,
    tol: f64,
) -> Result<Membership> {
    s0.check_in_ball(tol)?;
    target.check_in_ball(tol)?;
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidArgument("t_max must be positive"));
    }
    if n_steps < 2 {
        return Err(Error::InvalidArgument("n_steps must be at least 2"));
    }

    let inside = |t: f64| reachable_ellipsoid(c, t, s0).contains(target, tol);
    let gap = |t: f64| closest_probe(&affine_map(c, t, s0), target, ProbeSet::Ball).1;

    let ts: Vec<f64> = linspace(0.0, t_max, n_steps).collect();
    let gaps: Vec<f64> = ts.iter().map(|&t| gap(t)).collect();
    let mut best: Option<f64> = None;

    for i in 0..ts.len() {
        if best.is_some_and(|b| ts[i] >= b) {
            break;
        }
        if inside(ts[i]) {
            let mut t = ts[i];
            if i > 0 && !inside(ts[i - 1]) {
                let (mut lo, mut hi) = (ts[i - 1], ts[i]);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if inside(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                t = hi;
            }
            best = Some(best.map_or(t, |b: f64| b.min(t)));
            break;
        }
        let left = if i == 0 { f64::INFINITY } else { gaps[i - 1] };
        let right = gaps.get(i + 1).copied().unwrap_or(f64::INFINITY);
        if gaps[i] <= left && gaps[i] <= right {
            let a = ts[i.saturating_sub(1)];
            let b = ts[(i + 1).min(ts.len() - 1)];
            let (t, _) = golden_section(gap, a, b, 1e-14 * (1.0 + b));
            if inside(t) {
                best = Some(best.map_or(t, |b: f64| b.min(t)));
            }
        }
    }

    Ok(match best {
        Some(t) => Membership {
            reachable: true,
            witness_time: Some(t),
            degenerate: reachable_ellipsoid(c, t, s0).collapsed_axes(tol) > 0,
        },
        None => Membership { reachable: false, witness_time: None, degenerate: false },
    })
}
