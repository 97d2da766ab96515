//! Two-qubit KAK decomposition `U = phase · (L₁ˢ⊗L₁ᴾ) · e^{a} · (L₂ˢ⊗L₂ᴾ)`.
//!
//! The input is moved to the magic basis, where local unitaries become real
//! orthogonal matrices and the Cartan exponential becomes diagonal. The
//! complex symmetric unitary `M = U_Bᵀ U_B` is diagonalised by a real
//! orthogonal matrix; its eigenphases give the Cartan coefficients.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cartan::{exp_cartan, CartanCoefficients};
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;
use crate::matrix::{kron, split_product, Mat2, Mat4, ZERO};
use crate::weyl;

/// Result of [`kak_decompose`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CartanData {
    /// Weyl-chamber coefficients.
    pub coeffs: CartanCoefficients,
    /// Coefficients read from the eigenphases before folding.
    pub raw_coeffs: CartanCoefficients,
    pub l1_s: Mat2,
    pub l1_p: Mat2,
    pub l2_s: Mat2,
    pub l2_p: Mat2,
    pub global_phase: Complex64,
}

impl CartanData {
    pub fn left(&self) -> Mat4 {
        kron(&self.l1_s, &self.l1_p)
    }

    pub fn right(&self) -> Mat4 {
        kron(&self.l2_s, &self.l2_p)
    }

    pub fn reconstruct(&self) -> Mat4 {
        (self.left() * exp_cartan(&self.coeffs, 1.0) * self.right()).scale(self.global_phase)
    }
}

const H: f64 = FRAC_1_SQRT_2;

/// Columns are the magic basis states
/// `(|00⟩+|11⟩)/√2, i(|00⟩-|11⟩)/√2, i(|01⟩+|10⟩)/√2, (|01⟩-|10⟩)/√2`.
pub fn magic_basis() -> Mat4 {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    Mat4::from_rows([
        [c(H, 0.0), c(0.0, H), ZERO, ZERO],
        [ZERO, ZERO, c(0.0, H), c(H, 0.0)],
        [ZERO, ZERO, c(0.0, H), c(-H, 0.0)],
        [c(H, 0.0), c(0.0, -H), ZERO, ZERO],
    ])
}

/// Cartan coefficients from the magic-basis eigenphases `λ_k` (with
/// `Σλ = 0`), inverting `λ = (a-b+c, -a+b+c, a+b-c, -a-b-c)`.
fn coefficients_from_phases(l: [f64; 4]) -> CartanCoefficients {
    CartanCoefficients::new(
        (l[0] - l[1] + l[2] - l[3]) / 4.0,
        (-l[0] + l[1] + l[2] - l[3]) / 4.0,
        (l[0] + l[1] - l[2] - l[3]) / 4.0,
    )
}

type Real4 = [[f64; 4]; 4];

fn congruence(p: &Real4, m: &Real4) -> Real4 {
    // pᵀ m p
    core::array::from_fn(|i| {
        core::array::from_fn(|j| (0..4).map(|k| (0..4).map(|l| p[k][i] * m[k][l] * p[l][j]).sum::<f64>()).sum())
    })
}

/// Jacobi sweeps on `m` restricted to the index set `idx`, accumulating the
/// rotations into the columns of `v`.
fn jacobi_on_subset(m: &mut Real4, v: &mut Real4, idx: &[usize]) {
    for _ in 0..64 {
        let off: f64 = idx
            .iter()
            .flat_map(|&i| idx.iter().filter(move |&&j| j != i).map(move |&j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off.sqrt() < 1e-17 {
            return;
        }
        for (a, &p) in idx.iter().enumerate() {
            for &q in &idx[a + 1..] {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (2.0 * m[p][q]).atan2(m[q][q] - m[p][p]);
                let (s, c) = theta.sin_cos();
                for row in m.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for k in 0..4 {
                    let (x, y) = (m[p][k], m[q][k]);
                    m[p][k] = c * x - s * y;
                    m[q][k] = s * x + c * y;
                }
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
    }
}

/// Real orthogonal `P` with `Pᵀ (re + i·im) P` diagonal, for commuting real
/// symmetric `re`, `im`.
///
/// A fixed combination `re + g·im` is diagonalised first; eigenvalue clusters
/// of that combination are split with `im`. No random mixing is involved.
fn simultaneous_diagonalizer(re: &Real4, im: &Real4) -> Real4 {
    const MIX: f64 = 0.618_033_988_749_894_8;
    const CLUSTER: f64 = 1e-6;
    let primary: Real4 = core::array::from_fn(|i| core::array::from_fn(|j| re[i][j] + MIX * im[i][j]));
    let (vals, mut p) = symmetric_eigen(&primary);

    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && vals[end] - vals[end - 1] <= CLUSTER {
            end += 1;
        }
        if end - start > 1 {
            let idx: [usize; 4] = [0, 1, 2, 3];
            let mut restricted = congruence(&p, im);
            jacobi_on_subset(&mut restricted, &mut p, &idx[start..end]);
        }
        start = end;
    }
    p
}

/// KAK decomposition of a two-qubit unitary with Weyl-chamber coefficients.
pub fn kak_decompose(u: &Mat4) -> Result<CartanData> {
    u.check_unitary(1e-9)?;

    let det = u.det();
    let root = Complex64::from_polar(1.0, det.arg() / 4.0);
    let su = u.scale(root.inv());
    let mut phase = root;

    let b = magic_basis();
    let bd = b.adjoint();
    let ub = bd * su * b;
    let m = ub.transpose() * ub;

    let re: Real4 = core::array::from_fn(|i| core::array::from_fn(|j| 0.5 * (m[(i, j)].re + m[(j, i)].re)));
    let im: Real4 = core::array::from_fn(|i| core::array::from_fn(|j| 0.5 * (m[(i, j)].im + m[(j, i)].im)));
    let mut p = simultaneous_diagonalizer(&re, &im);

    let pc = Mat4::from_real_rows(p);
    let d = pc.transpose() * m * pc;
    let mut off = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                off = off.max(d[(i, j)].norm());
            }
        }
    }
    if off > 1e-8 {
        return Err(Error::Decomposition("magic-basis matrix is not diagonalised"));
    }

    // Order eigenvectors by descending eigenphase.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| d[(y, y)].arg().total_cmp(&d[(x, x)].arg()));
    let phases2: [f64; 4] = core::array::from_fn(|k| d[(order[k], order[k])].arg());
    p = core::array::from_fn(|i| core::array::from_fn(|k| p[i][order[k]]));
    if Mat4::from_real_rows(p).det().re < 0.0 {
        for row in p.iter_mut() {
            row[3] = -row[3];
        }
    }

    let mut theta: [f64; 4] = core::array::from_fn(|k| phases2[k] / 2.0);
    let total: f64 = theta.iter().sum();
    theta[3] -= (total / PI).round() * PI;
    let residual_sum: f64 = theta.iter().sum();
    theta[3] -= residual_sum;

    let raw = coefficients_from_phases(theta);
    let pc = Mat4::from_real_rows(p);
    let half_inv = Mat4::diagonal(theta.map(|t| Complex64::from_polar(1.0, -t)));
    let k1 = b * (ub * pc * half_inv) * bd;
    let k2 = b * pc.transpose() * bd;

    let (mut l1_s, mut l1_p, ph1) = split_product(&k1)?;
    let (mut l2_s, mut l2_p, ph2) = split_product(&k2)?;
    phase *= ph1 * ph2;

    let coeffs = weyl::canonicalize_tracked(&raw, |mv| {
        l1_s = l1_s * mv.left.0;
        l1_p = l1_p * mv.left.1;
        l2_s = mv.right.0 * l2_s;
        l2_p = mv.right.1 * l2_p;
        phase *= mv.phase;
    });

    let data = CartanData { coeffs, raw_coeffs: raw, l1_s, l1_p, l2_s, l2_p, global_phase: phase };
    if data.reconstruct().max_abs_diff(u) > 1e-8 {
        return Err(Error::Decomposition("reconstruction does not match the input"));
    }
    Ok(data)
}

/// Weyl-chamber coefficients only.
pub fn weyl_coordinates(u: &Mat4) -> Result<CartanCoefficients> {
    kak_decompose(u).map(|d| d.coeffs)
}
