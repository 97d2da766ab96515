//! Eigen solvers, the 3x3 SVD and the spectral matrix exponential.
//!
//! Everything here is Jacobi based. The matrices are at most 4x4 so the
//! cyclic sweeps converge in a handful of iterations and the results are
//! deterministic.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::matrix::{Matrix, ONE, ZERO};

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary whose columns are
/// the matching eigenvectors. Only the Hermitian part of `h` is used.
pub fn hermitian_eigen<const N: usize>(h: &Matrix<N>) -> ([f64; N], Matrix<N>) {
    let mut a = h.hermitian_part();
    let mut v = Matrix::<N>::identity();
    let scale = a.norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let u = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                // Columns: V = D(1, conj u) · R(theta).
                let ub = u.conj();
                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ub * s;
                    a[(k, q)] = akp * s + akq * ub * c;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * u * s;
                    a[(q, k)] = apk * s + aqk * u * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ub * s;
                    v[(k, q)] = vkp * s + vkq * ub * c;
                }
            }
        }
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let mut vals = [0.0; N];
    let mut vecs = Matrix::<N>::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = a[(src, src)].re;
        for k in 0..N {
            vecs[(k, dst)] = v[(k, src)];
        }
    }
    (vals, vecs)
}

/// Eigen-decomposition of a real symmetric matrix, ascending eigenvalues,
/// eigenvectors as columns of an orthogonal matrix.
pub fn symmetric_eigen<const N: usize>(m: &[[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut a = *m;
    for i in 0..N {
        for j in i + 1..N {
            let s = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = s;
            a[j][i] = s;
        }
    }
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = 0.5 * (2.0 * apq).atan2(a[q][q] - a[p][p]);
                let (s, c) = theta.sin_cos();
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for k in 0..N {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = c * x - s * y;
                    a[q][k] = s * x + c * y;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let mut vals = [0.0; N];
    let mut vecs = [[0.0; N]; N];
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = a[src][src];
        for k in 0..N {
            vecs[k][dst] = v[k][src];
        }
    }
    (vals, vecs)
}

/// `e^{-i h t}` through the spectral decomposition of the Hermitian `h`.
pub fn mat_exp<const N: usize>(h: &Matrix<N>, t: f64) -> Result<Matrix<N>> {
    h.check_hermitian(1e-9)?;
    if t == 0.0 {
        return Ok(Matrix::identity());
    }
    let (vals, vecs) = hermitian_eigen(h);
    let mut phases = [ONE; N];
    for (p, &l) in phases.iter_mut().zip(vals.iter()) {
        *p = Complex64::from_polar(1.0, -l * t);
    }
    Ok(vecs * Matrix::diagonal(phases) * vecs.adjoint())
}

/// Singular value decomposition `A = U diag(s) Vᵀ` of a real 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Svd3 {
    /// Left singular vectors as columns; always a proper rotation.
    pub u: Mat3,
    /// Singular values, descending, non-negative.
    pub s: Vec3,
    /// Right singular vectors as columns.
    pub v: Mat3,
}

/// One-sided Jacobi SVD for a fixed 3x3 matrix.
pub fn svd3(a: &Mat3) -> Svd3 {
    let mut w = *a;
    let mut v = identity3();
    let scale = frob3(a).max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..3 {
                let alpha: f64 = (0..3).map(|k| w[k][p] * w[k][p]).sum();
                let beta: f64 = (0..3).map(|k| w[k][q] * w[k][q]).sum();
                let gamma: f64 = (0..3).map(|k| w[k][p] * w[k][q]).sum();
                if gamma.abs() <= 1e-17 * scale * scale || gamma.abs() <= 1e-16 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for row in w.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec3 = core::array::from_fn(|j| (0..3).map(|k| w[k][j] * w[k][j]).sum::<f64>().sqrt());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let mut s = [0.0; 3];
    let mut u = [[0.0; 3]; 3];
    let mut vs = [[0.0; 3]; 3];
    let tiny = 1e-14 * scale;
    let mut filled = [false; 3];
    for (dst, &src) in order.iter().enumerate() {
        s[dst] = norms[src];
        for k in 0..3 {
            vs[k][dst] = v[k][src];
        }
        if norms[src] > tiny {
            for k in 0..3 {
                u[k][dst] = w[k][src] / norms[src];
            }
            filled[dst] = true;
        }
    }
    complete_orthonormal(&mut u, &filled);
    if det3(&u) < 0.0 {
        for k in 0..3 {
            u[k][2] = -u[k][2];
            vs[k][2] = -vs[k][2];
        }
    }
    Svd3 { u, s, v: vs }
}

/// Fills the unset columns of `m` so that its columns are orthonormal.
fn complete_orthonormal(m: &mut Mat3, filled: &[bool; 3]) {
    let col = |m: &Mat3, j: usize| -> Vec3 { [m[0][j], m[1][j], m[2][j]] };
    let set = |m: &mut Mat3, j: usize, c: Vec3| {
        for k in 0..3 {
            m[k][j] = c[k];
        }
    };
    // Re-orthonormalise the filled columns first (Gram-Schmidt).
    let mut basis: [Option<Vec3>; 3] = [None; 3];
    for j in 0..3 {
        if filled[j] {
            let mut c = col(m, j);
            for b in basis.iter().flatten() {
                c = sub3(c, scale3(*b, dot3(c, *b)));
            }
            let n = norm3(c);
            if n > 1e-8 {
                let c = scale3(c, 1.0 / n);
                set(m, j, c);
                basis[j] = Some(c);
            }
        }
    }
    for j in 0..3 {
        if basis[j].is_some() {
            continue;
        }
        // Pick the coordinate axis least aligned with the existing basis.
        let mut best = [0.0; 3];
        let mut best_norm = -1.0;
        for e in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
            let mut c = e;
            for b in basis.iter().flatten() {
                c = sub3(c, scale3(*b, dot3(c, *b)));
            }
            let n = norm3(c);
            if n > best_norm {
                best_norm = n;
                best = scale3(c, 1.0 / n);
            }
        }
        set(m, j, best);
        basis[j] = Some(best);
    }
}

pub fn identity3() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn add3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale3(a: Vec3, k: f64) -> Vec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn mat3_vec(m: &Mat3, x: Vec3) -> Vec3 {
    [dot3(m[0], x), dot3(m[1], x), dot3(m[2], x)]
}

pub fn mat3_tvec(m: &Mat3, x: Vec3) -> Vec3 {
    core::array::from_fn(|j| (0..3).map(|k| m[k][j] * x[k]).sum())
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    core::array::from_fn(|i| core::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn transpose3(a: &Mat3) -> Mat3 {
    core::array::from_fn(|i| core::array::from_fn(|j| a[j][i]))
}

pub fn det3(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn frob3(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}
