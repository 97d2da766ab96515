//! Small dense complex matrices.
//!
//! Only the two sizes the problem needs exist as types: [`Mat2`] for single
//! qubit operators and [`Mat4`] for operators on the joint system. The joint
//! space is always ordered system first, probe second (`S ⊗ P`), so basis
//! index `2 * i_s + i_p` labels `|i_s⟩ ⊗ |i_p⟩`.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix<const N: usize> {
    #[cfg_attr(feature = "serde", serde(with = "rows"))]
    entries: [[Complex64; N]; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    pub const DIM: usize = N;

    pub const fn from_rows(entries: [[Complex64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn from_real_rows(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub const fn zeros() -> Self {
        Self { entries: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; N])
    }

    pub fn diagonal(d: [Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i][i] = v;
        }
        m
    }

    pub fn rows(&self) -> &[[Complex64; N]; N] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[j][i] = self.entries[i][j].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[j][i] = self.entries[i][j];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|x| *x *= k);
        m
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hilbert-Schmidt inner product `tr(self† other)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.entries.iter().flatten().zip(other.entries.iter().flatten()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn unitary_deviation(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// Hermitian, unit trace and positive semidefinite, all within `tol`.
    pub fn is_density(&self, tol: f64) -> bool {
        self.check_density(tol).is_ok()
    }

    pub fn check_density(&self, tol: f64) -> Result<()> {
        if !self.is_hermitian(tol) {
            return Err(Error::NotDensity { reason: "not Hermitian" });
        }
        if (self.trace() - ONE).norm() > tol {
            return Err(Error::NotDensity { reason: "trace differs from 1" });
        }
        let (vals, _) = linalg::hermitian_eigen(&self.hermitian_part());
        if vals.iter().any(|&v| v < -tol) {
            return Err(Error::NotDensity { reason: "negative eigenvalue" });
        }
        Ok(())
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitary_deviation();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_real(0.5)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let mut a = self.entries;
        let mut det = ONE;
        for col in 0..N {
            let pivot = (col..N).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap_or(col);
            if a[pivot][col].is_zero() {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for row in col + 1..N {
                let f = a[row][col] / a[col][col];
                for k in col..N {
                    let sub = f * a[col][k];
                    a[row][k] -= sub;
                }
            }
        }
        det
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    m.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

/// Kronecker product `a ⊗ b` with `a` acting on the system factor.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

/// Traces out the probe (second) factor.
pub fn partial_trace_probe(m: &Mat4) -> Mat2 {
    let mut r = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            r[(i, j)] = m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)];
        }
    }
    r
}

/// Traces out the system (first) factor.
pub fn partial_trace_system(m: &Mat4) -> Mat2 {
    let mut r = Mat2::zeros();
    for k in 0..2 {
        for l in 0..2 {
            r[(k, l)] = m[(k, l)] + m[(2 + k, 2 + l)];
        }
    }
    r
}

/// Inverse of [`kron`] for a product unitary: returns `(a, b, phase)` with
/// `m = phase · (a ⊗ b)` and `det a = det b = 1`.
pub fn split_product(m: &Mat4) -> Result<(Mat2, Mat2, Complex64)> {
    // The 2x2 block with the largest weight is proportional to b.
    let block = |bi: usize, bj: usize| {
        let mut b = Mat2::zeros();
        for k in 0..2 {
            for l in 0..2 {
                b[(k, l)] = m[(2 * bi + k, 2 * bj + l)];
            }
        }
        b
    };
    let (bi, bj) = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .max_by(|&(a, b), &(c, d)| block(a, b).norm().total_cmp(&block(c, d).norm()))
        .unwrap_or((0, 0));
    let blk = block(bi, bj);
    let det_blk = blk.det();
    if det_blk.norm() < 1e-14 {
        return Err(Error::Decomposition("local factor is singular"));
    }
    let b = blk.scale(det_blk.sqrt().inv());
    let mut a = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            // tr(b† block_ij) = 2 a_ij since b is unitary.
            a[(i, j)] = b.inner(&block(i, j)) * 0.5;
        }
    }
    let det_a = a.det();
    if det_a.norm() < 1e-14 {
        return Err(Error::Decomposition("local factor is singular"));
    }
    let root = det_a.sqrt();
    let a = a.scale(root.inv());
    let reconstructed = kron(&a, &b);
    if (m.max_abs_diff(&reconstructed.scale(root))) > 1e-7 {
        return Err(Error::Decomposition("operator is not a tensor product"));
    }
    Ok((a, b, root))
}

#[cfg(feature = "serde")]
mod rows {
    use alloc::vec::Vec;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(m: &[[Complex64; N]; N], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = m.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[[Complex64; N]; N], D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(serde::de::Error::custom("matrix has the wrong dimension"));
        }
        let mut out = [[Complex64::new(0.0, 0.0); N]; N];
        for (i, r) in rows.iter().enumerate() {
            for (j, z) in r.iter().enumerate() {
                out[i][j] = Complex64::new(z[0], z[1]);
            }
        }
        Ok(out)
    }
}
