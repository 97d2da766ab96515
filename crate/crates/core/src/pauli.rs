use num_complex::Complex64;

use crate::matrix::{kron, Mat2, Mat4, I, ONE, ZERO};

/// Cartesian axis of the Bloch sphere / Pauli index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub const fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub const fn from_index(i: usize) -> Option<Axis> {
        match i {
            0 => Some(Axis::X),
            1 => Some(Axis::Y),
            2 => Some(Axis::Z),
            _ => None,
        }
    }

    /// Unit vector along this axis.
    pub const fn unit(self) -> [f64; 3] {
        let mut v = [0.0; 3];
        v[self.index()] = 1.0;
        v
    }
}

/// Single-qubit Pauli label including the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => pauli(Axis::X),
            Pauli::Y => pauli(Axis::Y),
            Pauli::Z => pauli(Axis::Z),
        }
    }

    pub fn axis(self) -> Option<Axis> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(Axis::X),
            Pauli::Y => Some(Axis::Y),
            Pauli::Z => Some(Axis::Z),
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => Mat2::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        Axis::Y => Mat2::from_rows([[ZERO, -I], [I, ZERO]]),
        Axis::Z => Mat2::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `σ_k ⊗ σ_k`.
pub fn pauli_pair(axis: Axis) -> Mat4 {
    let s = pauli(axis);
    kron(&s, &s)
}

/// `σ_a ⊗ σ_b` for a two-letter Pauli word.
pub fn pauli_word(system: Pauli, probe: Pauli) -> Mat4 {
    kron(&system.matrix(), &probe.matrix())
}

/// `i σ_k`, an SU(2) element.
pub fn i_pauli(axis: Axis) -> Mat2 {
    pauli(axis).scale(I)
}

/// `n · σ` for a real 3-vector `n`.
pub fn dot_sigma(n: [f64; 3]) -> Mat2 {
    Axis::ALL.iter().fold(Mat2::zeros(), |acc, &a| acc + pauli(a).scale(Complex64::new(n[a.index()], 0.0)))
}
