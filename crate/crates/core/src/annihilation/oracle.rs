use crate::grassmann::Mono;
use crate::linalg::{mat_zero, Matrix};
use crate::module_vec::Parity;
use crate::scalar::{sign, Scalar};

use super::vector_field::{SuperFunction, VectorField};

/// A vector field as a matrix on `{t^m ξ_I : m ≤ T}`, columns flagged where
/// the image leaves the truncation.
#[derive(Clone, Debug)]
pub struct ConcreteDerivation<S> {
    n: usize,
    truncation: u32,
    parity: Parity,
    matrix: Matrix<S>,
    overflow: Vec<bool>,
}

impl<S: Scalar> ConcreteDerivation<S> {
    pub fn index(n: usize, m: u32, mono: Mono) -> usize {
        ((m as usize) << n) + mono as usize
    }

    pub fn dim(n: usize, truncation: u32) -> usize {
        (truncation as usize + 1) << n
    }

    pub fn from_field(field: &VectorField<S>, truncation: u32) -> Self {
        let n = field.n();
        let d = Self::dim(n, truncation);
        let mut matrix = mat_zero::<S>(d, d);
        let mut overflow = vec![false; d];
        for m in 0..=truncation {
            for mono in 0..(1u32 << n) {
                let col = Self::index(n, m, mono);
                let img = field.apply(&SuperFunction::monomial(n, m, mono, S::one()));
                for (j, r, c) in img.terms() {
                    if j > truncation {
                        overflow[col] = true;
                    } else {
                        matrix[Self::index(n, j, r)][col] = c.clone();
                    }
                }
            }
        }
        let parity = field.parity().expect("homogeneous field");
        Self { n, truncation, parity, matrix, overflow }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn overflow(&self) -> &[bool] {
        &self.overflow
    }

    fn column_valid_after(&self, other: &Self, col: usize) -> bool {
        !other.overflow[col]
            && (0..other.matrix.len()).all(|r| other.matrix[r][col].is_zero() || !self.overflow[r])
    }

    /// `[D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1`; a column is flagged unless both
    /// composites are computed without touching overflowed columns.
    pub fn commutator(&self, other: &Self) -> Self {
        let d = self.matrix.len();
        let s = sign::<S>(self.parity.both_odd(other.parity));
        let mut matrix = mat_zero::<S>(d, d);
        let mut overflow = vec![false; d];
        for col in 0..d {
            if !self.column_valid_after(other, col) || !other.column_valid_after(self, col) {
                overflow[col] = true;
                continue;
            }
            for (k, (a, b)) in (0..d).map(|k| (&other.matrix[k][col], &self.matrix[k][col])).enumerate() {
                if !a.is_zero() {
                    for r in 0..d {
                        let x = self.matrix[r][k].clone() * a.clone();
                        matrix[r][col] = matrix[r][col].clone() + x;
                    }
                }
                if !b.is_zero() {
                    for r in 0..d {
                        let x = other.matrix[r][k].clone() * b.clone() * s.clone();
                        matrix[r][col] = matrix[r][col].clone() - x;
                    }
                }
            }
        }
        Self { n: self.n, truncation: self.truncation, parity: self.parity + other.parity, matrix, overflow }
    }

    /// Compares on columns unflagged in both; returns `(agree, compared, masked)`.
    pub fn compare(&self, other: &Self) -> (bool, usize, usize) {
        let mut compared = 0;
        let mut masked = 0;
        let mut agree = true;
        for col in 0..self.matrix.len() {
            if self.overflow[col] || other.overflow[col] {
                masked += 1;
                continue;
            }
            compared += 1;
            if (0..self.matrix.len()).any(|r| self.matrix[r][col] != other.matrix[r][col]) {
                agree = false;
            }
        }
        (agree, compared, masked)
    }
}
