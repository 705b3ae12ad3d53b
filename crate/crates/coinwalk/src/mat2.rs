//! Dense 2×2 complex matrices.
//!
//! The coin space is two-dimensional, so almost all operator algebra in
//! this crate happens on 2×2 matrices: coin operators, basis rotations,
//! momentum-space propagators. [`Mat2`] is a plain value type with no
//! unitarity guarantee; validated wrappers live in [`crate::coin`].

use num_complex::Complex64;
use std::ops::{Index, Mul};

/// 2×2 complex matrix, row-major storage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    e: [Complex64; 4],
}

impl Mat2 {
    /// Builds a matrix from row-major entries `[m00, m01, m10, m11]`.
    pub const fn new(e: [Complex64; 4]) -> Self {
        Mat2 { e }
    }

    pub fn identity() -> Self {
        Mat2::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// diag(a, b).
    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new([a, zero, zero, b])
    }

    /// Row-major entries `[m00, m01, m10, m11]`.
    pub fn entries(&self) -> [Complex64; 4] {
        self.e
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new([
            self.e[0].conj(),
            self.e[2].conj(),
            self.e[1].conj(),
            self.e[3].conj(),
        ])
    }

    pub fn det(&self) -> Complex64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0] + self.e[3]
    }

    /// Matrix–vector product, `v` as a coin pair (↑, ↓).
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.e[0] * v[0] + self.e[1] * v[1],
            self.e[2] * v[0] + self.e[3] * v[1],
        ]
    }

    /// Entrywise scaling by a complex factor.
    pub fn scale(&self, z: Complex64) -> Self {
        Mat2::new([self.e[0] * z, self.e[1] * z, self.e[2] * z, self.e[3] * z])
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.e
            .iter()
            .zip(other.e.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of U†U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.e[2 * row + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let m = Mat2::new([c(0.3, 0.1), c(-0.2, 0.7), c(0.5, -0.4), c(0.9, 0.0)]);
        assert_eq!(Mat2::identity() * m, m);
        assert_eq!(m * Mat2::identity(), m);
    }

    #[test]
    fn adjoint_swaps_and_conjugates() {
        let m = Mat2::new([c(1.0, 2.0), c(3.0, 4.0), c(5.0, 6.0), c(7.0, 8.0)]);
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], c(5.0, -6.0));
        assert_eq!(a[(1, 0)], c(3.0, -4.0));
    }

    #[test]
    fn paulis_are_unitary_with_known_determinant() {
        let sx = Mat2::new([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(sx.is_unitary(1e-15));
        assert!((sx.det() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((sx.trace()).norm() < 1e-15);
    }

    #[test]
    fn apply_matches_explicit_product() {
        let m = Mat2::new([c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, -1.0)]);
        let v = m.apply([c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(v[0], c(0.0, 3.0));
        assert_eq!(v[1], c(1.0, 1.0));
    }
}
