use crate::contour::GammaGrid;
use num_complex::Complex64 as C64;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

fn c0() -> C64 {
    C64::new(0.0, 0.0)
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::scalar(C64::new(1.0, 0.0))
    }

    pub fn scalar(c: C64) -> Self {
        Self::diag(c, c)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, c0(), c0(), d)
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Inverse via the adjugate; non-finite entries signal a singular matrix.
    pub fn inv(&self) -> Self {
        let m = &self.0;
        let d = self.det();
        Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }

    pub fn scale(&self, c: C64) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * c, m[0][1] * c, m[1][0] * c, m[1][1] * c)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(C64::new(-1.0, 0.0))
    }
}

/// Matrix values over the real nodes of a grid (one sheet: the matrix symbol
/// lives on the extended real line).
#[derive(Debug, Clone)]
pub struct MatrixSamples {
    pub grid: Arc<GammaGrid>,
    pub values: Vec<Mat2>,
}

impl MatrixSamples {
    pub fn from_fn<F: Fn(usize) -> Mat2>(grid: Arc<GammaGrid>, f: F) -> Self {
        let values = (0..grid.n).map(f).collect();
        Self { grid, values }
    }

    pub fn zip_with<F: Fn(&Mat2, &Mat2) -> Mat2>(&self, other: &Self, f: F) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Self { grid: self.grid.clone(), values }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a * *b)
    }

    pub fn inv(&self) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(Mat2::inv).collect() }
    }

    pub fn det(&self) -> Vec<C64> {
        self.values.iter().map(Mat2::det).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Vec<C64> {
        self.values.iter().map(|m| m.0[i][j]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(Mat2::max_abs).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (*a - *b).max_abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let m = Mat2::new(C64::new(1.0, 2.0), C64::new(0.5, 0.0), C64::new(-1.0, 1.0), C64::new(3.0, -1.0));
        assert!((m * m.inv() - Mat2::identity()).max_abs() < 1e-15);
        let p = m * m;
        assert!((p.det() - m.det() * m.det()).norm() < 1e-13);
        let v = m.apply([C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(v, [m.0[0][0], m.0[1][0]]);
    }
}
