use super::grid::GammaGrid;
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// A function on the two-sheet contour, stored as samples over a shared grid.
///
/// `f1` holds the sheet-one values (tau = +rho), `f2` the sheet-two values.
#[derive(Debug, Clone)]
pub struct BoundaryFunction {
    pub grid: Arc<GammaGrid>,
    pub f1: Vec<C64>,
    pub f2: Vec<C64>,
}

impl BoundaryFunction {
    pub fn new(grid: Arc<GammaGrid>, f1: Vec<C64>, f2: Vec<C64>) -> Result<Self> {
        if f1.len() != grid.n || f2.len() != grid.n {
            return Err(Error::Config(format!(
                "sample vectors of length {} and {} on a grid of {}",
                f1.len(),
                f2.len(),
                grid.n
            )));
        }
        Ok(Self { grid, f1, f2 })
    }

    pub fn constant(grid: Arc<GammaGrid>, c: C64) -> Self {
        let n = grid.n;
        Self { grid, f1: vec![c; n], f2: vec![c; n] }
    }

    /// Samples a function of (node index, sheet sign).
    pub fn from_fn<F: Fn(usize, f64) -> C64>(grid: Arc<GammaGrid>, f: F) -> Self {
        let f1 = (0..grid.n).map(|j| f(j, 1.0)).collect();
        let f2 = (0..grid.n).map(|j| f(j, -1.0)).collect();
        Self { grid, f1, f2 }
    }

    /// Rebuilds a function from its even part and the scaled odd part
    /// lambda_+^2 f_O = kappa (f1 - f2)/2.
    pub fn from_parts(grid: Arc<GammaGrid>, even: &[C64], odd_scaled: &[C64]) -> Self {
        let f1 = (0..grid.n)
            .map(|j| even[j] + odd_scaled[j] / grid.nodes[j].kappa)
            .collect();
        let f2 = (0..grid.n)
            .map(|j| even[j] - odd_scaled[j] / grid.nodes[j].kappa)
            .collect();
        Self { grid, f1, f2 }
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    /// f_E = (f1 + f2)/2.
    pub fn even(&self) -> Vec<C64> {
        self.f1.iter().zip(&self.f2).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// f_O = (f1 - f2)/(2 rho), zero at infinity.
    pub fn odd(&self) -> Vec<C64> {
        (0..self.n())
            .map(|j| {
                let node = &self.grid.nodes[j];
                match node.xi {
                    Some(x) => (self.f1[j] - self.f2[j]) / (2.0 * node.rho_scaled * (1.0 + x * x)),
                    None => C64::new(0.0, 0.0),
                }
            })
            .collect()
    }

    /// (xi + i)^2 f_O, finite at infinity.
    pub fn odd_scaled(&self) -> Vec<C64> {
        (0..self.n())
            .map(|j| 0.5 * self.grid.nodes[j].kappa * (self.f1[j] - self.f2[j]))
            .collect()
    }

    /// The involution: swaps the sheets.
    pub fn star(&self) -> Self {
        Self { grid: self.grid.clone(), f1: self.f2.clone(), f2: self.f1.clone() }
    }

    pub fn map<F: Fn(C64) -> C64>(&self, f: F) -> Self {
        Self {
            grid: self.grid.clone(),
            f1: self.f1.iter().map(|&v| f(v)).collect(),
            f2: self.f2.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with<F: Fn(C64, C64) -> C64>(&self, other: &Self, f: F) -> Self {
        Self {
            grid: self.grid.clone(),
            f1: self.f1.iter().zip(&other.f1).map(|(&a, &b)| f(a, b)).collect(),
            f2: self.f2.iter().zip(&other.f2).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a / b)
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|v| v * c)
    }

    pub fn recip(&self) -> Self {
        self.map(|v| 1.0 / v)
    }

    pub fn exp(&self) -> Self {
        self.map(|v| v.exp())
    }

    pub fn powi(&self, k: i64) -> Self {
        self.map(|v| v.powi(k as i32))
    }

    /// Largest modulus over both sheets.
    pub fn max_abs(&self) -> f64 {
        self.f1.iter().chain(&self.f2).map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_abs(&self) -> f64 {
        self.f1.iter().chain(&self.f2).map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }

    /// max |self - other| over both sheets.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.f1
            .iter()
            .zip(&other.f1)
            .chain(self.f2.iter().zip(&other.f2))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn sheet(&self, sheet: u8) -> &[C64] {
        if sheet == 1 {
            &self.f1
        } else {
            &self.f2
        }
    }
}

/// (f_E, f_O) with f = f_E + tau f_O.
pub fn decompose(f: &BoundaryFunction) -> (Vec<C64>, Vec<C64>) {
    (f.even(), f.odd())
}
