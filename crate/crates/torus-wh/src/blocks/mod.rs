//! Closed-form functions on the surface: the Cayley factor, q, the two-zero
//! family r_nu, the half-plane units alpha_+-, the theta quotient S, and
//! evaluation of any of them on the contour grid.

mod alpha;
mod rational;
mod theta;

pub use alpha::{alpha_pm, AlphaPm};
pub use rational::{make_r_nu, Poly, RNu, RationalSurfaceFunction};
pub use theta::{make_s, ThetaEllipticFunction};

use crate::contour::{BoundaryFunction, GammaGrid};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::surface::{Sheet, SurfacePoint};
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// Something that can be evaluated at points of the surface.
pub trait SurfaceFunction: Send + Sync {
    fn eval(&self, p: &SurfacePoint) -> Result<C64>;

    /// Value over grid node `j` on the sheet with sign `sign` (+1 for sheet one).
    /// Implementations with a cheaper route through the grid data override this.
    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        self.eval(&node_point(grid, j, sign))
    }
}

/// The surface point over grid node `j`.
pub fn node_point(grid: &GammaGrid, j: usize, sign: f64) -> SurfacePoint {
    let node = &grid.nodes[j];
    match node.xi {
        None => SurfacePoint::Infinity(if sign > 0.0 { Sheet::One } else { Sheet::Two }),
        Some(x) => SurfacePoint::Finite {
            xi: C64::new(x, 0.0),
            tau: C64::new(sign * node.rho_scaled * (1.0 + x * x), 0.0),
        },
    }
}

/// Lattice coordinate of the surface point over node `j`: i t on sheet one and
/// 2K - i t on sheet two.
pub fn node_lattice_coordinate(grid: &GammaGrid, j: usize, sign: f64) -> C64 {
    let t = grid.t[j];
    if sign > 0.0 {
        C64::new(0.0, t)
    } else {
        C64::new(2.0 * grid.surface.k, -t)
    }
}

/// Samples `f` on both sheets of the contour.
pub fn eval_on_gamma(f: &dyn SurfaceFunction, grid: &Arc<GammaGrid>) -> Result<BoundaryFunction> {
    eval_on_gamma_with(Exec::default(), f, grid)
}

/// [`eval_on_gamma`] under an explicit execution policy.
pub fn eval_on_gamma_with(
    exec: Exec,
    f: &dyn SurfaceFunction,
    grid: &Arc<GammaGrid>,
) -> Result<BoundaryFunction> {
    let n = grid.n;
    let values = par::try_map_indexed(exec, 2 * n, |idx| {
        let (j, sign) = if idx < n { (idx, 1.0) } else { (idx - n, -1.0) };
        f.eval_node(grid, j, sign).map_err(|e| match e {
            Error::Pole(msg) => Error::PoleOnContour(msg),
            other => other,
        })
    })?;
    let (f1, f2) = values.split_at(n);
    BoundaryFunction::new(grid.clone(), f1.to_vec(), f2.to_vec())
}

/// A product of integer powers of other functions.
#[derive(Clone, Default)]
pub struct Product {
    pub factors: Vec<(Arc<dyn SurfaceFunction>, i64)>,
    pub constant: Option<C64>,
}

impl Product {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, f: Arc<dyn SurfaceFunction>, power: i64) -> Self {
        if power != 0 {
            self.factors.push((f, power));
        }
        self
    }

    pub fn scaled(mut self, c: C64) -> Self {
        self.constant = Some(self.constant.unwrap_or(C64::new(1.0, 0.0)) * c);
        self
    }

    fn combine<F: Fn(&dyn SurfaceFunction) -> Result<C64>>(&self, at: F) -> Result<C64> {
        let mut acc = self.constant.unwrap_or(C64::new(1.0, 0.0));
        for (f, p) in &self.factors {
            let v = at(f.as_ref())?;
            if *p < 0 && v.norm() == 0.0 {
                return Err(Error::Pole("negative power of a vanishing factor".into()));
            }
            acc *= v.powi(*p as i32);
        }
        Ok(acc)
    }
}

impl SurfaceFunction for Product {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        self.combine(|f| f.eval(p))
    }

    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        self.combine(|f| f.eval_node(grid, j, sign))
    }
}

/// f_*: the function composed with the sheet swap.
pub struct Starred(pub Arc<dyn SurfaceFunction>);

impl SurfaceFunction for Starred {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        self.0.eval(&p.star())
    }

    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        self.0.eval_node(grid, j, -sign)
    }
}

/// alpha_+^-1 (alpha_+)_*, an invertible plus function with sheet indices (-1, 1).
pub fn unit_u(params: &crate::surface::SurfaceParams) -> Product {
    let a: Arc<dyn SurfaceFunction> = Arc::new(alpha_pm(params, crate::contour::Side::Plus));
    Product::new().with(a.clone(), -1).with(Arc::new(Starred(a)), 1)
}

#[cfg(test)]
mod tests;
