//! 2x2 layer: matrix symbols in the normal form [[alpha, delta], [q delta, alpha]]
//! with q = p1/p2, their scalar Σ-symbols, the closed-form middle factors, the
//! assembled Wiener-Hopf factorization and the Toeplitz kernel.

mod assemble;
mod kernel;
pub mod mat2;
mod middle;
pub mod presets;

pub use assemble::{commutative_canonical_test, matrix_wh_factorization, CanonicalTest, MatrixFactorization};
pub use kernel::{toeplitz_kernel, KernelBasis, KernelReport};
pub use mat2::{Mat2, MatrixSamples};
pub use middle::{middle_factor_wh, MiddleForm, MiddleWh, NU_ZERO_TOL};

use crate::contour::{sheet_indices, BoundaryFunction, GammaGrid};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::surface::SurfaceParams;
use num_complex::Complex64 as C64;
use std::fmt;
use std::sync::Arc;

const I: C64 = C64::new(0.0, 1.0);

/// A scalar function on the extended real line; `None` is the point at infinity.
pub trait LineFunction: Send + Sync {
    fn eval_line(&self, xi: Option<f64>) -> Result<C64>;
}

/// Adapter for closures.
pub struct LineFn<F>(pub F);

impl<F> LineFunction for LineFn<F>
where
    F: Fn(Option<f64>) -> Result<C64> + Send + Sync,
{
    fn eval_line(&self, xi: Option<f64>) -> Result<C64> {
        (self.0)(xi)
    }
}

/// An entry of a matrix symbol: evaluable, or sampled on a grid's nodes.
#[derive(Clone)]
pub enum Entry {
    Function(Arc<dyn LineFunction>),
    Samples(Vec<C64>),
}

impl Entry {
    pub fn constant(c: C64) -> Self {
        Entry::Function(Arc::new(LineFn(move |_| Ok(c))))
    }

    pub fn sample(&self, grid: &GammaGrid) -> Result<Vec<C64>> {
        match self {
            Entry::Function(f) => par::try_map_indexed(Exec::default(), grid.n, |j| f.eval_line(grid.xi(j))),
            Entry::Samples(v) if v.len() == grid.n => Ok(v.clone()),
            Entry::Samples(v) => Err(Error::Config(format!(
                "{} samples given for a grid of {} nodes",
                v.len(),
                grid.n
            ))),
        }
    }
}

/// G = [[alpha, delta], [q delta, alpha]].
#[derive(Clone)]
pub struct MatrixSymbol {
    pub alpha: Entry,
    pub delta: Entry,
    pub params: SurfaceParams,
    /// Closed forms of the eigenvalues alpha +- rho delta/p2, when known. They
    /// avoid the cancellation in alpha - rho delta/p2 when one eigenvalue is
    /// exponentially small.
    pub eigenvalues: Option<[Entry; 2]>,
}

impl fmt::Debug for MatrixSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |e: &Entry| match e {
            Entry::Function(_) => "function",
            Entry::Samples(_) => "samples",
        };
        f.debug_struct("MatrixSymbol")
            .field("k0", &self.params.k0)
            .field("alpha", &kind(&self.alpha))
            .field("delta", &kind(&self.delta))
            .finish()
    }
}

/// q = p1/p2 at a real point, 1 at infinity.
pub fn q_at(params: &SurfaceParams, xi: Option<f64>) -> C64 {
    let k0 = params.k0;
    xi.map_or(C64::new(1.0, 0.0), |x| {
        let x = C64::new(x, 0.0);
        (x + I) * (x + I * k0) / ((x - I) * (x - I * k0))
    })
}

/// (p2/rho, p1/rho) at node j; both tend to 1 at infinity.
fn p_over_rho(grid: &GammaGrid, j: usize) -> (C64, C64) {
    let k0 = grid.surface.k0;
    match grid.xi(j) {
        None => (C64::new(1.0, 0.0), C64::new(1.0, 0.0)),
        Some(x) => {
            let rho = grid.nodes[j].rho_scaled * (1.0 + x * x);
            let x = C64::new(x, 0.0);
            ((x - I) * (x - I * k0) / rho, (x + I) * (x + I * k0) / rho)
        }
    }
}

impl MatrixSymbol {
    pub fn new(params: &SurfaceParams, alpha: Arc<dyn LineFunction>, delta: Arc<dyn LineFunction>) -> Self {
        Self { alpha: Entry::Function(alpha), delta: Entry::Function(delta), params: *params, eigenvalues: None }
    }

    pub fn from_samples(params: &SurfaceParams, alpha: Vec<C64>, delta: Vec<C64>) -> Self {
        Self { alpha: Entry::Samples(alpha), delta: Entry::Samples(delta), params: *params, eigenvalues: None }
    }

    /// Matrix values on the grid nodes.
    pub fn samples(&self, grid: &Arc<GammaGrid>) -> Result<MatrixSamples> {
        let a = self.alpha.sample(grid)?;
        let d = self.delta.sample(grid)?;
        Ok(MatrixSamples::from_fn(grid.clone(), |j| {
            let q = q_at(&self.params, grid.xi(j));
            Mat2::new(a[j], d[j], q * d[j], a[j])
        }))
    }

    /// Winding number of det G = g g_* along the line.
    pub fn det_index(&self, grid: &Arc<GammaGrid>) -> Result<i64> {
        let (n1, n2) = sheet_indices(&sigma_symbol(self, grid)?)?;
        Ok(n1 + n2)
    }
}

/// The Σ-symbol g = alpha + (tau/p2) delta on both sheets.
pub fn sigma_symbol(g: &MatrixSymbol, grid: &Arc<GammaGrid>) -> Result<BoundaryFunction> {
    if let Some([g1, g2]) = &g.eigenvalues {
        return BoundaryFunction::new(grid.clone(), g1.sample(grid)?, g2.sample(grid)?);
    }
    let a = g.alpha.sample(grid)?;
    let d = g.delta.sample(grid)?;
    Ok(BoundaryFunction::from_fn(grid.clone(), |j, sg| {
        let (p2r, _) = p_over_rho(grid, j);
        a[j] + sg * d[j] / p2r
    }))
}

/// 𝓘^-1(g) = [[g_E, p2 g_O], [p1 g_O, g_E]] with g = g_E + tau g_O.
pub fn inverse_iso(g: &BoundaryFunction) -> MatrixSymbol {
    let grid = &g.grid;
    let even = g.even();
    let delta = (0..grid.n)
        .map(|j| p_over_rho(grid, j).0 * 0.5 * (g.f1[j] - g.f2[j]))
        .collect();
    MatrixSymbol::from_samples(&grid.surface, even, delta)
}

/// Matrix samples of 𝓘^-1(g).
pub fn inverse_iso_samples(g: &BoundaryFunction) -> MatrixSamples {
    let grid = &g.grid;
    MatrixSamples::from_fn(grid.clone(), |j| {
        let (p2r, p1r) = p_over_rho(grid, j);
        let e = 0.5 * (g.f1[j] + g.f2[j]);
        let o = 0.5 * (g.f1[j] - g.f2[j]);
        Mat2::new(e, p2r * o, p1r * o, e)
    })
}

/// 𝓘(G): the scalar with even part alpha and odd part delta/p2.
pub fn iso(g: &MatrixSamples) -> BoundaryFunction {
    let grid = &g.grid;
    BoundaryFunction::from_fn(grid.clone(), |j, sg| {
        let m = &g.values[j].0;
        m[0][0] + sg * m[0][1] / p_over_rho(grid, j).0
    })
}

#[cfg(test)]
mod tests;
