//! Scalar factorization on the contour: classification by sheet indices and
//! the torus invariant, and the special, holomorphic and meromorphic engines.

mod engine;
mod verify;

pub use engine::{
    classify, factor_batch, factorize, holomorphic_factorization, meromorphic_factorization,
    special_factorization,
};
pub use verify::{verify_factorization, VerificationReport};

use crate::blocks::{
    alpha_pm, eval_on_gamma, make_s, unit_u, Product, RNu, RationalSurfaceFunction, SurfaceFunction,
};
use crate::contour::{BoundaryFunction, GammaGrid, Side};
use crate::error::Result;
use crate::surface::{Region, SurfaceParams};
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// Numerical tolerances of the engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance on torus coordinates (lattice membership, region ties).
    pub lattice: f64,
    /// Relative reconstruction residual accepted by the verifier.
    pub residual: f64,
}

impl Tolerances {
    pub fn for_surface(params: &SurfaceParams) -> Self {
        Self { lattice: params.default_tol_lattice(), residual: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorizationKind {
    /// No middle factor at all.
    Special,
    /// Rational middle factor, outer factors bounded and invertible.
    Holomorphic,
    /// Outer factors alpha_-F_- and alpha_+F_+, no middle factor.
    MSpecial,
    /// Outer factors carry alpha_+- poles and a rational middle factor remains.
    Meromorphic,
}

impl FactorizationKind {
    pub fn name(self) -> &'static str {
        match self {
            FactorizationKind::Special => "Special",
            FactorizationKind::Holomorphic => "Holomorphic",
            FactorizationKind::MSpecial => "MSpecial",
            FactorizationKind::Meromorphic => "Meromorphic",
        }
    }
}

/// Indices, normalization exponents and the invariant of a symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationClass {
    pub n1: i64,
    pub n2: i64,
    /// Exponents of the index normalization f w^-k_tilde S^l u^m.
    pub k_tilde: i64,
    pub l: u8,
    pub m_exp: i64,
    /// Invariant of the normalized symbol, raw and reduced.
    pub beta: C64,
    pub beta_tilde: C64,
    pub region: Region,
    pub k: u32,
    pub kind: FactorizationKind,
}

/// Symbolic description of the middle factor and of the block factors carried
/// by the outer factors.
///
/// f = f_- * r_nu^r_power * w^cayley_power * S^s_power * f_+, with
/// f_- = core_- * alpha_-^alpha_minus and f_+ = alpha_+^alpha_plus * core_+ * u^u_power.
#[derive(Debug, Clone, PartialEq)]
pub struct MiddleFactor {
    pub r_nu: Option<RNu>,
    pub r_power: u32,
    pub cayley_power: i64,
    pub s_power: i64,
    pub u_power: i64,
    pub alpha_minus: u32,
    pub alpha_plus: u32,
}

impl MiddleFactor {
    fn function(&self, params: &SurfaceParams) -> Product {
        let mut p = Product::new()
            .with(Arc::new(RationalSurfaceFunction::cayley(params)), self.cayley_power)
            .with(Arc::new(make_s(params)), self.s_power);
        if let Some(r) = &self.r_nu {
            p = p.with(Arc::new(r.clone()), self.r_power as i64);
        }
        p
    }

    /// Samples of the rational middle factor on the grid.
    pub fn samples(&self, grid: &Arc<GammaGrid>) -> Result<BoundaryFunction> {
        eval_on_gamma(&self.function(&grid.surface), grid)
    }

    /// True if there is no middle factor at all.
    pub fn is_trivial(&self) -> bool {
        self.r_power == 0 && self.cayley_power == 0 && self.s_power == 0
    }

    /// Short human-readable form, e.g. "r_nu^1 * w^-2".
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.r_power > 0 {
            parts.push(format!("r_nu^{}", self.r_power));
        }
        if self.cayley_power != 0 {
            parts.push(format!("w^{}", self.cayley_power));
        }
        if self.s_power != 0 {
            parts.push(format!("S^{}", self.s_power));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

/// Result of a scalar factorization f = f_- * middle * f_+.
#[derive(Debug, Clone)]
pub struct ScalarFactorization {
    pub f_minus: BoundaryFunction,
    pub f_plus: BoundaryFunction,
    /// Exponential parts: bounded, invertible, analytic on their side.
    pub core_minus: BoundaryFunction,
    pub core_plus: BoundaryFunction,
    pub middle: MiddleFactor,
    pub class: FactorizationClass,
    /// max |f - f_- middle f_+| over the grid.
    pub residual: f64,
    /// Distance moved when an invariant near the edge Re = 2K was snapped onto it.
    pub edge_snap: Option<f64>,
}

impl ScalarFactorization {
    /// f_- * middle * f_+ on the grid.
    pub fn reconstruct(&self) -> Result<BoundaryFunction> {
        let m = self.middle.samples(&self.f_minus.grid)?;
        Ok(self.f_minus.mul(&m).mul(&self.f_plus))
    }

    /// core_+ * u^u_power: the plus factor without its alpha_+ attachments.
    pub fn plus_without_alpha(&self) -> Result<BoundaryFunction> {
        let grid = &self.core_plus.grid;
        let u = eval_on_gamma(&unit_u(&grid.surface), grid)?;
        Ok(self.core_plus.mul(&u.powi(self.middle.u_power)))
    }
}

pub(crate) fn sample(f: &dyn SurfaceFunction, grid: &Arc<GammaGrid>) -> Result<BoundaryFunction> {
    eval_on_gamma(f, grid)
}

pub(crate) fn alpha_samples(grid: &Arc<GammaGrid>, side: Side) -> Result<BoundaryFunction> {
    sample(&alpha_pm(&grid.surface, side), grid)
}
