use super::middle::{middle_factor_wh, MiddleForm, MiddleWh};
use super::{inverse_iso_samples, sigma_symbol, Mat2, MatrixSamples, MatrixSymbol};
use crate::contour::GammaGrid;
use crate::error::Result;
use crate::scalarfact::{
    classify, holomorphic_factorization, meromorphic_factorization, FactorizationKind, ScalarFactorization,
    Tolerances,
};
use std::sync::Arc;

/// G = G_- D G_+ with D = diag(w^k1, w^k2), w = (xi - i)/(xi + i).
#[derive(Debug, Clone)]
pub struct MatrixFactorization {
    pub g_minus: MatrixSamples,
    pub g_plus: MatrixSamples,
    /// 𝓘^-1 of the sampled scalar outer factors.
    pub outer_minus: MatrixSamples,
    pub outer_plus: MatrixSamples,
    /// Exact factors of the middle matrix.
    pub middle: MiddleWh,
    /// Power of w split off the determinant before choosing the middle form.
    pub strip: i64,
    pub partial_indices: (i64, i64),
    pub scalar: ScalarFactorization,
    /// max |G - G_- D G_+| / max |G|.
    pub residual: f64,
    pub provenance: Vec<String>,
}

impl MatrixFactorization {
    pub fn is_canonical(&self) -> bool {
        self.partial_indices == (0, 0)
    }

    /// D on the grid nodes.
    pub fn d_samples(&self) -> MatrixSamples {
        let grid = self.g_minus.grid.clone();
        let (a, b) = self.partial_indices;
        MatrixSamples::from_fn(grid.clone(), |j| {
            let w = grid.nodes[j].w;
            Mat2::diag(w.powi(a as i32), w.powi(b as i32))
        })
    }

    pub fn reconstruct(&self) -> MatrixSamples {
        self.g_minus.mul(&self.d_samples()).mul(&self.g_plus)
    }
}

fn node_matrices<F: Fn(Option<f64>) -> Mat2>(grid: &Arc<GammaGrid>, f: F) -> MatrixSamples {
    MatrixSamples::from_fn(grid.clone(), |j| f(grid.xi(j)))
}

/// Full pipeline: Σ-symbol, scalar factorization with the alpha units, lift of
/// the outer factors, closed-form factors of the middle matrix.
pub fn matrix_wh_factorization(
    g: &MatrixSymbol,
    grid: &Arc<GammaGrid>,
    tol: &Tolerances,
) -> Result<MatrixFactorization> {
    let mut provenance = vec!["sigma-symbol".to_string()];
    let sig = sigma_symbol(g, grid)?;
    let scalar = meromorphic_factorization(&sig, tol)?;
    provenance.push(format!("scalar factorization ({})", scalar.class.kind.name()));
    let mid = &scalar.middle;
    let form = MiddleForm::from_exponents(mid.alpha_minus, mid.r_power, mid.alpha_plus)?;
    let middle = middle_factor_wh(&g.params, form, mid.r_nu.as_ref())?;
    provenance.push(format!("middle form {}", form.name()));
    if middle.degenerate && form.needs_r() {
        provenance.push("branch-point member r_0".into());
    }
    let strip = scalar.class.k_tilde;
    if strip != 0 {
        provenance.push(format!("determinant index strip w^{strip}"));
    }
    let outer_minus = inverse_iso_samples(&scalar.core_minus);
    let outer_plus = inverse_iso_samples(&scalar.plus_without_alpha()?);
    provenance.push("outer factors lifted by the inverse isomorphism".into());
    let mm = node_matrices(grid, |x| middle.factors(x).0);
    let mp = node_matrices(grid, |x| middle.factors(x).1);
    let (a, b) = middle.d_exponents();
    let mut fact = MatrixFactorization {
        g_minus: outer_minus.mul(&mm),
        g_plus: mp.mul(&outer_plus),
        outer_minus,
        outer_plus,
        middle,
        strip,
        partial_indices: (a + strip, b + strip),
        scalar,
        residual: 0.0,
        provenance,
    };
    let target = g.samples(grid)?;
    fact.residual = fact.reconstruct().max_diff(&target) / target.max_abs().max(1e-300);
    Ok(fact)
}

/// Whether G has a canonical factorization with both factors in the class,
/// which happens exactly when its Σ-symbol has a special factorization.
#[derive(Debug, Clone)]
pub struct CanonicalTest {
    pub canonical: bool,
    pub kind: FactorizationKind,
    /// (𝓘^-1(g_-), 𝓘^-1(g_+)) when canonical.
    pub factors: Option<(MatrixSamples, MatrixSamples)>,
}

pub fn commutative_canonical_test(
    g: &MatrixSymbol,
    grid: &Arc<GammaGrid>,
    tol: &Tolerances,
) -> Result<CanonicalTest> {
    let sig = sigma_symbol(g, grid)?;
    let kind = classify(&sig, tol)?.kind;
    if kind != FactorizationKind::Special {
        return Ok(CanonicalTest { canonical: false, kind, factors: None });
    }
    let f = holomorphic_factorization(&sig, tol)?;
    let factors = (inverse_iso_samples(&f.f_minus), inverse_iso_samples(&f.f_plus));
    Ok(CanonicalTest { canonical: true, kind, factors: Some(factors) })
}
