use super::{sigma_symbol, MatrixSymbol};
use crate::contour::{beta_general, riesz_project, sheet_indices, BoundaryFunction, GammaGrid, Side};
use crate::error::{Error, Result};
use crate::scalarfact::{classify, holomorphic_factorization, Tolerances};
use crate::surface::lattice_distance;
use num_complex::Complex64 as C64;
use std::sync::Arc;

const I: C64 = C64::new(0.0, 1.0);

/// A generator of the one-dimensional kernel, as samples on the grid nodes.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub phi_plus: [Vec<C64>; 2],
    pub phi_minus: [Vec<C64>; 2],
    /// lambda_+^-1 phi_plus, the generator in the Hardy space.
    pub generator: [Vec<C64>; 2],
    pub g_minus: BoundaryFunction,
    pub g_plus: BoundaryFunction,
    /// Relative plus-side content of G * generator (which must be a minus function).
    pub plus_tail: f64,
    /// max |G * generator - lambda_+^-1 phi_minus|.
    pub consistency: f64,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub det_index: i64,
    pub n1: i64,
    pub n2: i64,
    /// Invariant of the Σ-symbol including the index terms.
    pub beta: C64,
    /// Invariant after the index normalization; the kernel is nontrivial iff it is iK' mod L.
    pub beta_tilde: C64,
    pub kernel: Option<KernelBasis>,
}

impl KernelReport {
    pub fn dimension(&self) -> usize {
        usize::from(self.kernel.is_some())
    }
}

/// Size of the plus part of a decaying minus function: the Riesz plus
/// projection without its constant mode, plus the value at infinity.
fn plus_content(grid: &GammaGrid, v: &[C64]) -> f64 {
    let p = riesz_project(grid, v, Side::Plus);
    let c0 = v.iter().sum::<C64>() / v.len() as f64;
    let body = p.iter().map(|z| (z - c0).norm()).fold(0.0, f64::max);
    body + v[grid.inf_index].norm()
}

/// Kernel of the Toeplitz operator with symbol G, for det index 0 or 1.
pub fn toeplitz_kernel(g: &MatrixSymbol, grid: &Arc<GammaGrid>, tol: &Tolerances) -> Result<KernelReport> {
    let s = grid.surface;
    let sig = sigma_symbol(g, grid)?;
    let (n1, n2) = sheet_indices(&sig)?;
    let det_index = n1 + n2;
    if det_index != 0 && det_index != 1 {
        return Err(Error::Config(format!(
            "determinant index {det_index}; the kernel test needs 0 or 1"
        )));
    }
    let (b, _, _) = beta_general(&sig)?;
    let class = classify(&sig, tol)?;
    let mut report = KernelReport {
        det_index,
        n1,
        n2,
        beta: b.raw,
        beta_tilde: class.beta_tilde,
        kernel: None,
    };
    let ik = C64::new(0.0, s.kp);
    if det_index == 1 || lattice_distance(&s, class.beta_tilde - ik) > tol.lattice {
        return Ok(report);
    }
    // g = g_- r_0 g_+ with g_+ absorbing the index normalization
    let fact = holomorphic_factorization(&sig, tol)?;
    match &fact.middle.r_nu {
        Some(r) if fact.middle.r_power == 1 && r.nu.norm() < super::NU_ZERO_TOL => {}
        _ => {
            return Err(Error::Internal(format!(
                "expected the middle factor r_0, got {}",
                fact.middle.describe()
            )))
        }
    }
    let (gm, gp) = (fact.f_minus.clone(), fact.f_plus.clone());
    let gp_inv = gp.recip();
    let (e_p, o_p) = (gp_inv.even(), gp_inv.odd_scaled());
    let (e_m, o_m) = (gm.even(), gm.odd_scaled());
    let k0 = s.k0;
    let ratio = |j: usize, a: C64, b: C64| {
        grid.xi(j).map_or(C64::new(1.0, 0.0), |x| (x - a) / (x - b))
    };
    let n = grid.n;
    let phi_plus = [
        (0..n).map(|j| ratio(j, -I, -I * k0) * e_p[j]).collect::<Vec<_>>(),
        o_p.clone(),
    ];
    let phi_minus = [
        (0..n).map(|j| grid.nodes[j].w * o_m[j]).collect::<Vec<_>>(),
        (0..n).map(|j| ratio(j, -I, I * k0) * e_m[j]).collect(),
    ];
    let inv_lambda = |j: usize| grid.xi(j).map_or(C64::new(0.0, 0.0), |x| 1.0 / (x + I));
    let generator = [
        (0..n).map(|j| inv_lambda(j) * phi_plus[0][j]).collect::<Vec<_>>(),
        (0..n).map(|j| inv_lambda(j) * phi_plus[1][j]).collect(),
    ];
    let gs = g.samples(grid)?;
    let image: Vec<[C64; 2]> =
        (0..n).map(|j| gs.values[j].apply([generator[0][j], generator[1][j]])).collect();
    let mut consistency: f64 = 0.0;
    for (j, v) in image.iter().enumerate() {
        for c in 0..2 {
            consistency = consistency.max((v[c] - inv_lambda(j) * phi_minus[c][j]).norm());
        }
    }
    let scale = image.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let tail = (0..2)
        .map(|c| plus_content(grid, &image.iter().map(|v| v[c]).collect::<Vec<_>>()))
        .fold(0.0, f64::max)
        / scale;
    report.kernel = Some(KernelBasis {
        phi_plus,
        phi_minus,
        generator,
        g_minus: gm,
        g_plus: gp,
        plus_tail: tail,
        consistency,
    });
    Ok(report)
}
