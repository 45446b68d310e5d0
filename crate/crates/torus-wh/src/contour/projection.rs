use super::boundary::BoundaryFunction;
use super::grid::GammaGrid;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Which half of the splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn keeps(self, mode: i64) -> bool {
        match self {
            Side::Plus => mode >= 0,
            Side::Minus => mode < 0,
        }
    }
}

/// Spectral energy fraction above which a sample vector counts as under-resolved.
pub const ALIAS_THRESHOLD: f64 = 1e-8;

/// Splits samples on the real line into Cayley modes k >= 0 (plus, analytic in
/// the upper half-plane, constants included) and k < 0 (minus). This is the
/// projection conjugated by lambda_+ = xi + i, so P+(1/(xi + i)) = 1/(xi + i)
/// and P+(1) = 1. The two sides sum to the identity exactly.
pub fn riesz_project(grid: &GammaGrid, h: &[C64], side: Side) -> Vec<C64> {
    let mut spec = grid.forward(h);
    for (j, v) in spec.iter_mut().enumerate() {
        if !side.keeps(grid.mode_of_bin(j)) {
            *v = C64::new(0.0, 0.0);
        }
    }
    grid.inverse(&spec)
}

/// Fraction of spectral energy in the top quarter of the mode range.
pub fn alias_fraction(grid: &GammaGrid, h: &[C64]) -> f64 {
    let spec = grid.forward(h);
    let cutoff = 3 * grid.n as i64 / 8;
    let (mut top, mut total) = (0.0, 0.0);
    for (j, v) in spec.iter().enumerate() {
        let e = v.norm_sqr();
        total += e;
        if grid.mode_of_bin(j).abs() >= cutoff {
            top += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        top / total
    }
}

/// Worst alias fraction over the even and scaled odd parts.
pub fn boundary_alias_fraction(f: &BoundaryFunction) -> f64 {
    alias_fraction(&f.grid, &f.even()).max(alias_fraction(&f.grid, &f.odd_scaled()))
}

/// Projection onto the plus or minus functions of the contour: the even part
/// and the scaled odd part (xi + i)^2 f_O are split separately and reassembled.
pub fn project_gamma(f: &BoundaryFunction, side: Side) -> BoundaryFunction {
    let grid = &f.grid;
    let e = riesz_project(grid, &f.even(), side);
    let o = riesz_project(grid, &f.odd_scaled(), side);
    BoundaryFunction::from_parts(grid.clone(), &e, &o)
}

/// alpha_f = (k0 / (4 K i)) * integral over the contour of f / tau, which
/// reduces to twice the real-line integral of f_O.
pub fn alpha_functional(f: &BoundaryFunction) -> C64 {
    let grid = &f.grid;
    // (1 + xi^2) f_O = w (xi + i)^2 f_O
    let h: Vec<C64> = f
        .odd_scaled()
        .iter()
        .zip(&grid.nodes)
        .map(|(o, node)| node.w * o)
        .collect();
    let integral = grid.integrate_scaled(&h);
    let s = &grid.surface;
    integral * s.k0 / (C64::new(0.0, 2.0 * s.k))
}

/// Sheet-wise samples of the A-cycle correction (sheet two is the negative).
pub fn correction(grid: &std::sync::Arc<GammaGrid>) -> BoundaryFunction {
    BoundaryFunction {
        grid: grid.clone(),
        f1: grid.correction.clone(),
        f2: grid.correction.iter().map(|v| -v).collect(),
    }
}

/// Corrected projection with a prescribed jump: P+ f - a V or P- f + a V.
pub fn project_gamma_tilde_with(f: &BoundaryFunction, side: Side, jump: C64) -> BoundaryFunction {
    let p = project_gamma(f, side);
    let sign = match side {
        Side::Plus => -1.0,
        Side::Minus => 1.0,
    };
    let v = correction(&f.grid);
    p.zip_with(&v, |a, b| a + sign * jump * b)
}

/// Corrected projections: the images are single-valued off the A-cycle and
/// jump by alpha_f across it. Returns the projection and the jump alpha_f.
pub fn project_gamma_tilde(f: &BoundaryFunction, side: Side) -> (BoundaryFunction, C64) {
    let a = alpha_functional(f);
    (project_gamma_tilde_with(f, side, a), a)
}

/// Relative size of the minus part of a function expected to be plus-analytic.
pub fn plus_defect(f: &BoundaryFunction) -> f64 {
    let scale = f.max_abs().max(1e-300);
    project_gamma(f, Side::Minus).max_abs() / scale
}

/// Relative size of the non-constant plus part of a function expected to be
/// minus-analytic, together with its component along tau / (xi + i), which a
/// bounded minus function cannot have.
pub fn minus_defect(f: &BoundaryFunction) -> f64 {
    let scale = f.max_abs().max(1e-300);
    let p = project_gamma(f, Side::Plus);
    let e = f.even();
    let c0 = e.iter().sum::<C64>() / e.len() as f64;
    let plus_part = p.map(|v| v - c0).max_abs();
    let pole = alpha_functional(f).norm() * 2.0 * f.grid.surface.k / (PI * f.grid.surface.k0);
    (plus_part + pole) / scale
}
