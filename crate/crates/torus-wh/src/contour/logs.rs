use super::boundary::BoundaryFunction;
use super::grid::GammaGrid;
use crate::error::{Error, Result};
use crate::surface::{lattice_decompose, SurfaceParams};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Largest accepted phase change between neighbouring nodes. Anything larger is
/// treated as under-resolved rather than guessed.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

/// Ratio min|f| / max|f| below which a sheet counts as non-invertible.
pub const INVERTIBILITY_TOL: f64 = 1e-9;

fn check_invertible(values: &[C64]) -> Result<()> {
    let max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let min = values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    if !(min > INVERTIBILITY_TOL * max) || !max.is_finite() {
        return Err(Error::NotInvertible { min_modulus: min, max_modulus: max });
    }
    Ok(())
}

/// Phase increments along the sheet in the direction of increasing xi, starting
/// at the infinity node: entry j is arg(f[j+1] / f[j]) for the cyclic order.
fn phase_steps(values: &[C64], sheet: u8) -> Result<Vec<f64>> {
    check_invertible(values)?;
    let n = values.len();
    let mut steps = Vec::with_capacity(n);
    for j in 0..n {
        let a = values[j];
        let b = values[(j + 1) % n];
        let d = (b / a).arg();
        if d.abs() > MAX_PHASE_STEP {
            return Err(Error::Resolution { sheet, node: j, step: d.abs() });
        }
        steps.push(d);
    }
    Ok(steps)
}

/// Winding number of one sheet of `f` as xi runs over the real line.
pub fn winding_index(f: &BoundaryFunction, sheet: u8) -> Result<i64> {
    let steps = phase_steps(f.sheet(sheet), sheet)?;
    let total: f64 = steps.iter().sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Both sheet indices.
pub fn sheet_indices(f: &BoundaryFunction) -> Result<(i64, i64)> {
    Ok((winding_index(f, 1)?, winding_index(f, 2)?))
}

/// Continuous logarithm of one sheet after removing `index` turns with the
/// Cayley variable, anchored at the principal value at the infinity node.
fn unwrap_sheet(grid: &GammaGrid, values: &[C64], sheet: u8, index: i64) -> Result<Vec<C64>> {
    let n = grid.n;
    let adjusted: Vec<C64> = values
        .iter()
        .zip(&grid.nodes)
        .map(|(v, node)| v * node.w.powi(-index as i32))
        .collect();
    let steps = phase_steps(&adjusted, sheet)?;
    let start = grid.inf_index;
    let mut out = vec![C64::new(0.0, 0.0); n];
    let mut phase = adjusted[start].arg();
    out[start] = C64::new(adjusted[start].norm().ln(), phase);
    for s in 1..n {
        let j = (start + s) % n;
        phase += steps[(j + n - 1) % n];
        out[j] = C64::new(adjusted[j].norm().ln(), phase);
    }
    let closing = phase + steps[(start + n - 1) % n] - adjusted[start].arg();
    if closing.abs() > 1e-6 {
        return Err(Error::Internal(format!(
            "phase failed to close after removing the index on sheet {sheet}: {closing}"
        )));
    }
    Ok(out)
}

/// Continuous logarithms (L1, L2) of an index-zero function, anchored at the
/// infinity node.
pub fn continuous_logs(f: &BoundaryFunction) -> Result<(Vec<C64>, Vec<C64>)> {
    let (n1, n2) = sheet_indices(f)?;
    if n1 != 0 || n2 != 0 {
        return Err(Error::Index { n1, n2 });
    }
    Ok((
        unwrap_sheet(&f.grid, &f.f1, 1, 0)?,
        unwrap_sheet(&f.grid, &f.f2, 2, 0)?,
    ))
}

/// The torus invariant of a symbol, raw and reduced to the fundamental rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaInvariant {
    pub raw: C64,
    pub reduced: C64,
    /// raw = reduced + 4 n K + 2 i m K'.
    pub n: i64,
    pub m: i64,
}

impl BetaInvariant {
    pub fn from_raw(params: &SurfaceParams, raw: C64) -> Self {
        let (reduced, n, m) = lattice_decompose(params, raw);
        Self { raw, reduced, n, m }
    }
}

/// Integral over the real line of L / rho for sampled L.
fn log_integral(grid: &GammaGrid, logs: &[C64]) -> C64 {
    let h: Vec<C64> = logs
        .iter()
        .zip(&grid.nodes)
        .map(|(l, node)| l / node.rho_scaled)
        .collect();
    grid.integrate_scaled(&h)
}

/// beta_f = (k0 / 2 pi) * integral over the contour of (log f) / tau, for a
/// function with both sheet indices zero.
pub fn beta_invariant(f: &BoundaryFunction) -> Result<BetaInvariant> {
    let (l1, l2) = continuous_logs(f)?;
    Ok(beta_from_logs(&f.grid, &l1, &l2))
}

/// beta from precomputed continuous logarithms.
pub fn beta_from_logs(grid: &GammaGrid, l1: &[C64], l2: &[C64]) -> BetaInvariant {
    let s = &grid.surface;
    let raw = (log_integral(grid, l1) - log_integral(grid, l2)) * (s.k0 / (2.0 * PI));
    BetaInvariant::from_raw(s, raw)
}

/// The same integral for arbitrary sheet indices. The logarithm on sheet j is
/// continuous on the open real line and jumps by 2 pi i n_j at infinity; its
/// linear-in-angle part n_j i theta is integrated in closed form.
pub fn beta_general(f: &BoundaryFunction) -> Result<(BetaInvariant, i64, i64)> {
    let grid = &f.grid;
    let s = &grid.surface;
    let (n1, n2) = sheet_indices(f)?;
    let l1 = unwrap_sheet(grid, &f.f1, 1, n1)?;
    let l2 = unwrap_sheet(grid, &f.f2, 2, n2)?;
    // integral of theta / rho over the line, theta in (0, 2 pi) from -inf to +inf
    let angle_integral = PI * 2.0 * s.kp / s.k0;
    let i1 = log_integral(grid, &l1) + C64::new(0.0, n1 as f64 * angle_integral);
    let i2 = log_integral(grid, &l2) + C64::new(0.0, n2 as f64 * angle_integral);
    let raw = (i1 - i2) * (s.k0 / (2.0 * PI));
    Ok((BetaInvariant::from_raw(s, raw), n1, n2))
}
