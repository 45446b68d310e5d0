use super::{
    alpha_samples, sample, FactorizationClass, FactorizationKind, MiddleFactor, ScalarFactorization,
    Tolerances,
};
use crate::blocks::{make_r_nu, make_s, unit_u, RNu, RationalSurfaceFunction};
use crate::contour::logs::beta_from_logs;
use crate::contour::{
    beta_invariant, continuous_logs, project_gamma_tilde_with, sheet_indices, BetaInvariant,
    BoundaryFunction, Side,
};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::surface::{classify_region, lattice_distance, Region, SurfaceParams};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Exponents (k_tilde, l, m) that bring a symbol with indices (n1, n2) to
/// indices (0, 0) via f w^-k_tilde S^l u^m.
fn holomorphic_exponents(n1: i64, n2: i64) -> (i64, u8, i64) {
    if (n1 + n2).rem_euclid(2) == 0 {
        ((n1 + n2) / 2, 0, (n1 - n2) / 2)
    } else {
        ((n1 + n2 - 1) / 2, 1, (n1 - n2 - 1) / 2)
    }
}

/// Exponents (k_tilde, l, m') for the normalization f w^-k_tilde alpha_-^-l u^m'.
fn meromorphic_exponents(n1: i64, n2: i64) -> (i64, u8, i64) {
    if (n1 + n2).rem_euclid(2) == 0 {
        ((n1 + n2) / 2, 0, (n1 - n2) / 2)
    } else {
        ((n1 + n2 - 1).div_euclid(2), 1, (n1 - n2 + 1).div_euclid(2))
    }
}

fn holomorphic_normalize(f: &BoundaryFunction, k_tilde: i64, l: u8, m: i64) -> Result<BoundaryFunction> {
    let grid = &f.grid;
    let s = &grid.surface;
    let w = sample(&RationalSurfaceFunction::cayley(s), grid)?;
    let mut out = f.mul(&w.powi(-k_tilde));
    if l == 1 {
        out = out.mul(&sample(&make_s(s), grid)?);
    }
    if m != 0 {
        out = out.mul(&sample(&unit_u(s), grid)?.powi(m));
    }
    Ok(out)
}

fn meromorphic_normalize(f: &BoundaryFunction, k_tilde: i64, l: u8, m: i64) -> Result<BoundaryFunction> {
    let grid = &f.grid;
    let s = &grid.surface;
    let w = sample(&RationalSurfaceFunction::cayley(s), grid)?;
    let mut out = f.mul(&w.powi(-k_tilde));
    if l == 1 {
        out = out.div(&alpha_samples(grid, Side::Minus)?);
    }
    if m != 0 {
        out = out.mul(&sample(&unit_u(s), grid)?.powi(m));
    }
    Ok(out)
}

fn near_2k(params: &SurfaceParams, beta_tilde: C64, tol: f64) -> bool {
    (beta_tilde - 2.0 * params.k).norm() <= tol || (beta_tilde + 2.0 * params.k).norm() <= tol
}

/// Indices, normalization and invariant of `f`.
pub fn classify(f: &BoundaryFunction, tol: &Tolerances) -> Result<FactorizationClass> {
    let s = f.grid.surface;
    let (n1, n2) = sheet_indices(f)?;
    let (k_tilde, l, m) = holomorphic_exponents(n1, n2);
    let normalized = holomorphic_normalize(f, k_tilde, l, m)?;
    let b = beta_invariant(&normalized)?;
    let region = classify_region(&s, b.reduced, tol.lattice);
    let kind = if k_tilde == 0 && l == 0 && region == Region::Zero {
        FactorizationKind::Special
    } else if k_tilde == 0 && l == 0 && near_2k(&s, b.reduced, tol.lattice) {
        FactorizationKind::MSpecial
    } else {
        FactorizationKind::Holomorphic
    };
    Ok(FactorizationClass {
        n1,
        n2,
        k_tilde,
        l,
        m_exp: m,
        beta: b.raw,
        beta_tilde: b.reduced,
        region,
        k: region.k(),
        kind,
    })
}

/// Outer factors of an index-zero symbol whose invariant is a lattice point:
/// exp of the corrected projections of the continuous logarithm.
fn special_core(h: &BoundaryFunction, tol: &Tolerances) -> Result<(BoundaryFunction, BoundaryFunction, BetaInvariant)> {
    let grid = &h.grid;
    let s = grid.surface;
    let (l1, mut l2) = continuous_logs(h)?;
    let b = beta_from_logs(grid, &l1, &l2);
    let dist = lattice_distance(&s, b.raw);
    if dist > tol.lattice {
        return Err(Error::Condition(format!(
            "invariant {} (reduced {}) is {:.3e} away from the period lattice",
            b.raw, b.reduced, dist
        )));
    }
    let n = (b.raw.re / (4.0 * s.k)).round();
    let m = (b.raw.im / (2.0 * s.kp)).round();
    let shift = C64::new(0.0, 2.0 * PI * m);
    l2.iter_mut().for_each(|v| *v += shift);
    let log = BoundaryFunction::new(grid.clone(), l1, l2)?;
    // the A-cycle jump of the corrected projections is exactly -2 pi i n
    let jump = C64::new(0.0, -2.0 * PI * n);
    let plus = project_gamma_tilde_with(&log, Side::Plus, jump).exp();
    let minus = project_gamma_tilde_with(&log, Side::Minus, jump).exp();
    Ok((minus, plus, b))
}

fn residual(f: &BoundaryFunction, fact: &ScalarFactorization) -> Result<f64> {
    Ok(fact.reconstruct()?.max_diff(f))
}

/// f = f_- f_+ for a symbol with zero indices and invariant in the lattice.
pub fn special_factorization(f: &BoundaryFunction, tol: &Tolerances) -> Result<ScalarFactorization> {
    let (n1, n2) = sheet_indices(f)?;
    if n1 != 0 || n2 != 0 {
        return Err(Error::Index { n1, n2 });
    }
    let (minus, plus, b) = special_core(f, tol)?;
    let class = FactorizationClass {
        n1,
        n2,
        k_tilde: 0,
        l: 0,
        m_exp: 0,
        beta: b.raw,
        beta_tilde: b.reduced,
        region: Region::Zero,
        k: 0,
        kind: FactorizationKind::Special,
    };
    let mut fact = ScalarFactorization {
        f_minus: minus.clone(),
        f_plus: plus.clone(),
        core_minus: minus,
        core_plus: plus,
        middle: MiddleFactor {
            r_nu: None,
            r_power: 0,
            cayley_power: 0,
            s_power: 0,
            u_power: 0,
            alpha_minus: 0,
            alpha_plus: 0,
        },
        class,
        residual: 0.0,
        edge_snap: None,
    };
    fact.residual = residual(f, &fact)?;
    Ok(fact)
}

/// The rational factor r_nu^k realizing a reduced invariant, with the snap
/// distance when the invariant was moved onto the edge Re = 2K.
fn rational_part(
    params: &SurfaceParams,
    beta_tilde: C64,
    region: Region,
    tol: f64,
) -> Result<(Option<RNu>, Option<f64>)> {
    let k = params.k;
    match region {
        Region::Zero => Ok((None, None)),
        Region::P1 => {
            // near the branch-point member use it exactly, so that nu = 0 is exact
            let ik = C64::new(0.0, params.kp);
            let target = if (beta_tilde - ik).norm() <= tol || (beta_tilde + ik).norm() <= tol {
                ik
            } else {
                beta_tilde
            };
            Ok((Some(make_r_nu(params, target)?), None))
        }
        Region::Interior2 => Ok((Some(make_r_nu(params, beta_tilde / 2.0)?), None)),
        Region::Edge3 => {
            // Re = -2K and Re = 2K are the same edge mod 4K
            let snap = (beta_tilde.re.abs() - 2.0 * k).abs();
            let target = 2.0 * k;
            let snapped = C64::new(target, beta_tilde.im);
            Ok((Some(make_r_nu(params, snapped / 3.0)?), Some(snap)))
        }
    }
}

/// Splits an index-zero symbol with reduced invariant in `region` as
/// core_- r_nu^k core_+.
fn factor_index_zero(
    g: &BoundaryFunction,
    beta_tilde: C64,
    region: Region,
    tol: &Tolerances,
) -> Result<(BoundaryFunction, BoundaryFunction, Option<RNu>, Option<f64>)> {
    let grid = &g.grid;
    let (r, snap) = rational_part(&grid.surface, beta_tilde, region, tol.lattice)?;
    let h = match &r {
        Some(r) => g.div(&sample(r, grid)?.powi(region.k() as i64)),
        None => g.clone(),
    };
    let (minus, plus, _) = special_core(&h, tol)?;
    Ok((minus, plus, r, snap))
}

/// f = f_- r f_+ with r = r_nu^k w^k_tilde S^-l and the plus factor carrying
/// u^-m. Always exists for an invertible symbol.
pub fn holomorphic_factorization(f: &BoundaryFunction, tol: &Tolerances) -> Result<ScalarFactorization> {
    let class = classify(f, tol)?;
    let normalized = holomorphic_normalize(f, class.k_tilde, class.l, class.m_exp)?;
    let (core_minus, core_plus, r, snap) = factor_index_zero(&normalized, class.beta_tilde, class.region, tol)?;
    let grid = &f.grid;
    let u = sample(&unit_u(&grid.surface), grid)?;
    let f_plus = core_plus.mul(&u.powi(-class.m_exp));
    let kind = if class.kind == FactorizationKind::Special {
        FactorizationKind::Special
    } else {
        FactorizationKind::Holomorphic
    };
    let mut fact = ScalarFactorization {
        f_minus: core_minus.clone(),
        f_plus,
        core_minus,
        core_plus,
        middle: MiddleFactor {
            r_power: if r.is_some() { class.k } else { 0 },
            r_nu: r,
            cayley_power: class.k_tilde,
            s_power: -(class.l as i64),
            u_power: -class.m_exp,
            alpha_minus: 0,
            alpha_plus: 0,
        },
        class: FactorizationClass { kind, ..class },
        residual: 0.0,
        edge_snap: snap,
    };
    fact.residual = residual(f, &fact)?;
    Ok(fact)
}

/// Factorization with the alpha_+- units attached to the outer factors: the
/// index normalization uses alpha_- instead of S, and invariants outside the
/// inner strip are moved into it by splitting off alpha_- alpha_+.
pub fn meromorphic_factorization(f: &BoundaryFunction, tol: &Tolerances) -> Result<ScalarFactorization> {
    let grid = &f.grid;
    let s = grid.surface;
    let (n1, n2) = sheet_indices(f)?;
    let (k_tilde, l, m) = meromorphic_exponents(n1, n2);
    let f0 = meromorphic_normalize(f, k_tilde, l, m)?;
    let b0 = beta_invariant(&f0)?;
    let re = b0.reduced.re.abs();
    let (target, beta, region, split) = if re < s.k - tol.lattice {
        (f0, b0, classify_region(&s, b0.reduced, tol.lattice), false)
    } else if (re - s.k).abs() <= tol.lattice {
        // on the strip boundary the zero of r_nu would sit on the contour either
        // way; use the square root of the invariant instead
        (f0, b0, Region::Interior2, false)
    } else {
        let both = alpha_samples(grid, Side::Minus)?.mul(&alpha_samples(grid, Side::Plus)?);
        let f1 = f0.div(&both);
        let b1 = beta_invariant(&f1)?;
        let region = classify_region(&s, b1.reduced, tol.lattice);
        (f1, b1, region, true)
    };
    let (core_minus, core_plus, r, snap) = factor_index_zero(&target, beta.reduced, region, tol)?;
    let alpha_minus = l as u32 + split as u32;
    let alpha_plus = split as u32;
    let am = alpha_samples(grid, Side::Minus)?;
    let ap = alpha_samples(grid, Side::Plus)?;
    let u = sample(&unit_u(&s), grid)?;
    let f_minus = core_minus.mul(&am.powi(alpha_minus as i64));
    let f_plus = core_plus.mul(&ap.powi(alpha_plus as i64)).mul(&u.powi(-m));
    let k = if r.is_some() { region.k() } else { 0 };
    let kind = if alpha_minus + alpha_plus > 0 {
        if split && l == 0 && k == 0 && k_tilde == 0 {
            FactorizationKind::MSpecial
        } else {
            FactorizationKind::Meromorphic
        }
    } else if k == 0 && k_tilde == 0 {
        FactorizationKind::Special
    } else {
        FactorizationKind::Holomorphic
    };
    let class = FactorizationClass {
        n1,
        n2,
        k_tilde,
        l,
        m_exp: m,
        beta: b0.raw,
        beta_tilde: b0.reduced,
        region,
        k,
        kind,
    };
    let mut fact = ScalarFactorization {
        f_minus,
        f_plus,
        core_minus,
        core_plus,
        middle: MiddleFactor {
            r_nu: r,
            r_power: k,
            cayley_power: k_tilde,
            s_power: 0,
            u_power: -m,
            alpha_minus,
            alpha_plus,
        },
        class,
        residual: 0.0,
        edge_snap: snap,
    };
    fact.residual = residual(f, &fact)?;
    Ok(fact)
}

/// Classifies and runs the matching engine: meromorphic for M-special
/// symbols, holomorphic otherwise.
pub fn factorize(f: &BoundaryFunction, tol: &Tolerances) -> Result<ScalarFactorization> {
    match classify(f, tol)?.kind {
        FactorizationKind::MSpecial => meromorphic_factorization(f, tol),
        _ => holomorphic_factorization(f, tol),
    }
}

/// Factorizes independent symbols under the given execution policy.
pub fn factor_batch(exec: Exec, symbols: &[BoundaryFunction], tol: &Tolerances) -> Vec<Result<ScalarFactorization>> {
    par::map_slice(exec, symbols, |f| factorize(f, tol))
}
