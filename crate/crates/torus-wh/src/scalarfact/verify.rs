use super::{ScalarFactorization, Tolerances};
use crate::contour::logs::winding_index;
use crate::contour::projection::{minus_defect, plus_defect};
use crate::contour::BoundaryFunction;
use crate::error::Result;

/// Numerical checks of a computed factorization against its symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// max |f - f_- middle f_+|.
    pub residual: f64,
    /// residual / max |f|.
    pub relative_residual: f64,
    /// Largest relative minus-side content of core_+ and its inverse.
    pub plus_tail: f64,
    /// Largest relative plus-side content of core_- and its inverse.
    pub minus_tail: f64,
    pub min_modulus_plus: f64,
    pub min_modulus_minus: f64,
    /// Sheet indices of the two cores; both should vanish.
    pub core_indices: [(i64, i64); 2],
    pub passed: bool,
}

fn indices(f: &BoundaryFunction) -> Result<(i64, i64)> {
    Ok((winding_index(f, 1)?, winding_index(f, 2)?))
}

/// Checks reconstruction, one-sidedness and invertibility of the cores.
/// `tail_tol` bounds the admissible leakage into the wrong side.
pub fn verify_factorization(
    f: &BoundaryFunction,
    fact: &ScalarFactorization,
    tol: &Tolerances,
    tail_tol: f64,
) -> Result<VerificationReport> {
    let residual = fact.reconstruct()?.max_diff(f);
    let relative_residual = residual / f.max_abs().max(1e-300);
    let (cp, cm) = (&fact.core_plus, &fact.core_minus);
    let plus_tail = plus_defect(cp).max(plus_defect(&cp.recip()));
    let minus_tail = minus_defect(cm).max(minus_defect(&cm.recip()));
    let core_indices = [indices(cm)?, indices(cp)?];
    let min_modulus_plus = cp.min_abs();
    let min_modulus_minus = cm.min_abs();
    let passed = relative_residual <= tol.residual
        && plus_tail <= tail_tol
        && minus_tail <= tail_tol
        && core_indices.iter().all(|&i| i == (0, 0))
        && min_modulus_plus > 0.0
        && min_modulus_minus > 0.0;
    Ok(VerificationReport {
        residual,
        relative_residual,
        plus_tail,
        minus_tail,
        min_modulus_plus,
        min_modulus_minus,
        core_indices,
        passed,
    })
}
