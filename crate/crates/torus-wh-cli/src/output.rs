//! JSON encodings of library values.

use num_complex::Complex64 as C64;
use serde_json::{json, Value};
use torus_wh::contour::BoundaryFunction;
use torus_wh::matrixfact::MatrixSamples;
use torus_wh::scalarfact::{FactorizationClass, MiddleFactor, VerificationReport};

pub fn cx(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn parts(v: &[C64]) -> Value {
    json!({
        "re": v.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": v.iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

/// Parallel arrays (theta, re, im) per sheet.
pub fn boundary(f: &BoundaryFunction) -> Value {
    json!({ "theta": f.grid.theta, "sheet1": parts(&f.f1), "sheet2": parts(&f.f2) })
}

pub fn matrix(m: &MatrixSamples) -> Value {
    let e = |i, j| parts(&m.entry(i, j));
    json!({ "theta": m.grid.theta, "g11": e(0, 0), "g12": e(0, 1), "g21": e(1, 0), "g22": e(1, 1) })
}

pub fn class(c: &FactorizationClass) -> Value {
    json!({
        "n1": c.n1,
        "n2": c.n2,
        "k_tilde": c.k_tilde,
        "l": c.l,
        "m": c.m_exp,
        "beta": cx(c.beta),
        "beta_tilde": cx(c.beta_tilde),
        "region": c.region.name(),
        "k": c.k,
        "kind": c.kind.name(),
    })
}

pub fn middle(m: &MiddleFactor) -> Value {
    let r = m.r_nu.as_ref().map(|r| {
        json!({ "beta": cx(r.beta), "nu": cx(r.nu), "z0": cx(r.z0), "tau0": cx(r.tau0) })
    });
    json!({
        "middle_descriptor": m.describe(),
        "r_nu": r,
        "r_power": m.r_power,
        "cayley_power": m.cayley_power,
        "s_power": m.s_power,
        "u_power": m.u_power,
        "alpha_minus": m.alpha_minus,
        "alpha_plus": m.alpha_plus,
    })
}

pub fn report(r: &VerificationReport) -> Value {
    json!({
        "residual": r.relative_residual,
        "absolute_residual": r.residual,
        "analyticity_tails": { "plus": r.plus_tail, "minus": r.minus_tail },
        "min_modulus": { "plus": r.min_modulus_plus, "minus": r.min_modulus_minus },
        "indices": { "core_minus": r.core_indices[0], "core_plus": r.core_indices[1] },
        "passed": r.passed,
    })
}
