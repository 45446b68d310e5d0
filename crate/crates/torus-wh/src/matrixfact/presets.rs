//! Ready-made matrix symbols: the block matrices and the two worked examples.

use super::middle::{middle_factor_wh, MiddleForm};
use super::{q_at, Entry, LineFn, Mat2, MatrixSymbol};
use crate::error::Result;
use crate::surface::SurfaceParams;
use num_complex::Complex64 as C64;
use std::sync::Arc;

const I: C64 = C64::new(0.0, 1.0);

type MatFn = Arc<dyn Fn(Option<f64>) -> Result<Mat2> + Send + Sync>;

/// A normal-form symbol read off the first row of a matrix-valued function.
pub fn from_matrix_fn(params: &SurfaceParams, f: MatFn) -> MatrixSymbol {
    let g = f.clone();
    MatrixSymbol {
        alpha: Entry::Function(Arc::new(LineFn(move |x| Ok(f(x)?.0[0][0])))),
        delta: Entry::Function(Arc::new(LineFn(move |x| Ok(g(x)?.0[0][1])))),
        params: *params,
        eigenvalues: None,
    }
}

pub fn identity(params: &SurfaceParams) -> MatrixSymbol {
    MatrixSymbol {
        alpha: Entry::constant(C64::new(1.0, 0.0)),
        delta: Entry::constant(C64::new(0.0, 0.0)),
        params: *params,
        eigenvalues: None,
    }
}

fn cayley(x: Option<f64>) -> C64 {
    x.map_or(C64::new(1.0, 0.0), |x| (x - I) / (x + I))
}

/// R_nu = 𝓘^-1(r_nu): alpha = nu, delta = w.
pub fn r_nu(params: &SurfaceParams, nu: C64) -> MatrixSymbol {
    MatrixSymbol {
        alpha: Entry::constant(nu),
        delta: Entry::Function(Arc::new(LineFn(|x| Ok(cayley(x))))),
        params: *params,
        eigenvalues: None,
    }
}

/// R_0, the branch-point member.
pub fn r0(params: &SurfaceParams) -> MatrixSymbol {
    r_nu(params, C64::new(0.0, 0.0))
}

pub fn a_minus(params: &SurfaceParams) -> MatrixSymbol {
    let m = middle_factor_wh(params, MiddleForm::Identity, None).expect("no r_nu needed");
    from_matrix_fn(params, Arc::new(move |x| Ok(m.a_minus(x))))
}

pub fn a_plus(params: &SurfaceParams) -> MatrixSymbol {
    let m = middle_factor_wh(params, MiddleForm::Identity, None).expect("no r_nu needed");
    from_matrix_fn(params, Arc::new(move |x| Ok(m.a_plus(x))))
}

/// rho(xi)/(1 + xi^2) and p2/rho at a real point, both 1 at infinity.
fn scaled_rho(params: &SurfaceParams, x: Option<f64>) -> (f64, C64) {
    let k0 = params.k0;
    match x {
        None => (1.0, C64::new(1.0, 0.0)),
        Some(x) => {
            let rho = ((1.0 + x * x) * (k0 * k0 + x * x)).sqrt();
            (rho / (1.0 + x * x), (x - I) * (x - I * k0) / rho)
        }
    }
}

/// exp(t L): alpha = cosh(t rho/(1 + xi^2)), delta = (p2/rho) sinh(t rho/(1 + xi^2)),
/// whose Σ-symbol is exp(t tau/(1 + xi^2)).
pub fn example1(params: &SurfaceParams, t: f64) -> MatrixSymbol {
    let (pa, pd) = (*params, *params);
    let eigen = |sign: f64| {
        let p = *params;
        Entry::Function(Arc::new(LineFn(move |x| Ok(C64::new((sign * t * scaled_rho(&p, x).0).exp(), 0.0)))))
    };
    MatrixSymbol {
        alpha: Entry::Function(Arc::new(LineFn(move |x| {
            Ok(C64::new((t * scaled_rho(&pa, x).0).cosh(), 0.0))
        }))),
        delta: Entry::Function(Arc::new(LineFn(move |x| {
            let (r, p) = scaled_rho(&pd, x);
            Ok(p * (t * r).sinh())
        }))),
        params: *params,
        eigenvalues: Some([eigen(1.0), eigen(-1.0)]),
    }
}

/// exp(h) A_+^-1 with h = amp/(1 + xi^2): determinant index 1, Σ-symbol
/// e^h/alpha_+ with indices (0, 1).
pub fn example2(params: &SurfaceParams, amp: f64) -> MatrixSymbol {
    let m = middle_factor_wh(params, MiddleForm::Identity, None).expect("no r_nu needed");
    from_matrix_fn(
        params,
        Arc::new(move |x| {
            let h = x.map_or(0.0, |x| amp / (1.0 + x * x));
            Ok(m.a_plus(x).inv().scale(C64::new(h.exp(), 0.0)))
        }),
    )
}

/// exp(a/(xi - i) + b/(xi + i)) R_0: a symbol whose Σ-symbol is g_- r_0 g_+
/// with *-invariant outer factors.
pub fn example2_r0(params: &SurfaceParams, a: C64, b: C64) -> MatrixSymbol {
    let p = *params;
    from_matrix_fn(
        params,
        Arc::new(move |x| {
            let e = x.map_or(C64::new(1.0, 0.0), |x| (a / (x - I) + b / (x + I)).exp());
            let w = cayley(x);
            Ok(Mat2::new(C64::new(0.0, 0.0), e * w, e * w * q_at(&p, x), C64::new(0.0, 0.0)))
        }),
    )
}
