use super::{lattice_reduce, rho_analytic, sigma_map, Sheet, SurfaceParams, SurfacePoint, I};
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

// Gauss-Kronrod 7/15 nodes on [-1, 1] (positive half; node 0 is the center).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64) -> (C64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let s = f(mid - x) + f(mid + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * half, ((kron - gauss) * half).norm())
}

/// Adaptive Gauss-Kronrod integral of `f` along the straight segment [a, b].
/// `tol` is a per-panel absolute bound, so the total error grows with the
/// number of panels but the recursion stays linear near endpoint singularities.
pub fn quad_segment<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64, tol: f64) -> C64 {
    fn rec<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64, tol: f64, depth: u32) -> C64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || err <= 1e-15 * v.norm() || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol, depth - 1) + rec(f, m, b, tol, depth - 1)
    }
    rec(f, a, b, tol, 40)
}

/// Integral over [a, b] after xi = b + (a - b)(1 - s)^2, which absorbs an
/// inverse square root at `b`.
fn quad_to_endpoint<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64, tol: f64) -> C64 {
    let g = |s: C64| {
        let t = 1.0 - s;
        f(b + (a - b) * t * t) * 2.0 * (b - a) * t
    };
    quad_segment(&g, C64::new(0.0, 0.0), C64::new(1.0, 0.0), tol)
}

fn outer_radius(params: &SurfaceParams) -> f64 {
    2.0 * params.k0 + 2.0
}

/// sqrt((1 + u^2)(1 + k0^2 u^2)), the reciprocal-chart root, principal for |u| < 1/k0.
fn reciprocal_root(params: &SurfaceParams, u: C64) -> C64 {
    ((1.0 + u * u) * (1.0 + params.k0 * params.k0 * u * u)).sqrt()
}

/// Integral of d xi / rho along a cut-avoiding path from 0 to `xi`, plus the
/// value of the analytic root at the endpoint as seen from the path's side.
fn path_integral(params: &SurfaceParams, xi: C64) -> (C64, C64) {
    let k0 = params.k0;
    let margin = 0.1 * (k0 - 1.0).min(1.0);
    let big_r = outer_radius(params);
    let target = if xi.norm() > big_r { xi * (big_r / xi.norm()) } else { xi };
    let integrand = |x: C64| 1.0 / rho_analytic(params, x);
    let tol = 1e-14;
    let zero = C64::new(0.0, 0.0);
    let side = if target.re >= 0.0 { 1.0 } else { -1.0 };
    let mut total;
    let near_axis = target.re.abs() < margin && target.im.abs() > 1.0 - margin;
    if near_axis {
        let d = side * (2.0 * margin).max(0.2);
        let p1 = C64::new(d, 0.0);
        let p2 = C64::new(d, target.im);
        total = quad_segment(&integrand, zero, p1, tol)
            + quad_segment(&integrand, p1, p2, tol)
            + quad_to_endpoint(&integrand, p2, target, tol);
    } else {
        total = quad_to_endpoint(&integrand, zero, target, tol);
    }
    let end_root;
    if xi.norm() > big_r {
        let ua = 1.0 / target;
        let ub = 1.0 / xi;
        let g = |u: C64| -1.0 / reciprocal_root(params, u);
        total += quad_segment(&g, ua, ub, tol);
        end_root = xi * xi * reciprocal_root(params, ub);
    } else {
        // nudge onto the path's side when the endpoint sits on a cut
        let probe = if xi.re.abs() < 1e-13 && xi.im.abs() > 1.0 && xi.im.abs() < k0 {
            C64::new(side * 1e-13, xi.im)
        } else {
            xi
        };
        end_root = rho_analytic(params, probe);
    }
    (total, end_root)
}

pub(super) fn abel_jacobi(params: &SurfaceParams, p: &SurfacePoint) -> Result<C64> {
    let (xi_p, tau_p) = match *p {
        SurfacePoint::Infinity(Sheet::One) => return Ok(C64::new(0.0, params.kp)),
        SurfacePoint::Infinity(Sheet::Two) => return Ok(C64::new(2.0 * params.k, params.kp)),
        SurfacePoint::Infinity(Sheet::Branch) => {
            return Err(Error::Domain("no branch point over infinity".into()))
        }
        SurfacePoint::Finite { xi, tau } => (xi, tau),
    };
    if !xi_p.is_finite() || !tau_p.is_finite() {
        return Err(Error::Domain(format!("point ({xi_p}, {tau_p}) is not finite")));
    }
    let (integral, end_root) = path_integral(params, xi_p);
    let mut z = -I * params.k0 * integral;
    if (tau_p + end_root).norm() < (tau_p - end_root).norm() {
        z = 2.0 * params.k - z;
    }
    let z = polish(params, z, xi_p, tau_p)?;
    Ok(lattice_reduce(params, z))
}

/// Newton refinement of sigma(z) = (xi, tau), in whichever local coordinate
/// (xi, tau or 1/xi) is best conditioned.
fn polish(params: &SurfaceParams, mut z: C64, xi_p: C64, tau_p: C64) -> Result<C64> {
    let jac = params.jacobi();
    let k2 = jac.k * jac.k;
    let k0 = params.k0;
    for _ in 0..40 {
        let ([ns, nc, nd], den) = jac.sncndn_parts(z);
        let den = C64::new(den, 0.0);
        let step;
        if xi_p.norm() > 1e2 {
            // u = 1/xi = -i den/ns, du/dz = i cn dn / sn^2
            let u = -I * den / ns;
            let du = I * nc * nd / (ns * ns);
            step = (u - 1.0 / xi_p) / du;
        } else {
            let (sn, cn, dn) = (ns / den, nc / den, nd / den);
            let dxi = I * cn * dn;
            let dtau = -k0 * sn * (dn * dn + k2 * cn * cn);
            if dxi.norm() >= dtau.norm() {
                step = (I * sn - xi_p) / dxi;
            } else {
                step = (k0 * cn * dn - tau_p) / dtau;
            }
        }
        if !step.is_finite() {
            return Err(Error::Convergence(format!("Newton step undefined at z = {z}")));
        }
        let step = if step.norm() > 0.25 { step * (0.25 / step.norm()) } else { step };
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    // accept if the point is reproduced
    let q = sigma_map(params, z);
    match q {
        SurfacePoint::Finite { xi, tau } if (xi - xi_p).norm() + (tau - tau_p).norm() < 1e-9 * (1.0 + tau_p.norm()) => Ok(z),
        _ => Err(Error::Convergence(format!(
            "Abel-Jacobi refinement stalled for xi = {xi_p}"
        ))),
    }
}
