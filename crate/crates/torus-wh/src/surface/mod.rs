//! Geometry of the genus-one surface tau^2 = (1 + xi^2)(k0^2 + xi^2): periods,
//! branches of the square root, the Abel-Jacobi map and its inverse, and the
//! fundamental rectangle of the period lattice.

pub mod elliptic;
mod abel;

use crate::error::{Error, Result};
use elliptic::{JacobiModulus, Theta1};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub use abel::quad_segment;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// The curve constant and everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceParams {
    pub k0: f64,
    /// Complete integral K(1/k0).
    pub k: f64,
    /// Complementary integral K(k') with k' = sqrt(1 - 1/k0^2).
    pub kp: f64,
}

impl SurfaceParams {
    pub fn new(k0: f64) -> Result<Self> {
        if !(k0 > 1.0) || !k0.is_finite() {
            return Err(Error::Domain(format!("curve constant k0 = {k0} must exceed 1")));
        }
        let m = JacobiModulus::new(1.0 / k0);
        Ok(Self {
            k0,
            k: m.quarter,
            kp: m.quarter_comp,
        })
    }

    /// Generators (4K, 2iK') of the period lattice.
    pub fn lattice_periods(&self) -> (C64, C64) {
        (C64::new(4.0 * self.k, 0.0), C64::new(0.0, 2.0 * self.kp))
    }

    pub fn branch_points(&self) -> [C64; 4] {
        [I, -I, I * self.k0, -I * self.k0]
    }

    /// The quartic (1 + xi^2)(k0^2 + xi^2).
    pub fn quartic(&self, xi: C64) -> C64 {
        (1.0 + xi * xi) * (self.k0 * self.k0 + xi * xi)
    }

    /// sqrt((1 + k0)/2), the constant part of the half-plane units.
    pub fn c_const(&self) -> f64 {
        ((1.0 + self.k0) / 2.0).sqrt()
    }

    pub(crate) fn jacobi(&self) -> JacobiModulus {
        JacobiModulus {
            k: 1.0 / self.k0,
            kp: (1.0 - 1.0 / (self.k0 * self.k0)).sqrt(),
            quarter: self.k,
            quarter_comp: self.kp,
        }
    }

    /// Theta function for the lattice (4K, 2iK') rescaled to (pi, pi*tau).
    pub fn theta(&self) -> Theta1 {
        Theta1 {
            q: (-PI * self.kp / (2.0 * self.k)).exp(),
        }
    }

    /// Default lattice tolerance, 1e-7 K.
    pub fn default_tol_lattice(&self) -> f64 {
        1e-7 * self.k
    }
}

/// Which sheet a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sheet {
    One,
    Two,
    Branch,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::One => 1.0,
            Sheet::Two => -1.0,
            Sheet::Branch => 0.0,
        }
    }
}

/// A point of the surface. The two points over xi = infinity are not branch
/// points (the quartic has even degree) and carry their sheet explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfacePoint {
    Finite { xi: C64, tau: C64 },
    Infinity(Sheet),
}

impl SurfacePoint {
    /// The point over `xi` on the given sheet, with tau = +-rho(xi).
    pub fn on_sheet(params: &SurfaceParams, xi: C64, sheet: Sheet) -> Result<Self> {
        let r = rho_branches(params, xi)?;
        Ok(SurfacePoint::Finite {
            xi,
            tau: r.rho * sheet.sign(),
        })
    }

    pub fn base_point(params: &SurfaceParams) -> Self {
        SurfacePoint::Finite {
            xi: C64::new(0.0, 0.0),
            tau: C64::new(params.k0, 0.0),
        }
    }

    /// The hyperelliptic involution (xi, tau) -> (xi, -tau).
    pub fn star(&self) -> Self {
        match *self {
            SurfacePoint::Finite { xi, tau } => SurfacePoint::Finite { xi, tau: -tau },
            SurfacePoint::Infinity(Sheet::One) => SurfacePoint::Infinity(Sheet::Two),
            SurfacePoint::Infinity(Sheet::Two) => SurfacePoint::Infinity(Sheet::One),
            SurfacePoint::Infinity(Sheet::Branch) => *self,
        }
    }

    pub fn xi(&self) -> Option<C64> {
        match *self {
            SurfacePoint::Finite { xi, .. } => Some(xi),
            SurfacePoint::Infinity(_) => None,
        }
    }

    /// Sheet relative to the analytic branch rho = rho_minus * rho_plus.
    pub fn sheet(&self, params: &SurfaceParams) -> Sheet {
        match *self {
            SurfacePoint::Infinity(s) => s,
            SurfacePoint::Finite { xi, tau } => {
                if tau.norm() <= 1e-10 * (1.0 + xi.norm_sqr()) {
                    return Sheet::Branch;
                }
                let r = rho_analytic(params, xi);
                if (tau - r).norm() <= (tau + r).norm() {
                    Sheet::One
                } else {
                    Sheet::Two
                }
            }
        }
    }

    /// |tau^2 - p(xi)| / (1 + |xi|^4), zero for an exact point.
    pub fn defect(&self, params: &SurfaceParams) -> f64 {
        match *self {
            SurfacePoint::Finite { xi, tau } => {
                (tau * tau - params.quartic(xi)).norm() / (1.0 + xi.norm_sqr().powi(2))
            }
            SurfacePoint::Infinity(_) => 0.0,
        }
    }
}

/// The three square roots of the quartic near a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoBranches {
    /// rho_minus * rho_plus: analytic off both cuts, positive on the real line,
    /// asymptotic to xi^2.
    pub rho: C64,
    /// Root of (xi + i)(xi + i k0), analytic off [-i, -i k0], value i sqrt(k0) at 0.
    pub rho_plus: C64,
    /// Root of (xi - i)(xi - i k0), analytic off [i, i k0], value -i sqrt(k0) at 0.
    pub rho_minus: C64,
}

fn on_cut(xi: C64, lo: f64, hi: f64) -> bool {
    xi.re.abs() <= 1e-14 * (1.0 + xi.im.abs()) && xi.im > lo && xi.im < hi
}

fn half_root(xi: C64, center: C64, half: C64) -> C64 {
    let d = xi - center;
    d * (1.0 - (half / d) * (half / d)).sqrt()
}

pub(crate) fn rho_minus_raw(params: &SurfaceParams, xi: C64) -> C64 {
    let k0 = params.k0;
    half_root(xi, I * (1.0 + k0) / 2.0, I * (k0 - 1.0) / 2.0)
}

pub(crate) fn rho_plus_raw(params: &SurfaceParams, xi: C64) -> C64 {
    let k0 = params.k0;
    half_root(xi, -I * (1.0 + k0) / 2.0, -I * (k0 - 1.0) / 2.0)
}

pub(crate) fn rho_analytic(params: &SurfaceParams, xi: C64) -> C64 {
    rho_minus_raw(params, xi) * rho_plus_raw(params, xi)
}

/// Evaluates the square-root branches at `xi`.
pub fn rho_branches(params: &SurfaceParams, xi: C64) -> Result<RhoBranches> {
    if on_cut(xi, 1.0, params.k0) || on_cut(xi, -params.k0, -1.0) {
        return Err(Error::BranchCut { xi });
    }
    let rho_minus = rho_minus_raw(params, xi);
    let rho_plus = rho_plus_raw(params, xi);
    Ok(RhoBranches {
        rho: rho_minus * rho_plus,
        rho_plus,
        rho_minus,
    })
}

/// Lattice decomposition beta = reduced + 4nK + 2imK' with the reduced value in
/// the half-open rectangle Re in (-2K, 2K], Im in (-K', K'].
pub fn lattice_decompose(params: &SurfaceParams, beta: C64) -> (C64, i64, i64) {
    let (k, kp) = (params.k, params.kp);
    let n = ((beta.re - 2.0 * k) / (4.0 * k)).ceil();
    let m = ((beta.im - kp) / (2.0 * kp)).ceil();
    let re = beta.re - 4.0 * k * n;
    let im = beta.im - 2.0 * kp * m;
    (C64::new(re, im), n as i64, m as i64)
}

/// Representative of `beta` in the fundamental rectangle.
pub fn lattice_reduce(params: &SurfaceParams, beta: C64) -> C64 {
    lattice_decompose(params, beta).0
}

/// Distance from `beta` to the nearest lattice point.
pub fn lattice_distance(params: &SurfaceParams, beta: C64) -> f64 {
    let (k, kp) = (params.k, params.kp);
    let r = lattice_reduce(params, beta);
    let mut best = f64::INFINITY;
    for a in [-1.0, 0.0, 1.0] {
        for b in [-1.0, 0.0, 1.0] {
            best = best.min((r - C64::new(4.0 * k * a, 2.0 * kp * b)).norm());
        }
    }
    best
}

/// Where a reduced invariant sits in the fundamental rectangle; fixes the power
/// of the two-zero rational factor needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Zero,
    P1,
    Interior2,
    Edge3,
}

impl Region {
    pub fn k(self) -> u32 {
        match self {
            Region::Zero => 0,
            Region::P1 => 1,
            Region::Interior2 => 2,
            Region::Edge3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Zero => "Zero",
            Region::P1 => "P1",
            Region::Interior2 => "Interior2",
            Region::Edge3 => "Edge3",
        }
    }
}

/// Classifies a reduced invariant. The inner region is the open strip
/// |Re| < K; points within `tol` of Re = +-K go to `Interior2`, because at
/// Re = +-K the zero of the rational factor would sit on the contour.
/// Re near -2K is the same edge as Re = 2K.
pub fn classify_region(params: &SurfaceParams, beta_tilde: C64, tol: f64) -> Region {
    let k = params.k;
    if beta_tilde.norm() <= tol {
        Region::Zero
    } else if (beta_tilde.re - 2.0 * k).abs() <= tol || (beta_tilde.re + 2.0 * k).abs() <= tol {
        Region::Edge3
    } else if beta_tilde.re.abs() < k - tol {
        Region::P1
    } else {
        Region::Interior2
    }
}

/// True if `beta_tilde` lies in the closure of the inner strip |Re| <= K.
pub fn in_closed_p1(params: &SurfaceParams, beta_tilde: C64, tol: f64) -> bool {
    beta_tilde.re.abs() <= params.k + tol
}

/// Inverse of the Abel-Jacobi map: z -> (i sn z, k0 cn z dn z) with modulus 1/k0.
pub fn sigma_map(params: &SurfaceParams, z: C64) -> SurfacePoint {
    let z = lattice_reduce(params, z);
    let ([ns, nc, nd], den) = params.jacobi().sncndn_parts(z);
    if den.abs() <= 1e-12 * ns.norm() {
        let ratio = -params.k0 * nc * nd / (ns * ns);
        let sheet = if ratio.re >= 0.0 { Sheet::One } else { Sheet::Two };
        return SurfacePoint::Infinity(sheet);
    }
    SurfacePoint::Finite {
        xi: I * ns / den,
        tau: params.k0 * nc * nd / (den * den),
    }
}

/// Abel-Jacobi image of `p` based at (0, k0), as the representative in the
/// fundamental rectangle. Only the class modulo the lattice is meaningful.
pub fn abel_jacobi(params: &SurfaceParams, p: &SurfacePoint) -> Result<C64> {
    abel::abel_jacobi(params, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> SurfaceParams {
        SurfaceParams::new(2.0).unwrap()
    }

    #[test]
    fn rejects_degenerate_constant() {
        assert!(matches!(SurfaceParams::new(1.0), Err(Error::Domain(_))));
        let near = SurfaceParams::new(1.0001).unwrap();
        assert!(near.k > 5.0);
        assert!((near.kp - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
    }

    #[test]
    fn rho_at_origin_and_one() {
        let p = p2();
        let r = rho_branches(&p, C64::new(0.0, 0.0)).unwrap();
        assert!((r.rho_plus - I * 2f64.sqrt()).norm() < 1e-15);
        assert!((r.rho_minus + I * 2f64.sqrt()).norm() < 1e-15);
        assert!((r.rho - 2.0).norm() < 1e-15);
        let r = rho_branches(&p, C64::new(1.0, 0.0)).unwrap();
        assert!((r.rho - 10f64.sqrt()).norm() < 1e-14);
        assert!(rho_branches(&p, C64::new(0.0, 1.5)).is_err());
    }

    #[test]
    fn lattice_examples() {
        let p = p2();
        let (k, kp) = (p.k, p.kp);
        assert_eq!(lattice_reduce(&p, C64::new(0.0, 0.0)), C64::new(0.0, 0.0));
        let r = lattice_reduce(&p, C64::new(4.0 * k, kp / 2.0));
        assert!((r - C64::new(0.0, kp / 2.0)).norm() < 1e-14);
        let r = lattice_reduce(&p, C64::new(-2.0 * k, -kp));
        assert!((r - C64::new(2.0 * k, kp)).norm() < 1e-14);
    }

    #[test]
    fn region_examples() {
        let p = p2();
        let tol = p.default_tol_lattice();
        let k = p.k;
        assert_eq!(classify_region(&p, C64::new(k / 2.0, 0.0), tol), Region::P1);
        assert_eq!(classify_region(&p, C64::new(1.5 * k, 0.0), tol), Region::Interior2);
        assert_eq!(classify_region(&p, C64::new(2.0 * k, 0.3), tol), Region::Edge3);
        assert_eq!(classify_region(&p, C64::new(0.0, 0.0), tol), Region::Zero);
        assert_eq!(classify_region(&p, C64::new(k, 0.1), tol), Region::Interior2);
    }

    #[test]
    fn sigma_at_special_points() {
        let p = p2();
        match sigma_map(&p, C64::new(0.0, 0.0)) {
            SurfacePoint::Finite { xi, tau } => {
                assert!(xi.norm() < 1e-15);
                assert!((tau - 2.0).norm() < 1e-14);
            }
            _ => panic!(),
        }
        match sigma_map(&p, C64::new(-p.k, p.kp)) {
            SurfacePoint::Finite { xi, tau } => {
                assert!((xi + I * 2.0).norm() < 1e-12);
                assert!(tau.norm() < 1e-10);
            }
            _ => panic!(),
        }
        assert_eq!(sigma_map(&p, C64::new(0.0, p.kp)), SurfacePoint::Infinity(Sheet::One));
        assert_eq!(
            sigma_map(&p, C64::new(2.0 * p.k, p.kp)),
            SurfacePoint::Infinity(Sheet::Two)
        );
    }

    #[test]
    fn sigma_lands_on_curve() {
        let p = SurfaceParams::new(3.0).unwrap();
        for j in 0..50 {
            let z = C64::new(-2.0 * p.k + 0.08 * j as f64 * p.k, -p.kp + 0.039 * j as f64 * p.kp);
            let q = sigma_map(&p, z);
            assert!(q.defect(&p) < 1e-12, "{z} {q:?}");
        }
    }
}
