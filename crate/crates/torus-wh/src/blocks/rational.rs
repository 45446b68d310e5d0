use super::SurfaceFunction;
use crate::contour::GammaGrid;
use crate::error::{Error, Result};
use crate::series::Laurent;
use crate::surface::{classify_region, sigma_map, Region, SurfaceParams, SurfacePoint};
use num_complex::Complex64 as C64;

const I: C64 = C64::new(0.0, 1.0);

/// A polynomial in xi with ascending complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<C64>);

impl Poly {
    pub fn constant(c: C64) -> Self {
        Poly(vec![c])
    }

    /// Product of the linear factors (xi - r).
    pub fn from_roots(roots: &[C64]) -> Self {
        roots.iter().fold(Poly::constant(C64::new(1.0, 0.0)), |p, &r| {
            p.mul(&Poly(vec![-r, C64::new(1.0, 0.0)]))
        })
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.0.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![C64::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn scale(&self, c: C64) -> Poly {
        Poly(self.0.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, j: usize| p.0.get(j).copied().unwrap_or(C64::new(0.0, 0.0));
        Poly((0..n).map(|j| get(self, j) + get(other, j)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| *c != C64::new(0.0, 0.0))
    }

    fn laurent(&self) -> Laurent {
        if self.degree().is_none() {
            return Laurent::constant(C64::new(0.0, 0.0));
        }
        Laurent::polynomial(&self.0[..=self.degree().unwrap()])
    }
}

/// (A(xi) + B(xi) tau) / C(xi), an element of the function field of the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSurfaceFunction {
    pub k0: f64,
    pub num_a: Poly,
    pub num_b: Poly,
    pub den: Poly,
}

impl RationalSurfaceFunction {
    pub fn new(params: &SurfaceParams, num_a: Poly, num_b: Poly, den: Poly) -> Result<Self> {
        if den.degree().is_none() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self { k0: params.k0, num_a, num_b, den })
    }

    /// The Cayley factor (xi - i)/(xi + i) = lambda_- / lambda_+.
    pub fn cayley(params: &SurfaceParams) -> Self {
        Self::new(params, Poly::from_roots(&[I]), Poly(vec![]), Poly::from_roots(&[-I])).unwrap()
    }

    /// q = p1 / p2 with p1 = (xi + i)(xi + i k0) and p2 = (xi - i)(xi - i k0).
    pub fn q(params: &SurfaceParams) -> Self {
        let k0 = params.k0;
        Self::new(
            params,
            Poly::from_roots(&[-I, -I * k0]),
            Poly(vec![]),
            Poly::from_roots(&[I, I * k0]),
        )
        .unwrap()
    }

    /// tau itself.
    pub fn tau(params: &SurfaceParams) -> Self {
        Self::new(params, Poly(vec![]), Poly::constant(C64::new(1.0, 0.0)), Poly::constant(C64::new(1.0, 0.0)))
            .unwrap()
    }

    /// lambda_+ = xi + i (unbounded at infinity).
    pub fn lambda_plus(params: &SurfaceParams) -> Self {
        Self::new(params, Poly::from_roots(&[-I]), Poly(vec![]), Poly::constant(C64::new(1.0, 0.0))).unwrap()
    }

    /// lambda_- = xi - i.
    pub fn lambda_minus(params: &SurfaceParams) -> Self {
        Self::new(params, Poly::from_roots(&[I]), Poly(vec![]), Poly::constant(C64::new(1.0, 0.0))).unwrap()
    }

    /// nu + tau / ((xi + i)(xi - i k0)).
    pub fn r_nu(params: &SurfaceParams, nu: C64) -> Self {
        let den = Poly::from_roots(&[-I, I * params.k0]);
        Self::new(params, den.scale(nu), Poly::constant(C64::new(1.0, 0.0)), den).unwrap()
    }

    fn eval_finite(&self, xi: C64, tau: C64) -> Result<C64> {
        let c = self.den.eval(xi);
        let scale = self.den.0.iter().map(|v| v.norm()).sum::<f64>() * (1.0 + xi.norm()).powi(self.den.0.len() as i32);
        if c.norm() <= 1e-15 * scale {
            return Err(Error::Pole(format!("denominator vanishes at xi = {xi}")));
        }
        Ok((self.num_a.eval(xi) + self.num_b.eval(xi) * tau) / c)
    }

    fn eval_infinity(&self, sign: f64) -> Result<C64> {
        let num = self.num_a.laurent().add(&self.num_b.laurent().mul(&Laurent::tau(self.k0, sign)));
        num.div(&self.den.laurent())?
            .limit()
            .map_err(|_| Error::Pole("pole at infinity".into()))
    }
}

impl SurfaceFunction for RationalSurfaceFunction {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        match *p {
            SurfacePoint::Finite { xi, tau } => self.eval_finite(xi, tau),
            SurfacePoint::Infinity(s) => self.eval_infinity(s.sign()),
        }
    }
}

/// The two-zero family member r_nu with its defining data.
#[derive(Debug, Clone, PartialEq)]
pub struct RNu {
    /// The torus point it realizes: beta_{r_nu} = beta mod L.
    pub beta: C64,
    pub nu: C64,
    /// First zero (z0, tau0); the second is (k0 / z0, k0 tau0 / z0^2).
    pub z0: C64,
    pub tau0: C64,
    pub function: RationalSurfaceFunction,
}

impl RNu {
    pub fn second_zero(&self) -> (C64, C64) {
        let k0 = self.function.k0;
        (k0 / self.z0, k0 * self.tau0 / (self.z0 * self.z0))
    }

    /// The closed-form value over a real node; exact at infinity.
    fn node_value(&self, grid: &GammaGrid, j: usize, sign: f64) -> C64 {
        match grid.nodes[j].xi {
            None => self.nu + sign,
            Some(x) => {
                let x = C64::new(x, 0.0);
                let rho = grid.nodes[j].rho_scaled * (1.0 + x.re * x.re);
                self.nu + sign * rho / ((x + I) * (x - I * self.function.k0))
            }
        }
    }
}

impl SurfaceFunction for RNu {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        self.function.eval(p)
    }

    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        Ok(self.node_value(grid, j, sign))
    }
}

/// Builds r_nu for a torus point in the inner strip |Re beta| < K, beta != 0.
///
/// The zero is placed at sigma(-K - beta), which makes the log integral of
/// r_nu equal to +beta under the sign convention used for the invariant here.
pub fn make_r_nu(params: &SurfaceParams, beta: C64) -> Result<RNu> {
    let tol = params.default_tol_lattice();
    let region = classify_region(params, beta, tol);
    let inside = beta.im > -params.kp - tol && beta.im <= params.kp + tol;
    if region != Region::P1 || !inside {
        return Err(Error::Domain(format!(
            "beta = {beta} is not in the inner strip minus the origin"
        )));
    }
    let (z0, tau0) = match sigma_map(params, -params.k - beta) {
        SurfacePoint::Finite { xi, tau } => (xi, tau),
        SurfacePoint::Infinity(_) => {
            return Err(Error::Internal(format!("zero of r_nu at infinity for beta = {beta}")))
        }
    };
    if z0.im >= 0.0 {
        return Err(Error::Internal(format!("zero {z0} of r_nu is not in the lower half-plane")));
    }
    let k0 = params.k0;
    let nu = -tau0 / ((z0 + I) * (z0 - I * k0));
    if (nu * nu - 1.0).norm() < 1e-12 {
        return Err(Error::Internal(format!("nu^2 = 1 for beta = {beta}")));
    }
    // the branch-point case beta = iK' gives tau0 = 0 exactly in theory
    let nu = if tau0.norm() <= 1e-12 * (1.0 + z0.norm_sqr()) { C64::new(0.0, 0.0) } else { nu };
    Ok(RNu { beta, nu, z0, tau0, function: RationalSurfaceFunction::r_nu(params, nu) })
}
