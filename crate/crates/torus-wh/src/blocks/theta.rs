use super::{node_lattice_coordinate, SurfaceFunction};
use crate::contour::GammaGrid;
use crate::error::{Error, Result};
use crate::surface::elliptic::Theta1;
use crate::surface::{abel_jacobi, SurfaceParams, SurfacePoint};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// An elliptic function given by its divisor in lattice coordinates, realized
/// as a quotient of theta_1 factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaEllipticFunction {
    pub params: SurfaceParams,
    /// (point, multiplicity) pairs.
    pub zero_points: Vec<(C64, u32)>,
    pub pole_points: Vec<(C64, u32)>,
    pub normalization: C64,
    theta: Theta1,
}

impl ThetaEllipticFunction {
    /// Requires degree zero and a divisor whose plain sum vanishes, so the
    /// quotient is single-valued on the torus.
    pub fn new(params: &SurfaceParams, zero_points: Vec<(C64, u32)>, pole_points: Vec<(C64, u32)>) -> Result<Self> {
        let deg: i64 = zero_points.iter().map(|p| p.1 as i64).sum::<i64>()
            - pole_points.iter().map(|p| p.1 as i64).sum::<i64>();
        let sum: C64 = zero_points.iter().map(|(a, m)| a * *m as f64).sum::<C64>()
            - pole_points.iter().map(|(a, m)| a * *m as f64).sum::<C64>();
        if deg != 0 || sum.norm() > 1e-12 * params.k {
            return Err(Error::Domain(format!(
                "divisor of degree {deg} and sum {sum} is not principal in this form"
            )));
        }
        Ok(Self {
            params: *params,
            zero_points,
            pole_points,
            normalization: C64::new(1.0, 0.0),
            theta: params.theta(),
        })
    }

    /// Rescales so that the value at lattice coordinate `z` is 1.
    pub fn normalized_at(mut self, z: C64) -> Result<Self> {
        self.normalization = C64::new(1.0, 0.0);
        let v = self.eval_z(z)?;
        self.normalization = 1.0 / v;
        Ok(self)
    }

    /// Value at lattice coordinate `z`.
    pub fn eval_z(&self, z: C64) -> Result<C64> {
        let scale = PI / (4.0 * self.params.k);
        let mut num = self.normalization;
        for (a, m) in &self.zero_points {
            num *= self.theta.value((z - a) * scale).powi(*m as i32);
        }
        let mut den = C64::new(1.0, 0.0);
        for (b, m) in &self.pole_points {
            den *= self.theta.value((z - b) * scale).powi(*m as i32);
        }
        let v = num / den;
        if den.norm() == 0.0 || !v.is_finite() {
            return Err(Error::Pole(format!("pole at lattice coordinate {z}")));
        }
        Ok(v)
    }
}

impl SurfaceFunction for ThetaEllipticFunction {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        self.eval_z(abel_jacobi(&self.params, p)?)
    }

    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        self.eval_z(node_lattice_coordinate(grid, j, sign))
    }
}

/// S: double zero at sigma(-K/5), simple poles at sigma(K) and sigma(-7K/5),
/// normalized to 1 at sigma(iK'), the sheet-one point at infinity.
pub fn make_s(params: &SurfaceParams) -> ThetaEllipticFunction {
    let k = params.k;
    ThetaEllipticFunction::new(
        params,
        vec![(C64::new(-k / 5.0, 0.0), 2)],
        vec![(C64::new(k, 0.0), 1), (C64::new(-7.0 * k / 5.0, 0.0), 1)],
    )
    .and_then(|s| s.normalized_at(C64::new(0.0, params.kp)))
    .expect("the divisor of S sums to zero")
}
