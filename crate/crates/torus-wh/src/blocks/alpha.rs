use super::SurfaceFunction;
use crate::contour::{GammaGrid, Side};
use crate::error::{Error, Result};
use crate::surface::{rho_branches, SurfaceParams, SurfacePoint};
use num_complex::Complex64 as C64;

const I: C64 = C64::new(0.0, 1.0);

/// alpha_+ = C + tau/((xi - i) rho_+) and alpha_- = C + tau/((xi + i) rho_-),
/// C = sqrt((1 + k0)/2). Each has one simple pole, at the branch point i
/// (respectively -i).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPm {
    pub params: SurfaceParams,
    pub side: Side,
    pub c: f64,
}

pub fn alpha_pm(params: &SurfaceParams, side: Side) -> AlphaPm {
    AlphaPm { params: *params, side, c: params.c_const() }
}

impl AlphaPm {
    fn pole(&self) -> C64 {
        match self.side {
            Side::Plus => I,
            Side::Minus => -I,
        }
    }

    /// Sheet-one restriction minus C on the real line: rho_-/(xi - i) for the
    /// plus unit and rho_+/(xi + i) for the minus unit; 1 at infinity.
    pub fn odd_line_part(&self, xi: Option<f64>) -> C64 {
        match xi {
            None => C64::new(1.0, 0.0),
            Some(x) => {
                let x = C64::new(x, 0.0);
                let r = rho_branches(&self.params, x).expect("real points are off the cuts");
                match self.side {
                    Side::Plus => r.rho_minus / (x - I),
                    Side::Minus => r.rho_plus / (x + I),
                }
            }
        }
    }
}

impl SurfaceFunction for AlphaPm {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        match *p {
            SurfacePoint::Infinity(s) => Ok(C64::new(self.c + s.sign(), 0.0)),
            SurfacePoint::Finite { xi, tau } => {
                let d = xi - self.pole();
                if d.norm() <= 1e-14 {
                    return Err(Error::Pole(format!("alpha has its pole at xi = {}", self.pole())));
                }
                let r = rho_branches(&self.params, xi)?;
                let other = match self.side {
                    Side::Plus => r.rho_plus,
                    Side::Minus => r.rho_minus,
                };
                Ok(self.c + tau / (d * other))
            }
        }
    }

    fn eval_node(&self, grid: &GammaGrid, j: usize, sign: f64) -> Result<C64> {
        Ok(self.c + sign * self.odd_line_part(grid.nodes[j].xi))
    }
}
