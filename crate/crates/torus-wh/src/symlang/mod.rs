//! A small expression language for symbols: numbers, i, xi, tau, + - * /,
//! integer powers and exp. Expressions evaluate on the line (no tau), on
//! surface points, and at the points over infinity through Laurent series.

mod parser;

pub use parser::parse;

use crate::blocks::SurfaceFunction;
use crate::error::{Error, Result};
use crate::matrixfact::LineFunction;
use crate::series::Laurent;
use crate::surface::{SurfaceParams, SurfacePoint};
use num_complex::Complex64 as C64;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    I,
    Xi,
    Tau,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
}

/// Denominators below this modulus are treated as poles.
const POLE_TOL: f64 = 1e-14;

impl Expr {
    pub fn has_tau(&self) -> bool {
        match self {
            Expr::Tau => true,
            Expr::Num(_) | Expr::I | Expr::Xi => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) => a.has_tau(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_tau() || b.has_tau(),
        }
    }

    /// True if the expression mentions neither xi nor tau.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Xi | Expr::Tau => false,
            Expr::Num(_) | Expr::I => true,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Value at a finite xi; `tau` is required iff the expression uses it.
    pub fn eval_at(&self, xi: C64, tau: Option<C64>) -> Result<C64> {
        let v = match self {
            Expr::Num(v) => C64::new(*v, 0.0),
            Expr::I => C64::new(0.0, 1.0),
            Expr::Xi => xi,
            Expr::Tau => tau.ok_or_else(|| Error::Context("tau is not defined on the line".into()))?,
            Expr::Neg(a) => -a.eval_at(xi, tau)?,
            Expr::Add(a, b) => a.eval_at(xi, tau)? + b.eval_at(xi, tau)?,
            Expr::Sub(a, b) => a.eval_at(xi, tau)? - b.eval_at(xi, tau)?,
            Expr::Mul(a, b) => a.eval_at(xi, tau)? * b.eval_at(xi, tau)?,
            Expr::Div(a, b) => {
                let den = b.eval_at(xi, tau)?;
                if den.norm() < POLE_TOL {
                    return Err(Error::Eval(format!("division by zero at xi = {xi}")));
                }
                a.eval_at(xi, tau)? / den
            }
            Expr::Pow(a, k) => {
                let base = a.eval_at(xi, tau)?;
                if *k < 0 && base.norm() < POLE_TOL {
                    return Err(Error::Eval(format!("negative power of zero at xi = {xi}")));
                }
                base.powi(*k)
            }
            Expr::Exp(a) => a.eval_at(xi, tau)?.exp(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Eval(format!("non-finite value at xi = {xi}")))
        }
    }

    /// Laurent series in 1/xi; `tau_sign` selects the sheet over infinity.
    pub fn laurent(&self, k0: f64, tau_sign: Option<f64>) -> Result<Laurent> {
        let rec = |e: &Expr| e.laurent(k0, tau_sign);
        Ok(match self {
            Expr::Num(v) => Laurent::constant(C64::new(*v, 0.0)),
            Expr::I => Laurent::constant(C64::new(0.0, 1.0)),
            Expr::Xi => Laurent::xi(),
            Expr::Tau => match tau_sign {
                Some(s) => Laurent::tau(k0, s),
                None => return Err(Error::Context("tau is not defined on the line".into())),
            },
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?).normalized(),
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?).normalized(),
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?).normalized(),
            Expr::Div(a, b) => rec(a)?.div(&rec(b)?.normalized()).map_err(as_eval)?,
            Expr::Pow(a, k) => rec(a)?.normalized().powi(*k as i64).map_err(as_eval)?,
            Expr::Exp(a) => rec(a)?.exp()?,
        })
    }

    /// Value on the real line; `None` is the point at infinity.
    pub fn eval_real(&self, xi: Option<f64>) -> Result<C64> {
        if self.has_tau() {
            return Err(Error::Context("tau is not defined on the line".into()));
        }
        match xi {
            Some(x) => self.eval_at(C64::new(x, 0.0), None),
            None => self.laurent(1.0, None)?.limit(),
        }
    }

    /// Value at a point of the surface, including the points over infinity.
    pub fn eval_surface(&self, params: &SurfaceParams, p: &SurfacePoint) -> Result<C64> {
        match *p {
            SurfacePoint::Finite { xi, tau } => self.eval_at(xi, Some(tau)),
            SurfacePoint::Infinity(sheet) => {
                let s = sheet.sign();
                if s == 0.0 {
                    return Err(Error::Domain("infinity has no branch sheet".into()));
                }
                self.laurent(params.k0, Some(s))?.limit()
            }
        }
    }
}

fn as_eval(e: Error) -> Error {
    match e {
        Error::Eval(_) => e,
        other => Error::Eval(other.to_string()),
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    // Display gives the shortest round-tripping decimal, never an exponent
    if v.fract() == 0.0 && v.abs() < 1e15 {
        write!(f, "{}", v as i64)
    } else {
        write!(f, "{v}")
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    if child.prec() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Canonical form: minimal parentheses, single spaces around + and -.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write_num(f, *v),
            Expr::I => f.write_str("i"),
            Expr::Xi => f.write_str("xi"),
            Expr::Tau => f.write_str("tau"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                write_child(f, b, 3)
            }
            Expr::Pow(a, k) => {
                write_child(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
        }
    }
}

/// Canonical text of an expression.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

/// An expression bound to a surface, usable as a symbol on the contour.
#[derive(Debug, Clone)]
pub struct SurfaceExpr {
    pub expr: Expr,
    pub params: SurfaceParams,
}

impl SurfaceExpr {
    pub fn parse(src: &str, params: &SurfaceParams) -> Result<Self> {
        Ok(Self { expr: parse(src)?, params: *params })
    }
}

impl SurfaceFunction for SurfaceExpr {
    fn eval(&self, p: &SurfacePoint) -> Result<C64> {
        self.expr.eval_surface(&self.params, p)
    }
}

/// A tau-free expression as a function on the line.
#[derive(Debug, Clone)]
pub struct LineExpr(pub Expr);

impl LineExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let e = parse(src)?;
        if e.has_tau() {
            return Err(Error::Context("tau is not defined on the line".into()));
        }
        Ok(Self(e))
    }
}

impl LineFunction for LineExpr {
    fn eval_line(&self, xi: Option<f64>) -> Result<C64> {
        self.0.eval_real(xi)
    }
}
