//! Truncated Laurent series in the reciprocal coordinate u = 1/xi, used to take
//! limits of closed-form expressions at the point at infinity.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Number of retained coefficients.
pub const TERMS: usize = 16;

/// sum_j coeffs[j] u^(order + j), exact up to order + TERMS.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    pub order: i32,
    pub coeffs: Vec<C64>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

impl Laurent {
    pub fn constant(c: C64) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// xi itself, u^-1.
    pub fn xi() -> Self {
        Self::from_coeffs(-1, vec![C64::new(1.0, 0.0)])
    }

    pub fn from_coeffs(order: i32, mut coeffs: Vec<C64>) -> Self {
        coeffs.resize(TERMS, zero());
        Self { order, coeffs }
    }

    /// A polynomial in xi given by ascending coefficients.
    pub fn polynomial(coeffs: &[C64]) -> Self {
        let d = coeffs.len().saturating_sub(1);
        let rev: Vec<C64> = coeffs.iter().rev().copied().collect();
        Self::from_coeffs(-(d as i32), rev).normalized()
    }

    /// tau on the given sheet (sign +1 for sheet one): s u^-2 sqrt((1 + u^2)(1 + k0^2 u^2)).
    pub fn tau(k0: f64, sign: f64) -> Self {
        let mut inner = vec![zero(); TERMS];
        inner[0] = C64::new(1.0, 0.0);
        inner[2] = C64::new(1.0 + k0 * k0, 0.0);
        inner[4] = C64::new(k0 * k0, 0.0);
        let root = sqrt_unit(&inner);
        Self::from_coeffs(-2, root.into_iter().map(|c| c * sign).collect())
    }

    /// Drops leading coefficients that vanish to rounding.
    pub fn normalized(mut self) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut shift = 0;
        while shift < TERMS - 1 && self.coeffs[shift].norm() <= 1e-13 * scale {
            shift += 1;
        }
        if scale == 0.0 {
            return Self::from_coeffs(0, vec![]);
        }
        if shift > 0 {
            self.coeffs.drain(..shift);
            self.coeffs.resize(TERMS, zero());
            self.order += shift as i32;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == zero())
    }

    fn coeff_at(&self, power: i32) -> C64 {
        let j = power - self.order;
        if j < 0 || j as usize >= TERMS {
            zero()
        } else {
            self.coeffs[j as usize]
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.order.min(other.order);
        let coeffs = (0..TERMS as i32)
            .map(|j| self.coeff_at(lo + j) + other.coeff_at(lo + j))
            .collect();
        Self::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.order, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_coeffs(self.order, self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![zero(); TERMS];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(TERMS - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.order + other.order, out).normalized()
    }

    pub fn recip(&self) -> Result<Self> {
        let s = self.clone().normalized();
        let a0 = s.coeffs[0];
        if a0 == zero() {
            return Err(Error::Eval("reciprocal of a series that vanishes identically".into()));
        }
        let mut out = vec![zero(); TERMS];
        out[0] = 1.0 / a0;
        for n in 1..TERMS {
            let mut acc = zero();
            for k in 1..=n {
                acc += s.coeffs[k] * out[n - k];
            }
            out[n] = -acc / a0;
        }
        Ok(Self::from_coeffs(-s.order, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::constant(C64::new(1.0, 0.0));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// exp of a series without negative powers.
    pub fn exp(&self) -> Result<Self> {
        let s = self.clone().normalized();
        if s.order < 0 {
            return Err(Error::Eval("exp of an expression that is unbounded at infinity".into()));
        }
        // shift so that the series starts at u^0
        let mut a = vec![zero(); TERMS];
        for (j, slot) in a.iter_mut().enumerate() {
            *slot = s.coeff_at(j as i32);
        }
        let mut out = vec![zero(); TERMS];
        out[0] = a[0].exp();
        // b' = a' b  =>  n b_n = sum_k k a_k b_{n-k}
        for n in 1..TERMS {
            let mut acc = zero();
            for k in 1..=n {
                acc += a[k] * out[n - k] * k as f64;
            }
            out[n] = acc / n as f64;
        }
        Ok(Self::from_coeffs(0, out))
    }

    /// The value at u = 0, if finite.
    pub fn limit(&self) -> Result<C64> {
        let s = self.clone().normalized();
        if s.order < 0 && !s.is_zero() {
            return Err(Error::Eval("no finite limit at infinity".into()));
        }
        Ok(s.coeff_at(0))
    }
}

/// sqrt of a power series with leading coefficient 1.
fn sqrt_unit(a: &[C64]) -> Vec<C64> {
    let mut b = vec![zero(); TERMS];
    b[0] = C64::new(1.0, 0.0);
    for n in 1..TERMS {
        let mut acc = a[n];
        for k in 1..n {
            acc -= b[k] * b[n - k];
        }
        b[n] = acc / 2.0;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn cayley_limit_is_one() {
        let i = C64::new(0.0, 1.0);
        let x = Laurent::xi();
        let w = x.sub(&Laurent::constant(i)).div(&x.add(&Laurent::constant(i))).unwrap();
        assert!((w.limit().unwrap() - 1.0).norm() < 1e-15);
        assert!(x.limit().is_err());
    }

    #[test]
    fn tau_expansion_squares_to_quartic() {
        let k0 = 2.0;
        let t = Laurent::tau(k0, 1.0);
        let x2 = Laurent::polynomial(&[c(0.0), c(0.0), c(1.0)]);
        let quartic = Laurent::polynomial(&[c(k0 * k0), c(0.0), c(1.0 + k0 * k0), c(0.0), c(1.0)]);
        let d = t.mul(&t).sub(&quartic);
        assert!(d.coeffs.iter().all(|v| v.norm() < 1e-12), "{d:?}");
        // tau / xi^2 -> 1 on sheet one
        assert!((t.div(&x2).unwrap().limit().unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn exp_of_decaying_term() {
        // exp(1/(1 + xi^2)) -> 1, and the u^2 coefficient is 1
        let one_plus = Laurent::polynomial(&[c(1.0), c(0.0), c(1.0)]);
        let e = one_plus.recip().unwrap().exp().unwrap();
        assert!((e.limit().unwrap() - 1.0).norm() < 1e-15);
        assert!((e.coeff_at(2) - 1.0).norm() < 1e-15);
        assert!(Laurent::xi().exp().is_err());
    }

    #[test]
    fn cancellation_leaves_finite_limit() {
        // (xi^2 + 1) - xi^2 = 1
        let a = Laurent::polynomial(&[c(1.0), c(0.0), c(1.0)]);
        let b = Laurent::polynomial(&[c(0.0), c(0.0), c(1.0)]);
        assert!((a.sub(&b).limit().unwrap() - 1.0).norm() < 1e-15);
    }
}
