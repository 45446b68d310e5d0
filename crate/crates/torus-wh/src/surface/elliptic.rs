//! Real and complex Jacobi elliptic functions, Carlson's R_F, and the odd theta
//! function with its derivative.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let a1 = 0.5 * (a + b);
        let b1 = (a * b).sqrt();
        if (a1 - b1).abs() <= 1e-16 * a1 {
            return a1;
        }
        a = a1;
        b = b1;
    }
    a
}

/// Complete elliptic integral of the first kind for modulus `k` in [0, 1).
pub fn complete_k(k: f64) -> f64 {
    let kp = (1.0 - k * k).sqrt();
    PI / (2.0 * agm(1.0, kp))
}

/// Carlson's symmetric integral R_F(x, y, z) for nonnegative reals, at most one zero.
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..100 {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        let e = dx.abs().max(dy.abs()).max(dz.abs());
        if e < 1e-4 {
            // fifth-order Taylor tail (error ~ e^6)
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
    let mu = (x + y + z) / 3.0;
    1.0 / mu.sqrt()
}

/// Incomplete integral F(phi | k) for |phi| <= pi/2.
pub fn incomplete_f(phi: f64, k: f64) -> f64 {
    let s = phi.sin();
    let c = phi.cos();
    s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
}

/// (sn, cn, dn)(u | k) for real `u` and modulus `k` in [0, 1), by descending
/// Landen / AGM. `quarter` is K(k), used to reduce the argument first.
pub fn jacobi_real(u: f64, k: f64, quarter: f64) -> (f64, f64, f64) {
    // reduce u into [-2K, 2K): sn, cn flip sign under u -> u + 2K, dn is even-periodic
    let period = 4.0 * quarter;
    let mut v = u - period * (u / period).round();
    let mut sign = 1.0;
    if v >= 2.0 * quarter {
        v -= 2.0 * quarter;
        sign = -1.0;
    } else if v < -2.0 * quarter {
        v += 2.0 * quarter;
        sign = -1.0;
    }
    if k == 0.0 {
        return (sign * v.sin(), sign * v.cos(), 1.0);
    }
    let kp = (1.0 - k * k).sqrt();
    let mut a = [0.0f64; 32];
    let mut c = [0.0f64; 32];
    a[0] = 1.0;
    let mut b = kp;
    c[0] = k;
    let mut n = 0;
    while c[n].abs() > 1e-16 && n < 30 {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = an;
        c[n] = cn;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * v;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    // dn > 0 on the real line; the Landen quotient for dn loses digits near u = K
    let dn = (1.0 - k * k * sn * sn).sqrt();
    (sign * sn, sign * cn, dn)
}

/// Precomputed modulus data for evaluating Jacobi functions at complex arguments.
#[derive(Debug, Clone, Copy)]
pub struct JacobiModulus {
    pub k: f64,
    pub kp: f64,
    pub quarter: f64,
    pub quarter_comp: f64,
}

impl JacobiModulus {
    pub fn new(k: f64) -> Self {
        let kp = (1.0 - k * k).sqrt();
        Self {
            k,
            kp,
            quarter: complete_k(k),
            quarter_comp: complete_k(kp),
        }
    }

    /// Numerators and common denominator of (sn, cn, dn)(x + iy):
    /// sn = n_s / d, cn = n_c / d, dn = n_d / d. Keeping them separate lets callers
    /// handle the poles without dividing by zero.
    pub fn sncndn_parts(&self, z: C64) -> ([C64; 3], f64) {
        let (s, c, d) = jacobi_real(z.re, self.k, self.quarter);
        let (s1, c1, d1) = jacobi_real(z.im, self.kp, self.quarter_comp);
        let k2 = self.k * self.k;
        let den = c1 * c1 + k2 * s * s * s1 * s1;
        let ns = C64::new(s * d1, c * d * s1 * c1);
        let nc = C64::new(c * c1, -s * d * s1 * d1);
        let nd = C64::new(d * c1 * d1, -k2 * s * c * s1);
        ([ns, nc, nd], den)
    }

    /// (sn, cn, dn)(z) for complex z away from poles.
    pub fn sncndn(&self, z: C64) -> (C64, C64, C64) {
        let ([ns, nc, nd], den) = self.sncndn_parts(z);
        (ns / den, nc / den, nd / den)
    }
}

/// Odd Jacobi theta function and its derivative, for nome `q` (0 < q < 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theta1 {
    pub q: f64,
}

impl Theta1 {
    fn terms(&self) -> usize {
        // q^{(n+1/2)^2} below 1e-30 relative, with headroom for |Im u| up to a few
        let lq = -self.q.ln();
        ((70.0 / lq).sqrt() as usize + 4).min(200)
    }

    /// theta_1(u) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) u)
    pub fn value(&self, u: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..self.terms() {
            let e = (n as f64 + 0.5).powi(2);
            let coeff = self.q.powf(e) * if n % 2 == 0 { 2.0 } else { -2.0 };
            acc += coeff * (u * (2 * n + 1) as f64).sin();
        }
        acc
    }

    /// theta_1'(u)
    pub fn derivative(&self, u: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..self.terms() {
            let e = (n as f64 + 0.5).powi(2);
            let m = (2 * n + 1) as f64;
            let coeff = self.q.powf(e) * m * if n % 2 == 0 { 2.0 } else { -2.0 };
            acc += coeff * (u * m).cos();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Gauss-Legendre oracle for K(k) after the substitution x = sin(t).
    fn k_by_quadrature(k: f64) -> f64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let panels = 400;
        let h = (PI / 2.0) / panels as f64;
        let mut s = 0.0;
        for p in 0..panels {
            let a = p as f64 * h;
            for (x, w) in nodes {
                let t = a + 0.5 * h * (x + 1.0);
                s += 0.5 * h * w / (1.0 - k * k * t.sin().powi(2)).sqrt();
            }
        }
        s
    }

    #[test]
    fn complete_integrals_match_quadrature() {
        let k = 0.5;
        let kp = (1.0f64 - 0.25).sqrt();
        assert!((complete_k(k) - k_by_quadrature(k)).abs() < 1e-13);
        assert!((complete_k(kp) - k_by_quadrature(kp)).abs() < 1e-13);
        assert!((complete_k(k) - 1.685_750_354_812_596).abs() < 1e-13);
        assert!((complete_k(kp) - 2.156_515_647_499_643).abs() < 1e-13);
    }

    #[test]
    fn incomplete_at_right_angle_is_complete() {
        for k in [0.1, 0.5, 0.9, 0.99] {
            assert!((incomplete_f(PI / 2.0, k) - complete_k(k)).abs() < 1e-13);
        }
    }

    #[test]
    fn real_jacobi_identities() {
        let k = 0.5;
        let kk = complete_k(k);
        for j in 0..200 {
            let u = -9.0 + 0.09 * j as f64;
            let (s, c, d) = jacobi_real(u, k, kk);
            assert!((s * s + c * c - 1.0).abs() < 1e-14);
            assert!((d * d + k * k * s * s - 1.0).abs() < 1e-14);
        }
        let (s, c, d) = jacobi_real(kk, k, kk);
        assert!((s - 1.0).abs() < 1e-14 && c.abs() < 1e-13 && (d - (0.75f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn real_jacobi_inverts_incomplete_integral() {
        let k = 0.7;
        let kk = complete_k(k);
        for j in 1..30 {
            let phi = -1.5 + 0.1 * j as f64;
            let u = incomplete_f(phi, k);
            let (s, _, _) = jacobi_real(u, k, kk);
            assert!((s - phi.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_jacobi_satisfies_derivative_relation() {
        let m = JacobiModulus::new(0.5);
        let h = 1e-5;
        for z in [C64::new(0.3, 0.4), C64::new(-1.2, 1.7), C64::new(2.5, -0.9)] {
            let (s, c, d) = m.sncndn(z);
            assert!((s * s + c * c - 1.0).norm() < 1e-13);
            assert!((d * d + 0.25 * s * s - 1.0).norm() < 1e-13);
            let (sp, _, _) = m.sncndn(z + h);
            let (sm, _, _) = m.sncndn(z - h);
            let deriv = (sp - sm) / (2.0 * h);
            assert!((deriv - c * d).norm() < 1e-8);
        }
    }

    #[test]
    fn theta_is_odd_and_quasi_periodic() {
        let th = Theta1 { q: 0.2 };
        let u = C64::new(0.37, 0.21);
        assert!((th.value(u) + th.value(-u)).norm() < 1e-15);
        assert!((th.value(u + PI) + th.value(u)).norm() < 1e-14);
        // theta_1(u + pi*tau) = -q^{-1} e^{-2iu} theta_1(u), with q = e^{i pi tau}
        let pitau = C64::new(0.0, -(0.2f64).ln());
        let lhs = th.value(u + pitau);
        let rhs = -th.value(u) * (C64::new(0.0, -2.0) * u).exp() / 0.2;
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
        let h = 1e-6;
        let fd = (th.value(u + h) - th.value(u - h)) / (2.0 * h);
        assert!((fd - th.derivative(u)).norm() < 1e-8);
    }
}
