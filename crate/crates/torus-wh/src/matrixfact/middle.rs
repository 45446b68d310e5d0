use super::mat2::Mat2;
use crate::blocks::RNu;
use crate::error::{Error, Result};
use crate::surface::{rho_branches, SurfaceParams};
use num_complex::Complex64 as C64;

const I: C64 = C64::new(0.0, 1.0);

/// Below this |nu| the branch-point member r_0 is used, with its own factors.
pub const NU_ZERO_TOL: f64 = 1e-10;

/// The middle matrices 𝓘^-1(alpha_-^s r_nu^t alpha_+^v) that the assembly
/// reduces every symbol to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiddleForm {
    Identity,
    R,
    R2,
    AmAp,
    AmRAp,
    Am,
    AmR,
    AmR2,
    Am2Ap,
    Am2RAp,
}

impl MiddleForm {
    pub const ALL: [MiddleForm; 10] = [
        MiddleForm::Identity,
        MiddleForm::R,
        MiddleForm::R2,
        MiddleForm::AmAp,
        MiddleForm::AmRAp,
        MiddleForm::Am,
        MiddleForm::AmR,
        MiddleForm::AmR2,
        MiddleForm::Am2Ap,
        MiddleForm::Am2RAp,
    ];

    /// Exponents (s, t, v) of alpha_-^s r^t alpha_+^v.
    pub fn exponents(self) -> (u32, u32, u32) {
        match self {
            MiddleForm::Identity => (0, 0, 0),
            MiddleForm::R => (0, 1, 0),
            MiddleForm::R2 => (0, 2, 0),
            MiddleForm::AmAp => (1, 0, 1),
            MiddleForm::AmRAp => (1, 1, 1),
            MiddleForm::Am => (1, 0, 0),
            MiddleForm::AmR => (1, 1, 0),
            MiddleForm::AmR2 => (1, 2, 0),
            MiddleForm::Am2Ap => (2, 0, 1),
            MiddleForm::Am2RAp => (2, 1, 1),
        }
    }

    pub fn from_exponents(s: u32, t: u32, v: u32) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.exponents() == (s, t, v))
            .ok_or_else(|| Error::UnsupportedForm(format!("alpha_-^{s} r^{t} alpha_+^{v}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            MiddleForm::Identity => "I",
            MiddleForm::R => "R",
            MiddleForm::R2 => "R^2",
            MiddleForm::AmAp => "A-A+",
            MiddleForm::AmRAp => "A-RA+",
            MiddleForm::Am => "A-",
            MiddleForm::AmR => "A-R",
            MiddleForm::AmR2 => "A-R^2",
            MiddleForm::Am2Ap => "A-^2A+",
            MiddleForm::Am2RAp => "A-^2RA+",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Self::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnsupportedForm(s.to_string()))
    }

    pub fn needs_r(self) -> bool {
        self.exponents().1 > 0
    }

    /// Index of the determinant, s - v.
    pub fn det_index(self) -> i64 {
        let (s, _, v) = self.exponents();
        s as i64 - v as i64
    }
}

/// A real point of the extended line with the ratios the closed forms need;
/// every ratio has equal degrees, so its value at infinity is 1.
#[derive(Debug, Clone, Copy)]
struct Pt {
    x: Option<C64>,
    rm: C64,
    rp: C64,
}

impl Pt {
    fn new(params: &SurfaceParams, xi: Option<f64>) -> Self {
        match xi {
            None => Pt { x: None, rm: C64::new(1.0, 0.0), rp: C64::new(1.0, 0.0) },
            Some(x) => {
                let x = C64::new(x, 0.0);
                let r = rho_branches(params, x).expect("real points are off the cuts");
                Pt { x: Some(x), rm: r.rho_minus, rp: r.rho_plus }
            }
        }
    }

    /// (x - a)/(x - b).
    fn lin(&self, a: C64, b: C64) -> C64 {
        self.x.map_or(C64::new(1.0, 0.0), |x| (x - a) / (x - b))
    }

    /// (x - a)/rho_-(x).
    fn over_rm(&self, a: C64) -> C64 {
        self.x.map_or(C64::new(1.0, 0.0), |x| (x - a) / self.rm)
    }

    /// (x - a)/rho_+(x).
    fn over_rp(&self, a: C64) -> C64 {
        self.x.map_or(C64::new(1.0, 0.0), |x| (x - a) / self.rp)
    }

    /// rho_-(x)/(x - b).
    fn rm_over(&self, b: C64) -> C64 {
        self.x.map_or(C64::new(1.0, 0.0), |x| self.rm / (x - b))
    }

    /// rho_+(x)/(x - b).
    fn rp_over(&self, b: C64) -> C64 {
        self.x.map_or(C64::new(1.0, 0.0), |x| self.rp / (x - b))
    }

    fn w(&self) -> C64 {
        self.lin(I, -I)
    }
}

fn m(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
    Mat2::new(a, b, c, d)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Exact Wiener-Hopf factors M_- D M_+ of a middle form.
#[derive(Debug, Clone, PartialEq)]
pub struct MiddleWh {
    pub form: MiddleForm,
    pub params: SurfaceParams,
    /// Diagonal constant of A_+-, sqrt((1 + k0)/2).
    pub c: f64,
    pub nu: C64,
    /// Zeros of r_nu over z0 (lower half-plane) and k0/z0.
    pub z0: C64,
    pub z0_bar: C64,
    /// Constants of the R^2 factors, from evaluations at k0/z0 and z0.
    pub b: C64,
    pub b_tilde: C64,
    /// 2i nu/(i - z0), the constant of the A_-R factors.
    pub varrho: C64,
    /// nu = 0: the branch-point member r_0.
    pub degenerate: bool,
}

/// Builds the closed-form factorization of a middle form. Forms with r_nu need
/// its data; for |nu| < NU_ZERO_TOL the r_0 factors are used instead.
pub fn middle_factor_wh(params: &SurfaceParams, form: MiddleForm, r: Option<&RNu>) -> Result<MiddleWh> {
    let k0 = params.k0;
    let (nu, z0, degenerate) = match (form.needs_r(), r) {
        (false, _) => (zero(), -I * k0, true),
        (true, None) => {
            return Err(Error::Config(format!("middle form {} needs r_nu", form.name())))
        }
        (true, Some(r)) if r.nu.norm() < NU_ZERO_TOL => (zero(), -I * k0, true),
        (true, Some(r)) => (r.nu, r.z0, false),
    };
    if z0.im >= 0.0 {
        return Err(Error::Domain(format!("zero {z0} of r_nu is not in the lower half-plane")));
    }
    let z0_bar = k0 / z0;
    let th = |x: C64| (x - I) * (x + I * k0) / ((x + I) * (x - I * k0));
    let (b, b_tilde) = if degenerate {
        (zero(), zero())
    } else {
        let b = (1.0 / nu) * ((z0_bar - I * k0) / (z0_bar - z0)) * (nu * nu + th(z0_bar));
        let bt = -(1.0 / nu) * ((z0 + I) * (z0 - I * k0) / ((z0 - I) * (z0 - z0_bar))) * (nu * nu + th(z0));
        (b, bt)
    };
    Ok(MiddleWh {
        form,
        params: *params,
        c: params.c_const(),
        nu,
        z0,
        z0_bar,
        b,
        b_tilde,
        varrho: 2.0 * I * nu / (I - z0),
        degenerate,
    })
}

impl MiddleWh {
    fn pt(&self, xi: Option<f64>) -> Pt {
        Pt::new(&self.params, xi)
    }

    fn ik0(&self) -> C64 {
        I * self.params.k0
    }

    fn cc(&self) -> C64 {
        C64::new(self.c, 0.0)
    }

    /// 𝓘^-1(alpha_-).
    pub fn a_minus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.cc(), p.rm_over(-I), p.over_rm(-self.ik0()), self.cc())
    }

    /// 𝓘^-1(alpha_+).
    pub fn a_plus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.cc(), p.over_rp(self.ik0()), p.rp_over(I), self.cc())
    }

    /// Minus factor of A_-A_+, with determinant (k0 - 1)/2.
    pub fn a_minus_tilde(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.cc(), p.over_rm(self.ik0()), p.over_rm(-self.ik0()), self.cc() * p.lin(-I, I))
    }

    /// Plus factor of A_-A_+, with determinant (k0 - 1)/2.
    pub fn a_plus_tilde(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.cc(), p.over_rp(self.ik0()), p.rp_over(-I), self.cc() * p.w())
    }

    /// Second minus factor of the A_-^2 forms.
    pub fn b_minus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.cc() * p.lin(-I, I), p.over_rm(self.ik0()), p.over_rm(-self.ik0()), self.cc())
    }

    /// 𝓘^-1(r_nu).
    pub fn r(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(self.nu, p.w(), p.lin(-self.ik0(), self.ik0()), self.nu)
    }

    /// diag(1, w) R diag(1, 1/w).
    pub fn r_tilde(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        let th = p.lin(I, -I) * p.lin(-self.ik0(), self.ik0());
        m(self.nu, one(), th, self.nu)
    }

    /// Canonical factors of R (nu != 0).
    pub fn r_minus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        m(nu, zero(), p.lin(-self.ik0(), self.ik0()), ((1.0 - nu * nu) / nu) * p.lin(self.z0_bar, self.ik0()))
    }

    pub fn r_plus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        m(one(), p.w() / nu, zero(), -p.lin(self.z0, -I))
    }

    /// The plus factor that R_+ becomes after conjugation by diag(1, 1/w).
    pub fn t_plus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        m(one(), one() / nu, zero(), -p.lin(self.z0, -I))
    }

    /// Canonical factors of R̃ = diag(1, w) R diag(1, 1/w); valid for nu = 0 too.
    pub fn r_tilde_minus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        m(one(), zero(), nu, -(nu * nu - 1.0) * p.lin(self.z0_bar, self.ik0()))
    }

    pub fn r_tilde_plus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        m(nu, one(), p.lin(self.z0, -I), zero())
    }

    /// Entries of (R^2)_- and (R^2)_+; the product is (R^2)_- (R^2)_+^-1.
    pub fn r2_minus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        let (ik0, zb, z0) = (self.ik0(), self.z0_bar, self.z0);
        let th = p.lin(I, -I) * p.lin(-ik0, ik0);
        let r11 = self.b * p.lin(I, ik0);
        let r21 = self.b * nu * p.lin(-I, ik0) - (nu * nu - 1.0) * p.lin(zb, ik0);
        let r12 = (1.0 / nu)
            * p.lin(-I, z0)
            * (nu * self.b_tilde * p.lin(I, -I) * p.lin(zb, ik0) + nu * nu + th);
        let r22 = p.lin(-I, z0) * (2.0 * p.lin(-ik0, ik0) + self.b_tilde * nu * p.lin(zb, ik0));
        m(r11, r12, r21, r22)
    }

    pub fn r2_plus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        let (ik0, zb, z0) = (self.ik0(), self.z0_bar, self.z0);
        let th = p.lin(I, -I) * p.lin(-ik0, ik0);
        let w = p.w();
        let r21 = -(1.0 / (nu * nu - 1.0))
            * p.lin(-I, z0)
            * p.lin(-I, zb)
            * (p.lin(ik0, z0) * (nu * nu + th) - self.b * nu);
        let r11 = (1.0 / nu) * p.lin(I, z0) - (1.0 / nu) * w * r21;
        let r22 = self.b_tilde * (nu / (nu * nu - 1.0)) * p.lin(-I, z0) * p.lin(-I, z0);
        let r12 = (1.0 / nu) * p.lin(-I, z0) - (1.0 / nu) * w * r22;
        m(r11, r12, r21, r22)
    }

    /// diag(1, w) (R^2)_- diag(1/w, 1): the minus factor of the A_-R^2 form.
    pub fn r2_tilde(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        let r = self.r2_minus(xi);
        let r12 = r.0[0][1];
        m(
            self.b * p.lin(-I, self.ik0()),
            r12,
            r.0[1][0],
            nu * r12 - (nu * nu - 1.0) * p.lin(self.z0_bar, self.ik0()),
        )
    }

    /// Factors Q_- diag(1, w) Q_+^-1 of the A_-R form.
    pub fn q_minus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        let v = self.varrho;
        m(v, v * p.lin(-I, I) - 1.0, one(), p.lin(-I, I))
    }

    pub fn q_plus(&self, xi: Option<f64>) -> Mat2 {
        let (p, nu) = (self.pt(xi), self.nu);
        let v = self.varrho;
        let a = p.lin(-I, self.z0);
        let b = p.lin(-I, I);
        m(a, a, v * b - nu * b * a, (v - nu * a) * b - 1.0)
    }

    /// Factors of R_0 = 𝓘^-1(tau/((xi + i)(xi - i k0))) with D = diag(1/w, w).
    pub fn r0_minus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(zero(), one(), p.lin(I, self.ik0()), zero())
    }

    pub fn r0_plus(&self, xi: Option<f64>) -> Mat2 {
        let p = self.pt(xi);
        m(p.lin(-self.ik0(), -I), zero(), zero(), one())
    }

    /// Scalar factors of r_0^2 = s_- s_+.
    fn r0_squared(&self, xi: Option<f64>) -> (C64, C64) {
        let p = self.pt(xi);
        (p.lin(I, self.ik0()), p.lin(-self.ik0(), -I))
    }

    /// 𝓘^-1 of the middle form, computed as the plain product.
    pub fn target(&self, xi: Option<f64>) -> Mat2 {
        let (s, t, v) = self.form.exponents();
        let mut out = Mat2::identity();
        for _ in 0..s {
            out = out * self.a_minus(xi);
        }
        for _ in 0..t {
            out = out * self.r(xi);
        }
        for _ in 0..v {
            out = out * self.a_plus(xi);
        }
        out
    }

    /// Exponents (a, b) of D = diag(w^a, w^b).
    pub fn d_exponents(&self) -> (i64, i64) {
        use MiddleForm::*;
        match (self.form, self.degenerate) {
            (Identity | R2 | AmAp | AmRAp, _) => (0, 0),
            (R, false) => (0, 0),
            (R, true) => (-1, 1),
            (Am | AmR, _) => (0, 1),
            (AmR2 | Am2RAp, true) => (0, 1),
            (AmR2 | Am2Ap | Am2RAp, false) => (1, 0),
            (Am2Ap, true) => (1, 0),
        }
    }

    pub fn d(&self, xi: Option<f64>) -> Mat2 {
        let w = self.pt(xi).w();
        let (a, b) = self.d_exponents();
        Mat2::diag(w.powi(a as i32), w.powi(b as i32))
    }

    /// (M_-, M_+) with target = M_- D M_+.
    pub fn factors(&self, xi: Option<f64>) -> (Mat2, Mat2) {
        use MiddleForm::*;
        let id = Mat2::identity();
        let (am, ap) = (self.a_minus_tilde(xi), self.a_plus_tilde(xi));
        match (self.form, self.degenerate) {
            (Identity, _) => (id, id),
            (AmAp, _) => (am, ap),
            (Am, _) => (am, id),
            (Am2Ap, _) => (am * self.b_minus(xi), ap),
            (AmRAp, _) => (am * self.r_tilde_minus(xi), self.r_tilde_plus(xi) * ap),
            (AmR, _) => (am * self.r_tilde_minus(xi) * self.q_minus(xi), self.q_plus(xi).inv()),
            (R, false) => (self.r_minus(xi), self.r_plus(xi)),
            (R, true) => (self.r0_minus(xi), self.r0_plus(xi)),
            (R2, false) => (self.r2_minus(xi), self.r2_plus(xi).inv()),
            (R2, true) => {
                let (sm, sp) = self.r0_squared(xi);
                (Mat2::scalar(sm), Mat2::scalar(sp))
            }
            (AmR2, false) => (am * self.r2_tilde(xi), self.r2_plus(xi).inv()),
            (AmR2, true) => {
                let (sm, sp) = self.r0_squared(xi);
                (am.scale(sm), Mat2::scalar(sp))
            }
            (Am2RAp, false) => (am * self.b_minus(xi) * self.r_minus(xi), self.t_plus(xi) * ap),
            (Am2RAp, true) => (am * self.b_minus(xi) * self.r0_minus(xi), self.r0_plus(xi) * ap),
        }
    }

    /// Largest entry of M_- D M_+ - target at `xi`.
    pub fn product_error(&self, xi: Option<f64>) -> f64 {
        let (mm, mp) = self.factors(xi);
        (mm * self.d(xi) * mp - self.target(xi)).max_abs()
    }
}
