use crate::error::{Error, Result};
use crate::surface::elliptic::incomplete_f;
use crate::surface::SurfaceParams;
use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// One real node of the contour, shared by both sheets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    /// `None` at the point at infinity.
    pub xi: Option<f64>,
    /// Cayley image (xi - i)/(xi + i) = e^{i theta}.
    pub w: C64,
    /// rho(xi) / (1 + xi^2), 1 at infinity.
    pub rho_scaled: f64,
    /// (xi + i)^2 / rho(xi), 1 at infinity.
    pub kappa: C64,
}

/// Uniform angular grid on the real line through the Cayley chart.
///
/// Node j sits at theta_j = -pi + 2 pi (j + 1)/n, so xi increases with j except
/// for the wrap at infinity (index n/2 - 1); xi = 0 is the last node.
pub struct GammaGrid {
    pub surface: SurfaceParams,
    pub n: usize,
    pub theta: Vec<f64>,
    pub nodes: Vec<Node>,
    /// Torus ordinate t of the sheet-one point over each node (z = i t).
    pub t: Vec<f64>,
    /// Sheet-one values of the A-cycle correction used by the corrected projections.
    pub correction: Vec<C64>,
    pub inf_index: usize,
    pub zero_index: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for GammaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaGrid")
            .field("k0", &self.surface.k0)
            .field("n", &self.n)
            .finish()
    }
}

/// Builds the grid; `n` must be a power of two, at least 64.
pub fn make_grid(surface: &SurfaceParams, n: usize) -> Result<Arc<GammaGrid>> {
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::Config(format!(
            "grid size {n} must be a power of two and at least 64"
        )));
    }
    let k0 = surface.k0;
    let kp_mod = (1.0 - 1.0 / (k0 * k0)).sqrt();
    let theta: Vec<f64> = (0..n).map(|j| -PI + 2.0 * PI * (j + 1) as f64 / n as f64).collect();
    let inf_index = n / 2 - 1;
    let zero_index = n - 1;
    let mut nodes = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    for (j, &th) in theta.iter().enumerate() {
        let w = C64::from_polar(1.0, th);
        if j == inf_index {
            nodes.push(Node {
                xi: None,
                w: C64::new(1.0, 0.0),
                rho_scaled: 1.0,
                kappa: C64::new(1.0, 0.0),
            });
            t.push(surface.kp);
            continue;
        }
        let xi = if j == zero_index { 0.0 } else { -1.0 / (th / 2.0).tan() };
        let rho = ((1.0 + xi * xi) * (k0 * k0 + xi * xi)).sqrt();
        let lp = C64::new(xi, 1.0);
        nodes.push(Node {
            xi: Some(xi),
            w,
            rho_scaled: rho / (1.0 + xi * xi),
            kappa: lp * lp / rho,
        });
        t.push(-incomplete_f(xi.atan(), kp_mod));
    }
    let theta_fn = surface.theta();
    let b = C64::new(0.0, -2.0 * surface.k / PI);
    let log_derivative = |z: C64| {
        let u = PI * (z + surface.k) / (4.0 * surface.k);
        PI / (4.0 * surface.k) * theta_fn.derivative(u) / theta_fn.value(u)
    };
    // the correction jumps by -1 where the A-cycle crosses the line (xi = 0);
    // the node at xi = 0 takes the value from the xi < 0 side
    let correction = t
        .iter()
        .map(|&tj| {
            let side = if tj >= 0.0 { 0.5 } else { -0.5 };
            b * log_derivative(C64::new(0.0, tj)) + side
        })
        .collect();
    let mut planner = FftPlanner::new();
    Ok(Arc::new(GammaGrid {
        surface: *surface,
        n,
        theta,
        nodes,
        t,
        correction,
        inf_index,
        zero_index,
        fft: planner.plan_fft_forward(n),
        ifft: planner.plan_fft_inverse(n),
    }))
}

impl GammaGrid {
    pub fn xi(&self, j: usize) -> Option<f64> {
        self.nodes[j].xi
    }

    /// Integral over the real line of g, given h_j = (1 + xi_j^2) g(xi_j) with the
    /// limit value at infinity. Spectrally accurate for smooth h.
    pub fn integrate_scaled(&self, h: &[C64]) -> C64 {
        h.iter().sum::<C64>() * (PI / self.n as f64)
    }

    /// Raw FFT (no normalization).
    pub(crate) fn forward(&self, values: &[C64]) -> Vec<C64> {
        let mut buf = values.to_vec();
        self.fft.process(&mut buf);
        buf
    }

    pub(crate) fn inverse(&self, spectrum: &[C64]) -> Vec<C64> {
        let mut buf = spectrum.to_vec();
        self.ifft.process(&mut buf);
        let s = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|v| *v *= s);
        buf
    }

    /// Signed mode number of FFT bin `j`; the Nyquist bin counts as negative.
    pub fn mode_of_bin(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Coefficients c_k of values = sum_k c_k w^k, indexed by FFT bin.
    pub fn coefficients(&self, values: &[C64]) -> Vec<C64> {
        let theta0 = self.theta[0];
        let scale = 1.0 / self.n as f64;
        self.forward(values)
            .into_iter()
            .enumerate()
            .map(|(j, v)| {
                let k = self.mode_of_bin(j) as f64;
                v * C64::from_polar(scale, -k * theta0)
            })
            .collect()
    }
}
