//! The job description shared by flags and JSON job files.

use clap::Args;
use serde::{Deserialize, Serialize};

/// Every input a command can take. A job file uses the same names as the
/// flags (with underscores); flags given on the command line win.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Job {
    /// Command name, only read from job files.
    #[arg(skip)]
    #[serde(default)]
    pub command: Option<String>,
    /// Curve constant, > 1.
    #[arg(long)]
    #[serde(default)]
    pub k0: Option<f64>,
    /// Grid nodes per sheet, a power of two >= 64.
    #[arg(long)]
    #[serde(default)]
    pub n: Option<usize>,
    /// Absolute tolerance on torus coordinates.
    #[arg(long)]
    #[serde(default)]
    pub tol_lattice: Option<f64>,
    /// Relative reconstruction residual accepted by the verifier.
    #[arg(long)]
    #[serde(default)]
    pub tol_residual: Option<f64>,
    /// Scalar symbol on the surface, in xi and tau.
    #[arg(long)]
    #[serde(default)]
    pub expr: Option<String>,
    /// Diagonal entry of a matrix symbol, in xi.
    #[arg(long)]
    #[serde(default)]
    pub alpha: Option<String>,
    /// Off-diagonal entry of a matrix symbol, in xi.
    #[arg(long)]
    #[serde(default)]
    pub delta: Option<String>,
    /// Use delta = (xi - i)/(xi + i), the off-diagonal entry of R_0.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(default)]
    pub delta_from_r0: Option<bool>,
    /// Parameter of the example presets.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub t: Option<f64>,
    /// A named building block or matrix symbol.
    #[arg(long)]
    #[serde(default)]
    pub preset: Option<String>,
    /// Torus point for r_nu, a constant expression such as "0.5 + 0.3*i".
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub beta: Option<String>,
    /// Constant nu for the R_nu matrix preset.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub nu: Option<String>,
    /// Scalar engine: auto, special, holomorphic or meromorphic.
    #[arg(long)]
    #[serde(default)]
    pub mode: Option<String>,
    /// Emit boundary samples of the factors.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(default)]
    pub samples: Option<bool>,
}

impl Job {
    /// `self` with every field set in `flags` replaced.
    pub fn overlay(mut self, flags: &Job) -> Job {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f.clone(); } )* };
        }
        take!(command, k0, n, tol_lattice, tol_residual, expr, alpha, delta, delta_from_r0, t, preset, beta, nu, mode, samples);
        self
    }
}
