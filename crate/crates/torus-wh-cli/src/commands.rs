//! One function per subcommand. Each returns the result document and the
//! exit code it asks for.

use crate::job::Job;
use crate::output::{self, cx};
use anyhow::{anyhow, bail, Context as _, Result};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};
use std::sync::Arc;
use torus_wh::blocks::{alpha_pm, eval_on_gamma, make_r_nu, make_s, unit_u, RationalSurfaceFunction, SurfaceFunction};
use torus_wh::contour::projection::boundary_alias_fraction;
use torus_wh::contour::{beta_general, make_grid, BoundaryFunction, GammaGrid, Side};
use torus_wh::matrixfact::{matrix_wh_factorization, presets, toeplitz_kernel, MatrixSymbol};
use torus_wh::scalarfact::{
    classify, factorize, holomorphic_factorization, meromorphic_factorization, special_factorization,
    verify_factorization, ScalarFactorization, Tolerances,
};
use torus_wh::surface::SurfaceParams;
use torus_wh::symlang::{parse, LineExpr, SurfaceExpr};
use torus_wh::Error;

/// Leakage bound used by the scalar verifier.
const TAIL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    FactorScalar,
    FactorMatrix,
    Kernel,
    Blocks,
    Elliptic,
    Verify,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Classify,
        Command::FactorScalar,
        Command::FactorMatrix,
        Command::Kernel,
        Command::Blocks,
        Command::Elliptic,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::FactorScalar => "factor-scalar",
            Command::FactorMatrix => "factor-matrix",
            Command::Kernel => "kernel",
            Command::Blocks => "blocks",
            Command::Elliptic => "elliptic",
            Command::Verify => "verify",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| anyhow!("unknown command {s:?}"))
    }
}

pub struct Outcome {
    pub doc: Value,
    pub code: u8,
}

/// Validated configuration of one run.
pub struct Ctx {
    pub params: SurfaceParams,
    pub n: usize,
    pub tol: Tolerances,
    pub samples: bool,
}

impl Ctx {
    pub fn new(job: &Job) -> Result<Self> {
        let params = SurfaceParams::new(job.k0.unwrap_or(2.0))?;
        let mut tol = Tolerances::for_surface(&params);
        if let Some(t) = job.tol_lattice {
            tol.lattice = t;
        }
        if let Some(t) = job.tol_residual {
            tol.residual = t;
        }
        Ok(Self { params, n: job.n.unwrap_or(1024), tol, samples: job.samples.unwrap_or(false) })
    }

    fn grid(&self) -> Result<Arc<GammaGrid>> {
        Ok(make_grid(&self.params, self.n)?)
    }

    fn config(&self) -> Value {
        json!({
            "k0": self.params.k0,
            "n": self.n,
            "tol_lattice": self.tol.lattice,
            "tol_residual": self.tol.residual,
        })
    }
}

fn document(cmd: Command, ctx: &Ctx, invariants: Value, factors: Value, diagnostics: Value, provenance: Vec<String>) -> Value {
    json!({
        "schema": "torus-wh/1",
        "command": cmd.name(),
        "config": ctx.config(),
        "invariants": invariants,
        "factors": factors,
        "diagnostics": diagnostics,
        "provenance": provenance,
    })
}

/// A constant such as "0.5 + 0.3*i".
fn constant(src: &str, what: &str) -> Result<C64> {
    let e = parse(src).with_context(|| format!("--{what}"))?;
    if !e.is_constant() {
        bail!(Error::Config(format!("--{what} must be a constant, got {src:?}")));
    }
    Ok(e.eval_at(C64::new(0.0, 0.0), None)?)
}

fn scalar_preset(name: &str, job: &Job, params: &SurfaceParams) -> Result<Arc<dyn SurfaceFunction>> {
    Ok(match name {
        "r_nu" => {
            let b = job.beta.as_deref().ok_or_else(|| Error::Config("preset r_nu needs --beta".into()))?;
            Arc::new(make_r_nu(params, constant(b, "beta")?)?)
        }
        "alpha_plus" => Arc::new(alpha_pm(params, Side::Plus)),
        "alpha_minus" => Arc::new(alpha_pm(params, Side::Minus)),
        "S" => Arc::new(make_s(params)),
        "u" => Arc::new(unit_u(params)),
        "w" => Arc::new(RationalSurfaceFunction::cayley(params)),
        "q" => Arc::new(RationalSurfaceFunction::q(params)),
        other => bail!(Error::Config(format!(
            "unknown scalar preset {other:?}; expected r_nu, alpha_plus, alpha_minus, S, u, w or q"
        ))),
    })
}

/// Samples of the scalar symbol from --expr or --preset, and its description.
fn scalar_symbol(job: &Job, ctx: &Ctx, grid: &Arc<GammaGrid>) -> Result<(BoundaryFunction, String)> {
    let f: Arc<dyn SurfaceFunction> = match (&job.expr, &job.preset) {
        (Some(e), None) => Arc::new(SurfaceExpr::parse(e, &ctx.params)?),
        (None, Some(p)) => scalar_preset(p, job, &ctx.params)?,
        (Some(_), Some(_)) => bail!(Error::Config("give either --expr or --preset, not both".into())),
        (None, None) => bail!(Error::Config("a scalar symbol needs --expr or --preset".into())),
    };
    let label = job.expr.clone().or_else(|| job.preset.clone()).unwrap_or_default();
    Ok((eval_on_gamma(f.as_ref(), grid)?, label))
}

fn matrix_symbol(job: &Job, ctx: &Ctx) -> Result<(MatrixSymbol, String)> {
    let s = &ctx.params;
    if let Some(p) = &job.preset {
        let sym = match p.as_str() {
            "identity" => presets::identity(s),
            "R_0" | "r0" => presets::r0(s),
            "R_nu" => {
                let nu = job.nu.as_deref().ok_or_else(|| Error::Config("preset R_nu needs --nu".into()))?;
                presets::r_nu(s, constant(nu, "nu")?)
            }
            "A_plus" => presets::a_plus(s),
            "A_minus" => presets::a_minus(s),
            "example1" => presets::example1(s, job.t.ok_or_else(|| Error::Config("example1 needs --t".into()))?),
            "example2" => presets::example2(s, job.t.unwrap_or(1.0)),
            other => bail!(Error::Config(format!(
                "unknown matrix preset {other:?}; expected identity, R_0, R_nu, A_plus, A_minus, example1 or example2"
            ))),
        };
        return Ok((sym, p.clone()));
    }
    let alpha = job.alpha.clone().ok_or_else(|| Error::Config("a matrix symbol needs --alpha or --preset".into()))?;
    let delta = match (job.delta_from_r0.unwrap_or(false), &job.delta) {
        (true, Some(_)) => bail!(Error::Config("--delta conflicts with --delta-from-r0".into())),
        (true, None) => "(xi - i)/(xi + i)".to_string(),
        (false, Some(d)) => d.clone(),
        (false, None) => "0".to_string(),
    };
    let sym = MatrixSymbol::new(s, Arc::new(LineExpr::parse(&alpha)?), Arc::new(LineExpr::parse(&delta)?));
    Ok((sym, format!("[[{alpha}, {delta}], [q ({delta}), {alpha}]]")))
}

fn scalar_provenance(kind: &str) -> Vec<String> {
    ["sheet indices", "torus invariant", "index normalization", "region classification"]
        .iter()
        .map(|s| s.to_string())
        .chain([format!("{kind} factorization")])
        .collect()
}

pub fn elliptic(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let s = ctx.params;
    let (p1, p2) = s.lattice_periods();
    let invariants = json!({
        "K": s.k,
        "Kp": s.kp,
        "lattice_periods": [cx(p1), cx(p2)],
        "branch_points": s.branch_points().iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "c_const": s.c_const(),
    });
    let doc = document(Command::Elliptic, &ctx, invariants, json!({}), json!({}), vec!["complete integrals by AGM".into()]);
    Ok(Outcome { doc, code: 0 })
}

pub fn classify_cmd(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let grid = ctx.grid()?;
    let (f, label) = scalar_symbol(job, &ctx, &grid)?;
    let class = classify(&f, &ctx.tol)?;
    let diagnostics = json!({
        "symbol": label,
        "min_modulus": f.min_abs(),
        "max_modulus": f.max_abs(),
        "alias_fraction": boundary_alias_fraction(&f),
    });
    let mut prov = scalar_provenance(class.kind.name());
    prov.pop();
    let doc = document(Command::Classify, &ctx, output::class(&class), json!({}), diagnostics, prov);
    Ok(Outcome { doc, code: 0 })
}

fn run_scalar(job: &Job, ctx: &Ctx, f: &BoundaryFunction) -> Result<ScalarFactorization> {
    Ok(match job.mode.as_deref().unwrap_or("auto") {
        "auto" => factorize(f, &ctx.tol)?,
        "special" => special_factorization(f, &ctx.tol)?,
        "holomorphic" => holomorphic_factorization(f, &ctx.tol)?,
        "meromorphic" => meromorphic_factorization(f, &ctx.tol)?,
        other => bail!(Error::Config(format!(
            "unknown mode {other:?}; expected auto, special, holomorphic or meromorphic"
        ))),
    })
}

fn scalar_doc(cmd: Command, job: &Job, ctx: &Ctx) -> Result<(Value, bool)> {
    let grid = ctx.grid()?;
    let (f, label) = scalar_symbol(job, ctx, &grid)?;
    let fact = run_scalar(job, ctx, &f)?;
    let rep = verify_factorization(&f, &fact, &ctx.tol, TAIL_TOL)?;
    let mut factors = output::middle(&fact.middle);
    if ctx.samples {
        factors["f_minus"] = output::boundary(&fact.f_minus);
        factors["f_plus"] = output::boundary(&fact.f_plus);
    }
    let mut diagnostics = output::report(&rep);
    diagnostics["symbol"] = json!(label);
    diagnostics["edge_snap"] = json!(fact.edge_snap);
    diagnostics["alias_fraction"] = json!(boundary_alias_fraction(&f));
    let doc = document(cmd, ctx, output::class(&fact.class), factors, diagnostics, scalar_provenance(fact.class.kind.name()));
    Ok((doc, rep.passed))
}

pub fn factor_scalar(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let (doc, _) = scalar_doc(Command::FactorScalar, job, &ctx)?;
    Ok(Outcome { doc, code: 0 })
}

/// Like factor-scalar, but a failed check is a condition failure.
pub fn verify(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let (doc, passed) = scalar_doc(Command::Verify, job, &ctx)?;
    if !passed {
        eprintln!("verification failed: residual or analyticity tails above tolerance");
    }
    Ok(Outcome { doc, code: if passed { 0 } else { 2 } })
}

pub fn factor_matrix(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let grid = ctx.grid()?;
    let (sym, label) = matrix_symbol(job, &ctx)?;
    let f = matrix_wh_factorization(&sym, &grid, &ctx.tol)?;
    let mut invariants = output::class(&f.scalar.class);
    invariants["det_index"] = json!(sym.det_index(&grid)?);
    let mut factors = json!({
        "middle_form": f.middle.form.name(),
        "partial_indices": [f.partial_indices.0, f.partial_indices.1],
        "canonical": f.is_canonical(),
        "strip": f.strip,
        "nu": cx(f.middle.nu),
        "degenerate": f.middle.degenerate,
        "scalar_middle": output::middle(&f.scalar.middle),
    });
    if ctx.samples {
        factors["g_minus"] = output::matrix(&f.g_minus);
        factors["g_plus"] = output::matrix(&f.g_plus);
    }
    let diagnostics = json!({ "symbol": label, "residual": f.residual, "scalar_residual": f.scalar.residual });
    let doc = document(Command::FactorMatrix, &ctx, invariants, factors, diagnostics, f.provenance.clone());
    Ok(Outcome { doc, code: 0 })
}

pub fn kernel(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let grid = ctx.grid()?;
    let (sym, label) = matrix_symbol(job, &ctx)?;
    let k = toeplitz_kernel(&sym, &grid, &ctx.tol)?;
    let invariants = json!({
        "det_index": k.det_index,
        "n1": k.n1,
        "n2": k.n2,
        "beta": cx(k.beta),
        "beta_tilde": cx(k.beta_tilde),
    });
    let mut factors = json!({ "dimension": k.dimension() });
    let mut diagnostics = json!({ "symbol": label });
    let mut prov: Vec<String> =
        vec!["sigma-symbol".into(), "determinant index".into(), "kernel criterion on the reduced invariant".into()];
    if let Some(b) = &k.kernel {
        prov.push("factorization through r_0".into());
        diagnostics["plus_tail"] = json!(b.plus_tail);
        diagnostics["consistency"] = json!(b.consistency);
        let inf = grid.inf_index;
        factors["phi_plus_at_infinity"] = json!([cx(b.phi_plus[0][inf]), cx(b.phi_plus[1][inf])]);
        if ctx.samples {
            let comp = |v: &[Vec<C64>; 2]| {
                json!({
                    "theta": grid.theta,
                    "first": { "re": v[0].iter().map(|z| z.re).collect::<Vec<_>>(), "im": v[0].iter().map(|z| z.im).collect::<Vec<_>>() },
                    "second": { "re": v[1].iter().map(|z| z.re).collect::<Vec<_>>(), "im": v[1].iter().map(|z| z.im).collect::<Vec<_>>() },
                })
            };
            factors["phi_plus"] = comp(&b.phi_plus);
            factors["phi_minus"] = comp(&b.phi_minus);
            factors["generator"] = comp(&b.generator);
        }
    }
    let doc = document(Command::Kernel, &ctx, invariants, factors, diagnostics, prov);
    Ok(Outcome { doc, code: 0 })
}

pub fn blocks(job: &Job) -> Result<Outcome> {
    let ctx = Ctx::new(job)?;
    let grid = ctx.grid()?;
    let name = job.preset.clone().ok_or_else(|| Error::Config("blocks needs --preset".into()))?;
    let f = scalar_preset(&name, job, &ctx.params)?;
    let b = eval_on_gamma(f.as_ref(), &grid)?;
    let (beta, n1, n2) = beta_general(&b)?;
    let invariants = json!({
        "n1": n1,
        "n2": n2,
        "beta": cx(beta.raw),
        "beta_tilde": cx(beta.reduced),
    });
    let mut factors = json!({ "preset": name });
    if name == "r_nu" {
        let r = make_r_nu(&ctx.params, constant(job.beta.as_deref().unwrap_or("0"), "beta")?)?;
        factors["closed_form"] = json!({ "nu": cx(r.nu), "z0": cx(r.z0), "tau0": cx(r.tau0) });
    }
    if ctx.samples {
        factors["samples"] = output::boundary(&b);
    }
    let diagnostics = json!({ "min_modulus": b.min_abs(), "max_modulus": b.max_abs() });
    let doc = document(Command::Blocks, &ctx, invariants, factors, diagnostics, vec!["building block".into(), "torus invariant".into()]);
    Ok(Outcome { doc, code: 0 })
}

pub fn run(cmd: Command, job: &Job) -> Result<Outcome> {
    match cmd {
        Command::Classify => classify_cmd(job),
        Command::FactorScalar => factor_scalar(job),
        Command::FactorMatrix => factor_matrix(job),
        Command::Kernel => kernel(job),
        Command::Blocks => blocks(job),
        Command::Elliptic => elliptic(job),
        Command::Verify => verify(job),
    }
}

/// Exit code for an error: 2 for failed mathematical preconditions, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Condition(_)) => 2,
        _ => 1,
    }
}
