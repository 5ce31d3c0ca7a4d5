//! `wave`: numerical base state, densities and the numeric invariant table.

use std::f64::consts::TAU;

use clap::{Args, Subcommand};
use serde::Serialize;
use vvjack::scalar::Scalar;
use vvjack::symmetric_jack::{jack, minimal_label};
use vvjack::torus_wave::base_state::{euler_defect, matrix_json, max_abs_diff};
use vvjack::torus_wave::hyper22::{closed_form_l, cross_ratio};
use vvjack::torus_wave::wave::{density, eigen_check, wavefunction};
use vvjack::torus_wave::JackField;
use vvjack::{BaseState, Engine, KappaContext, Partition, Permutation, Rational, TorusPoint};

use crate::commands::{parse_ints, parse_shape, resolve_sink, CheckRow};
use crate::{emit_json, CliError, CliResult, Output};

#[derive(Subcommand, Debug)]
pub enum WaveCommand {
    /// Integrate L from x_0 and print it in the orthonormal basis.
    Integrate(IntegrateArgs),
    /// Density ‖L J‖²/‖J‖² on a grid with θ_1 = 0, as CSV rows θ_1..θ_N,d.
    Density(DensityArgs),
    /// Numeric invariant suite for the base state; exits 4 on any failure.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct WaveShape {
    /// Partition τ, comma separated.
    #[arg(long)]
    tau: String,
    /// Coupling κ, "p/q" or a decimal; must satisfy |κ| < 1/h_τ.
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    /// Local error bound of the Runge-Kutta integrator.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl WaveShape {
    fn state(&self) -> CliResult<(BaseState, Rational)> {
        let shape = parse_shape(&self.tau)?;
        let k = Rational::parse_scalar(&self.kappa)?;
        if !(self.tol > 0.0) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        Ok((BaseState::new(&shape, k.to_f64())?.with_tol(self.tol), k))
    }
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    #[command(flatten)]
    shape: WaveShape,
    /// Angles θ_1,…,θ_N in radians.
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
}

#[derive(Serialize)]
struct IntegrateOut {
    tau: Vec<usize>,
    kappa: String,
    theta: Vec<f64>,
    tol: f64,
    in_fundamental_chamber: bool,
    chamber_permutation: Vec<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
    determinant: [f64; 2],
}

fn parse_angles(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|p| {
            let v: f64 = p.trim().parse().map_err(|_| CliError::Usage(format!("bad angle list {s:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::Usage(format!("non-finite angle in {s:?}")))
            }
        })
        .collect()
}

fn integrate(a: &IntegrateArgs) -> CliResult<()> {
    let (state, k) = a.shape.state()?;
    let theta = parse_angles(&a.theta)?;
    if theta.len() != state.n() {
        return Err(CliError::Usage(format!("theta has {} entries but |τ| = {}", theta.len(), state.n())));
    }
    let x = TorusPoint::new(theta.clone());
    let l = state.extend_l(&x)?;
    let det = l.value.determinant();
    emit_json(&IntegrateOut {
        tau: state.shape().parts().to_vec(),
        kappa: k.to_string(),
        tol: state.tol(),
        in_fundamental_chamber: x.in_fundamental_chamber(),
        chamber_permutation: x.chamber_perm().one_line(),
        matrix: matrix_json(&l.value),
        determinant: [det.re, det.im],
        theta,
    })
}

#[derive(Args, Debug)]
pub struct JackChoice {
    /// λ of the symmetric Jack polynomial; defaults to the minimal label.
    #[arg(long)]
    lambda: Option<String>,
    /// Sink tableau T_S, as T<k> or a content vector.
    #[arg(long, allow_hyphen_values = true)]
    tableau: Option<String>,
}

fn build_field(shape: &Partition, k: &Rational, choice: &JackChoice) -> CliResult<JackField<Rational>> {
    let ctx = KappaContext::new(shape, k.clone())?;
    let (lambda, sink) = match &choice.lambda {
        None => {
            let (l, ts) = minimal_label(shape);
            let sink = match &choice.tableau {
                Some(t) => resolve_sink(&ctx, &l, Some(t))?,
                None => ctx.basis().index_of(&ts).expect("row reading tableau"),
            };
            (l, sink)
        }
        Some(s) => {
            let lambda = parse_ints(s, "lambda")?;
            if lambda.len() != shape.size() {
                return Err(CliError::Usage(format!("lambda has {} entries but |τ| = {}", lambda.len(), shape.size())));
            }
            let sink = resolve_sink(&ctx, &lambda, choice.tableau.as_deref())?;
            (lambda, sink)
        }
    };
    Ok(JackField::new(&jack(&Engine::new(&ctx), &lambda, sink)?))
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    shape: WaveShape,
    #[command(flatten)]
    jack: JackChoice,
    /// Points per angle; θ_2..θ_N range over (k + 1/2)·2π/n.
    #[arg(long, default_value_t = 8)]
    grid: usize,
    /// Use the normalized hypergeometric closed form (τ = 2,2 only). It differs
    /// from the integrated L by a constant left factor, so densities differ too.
    #[arg(long)]
    closed_form: bool,
    #[arg(long, value_enum, default_value = "csv")]
    output: Output,
}

#[derive(Serialize)]
struct DensityRow {
    theta: Vec<f64>,
    density: f64,
}

fn density_cmd(a: &DensityArgs) -> CliResult<()> {
    let (state, k) = a.shape.state()?;
    if a.grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    let shape = state.shape().clone();
    if a.closed_form && shape.parts() != [2, 2] {
        return Err(CliError::Usage("--closed-form needs --tau 2,2".into()));
    }
    let field = build_field(&shape, &k, &a.jack)?;
    let n = state.n();
    let mut rows = Vec::new();
    let total = a.grid.pow((n - 1) as u32);
    for idx in 0..total {
        let mut theta = vec![0.0];
        let mut r = idx;
        for _ in 1..n {
            theta.push((r % a.grid) as f64 * TAU / a.grid as f64 + 0.5 * TAU / a.grid as f64);
            r /= a.grid;
        }
        let x = TorusPoint::new(theta);
        if !x.is_regular(1e-6) {
            continue;
        }
        let d = if a.closed_form {
            let l = closed_form_l(&state, &x)?;
            (l * field.value(&x)).norm_squared() / field.norm
        } else {
            density(&state, std::slice::from_ref(&x), &field)?[0]
        };
        rows.push(DensityRow { theta: x.angles().to_vec(), density: d });
    }
    match a.output {
        Output::Json => emit_json(&rows),
        Output::Csv => {
            let head: Vec<String> = (1..=n).map(|i| format!("theta{i}")).collect();
            out!("{},density", head.join(","));
            for r in rows {
                let t: Vec<String> = r.theta.iter().map(|v| format!("{v:.12}")).collect();
                out!("{},{:.12e}", t.join(","), r.density);
            }
            Ok(())
        }
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    shape: WaveShape,
    #[command(flatten)]
    jack: JackChoice,
    /// Number of chamber sample points.
    #[arg(long, default_value_t = 20)]
    points: usize,
    /// Print JSON instead of a text table.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct CheckOut {
    tau: Vec<usize>,
    kappa: String,
    tol: f64,
    passed: bool,
    checks: Vec<CheckRow>,
    det_exponent_trace: f64,
    det_exponent_alt: f64,
    det_match: String,
}

fn chamber_points(n: usize, count: usize) -> Vec<TorusPoint> {
    (0..count)
        .map(|k| {
            let gaps: Vec<f64> = (0..n).map(|j| 1.0 + 0.6 * ((3 * k + 5 * j + 1) as f64).sin()).collect();
            let total: f64 = gaps.iter().sum();
            let mut acc = 0.0;
            let mut t = Vec::new();
            for g in &gaps {
                t.push(acc);
                acc += g / total * TAU;
            }
            TorusPoint::new(t)
        })
        .collect()
}

fn row(name: &str, cases: usize, worst: f64, bound: f64) -> CheckRow {
    let passed = worst <= bound;
    CheckRow {
        name: name.into(),
        passed,
        cases,
        failure: (!passed).then(|| format!("worst {worst:.3e} exceeds {bound:.1e}")),
    }
}

fn check(a: &CheckArgs) -> CliResult<()> {
    let (state, k) = a.shape.state()?;
    let n = state.n();
    if a.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let pts = chamber_points(n, a.points);
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    for x in &pts {
        worst = worst.max(euler_defect(&state, x)?);
    }
    checks.push(row("euler_relation", pts.len(), worst, 1e-12));
    let (mut hom, mut path, mut cyc, mut coc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let w0 = Permutation::long_cycle(n);
    let perms = Permutation::all(n);
    for (i, x) in pts.iter().enumerate() {
        let l = state.integrate_l(x)?.value;
        hom = hom.max(max_abs_diff(&l, &state.extend_l(&x.rotate(0.37 + i as f64))?.value));
        path = path.max(max_abs_diff(&l, &state.integrate_via(x, &pts[(i + 1) % pts.len()])?));
        for m in 1..n as i64 {
            let lm = state.extend_l(&x.act(&w0.pow(m)))?.value;
            cyc = cyc.max(max_abs_diff(&lm, &(state.cycle_power(-m) * &l * state.cycle_power(m))));
        }
        if i < 3 {
            for w1 in &perms {
                for w2 in &perms {
                    let lhs = state.twist_m(&(w1 * w2), x);
                    let rhs = state.twist_m(w2, &x.act(w1)) * state.twist_m(w1, x);
                    coc = coc.max(max_abs_diff(&lhs, &rhs));
                }
            }
        }
    }
    checks.push(row("homogeneity", pts.len(), hom, 1e-9));
    checks.push(row("path_independence", pts.len(), path, 10.0 * state.tol()));
    checks.push(row("cyclic_conjugation", pts.len(), cyc, 1e-8));
    checks.push(row("cocycle", 3 * perms.len() * perms.len(), coc, 1e-12));
    let det = state.det_report(&pts)?;
    checks.push(row("det_identity", pts.len(), det.max_rel_err_trace, 1e-8));
    let field = build_field(state.shape(), &k, &a.jack)?;
    let eig = eigen_check(&state, &pts, &field)?;
    checks.push(row("hamiltonian_eigen", pts.len(), eig.max_rel_residual, 1e-6));
    let mut sym = 0.0f64;
    for (i, x) in pts.iter().enumerate() {
        let w = &perms[i % perms.len()];
        let d = wavefunction(&state, x, &field)?.norm_squared();
        let dw = wavefunction(&state, &x.act(w), &field)?.norm_squared();
        sym = sym.max((d - dw).abs() / d.max(f64::MIN_POSITIVE));
    }
    checks.push(row("density_symmetry", pts.len(), sym, 1e-8));
    if state.shape().parts() == [2, 2] {
        let mut z = 0.0f64;
        for x in &pts {
            let v = cross_ratio(x)?;
            if !(v > 0.0 && v < 1.0) {
                z = 1.0;
            }
        }
        checks.push(row("cross_ratio_range", pts.len(), z, 0.0));
        let err = vvjack::torus_wave::hyper22::ode_agreement(&state, &pts)?;
        checks.push(row("hypergeometric_closed_form", pts.len(), err, 1e-7));
    }
    let passed = checks.iter().all(|c| c.passed);
    let out = CheckOut {
        tau: state.shape().parts().to_vec(),
        kappa: k.to_string(),
        tol: state.tol(),
        passed,
        det_exponent_trace: det.lambda_trace,
        det_exponent_alt: det.lambda_alt,
        det_match: det.matching(1e-8).into(),
        checks,
    };
    if a.json {
        emit_json(&out)?;
    } else {
        out!("{:<28} {:<6} {:>6}  detail", "check", "result", "cases");
        for c in &out.checks {
            out!("{:<28} {:<6} {:>6}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.cases, c.failure.as_deref().unwrap_or(""));
        }
        out!(
            "det exponent: tr τ(1,2) = {} (max rel err {:.2e}); γn/(2(N-1)) = {} (max rel err {:.2e}); matching: {}",
            det.lambda_trace, det.max_rel_err_trace, det.lambda_alt, det.max_rel_err_alt, out.det_match
        );
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Verify("numeric invariant checks failed".into()))
    }
}

pub fn run(c: &WaveCommand) -> CliResult<()> {
    match c {
        WaveCommand::Integrate(a) => integrate(a),
        WaveCommand::Density(a) => density_cmd(a),
        WaveCommand::Check(a) => check(a),
    }
}
