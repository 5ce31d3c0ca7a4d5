//! Exact subcommands.

use std::sync::Arc;

use clap::Args;
use serde::Serialize;
use vvjack::combinatorics::{compositions, graph_below, jack_count_series, Partition};
use vvjack::hermitian::{norm as norm_closed, recursive_norm};
use vvjack::operators::{cherednik, cherednik_alt, hamiltonian_poly};
use vvjack::scalar::Scalar;
use vvjack::symmetric_jack::{column_strict_labels, component, jack as build_jack, eigenvalue, jack_norm_direct, minimal_label};
use vvjack::vvpoly::JsonTerm;
use vvjack::yang_baxter::Strategy;
use vvjack::{Context, Engine, KappaContext, Poly, Rational, TableauBasis};

use crate::{emit_json, CliError, CliResult, Output, ShapeKappa};

pub fn parse_shape(s: &str) -> CliResult<Partition> {
    Ok(Partition::parse(s)?)
}

pub fn parse_ints(s: &str, what: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad {what}: {s:?}"))))
        .collect()
}

/// `T<k>` or a content vector.
pub fn parse_tableau(basis: &TableauBasis, s: &str) -> CliResult<usize> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix('T') {
        let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad tableau label {s:?}")))?;
        if k >= basis.dim() {
            return Err(CliError::Usage(format!("tableau T{k} out of range; the shape has {} tableaux", basis.dim())));
        }
        return Ok(k);
    }
    let c = parse_ints(s, "content vector")?;
    basis.index_of_content(&c).ok_or_else(|| CliError::Usage(format!("no tableau has content vector {c:?}")))
}

pub fn context(sk: &ShapeKappa, max_degree: i64) -> CliResult<Arc<Context>> {
    let shape = parse_shape(&sk.tau)?;
    let k = Rational::parse_scalar(&sk.kappa)?;
    if sk.force_kappa {
        let ctx = KappaContext::new_forced(&shape, k)?;
        ctx.check_poles(max_degree)?;
        Ok(ctx)
    } else {
        Ok(KappaContext::new(&shape, k)?)
    }
}

#[derive(Serialize)]
pub struct TableauJson {
    pub label: String,
    pub rows: Vec<Vec<usize>>,
    pub content: Vec<i64>,
}

pub fn tableau_json(basis: &TableauBasis, t: usize) -> TableauJson {
    let tab = basis.tableau(t);
    TableauJson { label: format!("T{t}"), rows: tab.rows().to_vec(), content: tab.content_vector().to_vec() }
}

#[derive(Args, Debug)]
pub struct TableauxArgs {
    /// Partition τ, comma separated.
    #[arg(long)]
    tau: String,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Serialize)]
struct TableauxOut {
    tau: Vec<usize>,
    n: usize,
    dim: usize,
    max_hook: usize,
    content_sum: i64,
    gamma: String,
    tableaux: Vec<TableauEntry>,
}

#[derive(Serialize)]
struct TableauEntry {
    #[serde(flatten)]
    tableau: TableauJson,
    inv: usize,
    norm0: String,
}

pub fn tableaux(a: &TableauxArgs) -> CliResult<()> {
    let shape = parse_shape(&a.tau)?;
    let basis = TableauBasis::new(&shape);
    let entries: Vec<TableauEntry> = (0..basis.dim())
        .map(|t| TableauEntry {
            tableau: tableau_json(&basis, t),
            inv: basis.tableau(t).inv(),
            norm0: basis.tableau(t).norm0::<Rational>().to_string(),
        })
        .collect();
    if a.output == Output::Csv {
        out!("label,content,inv,norm0");
        for e in &entries {
            let c: Vec<String> = e.tableau.content.iter().map(|x| x.to_string()).collect();
            out!("{},\"{}\",{},{}", e.tableau.label, c.join(","), e.inv, e.norm0);
        }
        return Ok(());
    }
    emit_json(&TableauxOut {
        tau: shape.parts().to_vec(),
        n: shape.size(),
        dim: basis.dim(),
        max_hook: shape.max_hook(),
        content_sum: shape.content_sum(),
        gamma: shape.gamma::<Rational>().to_string(),
        tableaux: entries,
    })
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    First,
    Last,
}

#[derive(Args, Debug)]
pub struct NsjpArgs {
    #[command(flatten)]
    sk: ShapeKappa,
    /// Exponent α, comma separated; negative entries give a Laurent polynomial.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Tableau as T<k> or as a content vector.
    #[arg(long, allow_hyphen_values = true)]
    tableau: String,
    /// Which descent the scheduler removes first.
    #[arg(long, value_enum, default_value = "first")]
    strategy: StrategyArg,
}

#[derive(Serialize)]
struct NsjpOut {
    tau: Vec<usize>,
    kappa: String,
    alpha: Vec<i64>,
    tableau: TableauJson,
    spectral_vector: Vec<String>,
    norm: String,
    polynomial: Vec<JsonTerm>,
}

fn check_alpha(ctx: &Context, alpha: &[i64]) -> CliResult<()> {
    if alpha.len() != ctx.n() {
        return Err(CliError::Usage(format!("alpha has {} entries but |τ| = {}", alpha.len(), ctx.n())));
    }
    Ok(())
}

fn spread(alpha: &[i64]) -> i64 {
    let lo = alpha.iter().copied().min().unwrap_or(0).min(0);
    alpha.iter().map(|a| a - lo).sum()
}

pub fn nsjp(a: &NsjpArgs) -> CliResult<()> {
    let alpha = parse_ints(&a.alpha, "alpha")?;
    let ctx = context(&a.sk, spread(&alpha))?;
    check_alpha(&ctx, &alpha)?;
    let t = parse_tableau(ctx.basis(), &a.tableau)?;
    let strategy = match a.strategy {
        StrategyArg::First => Strategy::FirstDescent,
        StrategyArg::Last => Strategy::LastDescent,
    };
    let engine = Engine::with_strategy(&ctx, strategy);
    let poly = engine.nsjp_laurent(&alpha, t)?;
    emit_json(&NsjpOut {
        tau: ctx.shape().parts().to_vec(),
        kappa: ctx.kappa().to_string(),
        tableau: tableau_json(ctx.basis(), t),
        spectral_vector: engine.spectral_vector(&alpha, t).iter().map(|x| x.to_string()).collect(),
        norm: norm_closed(&ctx, &alpha, t)?.to_string(),
        polynomial: poly.to_json_terms(),
        alpha,
    })
}

#[derive(Args, Debug)]
pub struct JackArgs {
    #[command(flatten)]
    sk: ShapeKappa,
    /// Nonincreasing λ; defaults to the minimal label of the shape.
    #[arg(long)]
    lambda: Option<String>,
    /// Sink tableau T_S; may be omitted when λ admits a single one.
    #[arg(long, allow_hyphen_values = true)]
    tableau: Option<String>,
}

#[derive(Serialize)]
struct JackOut {
    tau: Vec<usize>,
    kappa: String,
    lambda: Vec<i64>,
    #[serde(rename = "tableau")]
    sink: TableauJson,
    root: TableauJson,
    component_size: usize,
    group_order: u64,
    eigenvalue: String,
    norm: String,
    norm_direct: String,
    coefficients: Vec<JsonTerm>,
}

/// The sink tableau: as given, or the unique `T` making `(λ, T)` column-strict.
pub fn resolve_sink(ctx: &Context, lambda: &[i64], tableau: Option<&str>) -> CliResult<usize> {
    if let Some(s) = tableau {
        return parse_tableau(ctx.basis(), s);
    }
    let sinks: Vec<usize> = column_strict_labels(ctx, lambda.iter().sum(), false)
        .into_iter()
        .filter(|(l, _)| l == lambda)
        .map(|(_, t)| t)
        .collect();
    match sinks.as_slice() {
        [t] => Ok(*t),
        [] => Err(CliError::Usage(format!("no tableau gives a column-strict filling with λ = {lambda:?}"))),
        many => {
            let labels: Vec<String> = many.iter().map(|t| format!("T{t}")).collect();
            Err(CliError::Usage(format!("λ = {lambda:?} has several sinks; pass --tableau one of {}", labels.join(", "))))
        }
    }
}

pub fn jack(a: &JackArgs) -> CliResult<()> {
    let shape = parse_shape(&a.sk.tau)?;
    let lambda = match &a.lambda {
        Some(s) => parse_ints(s, "lambda")?,
        None => minimal_label(&shape).0,
    };
    let ctx = context(&a.sk, lambda.iter().sum())?;
    check_alpha(&ctx, &lambda)?;
    let basis = ctx.basis();
    let sink = resolve_sink(&ctx, &lambda, a.tableau.as_deref())?;
    let engine = Engine::new(&ctx);
    let comp = component(&ctx, &lambda, sink)?;
    let j = build_jack(&engine, &lambda, sink)?;
    emit_json(&JackOut {
        tau: shape.parts().to_vec(),
        kappa: ctx.kappa().to_string(),
        sink: tableau_json(basis, sink),
        root: tableau_json(basis, comp.root),
        component_size: comp.len(),
        group_order: comp.group_order,
        eigenvalue: j.eigenvalue.to_string(),
        norm: j.norm.to_string(),
        norm_direct: jack_norm_direct(&ctx, &comp)?.to_string(),
        coefficients: j.poly.to_json_terms(),
        lambda,
    })
}

#[derive(Args, Debug)]
pub struct NormArgs {
    #[command(flatten)]
    sk: ShapeKappa,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    tableau: String,
}

#[derive(Serialize)]
struct NormOut {
    tau: Vec<usize>,
    kappa: String,
    alpha: Vec<i64>,
    tableau: TableauJson,
    closed: String,
    recursive: Option<String>,
    agree: Option<bool>,
    positive: bool,
}

pub fn norm(a: &NormArgs) -> CliResult<()> {
    let alpha = parse_ints(&a.alpha, "alpha")?;
    let ctx = context(&a.sk, spread(&alpha))?;
    check_alpha(&ctx, &alpha)?;
    let t = parse_tableau(ctx.basis(), &a.tableau)?;
    let closed = norm_closed(&ctx, &alpha, t)?;
    let rec = if alpha.iter().all(|&x| x >= 0) { Some(recursive_norm(&Engine::new(&ctx), &alpha, t)?) } else { None };
    emit_json(&NormOut {
        tau: ctx.shape().parts().to_vec(),
        kappa: ctx.kappa().to_string(),
        tableau: tableau_json(ctx.basis(), t),
        positive: closed > Rational::from_i64(0),
        agree: rec.as_ref().map(|r| *r == closed),
        recursive: rec.map(|r| r.to_string()),
        closed: closed.to_string(),
        alpha,
    })
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    tau: String,
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    /// Count only labels with λ_N = 0.
    #[arg(long)]
    restrict_last_zero: bool,
    /// Also enumerate the column-strict labels directly.
    #[arg(long)]
    enumerate: bool,
    /// With a coupling, also list the distinct Hamiltonian eigenvalues per degree.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Serialize)]
struct CountOut {
    tau: Vec<usize>,
    weighted_size: usize,
    max_degree: usize,
    restrict_last_zero: bool,
    series: Vec<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<Vec<u128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<Vec<String>>>,
}

pub fn count(a: &CountArgs) -> CliResult<()> {
    let shape = parse_shape(&a.tau)?;
    let series = jack_count_series(&shape, a.max_degree, a.restrict_last_zero);
    let enumerated = if a.enumerate {
        let ctx = KappaContext::new(&shape, Rational::from_i64(0))?;
        Some((0..=a.max_degree).map(|n| column_strict_labels(&ctx, n as i64, a.restrict_last_zero).len() as u128).collect::<Vec<u128>>())
    } else {
        None
    };
    let eigen_ctx = match &a.kappa {
        Some(k) => Some(KappaContext::new(&shape, Rational::parse_scalar(k)?)?),
        None => None,
    };
    let eigenvalues = eigen_ctx.as_ref().map(|ctx| {
        (0..=a.max_degree)
            .map(|n| {
                let mut vals: Vec<Rational> = column_strict_labels(ctx, n as i64, a.restrict_last_zero)
                    .iter()
                    .map(|(l, t)| eigenvalue(ctx, l, *t, 0))
                    .collect();
                vals.sort();
                vals.dedup();
                vals.iter().map(|v| v.to_string()).collect::<Vec<String>>()
            })
            .collect::<Vec<_>>()
    });
    if a.output == Output::Csv {
        let mut head = String::from("degree,count");
        if enumerated.is_some() {
            head.push_str(",enumerated");
        }
        if eigenvalues.is_some() {
            head.push_str(",eigenvalues");
        }
        out!("{head}");
        for (n, c) in series.iter().enumerate() {
            let mut line = format!("{n},{c}");
            if let Some(e) = &enumerated {
                line.push_str(&format!(",{}", e[n]));
            }
            if let Some(e) = &eigenvalues {
                line.push_str(&format!(",{}", e[n].join(";")));
            }
            out!("{line}");
        }
        return Ok(());
    }
    emit_json(&CountOut {
        tau: shape.parts().to_vec(),
        weighted_size: shape.weighted_size(),
        max_degree: a.max_degree,
        restrict_last_zero: a.restrict_last_zero,
        series,
        enumerated,
        kappa: eigen_ctx.map(|c| c.kappa().to_string()),
        eigenvalues,
    })
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    sk: ShapeKappa,
    /// Largest degree swept.
    #[arg(long, default_value_t = 3)]
    max_degree: i64,
}

#[derive(Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Serialize)]
struct VerifyOut {
    tau: Vec<usize>,
    kappa: String,
    max_degree: i64,
    passed: bool,
    checks: Vec<CheckRow>,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn row(self) -> CheckRow {
        CheckRow { name: self.name.into(), passed: self.failure.is_none(), cases: self.cases, failure: self.failure }
    }
}

pub fn verify(a: &VerifyArgs) -> CliResult<()> {
    let ctx = context(&a.sk, a.max_degree)?;
    let engine = Engine::new(&ctx);
    let n = ctx.n();
    let mut eigen = Tally::new("eigen_equation");
    let mut tri = Tally::new("triangularity");
    let mut norms = Tally::new("norm_closed_vs_recursive");
    let mut rel = Tally::new("cherednik_relations");
    for d in 0..=a.max_degree {
        for alpha in compositions(n, d) {
            for t in 0..ctx.dim() {
                let z = engine.nsjp(&alpha, t)?;
                let xi = engine.spectral_vector(&alpha, t);
                let ok = (1..=n).all(|i| cherednik(&z, i).map(|u| u == z.scale(&xi[i - 1])).unwrap_or(false));
                eigen.record(ok, || format!("{alpha:?} T{t}"));
                tri.record(z.exponents().iter().all(|b| *b == alpha || graph_below(b, &alpha)), || format!("{alpha:?} T{t}"));
                let c = norm_closed(&ctx, &alpha, t)?;
                let r = recursive_norm(&engine, &alpha, t)?;
                // positivity is only promised inside the admissible window
                let ok = c == r && (ctx.is_forced() || c > Rational::from_i64(0));
                norms.record(ok, || format!("{alpha:?} T{t}"));
                if d <= 2 && t == 0 {
                    rel.record(relations_hold(&Poly::monomial(&ctx, &alpha, ctx.dim() - 1)), || format!("x^{alpha:?}"));
                }
            }
        }
    }
    let mut sym = Tally::new("symmetric_jack");
    let mut counts = Tally::new("jack_count");
    let series = jack_count_series(ctx.shape(), a.max_degree as usize, false);
    for d in 0..=a.max_degree {
        let labels = column_strict_labels(&ctx, d, false);
        counts.record(labels.len() as u128 == series[d as usize], || format!("degree {d}"));
        for (lambda, sink) in labels {
            let j = build_jack(&engine, &lambda, sink)?;
            let comp = component(&ctx, &lambda, sink)?;
            let ok = (1..n).all(|i| j.poly.act_simple(i).map(|p| p == j.poly).unwrap_or(false))
                && hamiltonian_poly(&j.poly)? == j.poly.scale(&j.eigenvalue)
                && jack_norm_direct(&ctx, &comp)? == j.norm;
            sym.record(ok, || format!("λ = {lambda:?}, T{sink}"));
        }
    }
    let checks: Vec<CheckRow> = [eigen, tri, norms, rel, sym, counts].into_iter().map(Tally::row).collect();
    let passed = checks.iter().all(|c| c.passed);
    emit_json(&VerifyOut {
        tau: ctx.shape().parts().to_vec(),
        kappa: ctx.kappa().to_string(),
        max_degree: a.max_degree,
        passed,
        checks,
    })?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verify("one or more invariant checks failed".into()))
    }
}

fn relations_hold(p: &Poly) -> bool {
    let ctx = p.context();
    let k = ctx.kappa().clone();
    let n = ctx.n();
    let run = || -> vvjack::Result<bool> {
        for i in 1..n {
            let sp = p.act_simple(i)?;
            if cherednik(&sp, i)?.act_simple(i)? != &cherednik(p, i + 1)? + &sp.scale(&k) {
                return Ok(false);
            }
            if cherednik(&sp, i)? != &cherednik(p, i + 1)?.act_simple(i)? + &p.scale(&k) {
                return Ok(false);
            }
        }
        for i in 1..=n {
            if cherednik(p, i)? != cherednik_alt(p, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    run().unwrap_or(false)
}
