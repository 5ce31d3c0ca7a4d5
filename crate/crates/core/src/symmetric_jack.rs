//! Symmetric vector-valued Jack polynomials `J_{λ,T_S}`.
//!
//! A label `(λ, T)` with column-strict `⌊λ,T⌋` determines one connected
//! component of the Yang-Baxter graph. `J` is the unique symmetric element
//! of the span of that component, normalized so the coefficient of
//! `x^λ ⊗ T_S` is 1.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::combinatorics::{floor_filling, rearrangements, root_sink, sorted_asc, Filling, Partition, Rsyt};
use crate::error::{Error, Result};
use crate::hermitian::norm;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::vvpoly::{JsonTerm, KappaContext, VvPoly};
use crate::yang_baxter::JackEngine;

/// The labels `(β, T′)` with `⌊β,T′⌋ = ⌊λ,T_S⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSet {
    pub lambda: Vec<i64>,
    pub filling: Filling,
    pub sink: usize,
    pub root: usize,
    /// Tableaux `T′` with `⌊λ,T′⌋ = F`.
    pub tableaux: Vec<usize>,
    pub labels: Vec<(Vec<i64>, usize)>,
    /// `#G_{λ,T_S} = N!/#labels`.
    pub group_order: u64,
}

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `(λ⁻, T_R)`.
    pub fn root_label(&self) -> (Vec<i64>, usize) {
        (sorted_asc(&self.lambda), self.root)
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricJack<S: Scalar> {
    pub lambda: Vec<i64>,
    pub sink: usize,
    pub poly: VvPoly<S>,
    pub norm: S,
    pub eigenvalue: S,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_lambda<S: Scalar>(ctx: &KappaContext<S>, lambda: &[i64]) -> Result<()> {
    if lambda.len() != ctx.n() {
        return Err(Error::LengthMismatch(lambda.len(), ctx.n()));
    }
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NegativeExponent(lambda.to_vec()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not nonincreasing")));
    }
    Ok(())
}

/// The component of `(λ, T_t)`; `T_t` must be the sink of `⌊λ,T_t⌋`.
pub fn component<S: Scalar>(ctx: &KappaContext<S>, lambda: &[i64], t: usize) -> Result<ComponentSet> {
    check_lambda(ctx, lambda)?;
    let basis = ctx.basis();
    let filling = floor_filling(lambda, basis.tableau(t))?;
    let (tr, ts) = root_sink(&filling)?;
    let sink = basis.index_of(&ts).expect("sink is an RSYT of the shape");
    if sink != t {
        return Err(Error::InvalidTableau(format!(
            "{} is not the sink of its component; the sink is {}",
            basis.tableau(t),
            ts
        )));
    }
    let root = basis.index_of(&tr).expect("root is an RSYT of the shape");
    let tableaux: Vec<usize> = (0..basis.dim())
        .filter(|&u| floor_filling(lambda, basis.tableau(u)).map(|f| f == filling).unwrap_or(false))
        .collect();
    let labels: Vec<(Vec<i64>, usize)> =
        rearrangements(lambda).into_iter().flat_map(|b| tableaux.iter().map(move |&u| (b.clone(), u))).collect();
    let group_order = factorial(ctx.n()) / labels.len() as u64;
    Ok(ComponentSet { lambda: lambda.to_vec(), filling, sink, root, tableaux, labels, group_order })
}

/// Generators `{s_i : λ_i = λ_{i+1}, rw(i,T_S) = rw(i+1,T_S)}` of `G_{λ,T_S}`.
pub fn stabilizer_generators(lambda: &[i64], sink: &Rsyt) -> Vec<usize> {
    (1..lambda.len()).filter(|&i| lambda[i - 1] == lambda[i] && sink.row_of(i) == sink.row_of(i + 1)).collect()
}

/// Order of the Young subgroup generated by [`stabilizer_generators`].
pub fn stabilizer_order(lambda: &[i64], sink: &Rsyt) -> u64 {
    let gens: BTreeSet<usize> = stabilizer_generators(lambda, sink).into_iter().collect();
    let mut order = 1;
    let mut run = 1;
    for i in 1..lambda.len() {
        if gens.contains(&i) {
            run += 1;
        } else {
            order *= factorial(run);
            run = 1;
        }
    }
    order * factorial(run)
}

/// The coefficient `a(β,T′) = (C_{−1}(T_S)/C_{−1}(T′)) E_{−1}(β,T′)` of `ζ_{β,T′}` in `J`.
pub fn jack_coefficient<S: Scalar>(ctx: &KappaContext<S>, sink: usize, beta: &[i64], t: usize) -> Result<S> {
    let basis = ctx.basis();
    let c_s: S = basis.tableau(sink).c_eps(-1);
    let c_t: S = basis.tableau(t).c_eps(-1);
    Ok(c_s / c_t * crate::yang_baxter::e_eps(ctx, beta, t, -1)?)
}

/// `J_{λ,T_S} = Σ a(β,T′) ζ_{β,T′}` over the component.
pub fn jack<S: Scalar>(engine: &JackEngine<S>, lambda: &[i64], sink: usize) -> Result<SymmetricJack<S>> {
    let ctx = engine.context();
    let comp = component(ctx, lambda, sink)?;
    let mut poly = VvPoly::zero(ctx);
    for (b, t) in &comp.labels {
        let a = jack_coefficient(ctx, sink, b, *t)?;
        poly.add_scaled(&*engine.nsjp(b, *t)?, &a);
    }
    Ok(SymmetricJack {
        lambda: lambda.to_vec(),
        sink,
        poly,
        norm: jack_norm_closed(engine, &comp)?,
        eigenvalue: eigenvalue(ctx, lambda, sink, 0),
    })
}

/// `#T · C_1(T_R) / (C_1(T_S) E_1(λ⁻,T_R)) · ‖ζ_{λ,T_S}‖²`.
pub fn jack_norm_closed<S: Scalar>(engine: &JackEngine<S>, comp: &ComponentSet) -> Result<S> {
    let ctx = engine.context();
    let basis = ctx.basis();
    let (lminus, root) = comp.root_label();
    let c_r: S = basis.tableau(root).c_eps(1);
    let c_s: S = basis.tableau(comp.sink).c_eps(1);
    let e1 = engine.e_eps(&lminus, root, 1)?;
    let n: S = S::from_i64(comp.len() as i64);
    Ok(n * c_r / (c_s * e1) * norm(ctx, &comp.lambda, comp.sink)?)
}

/// `Σ a(β,T′)² ‖ζ_{β,T′}‖²`.
pub fn jack_norm_direct<S: Scalar>(ctx: &KappaContext<S>, comp: &ComponentSet) -> Result<S> {
    let mut acc = S::zero();
    for (b, t) in &comp.labels {
        let a = jack_coefficient(ctx, comp.sink, b, *t)?;
        acc = acc + a.clone() * a * norm(ctx, b, *t)?;
    }
    Ok(acc)
}

pub fn jack_norm<S: Scalar>(engine: &JackEngine<S>, lambda: &[i64], sink: usize) -> Result<S> {
    jack_norm_closed(engine, &component(engine.context(), lambda, sink)?)
}

/// `Σ_i (λ_i + κ(c(i,T_S) − γ))² + 2mΣλ_i + Nm²`, the eigenvalue of `J` shifted by `e_N^m`.
pub fn eigenvalue<S: Scalar>(ctx: &KappaContext<S>, lambda: &[i64], sink: usize, m: i64) -> S {
    let basis = ctx.basis();
    let k = ctx.kappa().clone();
    let g = ctx.gamma().clone();
    let base = lambda.iter().enumerate().fold(S::zero(), |acc, (i, &l)| {
        let v = S::from_i64(l) + k.clone() * (S::from_i64(basis.content(i + 1, sink)) - g.clone());
        acc + v.clone() * v
    });
    let total: i64 = lambda.iter().sum();
    base + S::from_i64(2 * m * total + lambda.len() as i64 * m * m)
}

/// Minimal-degree label `λ = ((ℓ−1)^{τ_ℓ}, …, 1^{τ_2}, 0^{τ_1})` and its sink.
pub fn minimal_label(shape: &Partition) -> (Vec<i64>, Rsyt) {
    let l = shape.length();
    let lambda = (1..=l).rev().flat_map(|i| std::iter::repeat_n((i - 1) as i64, shape.part(i))).collect();
    (lambda, Rsyt::row_reading(shape))
}

/// `a(x; n_1, n_2) = ∏_{n_1 ≤ i < j ≤ n_2} (x_i − x_j)`.
fn vandermonde<S: Scalar>(ctx: &std::sync::Arc<KappaContext<S>>, n1: usize, n2: usize) -> VvPoly<S> {
    let n = ctx.n();
    let mut p = VvPoly::constant(ctx, 0);
    for i in n1..=n2 {
        for j in i + 1..=n2 {
            let mut xi = vec![0; n];
            xi[i - 1] = 1;
            let mut xj = vec![0; n];
            xj[j - 1] = 1;
            p = &p.mul_monomial(&xi) - &p.mul_monomial(&xj);
        }
    }
    p
}

/// Specht-type construction of the minimal `J`, independent of the graph.
///
/// `p_{T_0}` is a product of column Vandermondes, the other `p_T` follow
/// from `p_{T^{(i)}} = s_i p_T − b p_T`, and
/// `J = ⟨T_S,T_S⟩_0 Σ_T ⟨T,T⟩_0⁻¹ p_T ⊗ T`.
pub fn minimal_jack<S: Scalar>(engine: &JackEngine<S>) -> Result<SymmetricJack<S>> {
    let ctx = engine.context();
    let shape = ctx.shape().clone();
    if shape.is_one_dimensional() {
        return Err(Error::OneDimensional);
    }
    let basis = ctx.basis();
    let n = ctx.n();
    let (lambda, ts) = minimal_label(&shape);
    let sink = basis.index_of(&ts).expect("row reading is an RSYT");

    // scalar polynomials are carried in the T_0 slot
    let tr = shape.transpose();
    let mut k_prev = n;
    let mut p0 = VvPoly::constant(ctx, 0);
    for &h in tr.parts() {
        let k = k_prev - h;
        let v = vandermonde(ctx, k + 1, k_prev);
        p0 = product_scalar(&p0, &v);
        k_prev = k;
    }
    let mut ps: Vec<Option<VvPoly<S>>> = vec![None; ctx.dim()];
    ps[0] = Some(p0);
    for t in 0..ctx.dim() {
        let chain = engine.jump_chain(t);
        let mut cur = 0;
        for i in chain {
            let next = basis.swapped(i, cur).expect("jump chain follows swaps");
            if ps[next].is_none() {
                let p = ps[cur].as_ref().unwrap();
                let b = S::from_ratio(1, basis.content(i, cur) - basis.content(i + 1, cur));
                let mut q = p.swap_variables(i, i + 1);
                q.add_scaled(p, &-b);
                ps[next] = Some(q);
            }
            cur = next;
        }
    }
    let ns: S = basis.tableau(sink).norm0();
    let mut poly = VvPoly::zero(ctx);
    for (t, p) in ps.into_iter().enumerate() {
        let p = p.expect("every tableau reached");
        let nt: S = basis.tableau(t).norm0();
        let coef = ns.clone() / nt;
        for (a, _, c) in p.terms() {
            poly.add_term(a.to_vec(), t, c.clone() * coef.clone());
        }
    }
    Ok(SymmetricJack {
        norm: minimal_jack_norm(ctx)?,
        eigenvalue: eigenvalue(ctx, &lambda, sink, 0),
        lambda,
        sink,
        poly,
    })
}

/// Product of two polynomials stored in the `T_0` slot, i.e. scalar polynomials.
fn product_scalar<S: Scalar>(a: &VvPoly<S>, b: &VvPoly<S>) -> VvPoly<S> {
    let mut out = VvPoly::zero(a.context());
    for (ea, _, ca) in a.terms() {
        for (eb, _, cb) in b.terms() {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add_term(e, 0, ca.clone() * cb.clone());
        }
    }
    out
}

/// `(m)_n = ∏_{j=1}^{n} (m + j − 1)`.
fn pochhammer<S: Scalar>(m: S, n: usize) -> S {
    (0..n).fold(S::one(), |acc, j| acc * (m.clone() + S::from_i64(j as i64)))
}

/// `N! (∏ τ_i!)⁻¹ ⟨T_S,T_S⟩_0 ∏_{(i,j)} (1 − κh(i,j))_{leg(i,j)} / (1 + κ(j − i))_{i−1}`.
pub fn minimal_jack_norm<S: Scalar>(ctx: &KappaContext<S>) -> Result<S> {
    let shape = ctx.shape();
    if shape.is_one_dimensional() {
        return Err(Error::OneDimensional);
    }
    let k = ctx.kappa().clone();
    let denom_f: u64 = shape.parts().iter().map(|&p| factorial(p)).product();
    let (_, ts) = minimal_label(shape);
    let mut acc = S::from_i64(factorial(shape.size()) as i64) / S::from_i64(denom_f as i64) * ts.norm0::<S>();
    for (i, j) in shape.cells() {
        let num = pochhammer(S::one() - k.clone() * S::from_i64(shape.hook(i, j) as i64), shape.leg(i, j));
        let den = pochhammer(S::one() + k.clone() * S::from_i64(j as i64 - i as i64), i - 1);
        if den.is_zero() {
            return Err(Error::InadmissibleKappa("zero Pochhammer denominator".into()));
        }
        acc = acc * num / den;
    }
    Ok(acc)
}

/// All column-strict labels `(λ, T_S)` of degree `n` with `λ ∈ N_0^{N,+}`.
pub fn column_strict_labels<S: Scalar>(ctx: &KappaContext<S>, n: i64, restrict_last_zero: bool) -> Vec<(Vec<i64>, usize)> {
    let basis = ctx.basis();
    let mut out = Vec::new();
    for lambda in partitions_in_box(ctx.n(), n) {
        if restrict_last_zero && *lambda.last().unwrap() != 0 {
            continue;
        }
        let mut seen = BTreeSet::new();
        for t in 0..basis.dim() {
            let f = floor_filling(&lambda, basis.tableau(t)).expect("nonnegative");
            if f.is_column_strict() && seen.insert(f.clone()) {
                let (_, ts) = root_sink(&f).expect("column-strict");
                out.push((lambda.clone(), basis.index_of(&ts).unwrap()));
            }
        }
    }
    out
}

/// Nonincreasing `λ ∈ N_0^N` with `|λ| = n`.
pub fn partitions_in_box(len: usize, n: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, rem: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=rem.min(max)).rev() {
            cur.push(p);
            rec(len, rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, n, n, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{w ∈ S_N} w ζ_{λ⁻,T_R}`.
pub fn symmetrize_root<S: Scalar>(engine: &JackEngine<S>, comp: &ComponentSet) -> Result<VvPoly<S>> {
    let (lminus, root) = comp.root_label();
    let z = engine.nsjp(&lminus, root)?;
    let mut acc = VvPoly::zero(engine.context());
    for w in Permutation::all(engine.context().n()) {
        acc.add_scaled(&z.act(&w)?, &S::one());
    }
    Ok(acc)
}

/// JSON view.
#[derive(Clone, Debug, Serialize)]
pub struct JackDump {
    pub lambda: Vec<i64>,
    pub tableau: Vec<Vec<usize>>,
    pub content: Vec<i64>,
    pub coefficients: Vec<JsonTerm>,
    pub norm: String,
    pub eigenvalue: String,
}

impl<S: Scalar> SymmetricJack<S> {
    pub fn dump(&self) -> JackDump {
        let t = self.poly.context().basis().tableau(self.sink).clone();
        JackDump {
            lambda: self.lambda.clone(),
            tableau: t.rows().to_vec(),
            content: t.content_vector().to_vec(),
            coefficients: self.poly.to_json_terms(),
            norm: self.norm.to_string(),
            eigenvalue: self.eigenvalue.to_string(),
        }
    }

    /// `e_N^m J`, with its shifted eigenvalue.
    pub fn shifted(&self, m: i64) -> Self {
        let ctx = self.poly.context();
        Self {
            lambda: self.lambda.iter().map(|l| l + m).collect(),
            sink: self.sink,
            poly: self.poly.e_n_shift(m),
            norm: self.norm.clone(),
            eigenvalue: eigenvalue(ctx, &self.lambda, self.sink, m),
        }
    }
}
