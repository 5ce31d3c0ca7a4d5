//! Dunkl operators `D_i`, Cherednik-Dunkl operators `U_i` and the
//! polynomial-side Hamiltonian `Σ (U_i − 1 − κγ)²`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;
use crate::vvpoly::{KappaContext, VvPoly};

fn check_index<S: Scalar>(p: &VvPoly<S>, i: usize) -> Result<()> {
    let n = p.context().n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if p.is_laurent() {
        return Err(Error::LaurentInput);
    }
    Ok(())
}

/// Exponents of `(x^α − x^{(i,j)α}) / (x_i − x_j)` with their signs.
///
/// 0-based `i, j`. For `a = α_i > b = α_j` this telescopes to
/// `x_i^b x_j^b Σ_{k<a−b} x_i^{a−b−1−k} x_j^k`.
pub(crate) fn divided_difference(alpha: &[i64], i: usize, j: usize) -> (i64, Vec<Vec<i64>>) {
    let (a, b) = (alpha[i], alpha[j]);
    if a == b {
        return (0, Vec::new());
    }
    let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
    let terms = (0..hi - lo)
        .map(|k| {
            let mut e = alpha.to_vec();
            e[i] = lo + hi - lo - 1 - k;
            e[j] = lo + k;
            e
        })
        .collect();
    (sign, terms)
}

/// `D_i p = ∂_i p + κ Σ_{j≠i} τ(i,j) (p − p(x(i,j))) / (x_i − x_j)`.
pub fn dunkl<S: Scalar>(p: &VvPoly<S>, i: usize) -> Result<VvPoly<S>> {
    check_index(p, i)?;
    let ctx = p.context().clone();
    let n = ctx.n();
    let kappa = ctx.kappa().clone();
    let swaps: Vec<Option<Arc<SquareMatrix<S>>>> =
        (1..=n).map(|j| (j != i).then(|| ctx.rep().transposition(i, j)).transpose()).collect::<Result<_>>()?;
    let mut out = p.partial_derivative(i);
    if kappa.is_zero() {
        return Ok(out);
    }
    for (alpha, t, c) in p.terms() {
        for j in 1..=n {
            let Some(m) = &swaps[j - 1] else { continue };
            let (sign, exps) = divided_difference(alpha, i - 1, j - 1);
            if sign == 0 {
                continue;
            }
            let kc = kappa.clone() * c.clone() * S::from_i64(sign);
            for e in exps {
                for (r, v) in m.column(t) {
                    out.add_term(e.clone(), r, kc.clone() * v.clone());
                }
            }
        }
    }
    Ok(out)
}

/// `κ Σ_{j ∈ js} (i,j) p` with the full group action.
fn transposition_sum<S: Scalar>(p: &VvPoly<S>, i: usize, js: impl Iterator<Item = usize>) -> Result<VvPoly<S>> {
    let mut acc = VvPoly::zero(p.context());
    for j in js {
        acc.add_scaled(&p.act_transposition(i, j)?, &S::one());
    }
    Ok(acc.scale(p.context().kappa()))
}

/// `U_i p = D_i(x_i p) − κ Σ_{j<i} (i,j) p`.
pub fn cherednik<S: Scalar>(p: &VvPoly<S>, i: usize) -> Result<VvPoly<S>> {
    check_index(p, i)?;
    let d = dunkl(&p.mul_var(i), i)?;
    let t = transposition_sum(p, i, 1..i)?;
    Ok(&d - &t)
}

/// `U_i p = x_i D_i p + p + κ Σ_{j>i} (i,j) p`, the second form used as a cross-check.
pub fn cherednik_alt<S: Scalar>(p: &VvPoly<S>, i: usize) -> Result<VvPoly<S>> {
    check_index(p, i)?;
    let mut out = dunkl(p, i)?.mul_var(i);
    out.add_scaled(p, &S::one());
    let t = transposition_sum(p, i, i + 1..=p.context().n())?;
    out.add_scaled(&t, &S::one());
    Ok(out)
}

/// `Σ_i (U_i − 1 − κγ)² p` by operator composition.
pub fn hamiltonian_poly<S: Scalar>(p: &VvPoly<S>) -> Result<VvPoly<S>> {
    let ctx = p.context();
    let shift = S::one() + ctx.kappa().clone() * ctx.gamma().clone();
    let mut out = VvPoly::zero(ctx);
    for i in 1..=ctx.n() {
        let mut q = cherednik(p, i)?;
        q.add_scaled(p, &-shift.clone());
        let mut q2 = cherednik(&q, i)?;
        q2.add_scaled(&q, &-shift.clone());
        out.add_scaled(&q2, &S::one());
    }
    Ok(out)
}

/// `Σ_i (ξ_i − 1 − κγ)²`, the eigenvalue of [`hamiltonian_poly`] on a
/// simultaneous eigenfunction with spectral vector `ξ`.
pub fn hamiltonian_eigenvalue<S: Scalar>(ctx: &KappaContext<S>, xi: &[S]) -> S {
    let shift = S::one() + ctx.kappa().clone() * ctx.gamma().clone();
    xi.iter().fold(S::zero(), |acc, x| {
        let d = x.clone() - shift.clone();
        acc + d.clone() * d
    })
}

/// `Σ_i U_i^m p`.
pub fn power_sum<S: Scalar>(p: &VvPoly<S>, m: u32) -> Result<VvPoly<S>> {
    let mut out = VvPoly::zero(p.context());
    for i in 1..=p.context().n() {
        let mut q = p.clone();
        for _ in 0..m {
            q = cherednik(&q, i)?;
        }
        out.add_scaled(&q, &S::one());
    }
    Ok(out)
}

/// `e_k(U_1, …, U_N) p`, the coefficient of `t^k` in `∏ (1 + t U_i) p`.
pub fn elementary<S: Scalar>(p: &VvPoly<S>, k: usize) -> Result<VvPoly<S>> {
    let n = p.context().n();
    if k > n {
        return Ok(VvPoly::zero(p.context()));
    }
    // v[j] = e_j(U_1..U_m) p
    let mut v = vec![VvPoly::zero(p.context()); k + 1];
    v[0] = p.clone();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            let add = cherednik(&v[j - 1], m)?;
            v[j].add_scaled(&add, &S::one());
        }
    }
    Ok(v.swap_remove(k))
}

/// The operators as first-class values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Dunkl(usize),
    Cherednik(usize),
    HamiltonianPoly,
    PowerSum(u32),
    Elementary(usize),
}

#[derive(Clone)]
pub struct OperatorHandle<S> {
    pub kind: OperatorKind,
    pub context: Arc<KappaContext<S>>,
}

impl<S: Scalar> std::fmt::Debug for OperatorHandle<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} on {:?}", self.kind, self.context)
    }
}

impl<S: Scalar> OperatorHandle<S> {
    pub fn new(kind: OperatorKind, context: &Arc<KappaContext<S>>) -> Self {
        Self { kind, context: context.clone() }
    }

    pub fn apply(&self, p: &VvPoly<S>) -> Result<VvPoly<S>> {
        if !self.context.same(p.context()) {
            return Err(Error::ContextMismatch);
        }
        match self.kind {
            OperatorKind::Dunkl(i) => dunkl(p, i),
            OperatorKind::Cherednik(i) => cherednik(p, i),
            OperatorKind::HamiltonianPoly => hamiltonian_poly(p),
            OperatorKind::PowerSum(m) => power_sum(p, m),
            OperatorKind::Elementary(k) => elementary(p, k),
        }
    }

    /// Change in degree, where defined.
    pub fn degree_shift(&self) -> i64 {
        match self.kind {
            OperatorKind::Dunkl(_) => -1,
            _ => 0,
        }
    }
}
