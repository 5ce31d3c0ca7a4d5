//! The torus Hermitian form on `P_τ`, evaluated through the NSJP basis.
//!
//! NSJPs are mutually orthogonal, so the form is determined by the norms
//! `‖ζ_{α,T}‖²` and the expansion coefficients of its arguments.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{graph_order_key, rank_perm, sorted_desc};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vvpoly::{KappaContext, VvPoly};
use crate::yang_baxter::{e_eps, edge_target, Edge, JackEngine};

/// A norm with the label it belongs to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormValue<S> {
    pub value: S,
    pub alpha: Vec<i64>,
    pub tableau: usize,
    pub kappa: S,
}

/// `‖ζ_{λ,T}‖²` for nonincreasing `λ`.
pub fn norm_partition<S: Scalar>(ctx: &KappaContext<S>, lambda: &[i64], t: usize) -> Result<S> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not nonincreasing")));
    }
    let basis = ctx.basis();
    let k = ctx.kappa().clone();
    let n = lambda.len();
    let mut acc: S = basis.tableau(t).norm0();
    for i in 1..=n {
        for j in i + 1..=n {
            let dc = S::from_i64(basis.content(i, t) - basis.content(j, t));
            for l in 1..=lambda[i - 1] - lambda[j - 1] {
                let den = S::from_i64(l) + k.clone() * dc.clone();
                if den.is_zero() {
                    return Err(Error::InadmissibleKappa(format!("{l} + κ·{dc} = 0")));
                }
                let r = k.clone() / den;
                acc = acc * (S::one() - r.clone() * r);
            }
        }
    }
    Ok(acc)
}

/// `‖ζ_{α,T}‖² = ‖ζ_{α⁺,T}‖² / (E_1(α,T) E_{−1}(α,T))`; Laurent `α` allowed.
pub fn norm<S: Scalar>(ctx: &KappaContext<S>, alpha: &[i64], t: usize) -> Result<S> {
    let m = alpha.iter().copied().min().unwrap_or(0).min(0);
    let a: Vec<i64> = alpha.iter().map(|x| x - m).collect();
    let e = e_eps(ctx, &a, t, 1)? * e_eps(ctx, &a, t, -1)?;
    if e.is_zero() {
        return Err(Error::InadmissibleKappa(format!("E_1 E_-1 = 0 at {alpha:?}")));
    }
    Ok(norm_partition(ctx, &sorted_desc(&a), t)? / e)
}

pub fn norm_value<S: Scalar>(ctx: &KappaContext<S>, alpha: &[i64], t: usize) -> Result<NormValue<S>> {
    Ok(NormValue { value: norm(ctx, alpha, t)?, alpha: alpha.to_vec(), tableau: t, kappa: ctx.kappa().clone() })
}

/// `‖ζ_{α,T}‖²` multiplied out along the scheduler's path from the root.
pub fn recursive_norm<S: Scalar>(engine: &JackEngine<S>, alpha: &[i64], t: usize) -> Result<S> {
    let ctx = engine.context();
    let mut factors = Vec::new();
    let (mut a, mut tt) = (alpha.to_vec(), t);
    while let Some((pa, pt, edge)) = engine.predecessor(&a, tt)? {
        if edge != Edge::Affine {
            let (_, _, b) = edge_target(ctx, &pa, pt, edge)?;
            let b = b.expect("steps and jumps carry a coefficient");
            factors.push(S::one() - b.clone() * b);
        }
        a = pa;
        tt = pt;
    }
    debug_assert_eq!(tt, 0);
    Ok(factors.into_iter().fold(ctx.basis().tableau(0).norm0(), |acc, f| acc * f))
}

/// Coefficients `c_{α,T}` with `p = Σ c_{α,T} ζ_{α,T}`.
pub fn expand_in_nsjp<S: Scalar>(engine: &JackEngine<S>, p: &VvPoly<S>) -> Result<BTreeMap<(Vec<i64>, usize), S>> {
    if p.is_laurent() {
        return Err(Error::LaurentInput);
    }
    let ctx = engine.context();
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    while !rem.is_zero() {
        let alpha = rem.exponents().into_iter().max_by_key(|a| graph_order_key(a)).expect("nonzero");
        let v = rem.coefficient_vector(&alpha);
        let c = ctx.rep().apply(&rank_perm(&alpha), &v)?;
        for (t, ct) in c.into_iter().enumerate() {
            if ct.is_zero() {
                continue;
            }
            let z = engine.nsjp(&alpha, t)?;
            rem.add_scaled(&z, &-ct.clone());
            out.insert((alpha.clone(), t), ct);
        }
        if !rem.coefficient_vector(&alpha).iter().all(|x| x.is_zero()) {
            return Err(Error::InadmissibleKappa(format!("leading term at {alpha:?} did not cancel")));
        }
    }
    Ok(out)
}

/// `Σ c_{α,T} ζ_{α,T}`.
pub fn reconstruct<S: Scalar>(engine: &JackEngine<S>, coeffs: &BTreeMap<(Vec<i64>, usize), S>) -> Result<VvPoly<S>> {
    let mut p = VvPoly::zero(engine.context());
    for ((a, t), c) in coeffs {
        p.add_scaled(&*engine.nsjp(a, *t)?, c);
    }
    Ok(p)
}

/// `⟨f, g⟩_T`; coefficients are real, so no conjugation appears.
pub fn form<S: Scalar>(engine: &JackEngine<S>, f: &VvPoly<S>, g: &VvPoly<S>) -> Result<S> {
    let ctx = engine.context();
    if !ctx.same(f.context()) || !ctx.same(g.context()) {
        return Err(Error::ContextMismatch);
    }
    let cf = expand_in_nsjp(engine, f)?;
    let cg = expand_in_nsjp(engine, g)?;
    let mut acc = S::zero();
    for (key, a) in &cf {
        if let Some(b) = cg.get(key) {
            acc = acc + a.clone() * b.clone() * norm(ctx, &key.0, key.1)?;
        }
    }
    Ok(acc)
}
