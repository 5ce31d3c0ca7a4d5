//! Sparse vector-valued Laurent polynomials `P_τ = P ⊗ V_τ` over a fixed κ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::group_action::{Basis, Representation, TableauBasis};
use crate::matrix::SquareMatrix;
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// κ together with the module data every operator needs.
pub struct KappaContext<S> {
    kappa: S,
    rep: Arc<Representation<S>>,
    gamma: S,
    forced: bool,
}

impl<S: Scalar> KappaContext<S> {
    /// Requires `|κ| < 1/h_τ`.
    pub fn new(shape: &Partition, kappa: S) -> Result<Arc<Self>> {
        let h = shape.max_hook() as i64;
        if (kappa.clone() * S::from_i64(h)).abs() >= S::one() {
            return Err(Error::InadmissibleKappa(format!("|{kappa}| >= 1/{h}")));
        }
        Self::build(shape, kappa, false)
    }

    /// Skips the window check; poles are caught by [`Self::check_poles`] or
    /// when a zero denominator is met.
    pub fn new_forced(shape: &Partition, kappa: S) -> Result<Arc<Self>> {
        Self::build(shape, kappa, true)
    }

    fn build(shape: &Partition, kappa: S, forced: bool) -> Result<Arc<Self>> {
        let rep = Arc::new(Representation::for_shape(shape, Basis::Unnormalized)?);
        Ok(Arc::new(Self { kappa, rep, gamma: shape.gamma(), forced }))
    }

    pub fn kappa(&self) -> &S {
        &self.kappa
    }

    pub fn gamma(&self) -> &S {
        &self.gamma
    }

    pub fn is_forced(&self) -> bool {
        self.forced
    }

    pub fn shape(&self) -> &Partition {
        self.rep.basis().shape()
    }

    pub fn n(&self) -> usize {
        self.rep.basis().n()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn basis(&self) -> &Arc<TableauBasis> {
        self.rep.basis()
    }

    pub fn rep(&self) -> &Representation<S> {
        &self.rep
    }

    /// Rejects κ with `ℓ + κd = 0` for `1 ≤ ℓ ≤ max_degree + 1`, `0 < |d| < h_τ`.
    pub fn check_poles(&self, max_degree: i64) -> Result<()> {
        let h = self.shape().max_hook() as i64;
        for l in 1..=max_degree + 1 {
            for d in 1..h {
                let v = S::from_i64(l) - self.kappa.clone() * S::from_i64(d);
                if v.is_zero() {
                    return Err(Error::InadmissibleKappa(format!("{l} - {}·{d} = 0", self.kappa)));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn same(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.kappa == other.kappa && self.shape() == other.shape())
    }
}

impl<S: Scalar> fmt::Debug for KappaContext<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KappaContext {{ tau: {}, kappa: {} }}", self.shape(), self.kappa)
    }
}

/// Homogeneity of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// `Σ c_{α,t} x^α ⊗ T_t`; zero coefficients are never stored.
#[derive(Clone)]
pub struct VvPoly<S> {
    ctx: Arc<KappaContext<S>>,
    terms: BTreeMap<(Vec<i64>, usize), S>,
}

impl<S: Scalar> VvPoly<S> {
    pub fn zero(ctx: &Arc<KappaContext<S>>) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// `x^α ⊗ T_t`.
    pub fn monomial(ctx: &Arc<KappaContext<S>>, alpha: &[i64], t: usize) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(alpha.to_vec(), t, S::one());
        p
    }

    /// `1 ⊗ T_t`.
    pub fn constant(ctx: &Arc<KappaContext<S>>, t: usize) -> Self {
        Self::monomial(ctx, &vec![0; ctx.n()], t)
    }

    /// `x^α ⊗ v` for a coordinate vector `v`.
    pub fn monomial_vector(ctx: &Arc<KappaContext<S>>, alpha: &[i64], v: &[S]) -> Self {
        let mut p = Self::zero(ctx);
        for (t, c) in v.iter().enumerate() {
            p.add_term(alpha.to_vec(), t, c.clone());
        }
        p
    }

    pub fn from_terms(ctx: &Arc<KappaContext<S>>, terms: impl IntoIterator<Item = (Vec<i64>, usize, S)>) -> Self {
        let mut p = Self::zero(ctx);
        for (a, t, c) in terms {
            p.add_term(a, t, c);
        }
        p
    }

    pub fn context(&self) -> &Arc<KappaContext<S>> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], usize, &S)> {
        self.terms.iter().map(|((a, t), c)| (a.as_slice(), *t, c))
    }

    pub(crate) fn add_term(&mut self, alpha: Vec<i64>, t: usize, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((alpha, t)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn coefficient_of(&self, alpha: &[i64], t: usize) -> S {
        self.terms.get(&(alpha.to_vec(), t)).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient vector in `V_τ` of `x^α`.
    pub fn coefficient_vector(&self, alpha: &[i64]) -> Vec<S> {
        (0..self.ctx.dim()).map(|t| self.coefficient_of(alpha, t)).collect()
    }

    /// Distinct exponents present.
    pub fn exponents(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.terms.keys().map(|(a, _)| a.clone()).collect();
        v.dedup();
        v
    }

    pub fn degree(&self) -> Degree {
        let mut degs = self.terms.keys().map(|(a, _)| a.iter().sum::<i64>());
        let Some(d) = degs.next() else {
            return Degree::Zero;
        };
        if degs.all(|e| e == d) {
            Degree::Homogeneous(d)
        } else {
            Degree::Mixed
        }
    }

    /// Homogeneous pieces keyed by degree.
    pub fn split_by_degree(&self) -> BTreeMap<i64, VvPoly<S>> {
        let mut out: BTreeMap<i64, VvPoly<S>> = BTreeMap::new();
        for ((a, t), c) in &self.terms {
            out.entry(a.iter().sum()).or_insert_with(|| Self::zero(&self.ctx)).add_term(a.clone(), *t, c.clone());
        }
        out
    }

    pub fn is_laurent(&self) -> bool {
        self.terms.keys().any(|(a, _)| a.iter().any(|&e| e < 0))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for ((a, t), c) in &other.terms {
            out.add_term(a.clone(), *t, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for ((a, t), c) in &other.terms {
            out.add_term(a.clone(), *t, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(key, c)| (key.clone(), c.clone() * k.clone())).collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// `self + k·other`.
    pub fn add_scaled(&mut self, other: &Self, k: &S) {
        assert!(self.ctx.same(&other.ctx), "polynomial contexts differ");
        if k.is_zero() {
            return;
        }
        for ((a, t), c) in &other.terms {
            self.add_term(a.clone(), *t, c.clone() * k.clone());
        }
    }

    /// Multiply by `x^β`.
    pub fn mul_monomial(&self, beta: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((a, t), c)| ((a.iter().zip(beta).map(|(x, y)| x + y).collect(), *t), c.clone()))
            .collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// Multiply by `x_i` (1-based).
    pub fn mul_var(&self, i: usize) -> Self {
        let mut beta = vec![0; self.ctx.n()];
        beta[i - 1] = 1;
        self.mul_monomial(&beta)
    }

    /// `e_N^m p`.
    pub fn e_n_shift(&self, m: i64) -> Self {
        self.mul_monomial(&vec![m; self.ctx.n()])
    }

    /// Acts on the `V_τ` factor only: `x^α ⊗ v ↦ x^α ⊗ Mv`.
    pub fn apply_matrix(&self, m: &SquareMatrix<S>) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((a, t), c) in &self.terms {
            for (r, v) in m.column(*t) {
                out.add_term(a.clone(), r, c.clone() * v.clone());
            }
        }
        out
    }

    /// Substitution `x ↦ xw` only: `x^α ↦ x^{wα}`.
    pub fn permute_variables(&self, w: &Permutation) -> Self {
        let terms = self.terms.iter().map(|((a, t), c)| ((w.act_on_exponents(a), *t), c.clone())).collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// Swap `x_i` and `x_j` without touching `V_τ`.
    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((a, t), c)| {
                let mut b = a.clone();
                b.swap(i - 1, j - 1);
                ((b, *t), c.clone())
            })
            .collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// `w(x^α ⊗ T) = x^{wα} ⊗ τ(w)T`.
    pub fn act(&self, w: &Permutation) -> Result<Self> {
        let m = self.ctx.rep.word(w)?;
        let mut out = Self::zero(&self.ctx);
        for ((a, t), c) in &self.terms {
            let wa = w.act_on_exponents(a);
            for (r, v) in m.column(*t) {
                out.add_term(wa.clone(), r, c.clone() * v.clone());
            }
        }
        Ok(out)
    }

    /// The group action of `(i,j)`: variables swapped and `τ(i,j)` applied.
    pub fn act_transposition(&self, i: usize, j: usize) -> Result<Self> {
        let m = self.ctx.rep.transposition(i, j)?;
        Ok(self.swap_variables(i, j).apply_matrix(&m))
    }

    /// `s_i p`.
    pub fn act_simple(&self, i: usize) -> Result<Self> {
        let m = self.ctx.rep.simple(i)?;
        Ok(self.swap_variables(i, i + 1).apply_matrix(m))
    }

    /// `∂/∂x_i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((a, t), c) in &self.terms {
            let e = a[i - 1];
            if e != 0 {
                let mut b = a.clone();
                b[i - 1] -= 1;
                out.add_term(b, *t, c.clone() * S::from_i64(e));
            }
        }
        out
    }

    /// Values `p_T(x)` at a complex point, in the unnormalized basis.
    pub fn evaluate(&self, x: &[Complex64]) -> Vec<Complex64> {
        let dim = self.ctx.dim();
        let mut sums = vec![Complex64::new(0.0, 0.0); dim];
        let mut comp = vec![Complex64::new(0.0, 0.0); dim];
        for ((a, t), c) in &self.terms {
            let mono = a.iter().zip(x).fold(Complex64::new(1.0, 0.0), |acc, (&e, xi)| acc * xi.powi(e as i32));
            let term = mono * c.to_f64();
            // Neumaier summation, per component
            let (s, k) = (sums[*t], &mut comp[*t]);
            let sum = s + term;
            k.re += if s.re.abs() >= term.re.abs() { (s.re - sum.re) + term.re } else { (term.re - sum.re) + s.re };
            k.im += if s.im.abs() >= term.im.abs() { (s.im - sum.im) + term.im } else { (term.im - sum.im) + s.im };
            sums[*t] = sum;
        }
        sums.iter().zip(&comp).map(|(s, k)| s + k).collect()
    }

    /// `∂_i p` evaluated at `x`, without materializing the derivative.
    pub fn evaluate_partial(&self, x: &[Complex64], i: usize) -> Vec<Complex64> {
        self.partial_derivative(i).evaluate(x)
    }

    /// JSON terms in canonical order.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        let basis = self.ctx.basis();
        self.terms
            .iter()
            .map(|((a, t), c)| JsonTerm {
                alpha: a.clone(),
                tableau: basis.tableau(*t).content_vector().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(ctx: &Arc<KappaContext<S>>, terms: &[JsonTerm]) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for jt in terms {
            if jt.alpha.len() != ctx.n() {
                return Err(Error::LengthMismatch(jt.alpha.len(), ctx.n()));
            }
            let t = ctx
                .basis()
                .index_of_content(&jt.tableau)
                .ok_or_else(|| Error::InvalidTableau(format!("no tableau with content {:?}", jt.tableau)))?;
            p.add_term(jt.alpha.clone(), t, S::parse_scalar(&jt.coeff)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub alpha: Vec<i64>,
    pub tableau: Vec<i64>,
    pub coeff: String,
}

impl<S: Scalar> PartialEq for VvPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Debug for VvPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, t), c)| format!("({c}) x^{a:?} ⊗ T{t}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Add for &VvPoly<S> {
    type Output = VvPoly<S>;
    fn add(self, rhs: &VvPoly<S>) -> VvPoly<S> {
        self.checked_add(rhs).expect("polynomial contexts differ")
    }
}

impl<S: Scalar> Sub for &VvPoly<S> {
    type Output = VvPoly<S>;
    fn sub(self, rhs: &VvPoly<S>) -> VvPoly<S> {
        self.checked_sub(rhs).expect("polynomial contexts differ")
    }
}

impl<S: Scalar> Neg for &VvPoly<S> {
    type Output = VvPoly<S>;
    fn neg(self) -> VvPoly<S> {
        self.scale(&-S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ctx() -> Arc<KappaContext<BigRational>> {
        KappaContext::new(&Partition::new(vec![2, 1]).unwrap(), BigRational::from_ratio(1, 10)).unwrap()
    }

    #[test]
    fn window_is_enforced() {
        let shape = Partition::new(vec![2, 1]).unwrap();
        assert!(KappaContext::new(&shape, BigRational::from_ratio(1, 2)).is_err());
        assert!(KappaContext::new(&shape, BigRational::from_ratio(-1, 2)).is_err());
        let forced = KappaContext::new_forced(&shape, BigRational::from_ratio(1, 2)).unwrap();
        assert!(forced.check_poles(0).is_err());
        let forced = KappaContext::new_forced(&shape, BigRational::from_ratio(2, 5)).unwrap();
        assert!(forced.check_poles(10).is_ok());
    }

    #[test]
    fn algebra_basics() {
        let c = ctx();
        let p = VvPoly::from_terms(&c, [(vec![1, 0, 2], 0, BigRational::from_i64(3)), (vec![0, 1, 0], 1, BigRational::from_ratio(1, 2))]);
        assert_eq!(&p + &VvPoly::zero(&c), p);
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree(), Degree::Mixed);
        assert_eq!(VvPoly::monomial(&c, &[1, 1, 1], 0).e_n_shift(-1), VvPoly::constant(&c, 0));
        assert_eq!(VvPoly::constant(&c, 1).mul_monomial(&[2, 0, 1]), VvPoly::monomial(&c, &[2, 0, 1], 1));
        let twice = p.act_transposition(1, 3).unwrap().act_transposition(1, 3).unwrap();
        assert_eq!(twice, p);
        assert_eq!(p.coefficient_of(&[5, 5, 5], 0), BigRational::from_i64(0));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let c = ctx();
        let p = VvPoly::from_terms(&c, [(vec![2, 0, 1], 0, BigRational::from_i64(1)), (vec![0, 1, 1], 1, BigRational::from_ratio(-2, 3))]);
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                assert_eq!(p.act(&b).unwrap().act(&a).unwrap(), p.act(&(&a * &b)).unwrap());
            }
        }
        assert_eq!(p.act(&Permutation::simple(3, 2).unwrap()).unwrap(), p.act_simple(2).unwrap());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = VvPoly::constant(&ctx(), 0);
        let other =
            KappaContext::new(&Partition::new(vec![2, 1]).unwrap(), BigRational::from_ratio(1, 7)).unwrap();
        assert_eq!(a.checked_add(&VvPoly::constant(&other, 0)), Err(Error::ContextMismatch));
        // equal κ and shape in separate allocations are compatible
        assert!(a.checked_add(&VvPoly::constant(&ctx(), 0)).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let c = ctx();
        let p = VvPoly::from_terms(&c, [(vec![1, 0, 2], 1, BigRational::from_ratio(-5, 7))]);
        let js = p.to_json_terms();
        assert_eq!(js[0].coeff, "-5/7");
        assert_eq!(js[0].tableau, vec![-1, 1, 0]);
        assert_eq!(VvPoly::from_json_terms(&c, &js).unwrap(), p);
    }

    #[test]
    fn evaluation_matches_hand_value() {
        let c = ctx();
        let p = VvPoly::from_terms(&c, [(vec![1, 1, 0], 0, BigRational::from_i64(2)), (vec![0, 0, 1], 0, BigRational::from_i64(-1))]);
        let x = [Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0)];
        let v = p.evaluate(&x);
        assert!((v[0] - Complex64::new(-1.0, 3.0)).norm() < 1e-15);
        assert_eq!(v[1], Complex64::new(0.0, 0.0));
    }
}
