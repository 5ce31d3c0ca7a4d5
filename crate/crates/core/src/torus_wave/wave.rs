//! Wavefunctions `L(x)J(x)`, the Hamiltonian check, densities and the collision probe.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::base_state::BaseState;
use super::TorusPoint;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symmetric_jack::SymmetricJack;
use crate::vvpoly::VvPoly;

type CVec = DVector<Complex64>;

/// A symmetric Jack polynomial prepared for repeated complex evaluation.
#[derive(Clone, Debug)]
pub struct JackField<S: Scalar> {
    poly: VvPoly<S>,
    d1: Vec<VvPoly<S>>,
    d2: Vec<VvPoly<S>>,
    scale: Vec<f64>,
    pub norm: f64,
    pub eigenvalue: f64,
}

impl<S: Scalar> JackField<S> {
    pub fn new(j: &SymmetricJack<S>) -> Self {
        let ctx = j.poly.context();
        let d1: Vec<VvPoly<S>> = (1..=ctx.n()).map(|i| j.poly.partial_derivative(i)).collect();
        let d2 = d1.iter().enumerate().map(|(i, p)| p.partial_derivative(i + 1)).collect();
        let scale = ctx.basis().norms0::<f64>().into_iter().map(f64::sqrt).collect();
        Self { poly: j.poly.clone(), d1, d2, scale, norm: j.norm.to_f64(), eigenvalue: j.eigenvalue.to_f64() }
    }

    pub fn n(&self) -> usize {
        self.d1.len()
    }

    fn ortho(&self, v: Vec<Complex64>) -> CVec {
        CVec::from_iterator(v.len(), v.into_iter().zip(&self.scale).map(|(z, s)| z * *s))
    }

    /// `J(x)` in orthonormal coordinates.
    pub fn value(&self, x: &TorusPoint) -> CVec {
        self.ortho(self.poly.evaluate(&x.coords()))
    }

    pub fn partial(&self, x: &TorusPoint, i: usize) -> CVec {
        self.ortho(self.d1[i - 1].evaluate(&x.coords()))
    }

    pub fn second_partial(&self, x: &TorusPoint, i: usize) -> CVec {
        self.ortho(self.d2[i - 1].evaluate(&x.coords()))
    }
}

/// `L(x)J(x)`.
pub fn wavefunction<S: Scalar>(state: &BaseState, x: &TorusPoint, j: &JackField<S>) -> Result<CVec> {
    Ok(state.extend_l(x)?.value * j.value(x))
}

/// `‖L(x)J(x)‖² / ‖J‖²`.
pub fn density<S: Scalar>(state: &BaseState, samples: &[TorusPoint], j: &JackField<S>) -> Result<Vec<f64>> {
    samples.iter().map(|x| Ok(wavefunction(state, x, j)?.norm_squared() / j.norm)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub eigenvalue: f64,
    pub points: usize,
    pub max_rel_residual: f64,
}

/// `(H f)(x)` for `f = LJ`, with analytic derivatives.
///
/// `H = Σ (x_i∂_i)² − 2κ(κ−1) Σ_{i<j} x_i x_j/(x_i − x_j)²`, the exchange
/// operators having been replaced by 1 on the symmetric `LJ`.
pub fn hamiltonian_apply<S: Scalar>(state: &BaseState, x: &TorusPoint, j: &JackField<S>) -> Result<CVec> {
    let n = state.n();
    let k = Complex64::new(state.kappa(), 0.0);
    let l = state.extend_l(x)?.value;
    let c = x.coords();
    let jv = j.value(x);
    let mut out = CVec::zeros(state.dim());
    for i in 1..=n {
        let a = state.coefficient_matrix(x, i)?;
        let da = state.coefficient_derivative(x, i)?;
        let dj = j.partial(x, i);
        let ddj = j.second_partial(x, i);
        let d1 = &l * (&a * &jv * k + &dj);
        let d2 = &l * ((&a * &a * &jv) * (k * k) + (&da * &jv) * k + (&a * &dj) * (k * 2.0) + ddj);
        let xi = c[i - 1];
        out += d1 * xi + d2 * (xi * xi);
    }
    let f = &l * &jv;
    let mut pot = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in a + 1..n {
            let d = c[a] - c[b];
            pot += c[a] * c[b] / (d * d);
        }
    }
    out -= f * (pot * k * (k - 1.0) * 2.0);
    Ok(out)
}

/// `max ‖H(LJ) − E·LJ‖ / ‖E·LJ‖` over the points.
pub fn eigen_check<S: Scalar>(state: &BaseState, points: &[TorusPoint], j: &JackField<S>) -> Result<EigenCheck> {
    let mut worst = 0.0f64;
    for x in points {
        let f = wavefunction(state, x, j)?;
        let h = hamiltonian_apply(state, x, j)?;
        let ef = &f * Complex64::new(j.eigenvalue, 0.0);
        let scale = ef.norm().max(f.norm());
        if scale == 0.0 {
            continue;
        }
        worst = worst.max((h - ef).norm() / scale);
    }
    Ok(EigenCheck { eigenvalue: j.eigenvalue, points: points.len(), max_rel_residual: worst })
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessProbe {
    pub separations: Vec<f64>,
    pub density: Vec<f64>,
    /// `‖L‖²`, operator norm.
    pub raw: Vec<f64>,
    pub density_slope: f64,
    pub raw_slope: f64,
}

/// Geometric ladder `10^{−1} … 10^{−5}`, two points per decade.
pub fn default_ladder() -> Vec<f64> {
    (0..=8).map(|k| 10f64.powf(-1.0 - 0.5 * k as f64)).collect()
}

/// `θ = (fixed…, c − s/2, c + s/2)`: the last two coordinates collide.
pub fn collision_point(fixed: &[f64], center: f64, s: f64) -> TorusPoint {
    let mut t = fixed.to_vec();
    t.push(center - s / 2.0);
    t.push(center + s / 2.0);
    TorusPoint::new(t)
}

/// Density and raw `‖L‖²` along the ladder; other pairs keep chord distance at least `delta`.
pub fn boundedness_probe<S: Scalar>(
    state: &BaseState,
    j: &JackField<S>,
    fixed: &[f64],
    center: f64,
    ladder: &[f64],
    delta: f64,
) -> Result<BoundednessProbe> {
    if fixed.len() + 2 != state.n() {
        return Err(Error::LengthMismatch(fixed.len() + 2, state.n()));
    }
    let mut density = Vec::new();
    let mut raw = Vec::new();
    for &s in ladder {
        let x = collision_point(fixed, center, s);
        let c = x.coords();
        let n = state.n();
        for a in 0..n {
            for b in a + 1..n {
                if (a, b) != (n - 2, n - 1) && (c[a] - c[b]).norm() < delta {
                    return Err(Error::OutsideChamber);
                }
            }
        }
        let l = state.extend_l(&x)?.value;
        let sv = l.singular_values();
        let top = sv.iter().fold(0.0f64, |m, v| m.max(*v));
        raw.push(top * top);
        density.push((&l * j.value(&x)).norm_squared() / j.norm);
    }
    Ok(BoundednessProbe {
        density_slope: loglog_slope(ladder, &density),
        raw_slope: loglog_slope(ladder, &raw),
        separations: ladder.to_vec(),
        density,
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::perm::Permutation;
    use crate::symmetric_jack::{jack, minimal_jack};
    use crate::vvpoly::KappaContext;
    use crate::yang_baxter::JackEngine;
    use num_rational::BigRational;
    use std::f64::consts::PI;

    fn setup(parts: &[usize], kn: i64, kd: i64) -> (BaseState, JackEngine<BigRational>) {
        let shape = Partition::new(parts.to_vec()).unwrap();
        let k = BigRational::from_ratio(kn, kd);
        let e = JackEngine::new(&KappaContext::new(&shape, k).unwrap());
        (BaseState::new(&shape, kn as f64 / kd as f64).unwrap(), e)
    }

    fn points(n: usize) -> Vec<TorusPoint> {
        (0..6)
            .map(|k| {
                let t: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64 + 0.3 * ((k * 7 + j * 3) as f64).sin()).collect();
                TorusPoint::new(t)
            })
            .collect()
    }

    #[test]
    fn eigen_equation_minimal_and_other() {
        for parts in [&[2, 1][..], &[2, 2], &[3, 1]] {
            let (s, e) = setup(parts, 1, 10);
            let m = JackField::new(&minimal_jack(&e).unwrap());
            let r = eigen_check(&s, &points(s.n()), &m).unwrap();
            assert!(r.max_rel_residual < 1e-6, "{parts:?} minimal {r:?}");
            let lam: Vec<i64> = (0..s.n()).map(|i| if i == 0 { 2 } else if i + 1 == s.n() { 0 } else { 1 }).collect();
            let sink = crate::symmetric_jack::column_strict_labels(e.context(), lam.iter().sum(), false)
                .into_iter()
                .find(|(l, _)| *l == lam)
                .unwrap()
                .1;
            let j = JackField::new(&jack(&e, &lam, sink).unwrap());
            let r = eigen_check(&s, &points(s.n()), &j).unwrap();
            assert!(r.max_rel_residual < 1e-6, "{parts:?} {lam:?} {r:?}");
        }
    }

    #[test]
    fn density_is_symmetric_and_trivial_at_zero_kappa() {
        let (s, e) = setup(&[2, 2], -1, 10);
        let j = JackField::new(&minimal_jack(&e).unwrap());
        let x = points(4)[2].clone();
        let d = density(&s, &[x.clone()], &j).unwrap()[0];
        assert!(d >= 0.0);
        for w in Permutation::all(4) {
            let dw = density(&s, &[x.act(&w)], &j).unwrap()[0];
            assert!((d - dw).abs() < 1e-8 * d.max(1.0));
        }
        let (s0, e0) = setup(&[2, 1], 0, 1);
        let j0 = JackField::new(&minimal_jack(&e0).unwrap());
        let x = points(3)[1].clone();
        let diff = wavefunction(&s0, &x, &j0).unwrap() - j0.value(&x);
        assert!(diff.norm() < 1e-14);
    }

    #[test]
    fn slope_fit() {
        let x = [0.1, 0.01, 0.001];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-0.4)).collect();
        assert!((loglog_slope(&x, &y) + 0.4).abs() < 1e-12);
    }

    #[test]
    fn collision_ladder_bounded() {
        let (s, e) = setup(&[2, 2], 1, 5);
        let j = JackField::new(&minimal_jack(&e).unwrap());
        let p = boundedness_probe(&s, &j, &[0.0, PI / 2.0], 1.25 * PI, &default_ladder(), 0.5).unwrap();
        eprintln!("{p:?}");
        assert!(p.density_slope >= -0.01);
        assert!((p.raw_slope + 0.4).abs() <= 0.08);
    }
}
