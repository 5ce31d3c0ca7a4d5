//! Closed form of the base state for `τ = (2,2)` through Gauss `₂F₁`.

use nalgebra::DMatrix;
use statrs::function::gamma::gamma;

use super::base_state::{max_abs_diff, BaseState};
use super::{CMat, TorusPoint};
use crate::error::{Error, Result};

/// `₂F₁(a, b; c; z)` by its power series, `|z| < 1`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() >= 1.0 {
        return Err(Error::Series(format!("|z| = {} is not below 1", z.abs())));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for n in 0..200_000u32 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Series(format!("₂F₁({a}, {b}; {c}; {z}) did not converge")))
}

/// `ζ(x) = (x_1 − x_2)(x_3 − x_4) / ((x_1 − x_3)(x_2 − x_4))`, real on `C_0`.
pub fn cross_ratio(x: &TorusPoint) -> Result<f64> {
    if x.n() != 4 {
        return Err(Error::LengthMismatch(x.n(), 4));
    }
    let c = x.coords();
    let z = (c[0] - c[1]) * (c[2] - c[3]) / ((c[0] - c[2]) * (c[1] - c[3]));
    if z.im.abs() > 1e-9 * z.norm().max(1.0) || !(z.re > 0.0 && z.re < 1.0) {
        return Err(Error::OutsideChamber);
    }
    Ok(z.re)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyper22 {
    pub kappa: f64,
}

impl Hyper22 {
    /// Requires `|κ| < 1/3`.
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.abs() * 3.0 >= 1.0 {
            return Err(Error::InadmissibleKappa(format!("|κ| = {} is not below 1/3", kappa.abs())));
        }
        Ok(Self { kappa })
    }

    /// `g_1(κ; ζ) = ₂F₁(−κ, κ; 2κ; ζ)`; at `κ = 0` the series is identically 1.
    pub fn g1(k: f64, z: f64) -> Result<f64> {
        if k == 0.0 {
            return Ok(1.0);
        }
        hyp2f1(-k, k, 2.0 * k, z)
    }

    /// `g_2(κ; ζ) = κζ/(1 + 2κ) · ₂F₁(1 + κ, 1 − κ; 2 + 2κ; ζ)`.
    pub fn g2(k: f64, z: f64) -> Result<f64> {
        Ok(k * z / (1.0 + 2.0 * k) * hyp2f1(1.0 + k, 1.0 - k, 2.0 + 2.0 * k, z)?)
    }

    /// `Γ(1 + 2κ)² / (Γ(1 + κ) Γ(1 + 3κ))`.
    pub fn gamma_factor(k: f64) -> f64 {
        gamma(1.0 + 2.0 * k).powi(2) / (gamma(1.0 + k) * gamma(1.0 + 3.0 * k))
    }

    /// The ζ-dependent matrix, without the constant prefactor.
    pub fn l_f(&self, z: f64) -> Result<DMatrix<f64>> {
        if !(z > 0.0 && z < 1.0) {
            return Err(Error::OutsideChamber);
        }
        let k = self.kappa;
        let r = 3f64.sqrt() / 2.0;
        let d1 = z.powf(-k) * (1.0 - z).powf(k);
        let d2 = z.powf(k) * (1.0 - z).powf(-k);
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[Self::g1(-k, z)?, r * Self::g2(-k, z)?, -r * Self::g2(k, z)?, Self::g1(k, z)?],
        );
        Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![d1, d2])) * g)
    }

    /// `diag(γ(κ)^{1/2}, γ(−κ)^{1/2}) · L_F(ζ)`.
    pub fn normalized(&self, z: f64) -> Result<DMatrix<f64>> {
        let k = self.kappa;
        let pre = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Self::gamma_factor(k).sqrt(),
            Self::gamma_factor(-k).sqrt(),
        ]));
        Ok(pre * self.l_f(z)?)
    }

    /// `L_F(1/2)⁻¹ L_F(ζ(x))`, normalized to the identity at `x_0`.
    pub fn relative(&self, x: &TorusPoint) -> Result<DMatrix<f64>> {
        let base = self.l_f(0.5)?.try_inverse().ok_or_else(|| Error::Series("singular L_F(1/2)".into()))?;
        Ok(base * self.l_f(cross_ratio(x)?)?)
    }
}

/// Regular grid of `C_0` points `(0, a, π + b, π + a + c)`-style, `count` of them.
pub fn chamber_grid(count: usize) -> Vec<TorusPoint> {
    use std::f64::consts::PI;
    (0..count)
        .map(|k| {
            let u = (k as f64 + 0.5) / count as f64;
            let a = 0.25 + 2.2 * u;
            let b = a + 0.3 + 1.5 * (1.0 - u);
            let c = b + 0.4 + 1.2 * (0.5 + 0.5 * (7.0 * u).sin());
            TorusPoint::new(vec![0.0, a, b, c.min(2.0 * PI - 0.2)])
        })
        .collect()
}

/// Largest entrywise gap between the ODE solution and the closed form on the points.
pub fn ode_agreement(state: &BaseState, points: &[TorusPoint]) -> Result<f64> {
    let h = Hyper22::new(state.kappa())?;
    let mut worst = 0.0f64;
    for x in points {
        let l = state.integrate_l(x)?.value;
        let f = h.relative(x)?.map(|v| num_complex::Complex64::new(v, 0.0));
        worst = worst.max(max_abs_diff(&l, &f));
    }
    Ok(worst)
}

/// The normalized closed form extended off `C_0`: `L(x w_x⁻¹) τ(w_x)`.
pub fn closed_form_l(state: &BaseState, x: &TorusPoint) -> Result<CMat> {
    let h = Hyper22::new(state.kappa())?;
    let w = x.chamber_perm();
    let inner = h.normalized(cross_ratio(&x.act(&w.inverse()))?)?;
    Ok(inner.map(|v| num_complex::Complex64::new(v, 0.0)) * state.tau_word(&w)?)
}
