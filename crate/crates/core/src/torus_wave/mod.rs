//! Numerical base state `L(x)` on the torus and the wavefunctions `L·J`.
//!
//! Everything here works in `f64`/`Complex64` in the orthonormal tableau
//! basis. `L` is the solution of `∂_i L = κ L A_i` normalized by
//! `L(x_0) = I`; the unknown left factor of the true base state is not
//! computed, and none of the checks depend on it.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub mod base_state;
pub mod hyper22;
pub mod ode;
pub mod wave;

pub use base_state::{BaseState, DetReport, TorusMatrix};

pub use hyper22::Hyper22;
pub use ode::{CMat, OdeOptions};
pub use wave::{BoundednessProbe, EigenCheck, JackField};


/// Default regularity threshold for the minimal chord distance.
pub const EPS_REG: f64 = 1e-9;

/// A point `x_j = e^{iθ_j}` of the torus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusPoint {
    angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Self {
        Self { angles }
    }

    /// `x_0 = (1, e^{2πi/N}, …)`.
    pub fn base(n: usize) -> Self {
        Self::new((0..n).map(|j| TAU * j as f64 / n as f64).collect())
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn coords(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    pub fn min_separation(&self) -> f64 {
        let x = self.coords();
        let mut m = f64::INFINITY;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                m = m.min((x[i] - x[j]).norm());
            }
        }
        m
    }

    pub fn is_regular(&self, eps: f64) -> bool {
        self.min_separation() > eps
    }

    pub fn check_regular(&self, eps: f64) -> Result<()> {
        let d = self.min_separation();
        if d > eps {
            Ok(())
        } else {
            Err(Error::Irregular(d))
        }
    }

    /// `xw`, with `(xw)_i = x_{w(i)}`.
    pub fn act(&self, w: &Permutation) -> Self {
        Self::new(w.act_on_point(&self.angles))
    }

    /// `ux` for `u = e^{iφ}`.
    pub fn rotate(&self, phi: f64) -> Self {
        Self::new(self.angles.iter().map(|t| t + phi).collect())
    }

    /// Angles relative to `θ_1`, reduced to `[0, 2π)`.
    fn relative(&self) -> Vec<f64> {
        self.angles.iter().map(|t| (t - self.angles[0]).rem_euclid(TAU)).collect()
    }

    /// `θ_1 < θ_2 < … < θ_N < θ_1 + 2π` up to relabeling by multiples of 2π.
    pub fn in_fundamental_chamber(&self) -> bool {
        let r = self.relative();
        r[1..].iter().all(|&t| t > 0.0) && r.windows(2).all(|w| w[0] < w[1])
    }

    /// `w_x` with `x w_x⁻¹ ∈ C_0` and `w_x(1) = 1`.
    pub fn chamber_perm(&self) -> Permutation {
        let r = self.relative();
        let mut order: Vec<usize> = (0..self.n()).collect();
        order[1..].sort_by(|&a, &b| r[a].total_cmp(&r[b]));
        let inv: Vec<usize> = order.iter().map(|k| k + 1).collect();
        Permutation::from_one_line(&inv).expect("sorting gives a permutation").inverse()
    }

    /// Chamber representative `x w_x⁻¹` with `θ_1 = 0` and increasing angles in `[0, 2π)`.
    pub fn chamber_representative(&self) -> Self {
        let w = self.chamber_perm();
        let mut r = self.act(&w.inverse()).relative();
        r[0] = 0.0;
        Self::new(r)
    }
}
