//! Dormand-Prince 5(4) with adaptive step control, for matrix-valued systems.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights are the last row of A; these are fifth minus fourth
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    /// Local error bound per step, mixed absolute/relative.
    pub tol: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_step: f64::INFINITY, min_step: 1e-14, max_steps: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates `y' = f(s, y)` from `s0` to `s1 > s0`.
pub fn integrate(
    mut f: impl FnMut(f64, &CMat) -> Result<CMat>,
    s0: f64,
    s1: f64,
    y0: CMat,
    opts: &OdeOptions,
) -> Result<(CMat, OdeStats)> {
    let mut stats = OdeStats::default();
    let mut s = s0;
    let mut y = y0;
    let span = s1 - s0;
    if span <= 0.0 {
        return Ok((y, stats));
    }
    let mut h = opts.max_step.min(span).min(1e-2 * span.max(1e-3));
    let mut k1 = f(s, &y)?;
    while s < s1 {
        if stats.accepted + stats.rejected > opts.max_steps {
            return Err(Error::Integration(format!("step budget exhausted at s = {s}")));
        }
        let last = s + h >= s1;
        if last {
            h = s1 - s;
        }
        let mut k: Vec<CMat> = Vec::with_capacity(7);
        k.push(k1.clone());
        for stage in 1..7 {
            let mut yi = y.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = A[stage][j];
                if a != 0.0 {
                    yi += kj * Complex64::new(h * a, 0.0);
                }
            }
            k.push(f(s + C[stage] * h, &yi)?);
        }
        let mut y5 = y.clone();
        let mut err = CMat::zeros(y.nrows(), y.ncols());
        for j in 0..7 {
            if j < 6 && A[6][j] != 0.0 {
                y5 += &k[j] * Complex64::new(h * A[6][j], 0.0);
            }
            if E[j] != 0.0 {
                err += &k[j] * Complex64::new(h * E[j], 0.0);
            }
        }
        let mut ratio: f64 = 0.0;
        for (e, (a, b)) in err.iter().zip(y.iter().zip(y5.iter())) {
            let sc = opts.tol * (1.0 + a.norm().max(b.norm()));
            ratio = ratio.max(e.norm() / sc);
        }
        if !ratio.is_finite() {
            return Err(Error::Integration(format!("non-finite error estimate at s = {s}")));
        }
        if ratio <= 1.0 {
            s = if last { s1 } else { s + h };
            y = y5;
            k1 = k.swap_remove(6);
            stats.accepted += 1;
        } else {
            stats.rejected += 1;
        }
        let fac = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * fac).min(opts.max_step);
        if h < opts.min_step * span {
            return Err(Error::Integration(format!("step size underflow at s = {s}")));
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_exponential() {
        // y' = y B with constant B has y(1) = exp(B)
        let b = CMat::from_row_slice(2, 2, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let (y, stats) = integrate(|_, y| Ok(y * &b), 0.0, 1.0, CMat::identity(2, 2), &OdeOptions::default()).unwrap();
        let (c, s) = (1f64.cos(), 1f64.sin());
        assert!((y[(0, 0)].re - c).abs() < 1e-9);
        assert!((y[(0, 1)].re - s).abs() < 1e-9);
        assert!((y[(1, 0)].re + s).abs() < 1e-9);
        assert!(stats.accepted > 0);
    }

    #[test]
    fn power_law_near_singularity() {
        // y' = -κ y / (1 - s) on [0, 1 - 1e-6]: y = (1 - s)^κ
        let k = 0.2;
        let end = 1.0 - 1e-6;
        let (y, _) = integrate(
            |s, y| Ok(y * Complex64::new(-k / (1.0 - s), 0.0)),
            0.0,
            end,
            CMat::identity(1, 1),
            &OdeOptions::default(),
        )
        .unwrap();
        let exact = (1.0 - end).powf(k);
        assert!((y[(0, 0)].re - exact).abs() < 1e-8, "{} vs {exact}", y[(0, 0)].re);
    }
}
