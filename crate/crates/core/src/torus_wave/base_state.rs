//! `L(x)`: integration inside `C_0`, chamber extension and the twist `M(w,x)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::ode::{integrate, CMat, OdeOptions, OdeStats};
use super::{TorusPoint, EPS_REG};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::group_action::{Basis, Representation};
use crate::perm::Permutation;

type CacheKey = (Vec<u64>, u64);
type CacheSlot = Arc<OnceLock<Result<(CMat, OdeStats)>>>;

/// `L` at a point, with the tolerance it was integrated to.
#[derive(Clone, Debug)]
pub struct TorusMatrix {
    pub point: TorusPoint,
    pub value: CMat,
    pub tol: f64,
}

/// `[[re, im], …]` rows.
pub fn matrix_json(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

impl Serialize for TorusMatrix {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TorusMatrix", 3)?;
        st.serialize_field("theta", self.point.angles())?;
        st.serialize_field("tol", &self.tol)?;
        st.serialize_field("matrix", &matrix_json(&self.value))?;
        st.end()
    }
}

/// Comparison of `det L` against `∏|x_i − x_j|^{κλ̂}` for two candidate exponents.
#[derive(Clone, Debug, Serialize)]
pub struct DetReport {
    /// `tr τ(1,2)`.
    pub lambda_trace: f64,
    /// `γ n_τ / (2(N−1))`.
    pub lambda_alt: f64,
    pub max_rel_err_trace: f64,
    pub max_rel_err_alt: f64,
    pub samples: usize,
}

impl DetReport {
    pub fn matching(&self, tol: f64) -> &'static str {
        match (self.max_rel_err_trace <= tol, self.max_rel_err_alt <= tol) {
            (true, true) => "both",
            (true, false) => "trace",
            (false, true) => "alternative",
            (false, false) => "neither",
        }
    }
}

pub struct BaseState {
    shape: Partition,
    kappa: f64,
    gamma: f64,
    rep: Representation<f64>,
    tau: Vec<Vec<CMat>>,
    cycle_powers: Vec<CMat>,
    opts: OdeOptions,
    max_angle_step: f64,
    eps_reg: f64,
    cache: Mutex<HashMap<CacheKey, CacheSlot>>,
}

impl std::fmt::Debug for BaseState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BaseState").field("shape", &self.shape).field("kappa", &self.kappa).finish()
    }
}

fn to_cmat(m: &crate::matrix::SquareMatrix<f64>) -> CMat {
    DMatrix::from_fn(m.dim(), m.dim(), |r, c| Complex64::new(*m.get(r, c), 0.0))
}

impl BaseState {
    /// Requires `|κ| h_τ < 1`.
    pub fn new(shape: &Partition, kappa: f64) -> Result<Self> {
        if kappa.abs() * shape.max_hook() as f64 >= 1.0 {
            return Err(Error::InadmissibleKappa(format!("|κ| = {} is not below 1/{}", kappa.abs(), shape.max_hook())));
        }
        let rep = Representation::<f64>::for_shape(shape, Basis::Orthonormal)?;
        let n = shape.size();
        let mut tau = vec![vec![CMat::zeros(0, 0); n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    tau[i][j] = to_cmat(&*rep.transposition(i, j)?);
                }
            }
        }
        let w0 = Permutation::long_cycle(n);
        let cycle_powers = (0..n as i64).map(|p| rep.word(&w0.pow(p)).map(|m| to_cmat(&m))).collect::<Result<_>>()?;
        Ok(Self {
            shape: shape.clone(),
            kappa,
            gamma: shape.gamma::<f64>(),
            rep,
            tau,
            cycle_powers,
            opts: OdeOptions::default(),
            max_angle_step: PI / 64.0,
            eps_reg: EPS_REG,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.opts.tol = tol;
        self
    }

    pub fn with_eps_reg(mut self, eps: f64) -> Self {
        self.eps_reg = eps;
        self
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn tol(&self) -> f64 {
        self.opts.tol
    }

    pub fn rep(&self) -> &Representation<f64> {
        &self.rep
    }

    /// `τ(i,j)` in the orthonormal basis.
    pub fn tau(&self, i: usize, j: usize) -> &CMat {
        &self.tau[i][j]
    }

    /// `τ(w)` as a complex matrix.
    pub fn tau_word(&self, w: &Permutation) -> Result<CMat> {
        Ok(to_cmat(&*self.rep.word(w)?))
    }

    /// `τ(w_0)^p` for any integer `p`.
    pub fn cycle_power(&self, p: i64) -> &CMat {
        &self.cycle_powers[p.rem_euclid(self.n() as i64) as usize]
    }

    /// `A_i(x) = Σ_{j≠i} τ(i,j)/(x_i − x_j) − (γ/x_i) I`.
    pub fn coefficient_matrix(&self, x: &TorusPoint, i: usize) -> Result<CMat> {
        x.check_regular(self.eps_reg)?;
        Ok(self.a_unchecked(&x.coords(), i))
    }

    fn a_unchecked(&self, x: &[Complex64], i: usize) -> CMat {
        let d = self.dim();
        let mut a = CMat::identity(d, d) * (-self.gamma / x[i - 1]);
        for j in 1..=self.n() {
            if j != i {
                a += &self.tau[i][j] / (x[i - 1] - x[j - 1]);
            }
        }
        a
    }

    /// `∂_i A_i(x) = −Σ_{j≠i} τ(i,j)/(x_i − x_j)² + (γ/x_i²) I`.
    pub fn coefficient_derivative(&self, x: &TorusPoint, i: usize) -> Result<CMat> {
        x.check_regular(self.eps_reg)?;
        let x = x.coords();
        let d = self.dim();
        let mut a = CMat::identity(d, d) * (self.gamma / (x[i - 1] * x[i - 1]));
        for j in 1..=self.n() {
            if j != i {
                let dx = x[i - 1] - x[j - 1];
                a -= &self.tau[i][j] / (dx * dx);
            }
        }
        Ok(a)
    }

    /// Continues `l0` from angles `from` to `to` along the straight segment.
    pub fn integrate_segment(&self, l0: CMat, from: &[f64], to: &[f64]) -> Result<(CMat, OdeStats)> {
        let n = self.n();
        let delta: Vec<f64> = to.iter().zip(from).map(|(b, a)| b - a).collect();
        let len = delta.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        if len == 0.0 {
            return Ok((l0, OdeStats::default()));
        }
        let opts = OdeOptions { max_step: self.max_angle_step / len, ..self.opts };
        let k = Complex64::new(self.kappa, 0.0);
        let rhs = |s: f64, l: &CMat| -> Result<CMat> {
            let theta: Vec<f64> = (0..n).map(|j| from[j] + s * delta[j]).collect();
            let p = TorusPoint::new(theta);
            p.check_regular(self.eps_reg)?;
            let x = p.coords();
            let d = self.dim();
            let mut b = CMat::zeros(d, d);
            for i in 1..=n {
                if delta[i - 1] != 0.0 {
                    let dx = Complex64::i() * x[i - 1] * delta[i - 1];
                    b += self.a_unchecked(&x, i) * dx;
                }
            }
            Ok(l * b * k)
        };
        integrate(rhs, 0.0, 1.0, l0, &opts)
    }

    /// `L(x)` for `x ∈ C_0`, integrated from `x_0` along the straight angle path.
    pub fn integrate_l(&self, target: &TorusPoint) -> Result<TorusMatrix> {
        if target.n() != self.n() {
            return Err(Error::LengthMismatch(target.n(), self.n()));
        }
        target.check_regular(self.eps_reg)?;
        if !target.in_fundamental_chamber() {
            return Err(Error::OutsideChamber);
        }
        let rep = target.chamber_representative();
        let key = (rep.angles().iter().map(|t| t.to_bits()).collect(), self.opts.tol.to_bits());
        let slot = self.cache.lock().expect("cache lock").entry(key).or_default().clone();
        let res = slot.get_or_init(|| {
            let d = self.dim();
            self.integrate_segment(CMat::identity(d, d), TorusPoint::base(self.n()).angles(), rep.angles())
        });
        match res {
            Ok((m, _)) => Ok(TorusMatrix { point: target.clone(), value: m.clone(), tol: self.opts.tol }),
            Err(e) => Err(e.clone()),
        }
    }

    /// `L` at a `C_0` target reached through `waypoint` instead of the straight path.
    pub fn integrate_via(&self, target: &TorusPoint, waypoint: &TorusPoint) -> Result<CMat> {
        for p in [target, waypoint] {
            if !p.in_fundamental_chamber() {
                return Err(Error::OutsideChamber);
            }
        }
        let d = self.dim();
        let (w, t) = (waypoint.chamber_representative(), target.chamber_representative());
        let (mid, _) = self.integrate_segment(CMat::identity(d, d), TorusPoint::base(self.n()).angles(), w.angles())?;
        Ok(self.integrate_segment(mid, w.angles(), t.angles())?.0)
    }

    /// `L(x) = L(x w_x⁻¹) τ(w_x)` for any regular `x`.
    pub fn extend_l(&self, x: &TorusPoint) -> Result<TorusMatrix> {
        x.check_regular(self.eps_reg)?;
        let w = x.chamber_perm();
        let inner = self.integrate_l(&x.act(&w.inverse()))?;
        Ok(TorusMatrix { point: x.clone(), value: inner.value * self.tau_word(&w)?, tol: self.opts.tol })
    }

    /// `M(w,x) = τ(w_0)^{1 − w_x w(1)}`.
    pub fn twist_m(&self, w: &Permutation, x: &TorusPoint) -> CMat {
        let wx = x.chamber_perm();
        let p = 1 - (&wx * w).apply(1) as i64;
        self.cycle_power(p).clone()
    }

    /// `(σ^M(w) f)(x) = M(w,x)⁻¹ f(xw)`.
    pub fn sigma_m(&self, w: &Permutation, f: &dyn Fn(&TorusPoint) -> Vec<Complex64>, x: &TorusPoint) -> Vec<Complex64> {
        let wx = x.chamber_perm();
        let p = 1 - (&wx * w).apply(1) as i64;
        let v = nalgebra::DVector::from_vec(f(&x.act(w)));
        (self.cycle_power(-p) * v).iter().copied().collect()
    }

    /// `det L` against `∏_{i<j} |x_i − x_j|^{κλ̂}`, normalized at `x_0`.
    pub fn det_report(&self, points: &[TorusPoint]) -> Result<DetReport> {
        let n = self.n();
        let lambda_trace = self.tau[1][2].trace().re;
        let lambda_alt = self.gamma * self.dim() as f64 / (2.0 * (n as f64 - 1.0));
        let prod = |x: &TorusPoint, lam: f64| -> f64 {
            let c = x.coords();
            let mut acc = 1.0;
            for i in 0..n {
                for j in i + 1..n {
                    acc *= (c[i] - c[j]).norm().powf(self.kappa * lam);
                }
            }
            acc
        };
        let x0 = TorusPoint::base(n);
        let (mut e_tr, mut e_alt) = (0.0f64, 0.0f64);
        for x in points {
            let det = self.extend_l(x)?.value.determinant();
            for (lam, e) in [(lambda_trace, &mut e_tr), (lambda_alt, &mut e_alt)] {
                let pred = prod(x, lam) / prod(&x0, lam);
                *e = e.max((det - pred).norm() / pred);
            }
        }
        Ok(DetReport { lambda_trace, lambda_alt, max_rel_err_trace: e_tr, max_rel_err_alt: e_alt, samples: points.len() })
    }

    /// Tableau indices with `c(N−1,T) = −1` first, the rest after, each in enumeration order.
    pub fn sigma_order(&self) -> Vec<usize> {
        let basis = self.rep.basis();
        let n = self.n();
        let (mut first, mut rest): (Vec<usize>, Vec<usize>) = (0..basis.dim()).partition(|&t| basis.content(n - 1, t) == -1);
        first.append(&mut rest);
        first
    }

    /// `τ(N−1,N)` in the basis reordered by [`Self::sigma_order`].
    pub fn tau_last_reordered(&self) -> DMatrix<f64> {
        let ord = self.sigma_order();
        let n = self.n();
        let t = &self.tau[n - 1][n];
        DMatrix::from_fn(ord.len(), ord.len(), |r, c| t[(ord[r], ord[c])].re)
    }

    /// `m_τ`, the number of tableaux with `c(N−1,T) = −1`.
    pub fn sigma_block(&self) -> usize {
        let basis = self.rep.basis();
        (0..basis.dim()).filter(|&t| basis.content(self.n() - 1, t) == -1).count()
    }
}

/// Max entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Integrand-level check: `Σ_i x_i A_i(x) = 0`.
pub fn euler_defect(state: &BaseState, x: &TorusPoint) -> Result<f64> {
    let c = x.coords();
    let d = state.dim();
    let mut acc = CMat::zeros(d, d);
    for i in 1..=state.n() {
        acc += state.coefficient_matrix(x, i)? * c[i - 1];
    }
    Ok(acc.iter().fold(0.0, |m, z| m.max(z.norm())))
}
