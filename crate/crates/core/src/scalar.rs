//! Scalar abstraction shared by the exact and floating-point engines.
//!
//! The algebraic modules (tableaux, representations, polynomials, the
//! Yang-Baxter construction, norms) are written once against [`Scalar`] and
//! instantiated with [`BigRational`] for exact work or `f64`/`f32` for quick
//! numerical experiments.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field element usable as a polynomial coefficient and as the parameter κ.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Signed + Send + Sync + 'static
{
    /// True for exact arithmetic, where `==` is meaningful after cancellation.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// Square root inside the field, when it exists.
    fn try_sqrt(&self) -> Option<Self>;

    /// Parse `"p/q"`, `"p"` or a decimal literal (read exactly by rational types).
    fn parse_scalar(s: &str) -> Result<Self>;
}

fn split_ratio(s: &str) -> Option<(&str, &str)> {
    let (a, b) = s.split_once('/')?;
    Some((a.trim(), b.trim()))
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // numerator and denominator can individually overflow f64
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()) as i64 - 900;
                let scale = BigInt::one() << shift.max(0) as usize;
                let n = (self.numer() / &scale).to_f64().unwrap_or(f64::NAN);
                let d = (self.denom() / &scale).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if let Some((p, q)) = split_ratio(s) {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        } else if let Some((int, frac)) = s.split_once('.') {
            // exact decimal
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            Ok(BigRational::new(digits, scale))
        } else {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn try_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }

            fn parse_scalar(s: &str) -> Result<Self> {
                let bad = || Error::Parse(format!("not a number: {s:?}"));
                let s = s.trim();
                if let Some((p, q)) = split_ratio(s) {
                    let p: $t = p.parse().map_err(|_| bad())?;
                    let q: $t = q.parse().map_err(|_| bad())?;
                    Ok(p / q)
                } else {
                    s.parse().map_err(|_| bad())
                }
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// `p/q` rendering used by every serializer; integers print without a denominator.
pub fn format_scalar<S: Scalar>(v: &S) -> String {
    v.to_string()
}
