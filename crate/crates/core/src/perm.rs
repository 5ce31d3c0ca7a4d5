//! Permutations of `{1..N}` in one-line notation.
//!
//! Composition follows function composition: `(a * b)(i) = a(b(i))`. A
//! permutation acts on points `x` by `(xw)_i = x_{w(i)}` and on exponent
//! vectors by `(wα)_i = α_{w⁻¹(i)}`, so that `(xw)^α = x^{wα}`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// 0-based images.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From 1-based images, e.g. `[3, 2, 4, 1]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
            zero.push(v - 1);
        }
        Ok(Self { images: zero })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { images }
    }

    /// Simple reflection `s_i = (i, i+1)`, `1 ≤ i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        Self::transposition(n, i, i + 1)
    }

    /// Transposition `(i, j)`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange { index: k, max: n });
            }
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Self { images })
    }

    /// The N-cycle `w_0 = (1, 2, ..., N)`: `w_0(i) = i + 1`, `w_0(N) = 1`.
    pub fn long_cycle(n: usize) -> Self {
        Self { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn pow(&self, m: i64) -> Self {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.len());
        for _ in 0..m.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// A reduced word `[a_1, ..., a_k]` (1-based) with `w = s_{a_1} ⋯ s_{a_k}`.
    ///
    /// Bubble sort of the one-line notation; each swap of a descent at
    /// positions `i, i+1` is right multiplication by `s_i`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut line = self.images.clone();
        let mut sorting = Vec::new();
        let n = line.len();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if line[i] > line[i + 1] {
                    line.swap(i, i + 1);
                    sorting.push(i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        sorting.reverse();
        sorting
    }

    /// Number of inversions (= length of any reduced word).
    pub fn length(&self) -> usize {
        let n = self.images.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.images[i] > self.images[j]).count()
    }

    /// `wα` with `(wα)_i = α_{w⁻¹(i)}`.
    pub fn act_on_exponents<T: Clone>(&self, alpha: &[T]) -> Vec<T> {
        let mut out = alpha.to_vec();
        for (i, &v) in self.images.iter().enumerate() {
            out[v] = alpha[i].clone();
        }
        out
    }

    /// `xw` with `(xw)_i = x_{w(i)}`.
    pub fn act_on_point<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.images.iter().map(|&v| x[v].clone()).collect()
    }

    /// All permutations of `n` letters in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.len(), rhs.len());
        Permutation { images: rhs.images.iter().map(|&v| self.images[v]).collect() }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl Serialize for Permutation {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}
