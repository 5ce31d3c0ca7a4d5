//! Partitions, reverse standard Young tableaux (RSYT), compositions and
//! fillings.
//!
//! Cells are addressed 1-based as `(row, column)`. The content of the entry
//! `i` of a tableau `T` is `c(i,T) = column − row`; a tableau is identified
//! by its content vector.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Hook lengths of every cell together with `h_τ` and `n_τ = dim V_τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub hooks: BTreeMap<(usize, usize), usize>,
    pub max_hook: usize,
    pub dim: u64,
}

impl Partition {
    /// Trailing zeros are dropped; the parts must be weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not weakly decreasing")));
        }
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.is_empty() {
            return Err(Error::InvalidShape("empty partition".into()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|τ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(τ)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `τ_i`, 1-based, zero past the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let parts = (1..=self.parts[0]).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Self { parts }
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let below = (i + 1..=self.length()).filter(|&k| self.part(k) >= j).count();
        self.part(i) - j + below + 1
    }

    /// `leg(i,j) = τ′_j − i`.
    pub fn leg(&self, i: usize, j: usize) -> usize {
        (i + 1..=self.length()).filter(|&k| self.part(k) >= j).count()
    }

    /// `h_τ = τ_1 + ℓ(τ) − 1`.
    pub fn max_hook(&self) -> usize {
        self.parts[0] + self.length() - 1
    }

    pub fn hooks_and_dim(&self) -> HookData {
        let hooks: BTreeMap<_, _> = self.cells().map(|(i, j)| ((i, j), self.hook(i, j))).collect();
        let n = self.size() as u128;
        let fact: u128 = (1..=n).product();
        let denom: u128 = hooks.values().map(|&h| h as u128).product();
        HookData { hooks, max_hook: self.max_hook(), dim: (fact / denom) as u64 }
    }

    /// `n(τ) = Σ (i−1) τ_i`, the minimal degree of a symmetric polynomial.
    pub fn weighted_size(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// `S_1(τ)`, the sum of all contents.
    pub fn content_sum(&self) -> i64 {
        self.cells().map(|(i, j)| j as i64 - i as i64).sum()
    }

    /// Sum of squared contents, by summing over cells.
    pub fn content_square_sum(&self) -> i64 {
        self.cells().map(|(i, j)| (j as i64 - i as i64).pow(2)).sum()
    }

    /// Closed form `(1/6) Σ_i τ_i {(τ_i − 1)(2τ_i − 1) − 6(τ_i − i)(i − 1)}`.
    pub fn content_square_sum_closed(&self) -> i64 {
        let six_s2: i64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(idx, &t)| {
                let (t, i) = (t as i64, idx as i64 + 1);
                t * ((t - 1) * (2 * t - 1) - 6 * (t - i) * (i - 1))
            })
            .sum();
        six_s2 / 6
    }

    /// `γ = S_1(τ)/N`.
    pub fn gamma<S: Scalar>(&self) -> S {
        S::from_ratio(self.content_sum(), self.size() as i64)
    }

    /// True for `(N)` and `(1^N)`.
    pub fn is_one_dimensional(&self) -> bool {
        self.length() == 1 || self.parts[0] == 1
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::<usize>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Reverse standard Young tableaux
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rsyt {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    content: Vec<i64>,
    positions: Vec<(usize, usize)>,
}

impl Rsyt {
    /// Builds a tableau from its rows; entries must decrease along rows and columns.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut positions = vec![(0, 0); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v > n || positions[v - 1] != (0, 0) {
                    return Err(Error::InvalidTableau(format!("{rows:?}: entries must be 1..={n} once each")));
                }
                positions[v - 1] = (i + 1, j + 1);
                if j > 0 && row[j - 1] <= v {
                    return Err(Error::InvalidTableau(format!("{rows:?}: row {} not decreasing", i + 1)));
                }
                if i > 0 && rows[i - 1][j] <= v {
                    return Err(Error::InvalidTableau(format!("{rows:?}: column {} not decreasing", j + 1)));
                }
            }
        }
        let content = positions.iter().map(|&(r, c)| c as i64 - r as i64).collect();
        Ok(Self { shape, rows, content, positions })
    }

    /// `T_0`: `N, N−1, …, 1` entered column by column.
    pub fn root(shape: &Partition) -> Self {
        let tr = shape.transpose();
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
        let mut v = shape.size();
        for (j, &h) in tr.parts().iter().enumerate() {
            for row in rows.iter_mut().take(h) {
                row[j] = v;
                v -= 1;
            }
        }
        Self::from_rows(rows).expect("column reading is an RSYT")
    }

    /// `N, N−1, …, 1` entered row by row.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut v = shape.size();
        let rows = shape
            .parts()
            .iter()
            .map(|&p| {
                (0..p)
                    .map(|_| {
                        let e = v;
                        v -= 1;
                        e
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("row reading is an RSYT")
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.content.len()
    }

    /// `c(i,T)`, 1-based `i`.
    pub fn content(&self, i: usize) -> i64 {
        self.content[i - 1]
    }

    pub fn content_vector(&self) -> &[i64] {
        &self.content
    }

    /// `rw(i,T)`.
    pub fn row_of(&self, i: usize) -> usize {
        self.positions[i - 1].0
    }

    /// `cm(i,T)`.
    pub fn col_of(&self, i: usize) -> usize {
        self.positions[i - 1].1
    }

    /// `T^{(i)}`: `i` and `i+1` interchanged, if the result is still an RSYT.
    pub fn swapped(&self, i: usize) -> Option<Self> {
        if i == 0 || i >= self.size() || (self.content(i) - self.content(i + 1)).abs() < 2 {
            return None;
        }
        let mut rows = self.rows.clone();
        let (a, b) = (self.positions[i - 1], self.positions[i]);
        rows[a.0 - 1][a.1 - 1] = i + 1;
        rows[b.0 - 1][b.1 - 1] = i;
        Self::from_rows(rows).ok()
    }

    /// Pairs `i < j` with `c(i,T) ≤ c(j,T) − 2`, the index set of `⟨T,T⟩_0` and `C_ε`.
    fn gapped_pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let n = self.size();
        (1..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (self.content(i), self.content(j))))
            .filter(|(ci, cj)| *ci <= cj - 2)
    }

    /// `⟨T,T⟩_0 = ∏ (1 − 1/(c(i,T) − c(j,T))²)` over gapped pairs.
    pub fn norm0<S: Scalar>(&self) -> S {
        self.gapped_pairs().fold(S::one(), |acc, (ci, cj)| {
            let d = ci - cj;
            acc * (S::one() - S::from_ratio(1, d * d))
        })
    }

    /// `C_ε(T) = ∏ (1 + ε/(c(i,T) − c(j,T)))` over gapped pairs.
    pub fn c_eps<S: Scalar>(&self, eps: i64) -> S {
        self.gapped_pairs().fold(S::one(), |acc, (ci, cj)| acc * (S::one() + S::from_ratio(eps, ci - cj)))
    }

    /// `inv(T) = #{i < j : c(i,T) ≥ c(j,T) + 2}`.
    pub fn inv(&self) -> usize {
        let n = self.size();
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.content(i) >= self.content(j) + 2)
            .count()
    }
}

impl fmt::Debug for Rsyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl fmt::Display for Rsyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

impl Serialize for Rsyt {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rsyt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Rsyt::from_rows(Vec::<Vec<usize>>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// All RSYT of shape `τ`: `T_0` first, the rest by content vector in
/// decreasing lexicographic order.
pub fn enumerate_rsyt(shape: &Partition) -> Vec<Rsyt> {
    fn rec(shape: &Partition, lens: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>, v: usize, out: &mut Vec<Rsyt>) {
        if v == 0 {
            out.push(Rsyt::from_rows(rows.clone()).expect("growth sequence yields an RSYT"));
            return;
        }
        for r in 0..shape.length() {
            let addable = lens[r] < shape.part(r + 1) && (r == 0 || lens[r - 1] > lens[r]);
            if addable {
                rows[r].push(v);
                lens[r] += 1;
                rec(shape, lens, rows, v - 1, out);
                lens[r] -= 1;
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.length()];
    rec(shape, &mut vec![0; shape.length()], &mut rows, shape.size(), &mut out);
    out.sort_by(|a, b| b.content.cmp(&a.content));
    let root = Rsyt::root(shape);
    let pos = out.iter().position(|t| *t == root).expect("T_0 is enumerated");
    let t0 = out.remove(pos);
    out.insert(0, t0);
    out
}

// ---------------------------------------------------------------------------
// Compositions
// ---------------------------------------------------------------------------

/// An exponent multi-index `α ∈ Z^N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<i64>);

impl Deref for Composition {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Composition {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl Composition {
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad composition {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// `|α| = Σ |α_i|`.
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }
}

/// `α⁺`, the nonincreasing rearrangement.
pub fn sorted_desc(alpha: &[i64]) -> Vec<i64> {
    let mut v = alpha.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `α⁻`, the nondecreasing rearrangement.
pub fn sorted_asc(alpha: &[i64]) -> Vec<i64> {
    let mut v = alpha.to_vec();
    v.sort_unstable();
    v
}

/// `r_α(i) = #{j : α_j > α_i} + #{j ≤ i : α_j = α_i}`; satisfies `r_α α = α⁺`.
pub fn rank_perm(alpha: &[i64]) -> Permutation {
    let n = alpha.len();
    let images = (0..n)
        .map(|i| {
            let greater = alpha.iter().filter(|&&a| a > alpha[i]).count();
            let equal_before = alpha[..=i].iter().filter(|&&a| a == alpha[i]).count();
            greater + equal_before - 1
        })
        .collect();
    Permutation::from_zero_based(images)
}

/// Dominance `α ≺ β`: all partial sums `≤` and `α ≠ β`.
pub fn dominates_below(alpha: &[i64], beta: &[i64]) -> bool {
    if alpha == beta {
        return false;
    }
    let (mut sa, mut sb) = (0, 0);
    alpha.iter().zip(beta).all(|(a, b)| {
        sa += a;
        sb += b;
        sa <= sb
    })
}

/// The derived order `α ◁ β`.
pub fn graph_below(alpha: &[i64], beta: &[i64]) -> bool {
    let total = |v: &[i64]| v.iter().map(|a| a.abs()).sum::<i64>();
    if total(alpha) != total(beta) {
        return false;
    }
    let (ap, bp) = (sorted_desc(alpha), sorted_desc(beta));
    dominates_below(&ap, &bp) || (ap == bp && dominates_below(alpha, beta))
}

/// `(α ≺ β, α ◁ β)`.
pub fn orders(alpha: &[i64], beta: &[i64]) -> Result<(bool, bool)> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch(alpha.len(), beta.len()));
    }
    Ok((dominates_below(alpha, beta), graph_below(alpha, beta)))
}

/// A total-order key refining `◁` within one degree: `α ◁ β ⇒ key(α) < key(β)`.
pub fn graph_order_key(alpha: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let partial = |v: &[i64]| {
        v.iter()
            .scan(0, |s, a| {
                *s += a;
                Some(*s)
            })
            .collect::<Vec<_>>()
    };
    (partial(&sorted_desc(alpha)), partial(alpha))
}

/// `inv(α) = #{i < j : α_i < α_j}`.
pub fn inv_composition(alpha: &[i64]) -> usize {
    let n = alpha.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| alpha[i] < alpha[j]).count()
}

/// `(inv(α), inv(T))`.
pub fn inv_stats(alpha: &[i64], t: &Rsyt) -> (usize, usize) {
    (inv_composition(alpha), t.inv())
}

/// All `α ∈ N_0^N` with `|α| = d`, lexicographically decreasing.
pub fn compositions(n: usize, d: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, d: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=d).rev() {
            cur.push(a);
            rec(n, d - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of `alpha`, lexicographically increasing.
pub fn rearrangements(alpha: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = sorted_asc(alpha);
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Fillings
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<i64>>,
}

impl Filling {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i - 1][j - 1]
    }

    pub fn total(&self) -> i64 {
        self.rows.iter().flatten().sum()
    }

    /// Strictly increasing down each column, weakly increasing along each row.
    pub fn is_column_strict(&self) -> bool {
        self.shape.cells().all(|(i, j)| {
            let v = self.get(i, j);
            (j == 1 || self.get(i, j - 1) <= v) && (i == 1 || self.get(i - 1, j) < v)
        })
    }

    /// The filling whose row `i` holds `i − 1` everywhere.
    pub fn minimal(shape: &Partition) -> Self {
        let rows = shape.parts().iter().enumerate().map(|(i, &p)| vec![i as i64; p]).collect();
        Self { shape: shape.clone(), rows }
    }
}

impl fmt::Debug for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl Serialize for Filling {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.rows.serialize(s)
    }
}

/// `⌊α,T⌋`: each entry `i` of `T` replaced by `α⁺_i`.
pub fn floor_filling(alpha: &[i64], t: &Rsyt) -> Result<Filling> {
    if alpha.len() != t.size() {
        return Err(Error::LengthMismatch(alpha.len(), t.size()));
    }
    if alpha.iter().any(|&a| a < 0) {
        return Err(Error::NegativeExponent(alpha.to_vec()));
    }
    let plus = sorted_desc(alpha);
    let rows = t.rows().iter().map(|r| r.iter().map(|&v| plus[v - 1]).collect()).collect();
    Ok(Filling { shape: t.shape().clone(), rows })
}

/// Root and sink tableaux `(T_R, T_S)` of the component with filling `F`.
pub fn root_sink(filling: &Filling) -> Result<(Rsyt, Rsyt)> {
    if !filling.is_column_strict() {
        return Err(Error::NotColumnStrict);
    }
    let cells: Vec<(usize, usize)> = filling.shape.cells().collect();
    let build = |tie: &dyn Fn((usize, usize), (usize, usize)) -> bool| -> Result<Rsyt> {
        let rows = filling
            .shape
            .parts()
            .iter()
            .enumerate()
            .map(|(i0, &p)| {
                (1..=p)
                    .map(|j| {
                        let here = (i0 + 1, j);
                        let v = filling.get(here.0, here.1);
                        cells
                            .iter()
                            .filter(|&&(k, l)| {
                                let w = filling.get(k, l);
                                w > v || (w == v && tie((k, l), here))
                            })
                            .count()
                    })
                    .collect()
            })
            .collect();
        Rsyt::from_rows(rows)
    };
    let root = build(&|(k, l), (i, j)| l > j || (l == j && k >= i))?;
    let sink = build(&|(k, l), (i, j)| k > i || (k == i && l >= j))?;
    Ok((root, sink))
}

/// Coefficient of `z^n` in `z^{n(τ)} H_τ(z)`, times `(1 − z^N)` when `restrict_last_zero`.
///
/// `H_τ(z) = ∏_{cells} (1 − z^{h(i,j)})^{-1}`, expanded by exact power-series division.
pub fn jack_count(shape: &Partition, n: usize, restrict_last_zero: bool) -> u128 {
    let series = jack_count_series(shape, n, restrict_last_zero);
    series[n]
}

/// Coefficients `0..=max_degree` of the same series.
pub fn jack_count_series(shape: &Partition, max_degree: usize, restrict_last_zero: bool) -> Vec<u128> {
    let mut h = vec![0u128; max_degree + 1];
    h[0] = 1;
    for (_, hook) in shape.hooks_and_dim().hooks {
        // multiply by 1/(1 − z^hook)
        for k in hook..=max_degree {
            h[k] += h[k - hook];
        }
    }
    let shift = shape.weighted_size();
    let mut out = vec![0u128; max_degree + 1];
    if shift <= max_degree {
        out[shift..=max_degree].copy_from_slice(&h[..=max_degree - shift]);
    }
    if restrict_last_zero {
        let n = shape.size();
        for k in (n..=max_degree).rev() {
            out[k] -= out[k - n];
        }
    }
    out
}
