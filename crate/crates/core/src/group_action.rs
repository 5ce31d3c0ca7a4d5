//! The irreducible module `V_τ` in the RSYT basis.
//!
//! Matrices act on column vectors: column `l` of `τ(w)` holds the
//! coordinates of `τ(w)T_l`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::combinatorics::{enumerate_rsyt, Partition, Rsyt};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::perm::Permutation;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `{T}` with `⟨T,T⟩_0` as Gram diagonal; entries stay rational.
    Unnormalized,
    /// `{⟨T,T⟩_0^{-1/2} T}`; matrices are real orthogonal.
    Orthonormal,
}

/// The tableaux of one shape in canonical order plus lookup tables.
#[derive(Debug)]
pub struct TableauBasis {
    shape: Partition,
    tableaux: Vec<Rsyt>,
    index: HashMap<Vec<i64>, usize>,
    /// `swap[i-1][t]`: index of `T_t^{(i)}` when it exists.
    swap: Vec<Vec<Option<usize>>>,
}

impl TableauBasis {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = enumerate_rsyt(shape);
        let index = tableaux.iter().enumerate().map(|(k, t)| (t.content_vector().to_vec(), k)).collect::<HashMap<_, _>>();
        let n = shape.size();
        let swap = (1..n)
            .map(|i| tableaux.iter().map(|t| t.swapped(i).map(|s| index[s.content_vector()])).collect())
            .collect();
        Self { shape: shape.clone(), tableaux, index, swap }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// `N`.
    pub fn n(&self) -> usize {
        self.shape.size()
    }

    /// `n_τ`.
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Rsyt] {
        &self.tableaux
    }

    pub fn tableau(&self, k: usize) -> &Rsyt {
        &self.tableaux[k]
    }

    pub fn index_of(&self, t: &Rsyt) -> Option<usize> {
        self.index.get(t.content_vector()).copied()
    }

    pub fn index_of_content(&self, content: &[i64]) -> Option<usize> {
        self.index.get(content).copied()
    }

    pub fn swapped(&self, i: usize, t: usize) -> Option<usize> {
        self.swap[i - 1][t]
    }

    /// `c(i, T_t)`.
    pub fn content(&self, i: usize, t: usize) -> i64 {
        self.tableaux[t].content(i)
    }

    pub fn norms0<S: Scalar>(&self) -> Vec<S> {
        self.tableaux.iter().map(Rsyt::norm0).collect()
    }
}

/// `τ` as a matrix representation in a chosen basis, with memoized words.
pub struct Representation<S> {
    basis: Arc<TableauBasis>,
    kind: Basis,
    simple: Vec<SquareMatrix<S>>,
    cache: Mutex<HashMap<Permutation, Arc<SquareMatrix<S>>>>,
}

impl<S: Scalar> Representation<S> {
    pub fn new(basis: Arc<TableauBasis>, kind: Basis) -> Result<Self> {
        let n = basis.n();
        let simple = (1..n).map(|i| simple_matrix(&basis, i, kind)).collect::<Result<Vec<_>>>()?;
        Ok(Self { basis, kind, simple, cache: Mutex::new(HashMap::new()) })
    }

    pub fn for_shape(shape: &Partition, kind: Basis) -> Result<Self> {
        Self::new(Arc::new(TableauBasis::new(shape)), kind)
    }

    pub fn basis(&self) -> &Arc<TableauBasis> {
        &self.basis
    }

    pub fn kind(&self) -> Basis {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `τ(s_i)`, `1 ≤ i < N`.
    pub fn simple(&self, i: usize) -> Result<&SquareMatrix<S>> {
        if i == 0 || i >= self.basis.n() {
            return Err(Error::IndexOutOfRange { index: i, max: self.basis.n().saturating_sub(1) });
        }
        Ok(&self.simple[i - 1])
    }

    /// `τ(w)` as the product over a reduced word.
    pub fn word(&self, w: &Permutation) -> Result<Arc<SquareMatrix<S>>> {
        if w.len() != self.basis.n() {
            return Err(Error::LengthMismatch(w.len(), self.basis.n()));
        }
        if let Some(m) = self.cache.lock().unwrap().get(w) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.word_product(&w.reduced_word()));
        // racing writers compute equal values; first insert wins
        Ok(self.cache.lock().unwrap().entry(w.clone()).or_insert(m).clone())
    }

    /// Product `τ(s_{a_1}) ⋯ τ(s_{a_k})` of an arbitrary (not necessarily reduced) word.
    pub fn word_product(&self, word: &[usize]) -> SquareMatrix<S> {
        word.iter().fold(SquareMatrix::identity(self.dim()), |acc, &i| &acc * &self.simple[i - 1])
    }

    pub fn transposition(&self, i: usize, j: usize) -> Result<Arc<SquareMatrix<S>>> {
        self.word(&Permutation::transposition(self.basis.n(), i, j)?)
    }

    /// `τ(w_0)` for the N-cycle.
    pub fn long_cycle(&self) -> Arc<SquareMatrix<S>> {
        self.word(&Permutation::long_cycle(self.basis.n())).expect("same length")
    }

    /// `ω_i = Σ_{j>i} τ(i,j)`.
    pub fn jucys_murphy(&self, i: usize) -> Result<SquareMatrix<S>> {
        let n = self.basis.n();
        let mut acc = SquareMatrix::zeros(self.dim());
        for j in i + 1..=n {
            acc = acc.add(&*self.transposition(i, j)?);
        }
        Ok(acc)
    }

    /// `τ(w) v` for a coordinate vector.
    pub fn apply(&self, w: &Permutation, v: &[S]) -> Result<Vec<S>> {
        let m = self.word(w)?;
        Ok(mat_vec(&m, v))
    }
}

pub(crate) fn mat_vec<S: Scalar>(m: &SquareMatrix<S>, v: &[S]) -> Vec<S> {
    let n = m.dim();
    (0..n)
        .map(|r| (0..n).fold(S::zero(), |acc, c| if v[c].is_zero() { acc } else { acc + m.get(r, c).clone() * v[c].clone() }))
        .collect()
}

/// `τ(s_i)` built column by column from the seminormal rules.
pub fn simple_matrix<S: Scalar>(basis: &TableauBasis, i: usize, kind: Basis) -> Result<SquareMatrix<S>> {
    let n = basis.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let dim = basis.dim();
    let mut m = SquareMatrix::zeros(dim);
    for t in 0..dim {
        let d = basis.content(i, t) - basis.content(i + 1, t);
        match d {
            1 => m.set(t, t, S::one()),
            -1 => m.set(t, t, -S::one()),
            _ => {
                let b = S::from_ratio(1, d);
                let other = basis.swapped(i, t).expect("gap >= 2 gives a tableau");
                let off = match kind {
                    Basis::Unnormalized if d >= 2 => S::one(),
                    Basis::Unnormalized => S::one() - b.clone() * b.clone(),
                    Basis::Orthonormal => (S::one() - b.clone() * b.clone())
                        .try_sqrt()
                        .ok_or_else(|| Error::NotRepresentable(format!("sqrt(1 - 1/{})", d * d)))?,
                };
                m.set(t, t, b);
                m.set(other, t, off);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rep(parts: &[usize]) -> Representation<BigRational> {
        Representation::for_shape(&Partition::new(parts.to_vec()).unwrap(), Basis::Unnormalized).unwrap()
    }

    #[test]
    fn two_one_simple_reflections() {
        let r = rep(&[2, 1]);
        let s1 = r.simple(1).unwrap();
        assert_eq!(*s1.get(0, 0), BigRational::from_ratio(1, 2));
        assert_eq!(*s1.get(1, 0), BigRational::from_i64(1));
        assert_eq!(*s1.get(0, 1), BigRational::from_ratio(3, 4));
        let s2 = r.simple(2).unwrap();
        assert_eq!(*s2.get(0, 0), BigRational::from_i64(-1));
        assert_eq!(*s2.get(1, 1), BigRational::from_i64(1));
        assert!(r.simple(3).is_err());
    }

    #[test]
    fn involutions_braids_and_central_element() {
        for n in 2..=6 {
            for shape in Partition::all_of(n) {
                let r = Representation::<BigRational>::for_shape(&shape, Basis::Unnormalized).unwrap();
                for i in 1..n {
                    let s = r.simple(i).unwrap();
                    assert!((s * s).is_identity());
                    if i + 1 < n {
                        let t = r.simple(i + 1).unwrap();
                        assert_eq!(&(s * t) * s, &(t * s) * t);
                    }
                    for j in i + 2..n {
                        let t = r.simple(j).unwrap();
                        assert_eq!(s * t, t * s);
                    }
                }
                let mut central = SquareMatrix::zeros(r.dim());
                for i in 1..=n {
                    let jm = r.jucys_murphy(i).unwrap();
                    for t in 0..r.dim() {
                        assert_eq!(*jm.get(t, t), BigRational::from_i64(r.basis().content(i, t)));
                    }
                    central = central.add(&jm);
                }
                assert_eq!(central, SquareMatrix::identity(r.dim()).scale(&BigRational::from_i64(shape.content_sum())));
            }
        }
    }

    #[test]
    fn word_is_a_homomorphism() {
        let r = rep(&[3, 1]);
        let w0 = Permutation::long_cycle(4);
        assert!(r.word(&w0.pow(4)).unwrap().is_identity());
        let m = r.long_cycle();
        let m4 = (0..4).fold(SquareMatrix::identity(r.dim()), |acc, _| &acc * &m);
        assert!(m4.is_identity());
        for a in Permutation::all(4) {
            for b in Permutation::all(4).iter().step_by(5) {
                let lhs = r.word(&(&a * b)).unwrap();
                let rhs = &*r.word(&a).unwrap() * &*r.word(b).unwrap();
                assert_eq!(*lhs, rhs);
            }
        }
    }

    #[test]
    fn orthonormal_matrices_are_orthogonal() {
        for shape in Partition::all_of(5) {
            let r = Representation::<f64>::for_shape(&shape, Basis::Orthonormal).unwrap();
            for w in Permutation::all(5).iter().step_by(7) {
                let m = r.word(w).unwrap();
                let prod = &m.transpose() * &m;
                assert!(prod.max_abs_diff(&SquareMatrix::identity(r.dim())) < 1e-12);
            }
        }
    }

    #[test]
    fn trace_of_last_transposition() {
        for shape in Partition::all_of(6) {
            let r = rep(shape.parts());
            let n = 6i64;
            let nt = r.dim() as i64;
            let tr = r.transposition(5, 6).unwrap().trace();
            // n_τ − 2 m_τ with m_τ = n_τ (1/2 − S_1/(N(N−1)))
            let expect = BigRational::from_ratio(2 * nt * shape.content_sum(), n * (n - 1));
            assert_eq!(tr, expect);
        }
    }

    #[test]
    fn exact_orthonormal_fails_on_irrational_entries() {
        let shape = Partition::new(vec![2, 1]).unwrap();
        assert!(Representation::<BigRational>::for_shape(&shape, Basis::Orthonormal).is_err());
    }
}
