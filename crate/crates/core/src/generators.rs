//! Call matrices, conference call matrices and words over the call generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::MatrixError;
use crate::matrix::BoolMatrix;

/// An unordered pair of distinct 1-based indices, stored with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CallPair {
    i: usize,
    j: usize,
}

impl CallPair {
    pub fn new(a: usize, b: usize) -> Result<Self, MatrixError> {
        if a == 0 || b == 0 {
            return Err(MatrixError::IndexOutOfRange {
                index: 0,
                n: a.max(b),
            });
        }
        if a == b {
            return Err(MatrixError::DegenerateCall(a));
        }
        Ok(CallPair {
            i: a.min(b),
            j: a.max(b),
        })
    }

    #[inline]
    pub fn i(self) -> usize {
        self.i
    }

    #[inline]
    pub fn j(self) -> usize {
        self.j
    }

    /// 0-based `(i, j)` for matrix accessors.
    #[inline]
    pub fn zero_based(self) -> (usize, usize) {
        (self.i - 1, self.j - 1)
    }

    pub fn contains(self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub(crate) fn check(self, n: usize) -> Result<(), MatrixError> {
        if self.j > n {
            Err(MatrixError::IndexOutOfRange { index: self.j, n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for CallPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Display for CallPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.i, self.j)
    }
}

/// All calls on `n` nodes in lexicographic order.
pub fn all_calls(n: usize) -> Vec<CallPair> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(CallPair { i, j });
        }
    }
    out
}

/// The adjacent calls `(i, i+1)` generating the double Catalan monoid.
pub fn adjacent_calls(n: usize) -> Vec<CallPair> {
    (1..n).map(|i| CallPair { i, j: i + 1 }).collect()
}

/// A subset of `{1..n}`, 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConferenceSet(BTreeSet<usize>);

impl ConferenceSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        ConferenceSet(members.into_iter().collect())
    }

    pub fn full(n: usize) -> Self {
        Self::new(1..=n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn check(&self, n: usize) -> Result<(), MatrixError> {
        match self.0.iter().find(|&&v| v == 0 || v > n) {
            Some(&index) => Err(MatrixError::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

/// `C[i,j]`: the identity plus ones at `(i,j)` and `(j,i)`.
pub fn call_matrix(n: usize, p: CallPair) -> Result<BoolMatrix, MatrixError> {
    p.check(n)?;
    let (i, j) = p.zero_based();
    let mut m = BoolMatrix::identity(n);
    m.set(i, j, true);
    m.set(j, i, true);
    Ok(m)
}

/// `C[S]`: the identity plus an all-ones block on `S x S`.
pub fn conference_matrix(n: usize, s: &ConferenceSet) -> Result<BoolMatrix, MatrixError> {
    s.check(n)?;
    let mut m = BoolMatrix::identity(n);
    for a in s.iter() {
        for b in s.iter() {
            m.set(a - 1, b - 1, true);
        }
    }
    Ok(m)
}

/// Reflexive, symmetric and transitive. These are exactly the idempotents of
/// the gossip monoid.
pub fn is_equivalence_matrix(a: &BoolMatrix) -> bool {
    let n = a.dim();
    let reflexive = (0..n).all(|i| a.get(i, i));
    reflexive && *a == a.transpose() && a.mul(a).map(|sq| sq.leq_unchecked(a)).unwrap_or(false)
}

/// A word over the call generators. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CallSequence(Vec<CallPair>);

impl CallSequence {
    pub fn new() -> Self {
        CallSequence(Vec::new())
    }

    pub fn calls(&self) -> &[CallPair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, p: CallPair) {
        self.0.push(p);
    }

    pub fn extend(&mut self, other: &CallSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = CallPair> + '_ {
        self.0.iter().copied()
    }

    /// Largest index mentioned, 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|p| p.j).max().unwrap_or(0)
    }

    pub fn check(&self, n: usize) -> Result<(), MatrixError> {
        self.0.iter().try_for_each(|p| p.check(n))
    }

    /// `m` times the product of the word, i.e. the calls applied in order as
    /// column merges.
    pub fn apply_right(&self, m: &BoolMatrix) -> Result<BoolMatrix, MatrixError> {
        self.check(m.dim())?;
        let mut out = m.clone();
        for p in &self.0 {
            let (i, j) = p.zero_based();
            out.merge_columns_in_place(i, j);
        }
        Ok(out)
    }

    /// The product of the word times `m`.
    pub fn apply_left(&self, m: &BoolMatrix) -> Result<BoolMatrix, MatrixError> {
        self.check(m.dim())?;
        let mut out = m.clone();
        for p in self.0.iter().rev() {
            let (i, j) = p.zero_based();
            out.merge_rows_in_place(i, j);
        }
        Ok(out)
    }

    /// The product of the word as an element of `B_n`.
    pub fn product(&self, n: usize) -> Result<BoolMatrix, MatrixError> {
        self.apply_right(&BoolMatrix::identity(n))
    }

    /// Relabels every index through `map` (1-based in, 1-based out).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<CallSequence, MatrixError> {
        self.0
            .iter()
            .map(|p| CallPair::new(map(p.i), map(p.j)))
            .collect()
    }

    pub fn reversed(&self) -> CallSequence {
        CallSequence(self.0.iter().rev().copied().collect())
    }
}

impl FromIterator<CallPair> for CallSequence {
    fn from_iter<T: IntoIterator<Item = CallPair>>(iter: T) -> Self {
        CallSequence(iter.into_iter().collect())
    }
}

impl From<Vec<CallPair>> for CallSequence {
    fn from(v: Vec<CallPair>) -> Self {
        CallSequence(v)
    }
}

/// Shorthand for building words in tests and examples; panics on a degenerate pair.
pub fn word(pairs: &[(usize, usize)]) -> CallSequence {
    pairs
        .iter()
        .map(|&(a, b)| CallPair::new(a, b).expect("valid call pair"))
        .collect()
}
