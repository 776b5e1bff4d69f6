//! Square matrices over the boolean semiring `({0,1}, max, min)`.
//!
//! Rows are stored as packed bit vectors, most-significant bit first, so that
//! comparing the backing words in order is the same as comparing the matrices
//! row by row as `0`/`1` strings. That gives the canonical total order used to
//! key state sets during enumeration and search.

use std::fmt;

use smallvec::SmallVec;

use crate::error::MatrixError;

const WORD_BITS: usize = 64;

type Words = SmallVec<[u64; 8]>;

#[inline]
fn words_per_row(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
fn bit(col: usize) -> (usize, u64) {
    (col / WORD_BITS, 1u64 << (WORD_BITS - 1 - col % WORD_BITS))
}

/// An `n x n` boolean matrix. Accessors take 0-based indices; call pairs and
/// conference sets (which are labels, not offsets) are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatrix {
    n: usize,
    words: Words,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        BoolMatrix {
            n,
            words: SmallVec::from_elem(0, n * words_per_row(n)),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones matrix, written `1` in block diagrams.
    pub fn ones(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::RaggedRow {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(MatrixError::NotBoolean {
                            row: i + 1,
                            value: other,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn wpr(&self) -> usize {
        words_per_row(self.n)
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        let w = self.wpr();
        &self.words[i * w..(i + 1) * w]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        let w = self.wpr();
        &mut self.words[i * w..(i + 1) * w]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        let (w, mask) = bit(j);
        self.row_words(i)[w] & mask != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let (w, mask) = bit(j);
        let word = &mut self.row_words_mut(i)[w];
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_dims(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Semiring product: entry `(i,j)` is the maximum over `k` of
    /// `a(i,k) * b(k,j)`. Each result row is the OR of the rows of `other`
    /// selected by the set bits of the corresponding row of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dims(other)?;
        let n = self.n;
        let wpr = self.wpr();
        let mut out = Self::zeros(n);
        for i in 0..n {
            let left = self.row_words(i);
            let dst_start = i * wpr;
            for (wi, &word) in left.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let lz = bits.leading_zeros() as usize;
                    bits &= !(1u64 << (WORD_BITS - 1 - lz));
                    let k = wi * WORD_BITS + lz;
                    let src = other.row_words(k);
                    for (d, s) in out.words[dst_start..dst_start + wpr].iter_mut().zip(src) {
                        *d |= *s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise order `a <= b`.
    pub fn leq(&self, other: &Self) -> Result<bool, MatrixError> {
        self.check_dims(other)?;
        Ok(self.leq_unchecked(other))
    }

    #[inline]
    pub(crate) fn leq_unchecked(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Strict order: `a <= b` and `a != b`.
    pub fn lt(&self, other: &Self) -> Result<bool, MatrixError> {
        Ok(self.leq(other)? && self != other)
    }

    /// Entrywise maximum.
    pub fn join(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (d, s) in out.words.iter_mut().zip(other.words.iter()) {
            *d |= *s;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Right multiplication by the call matrix `C[i,j]` (0-based): columns
    /// `i` and `j` are both replaced by their entrywise maximum.
    pub fn merge_columns(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.merge_columns_in_place(i, j);
        out
    }

    pub(crate) fn merge_columns_in_place(&mut self, i: usize, j: usize) {
        let (wi, mi) = bit(i);
        let (wj, mj) = bit(j);
        let wpr = self.wpr();
        if wi == wj {
            let both = mi | mj;
            for r in 0..self.n {
                let w = &mut self.words[r * wpr + wi];
                if *w & both != 0 {
                    *w |= both;
                }
            }
        } else {
            for r in 0..self.n {
                let base = r * wpr;
                if self.words[base + wi] & mi != 0 || self.words[base + wj] & mj != 0 {
                    self.words[base + wi] |= mi;
                    self.words[base + wj] |= mj;
                }
            }
        }
    }

    /// Left multiplication by the call matrix `C[i,j]` (0-based): rows `i`
    /// and `j` are both replaced by their entrywise maximum.
    pub fn merge_rows(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.merge_rows_in_place(i, j);
        out
    }

    pub(crate) fn merge_rows_in_place(&mut self, i: usize, j: usize) {
        let wpr = self.wpr();
        for w in 0..wpr {
            let joined = self.words[i * wpr + w] | self.words[j * wpr + w];
            self.words[i * wpr + w] = joined;
            self.words[j * wpr + w] = joined;
        }
    }

    /// True iff columns `i` and `j` (0-based) are equal, i.e. merging them is a no-op.
    pub(crate) fn columns_equal(&self, i: usize, j: usize) -> bool {
        (0..self.n).all(|r| self.get(r, i) == self.get(r, j))
    }

    pub(crate) fn rows_equal(&self, i: usize, j: usize) -> bool {
        self.row_words(i) == self.row_words(j)
    }

    /// Copies `block` into this matrix with its top-left corner at `(row, col)`.
    pub fn put_block(&mut self, row: usize, col: usize, block: &BoolMatrix) {
        self.put_rect(row, col, block.n, block.n, |i, j| block.get(i, j));
    }

    /// Fills the `rows x cols` rectangle at `(row, col)` from `f`.
    pub fn put_rect(
        &mut self,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> bool,
    ) {
        for i in 0..rows {
            for j in 0..cols {
                self.set(row + i, col + j, f(i, j));
            }
        }
    }

    /// The square sub-block with top-left corner `(start, start)`.
    pub fn diagonal_block(&self, start: usize, size: usize) -> BoolMatrix {
        BoolMatrix::from_fn(size, |i, j| self.get(start + i, start + j))
    }

    /// True iff every entry in the `rows x cols` rectangle at `(row, col)` satisfies `f`.
    pub fn rect_all(
        &self,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize, bool) -> bool,
    ) -> bool {
        (0..rows).all(|i| (0..cols).all(|j| f(i, j, self.get(row + i, col + j))))
    }

    /// Rows rendered as `0`/`1` strings.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix[{}]", self.row_strings().join("/"))
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(row)?;
        }
        Ok(())
    }
}
