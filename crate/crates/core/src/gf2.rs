//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 entries per `u64` word. Matrices are stored row-major as a
//! list of row vectors. Elimination always takes the least available row as
//! pivot for the least column that still has one, so reduced forms and
//! particular solutions are deterministic and do not depend on packing.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    words: Vec<u64>,
    len: usize,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// Vector with ones exactly at `indices`. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Clears every bit that is set in `other`.
    pub fn and_not_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Flips every bit (within the logical length).
    pub fn complement(&self) -> GF2Vector {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &GF2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn intersects(&self, other: &GF2Vector) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// True when every bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &GF2Vector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "GF2Vector({s})")
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + tz);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// Incremental basis of a subspace, kept in echelon form by leading bit.
///
/// Used for rank-of-a-set queries, where building a matrix per call would be
/// wasteful.
#[derive(Clone, Debug)]
pub struct XorBasis {
    len: usize,
    // (pivot bit, reduced vector); every stored vector has a distinct pivot
    // and no other stored vector has that pivot set.
    rows: Vec<(usize, GF2Vector)>,
}

impl XorBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &GF2Vector) -> GF2Vector {
        debug_assert_eq!(v.len(), self.len);
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) if it was dependent.
    pub fn insert(&mut self, v: &GF2Vector) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}

/// Rank of a collection of equal-length vectors.
pub fn rank_of_vectors<'a, I>(len: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a GF2Vector>,
{
    let mut basis = XorBasis::new(len);
    for v in vectors {
        basis.insert(v);
        if basis.rank() == len {
            break;
        }
    }
    basis.rank()
}

/// A dense `rows × cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GF2Vector>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GF2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<GF2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[GF2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows written as strings of `0`/`1`, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row '{r}' has length {} but expected {cols}",
                    r.len()
                )));
            }
            let mut v = GF2Vector::zeros(cols);
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(j, true),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "character '{ch}' is not a GF(2) entry"
                        )))
                    }
                }
            }
            data.push(v);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &GF2Vector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[GF2Vector] {
        &self.data
    }

    pub fn column(&self, c: usize) -> GF2Vector {
        let mut v = GF2Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.get(c) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<GF2Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> GF2Matrix {
        GF2Matrix {
            rows: self.cols,
            cols: self.rows,
            data: self.columns(),
        }
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GF2Matrix {
        let mut m = GF2Matrix::zeros(self.rows, cols.len());
        for (i, row) in self.data.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if row.get(c) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Submatrix keeping the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> GF2Matrix {
        GF2Matrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &GF2Vector) -> Result<GF2Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = GF2Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// True when no two rows are equal.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.rows);
        self.data.iter().all(|r| seen.insert(r))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (GF2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| m.data[r].get(c)) else {
                continue;
            };
            m.data.swap(next_row, p);
            let pivot_row = m.data[next_row].clone();
            for r in 0..self.rows {
                if r != next_row && m.data[r].get(c) {
                    m.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(self.cols, &self.data)
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column (ascending).
    pub fn kernel_basis(&self) -> Vec<GF2Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = GF2Vector::zeros(self.cols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.data[i].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &GF2Vector) -> Result<Option<GF2Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = GF2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                aug.set(i, j, true);
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = GF2Vector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if r.data[i].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let s: String = (0..self.cols)
                .map(|j| if row.get(j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_incidence() -> GF2Matrix {
        // edges 12 13 14 23 24 34
        GF2Matrix::from_strs(&["111000", "100110", "010101", "001011"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GF2Matrix::identity(3).rank(), 3);
        assert_eq!(GF2Matrix::zeros(4, 6).rank(), 0);
        assert_eq!(k4_incidence().rank(), 3);
        assert_eq!(GF2Matrix::zeros(0, 5).rank(), 0);
        assert_eq!(GF2Matrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(GF2Matrix::identity(3).kernel_basis().is_empty());
        let one_one = GF2Matrix::from_strs(&["11"]).unwrap();
        assert_eq!(
            one_one.kernel_basis(),
            vec![GF2Vector::from_bits(&[true, true])]
        );
        let k4 = k4_incidence();
        let basis = k4.kernel_basis();
        assert_eq!(basis.len(), 3);
        for v in &basis {
            assert!(k4.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_examples() {
        let b = GF2Vector::from_bits(&[true, false, true]);
        assert_eq!(GF2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        let one_one = GF2Matrix::from_strs(&["11"]).unwrap();
        assert_eq!(
            one_one.solve(&GF2Vector::from_bits(&[true])).unwrap(),
            Some(GF2Vector::from_bits(&[true, false]))
        );
        let z = GF2Matrix::zeros(2, 2);
        assert_eq!(
            z.solve(&GF2Vector::from_bits(&[true, false])).unwrap(),
            None
        );
        assert!(z.solve(&GF2Vector::zeros(3)).is_err());
    }

    #[test]
    fn vector_ops_across_word_boundary() {
        let mut v = GF2Vector::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.count_ones(), 4);
        assert_eq!(v.complement().count_ones(), 126);
        v.flip(64);
        assert!(!v.get(64));
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn xor_basis_tracks_span() {
        let mut b = XorBasis::new(3);
        assert!(b.insert(&GF2Vector::from_bits(&[true, true, false])));
        assert!(b.insert(&GF2Vector::from_bits(&[false, true, true])));
        assert!(!b.insert(&GF2Vector::from_bits(&[true, false, true])));
        assert_eq!(b.rank(), 2);
        assert!(!b.contains(&GF2Vector::from_bits(&[true, false, false])));
    }
}
