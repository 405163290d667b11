//! Dense bit-packed linear algebra over the two-element field.
//!
//! Everything downstream (differentials, multiplication tables, coproducts,
//! functionals) reduces to row operations on packed words, so this module is
//! the computational substrate for the whole crate.

use std::fmt;

use crate::error::Error;

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over F2, bit-packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, words: vec![0; words_for(len)] }
    }

    /// Standard basis vector with a single one at `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Parity of the pointwise product, i.e. the F2 inner product.
    pub fn dot(&self, other: &F2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD_BITS + b)
                }
            })
        })
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense matrix over F2 with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows, cols, data: vec![F2Vec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<F2Vec>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[F2Vec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i].flip(j);
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut c = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F2Vec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product `A·x`.
    pub fn mul_vec(&self, x: &F2Vec) -> F2Vec {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.data[i].dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// Matrix product `A·B`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = F2Vec::zeros(other.cols);
            for j in self.data[i].ones() {
                acc.xor_assign(&other.data[j]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, o) in out.data.iter_mut().zip(&other.data) {
            r.xor_assign(o);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    /// Solves `A·x = b`, returning one solution if the system is consistent.
    ///
    /// Free variables are set to zero.
    pub fn solve(&self, b: &F2Vec) -> Result<Option<F2Vec>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        // Eliminate on the augmented system, tracking pivot columns.
        let mut rows: Vec<(F2Vec, bool)> =
            self.data.iter().cloned().zip(b.ones().fold(vec![false; self.rows], |mut acc, i| {
                acc[i] = true;
                acc
            })).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index into `rows`, column)
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let (pivot_row, pivot_rhs) = rows[next].clone();
            for (r, (row, rhs)) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push((next, col));
            next += 1;
        }
        // Inconsistent if any zero row has a nonzero right-hand side.
        for (row, rhs) in rows.iter().skip(next) {
            if *rhs && row.is_zero() {
                return Ok(None);
            }
        }
        let mut x = F2Vec::zeros(self.cols);
        for &(r, col) in &pivots {
            if rows[r].1 {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// A basis of the kernel `{x : A·x = 0}`.
    pub fn kernel_basis(&self) -> Vec<F2Vec> {
        // Reduced echelon form, remembering pivot columns.
        let mut rows: Vec<F2Vec> = self.data.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(col);
            next += 1;
        }
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = F2Vec::unit(self.cols, free);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                if rows[r].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = BitMatrix::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, p);
            inv.swap(col, p);
            let (ar, ir) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && a[r].get(col) {
                    a[r].xor_assign(&ar);
                    inv[r].xor_assign(&ir);
                }
            }
        }
        Some(BitMatrix { rows: n, cols: n, data: inv })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally maintained row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_spanning(len: usize, vectors: &[F2Vec]) -> Self {
        let mut e = Self::new(len);
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[F2Vec] {
        &self.rows
    }

    /// Residual of `v` after reduction against the stored rows.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: F2Vec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(&v);
        match r.first_one() {
            None => false,
            Some(p) => {
                // Keep rows fully reduced against each other.
                for row in &mut self.rows {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                let pos = self.pivots.partition_point(|&q| q < p);
                self.rows.insert(pos, r);
                self.pivots.insert(pos, p);
                true
            }
        }
    }
}

/// Representatives completing `subspace` to a basis of `span(space)`, plus the
/// linear projection onto those representatives.
pub struct QuotientBasis {
    pub representatives: Vec<F2Vec>,
    /// Maps ambient coordinates to coordinates over `representatives`; its
    /// kernel restricted to `span(space)` is exactly `span(subspace)`.
    pub projection: BitMatrix,
}

/// Computes a quotient-space basis for `span(space) / span(subspace)`.
pub fn quotient_basis(space: &[F2Vec], subspace: &[F2Vec]) -> Result<QuotientBasis, Error> {
    let len = match space.first() {
        Some(v) => v.len(),
        None => subspace.first().map_or(0, F2Vec::len),
    };
    let space_ech = Echelon::from_spanning(len, space);
    for v in subspace {
        if !space_ech.contains(v) {
            return Err(Error::SubspaceNotContained);
        }
    }
    let mut ech = Echelon::from_spanning(len, subspace);
    let sub_rank = ech.rank();
    let mut representatives = Vec::new();
    for v in space {
        if ech.insert(v.clone()) {
            representatives.push(v.clone());
        }
    }
    // Complete to a full basis of the ambient space so the projection is total.
    let mut full = ech.clone();
    let mut extras = Vec::new();
    for i in 0..len {
        let u = F2Vec::unit(len, i);
        if full.insert(u.clone()) {
            extras.push(u);
        }
    }
    // An independent subset of the subspace vectors, then the representatives,
    // then the completion: inverting this basis gives the projection rows.
    let mut columns = Vec::new();
    let mut sub_ech = Echelon::new(len);
    for v in subspace {
        if sub_ech.insert(v.clone()) {
            columns.push(v.clone());
        }
    }
    debug_assert_eq!(columns.len(), sub_rank);
    columns.extend(representatives.iter().cloned());
    columns.extend(extras.iter().cloned());
    let change = BitMatrix::from_columns(&columns, len);
    let inv = change.inverse().expect("basis completion must be invertible");
    let mut proj_rows = Vec::new();
    for k in 0..representatives.len() {
        proj_rows.push(inv.row(sub_rank + k).clone());
    }
    let projection = BitMatrix::from_rows(proj_rows, len);
    Ok(QuotientBasis { representatives, projection })
}
