//! Dense exact linear algebra over prime fields, plus integer ranks.
//!
//! Matrices act on column vectors. Over GF(2) row reduction runs on
//! bit-packed rows; every other prime uses a plain residue kernel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if p < (1 << 16) && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p as u64 - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMat(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FieldMat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FieldMat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FieldMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len(), "entry count does not match shape");
        let data = data.into_iter().map(|x| x % p).collect();
        FieldMat { p, rows, cols, data }
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FieldMat { p, rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(p: u32, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    detail: format!("row {i} has {} entries, expected {cols}", r.len()),
                });
            }
            data.extend(r.iter().map(|x| x % p));
        }
        Ok(FieldMat {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i] % p;
            }
        }
        m
    }

    pub fn column_vector(p: u32, v: &[u32]) -> Self {
        Self::from_vec(p, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> FieldMat {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMat) -> FieldMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.p, other.p, "matrix product over different fields");
        let p = self.p as u64;
        let n = other.cols;
        let mut out = Self::zeros(self.p, self.rows, n);
        let mut acc = vec![0u64; n];
        // reduce only when the accumulator could overflow
        let flush = (u64::MAX / ((p - 1).max(1) * (p - 1).max(1)) - 1).min(1 << 20) as usize;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                pending += 1;
                if pending >= flush {
                    acc.iter_mut().for_each(|a| *a %= p);
                    pending = 0;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * n + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    s = (s + *a as u64 * *b as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FieldMat) -> FieldMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        FieldMat { data, ..*self }
    }

    pub fn sub(&self, other: &FieldMat) -> FieldMat {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "difference shape mismatch"
        );
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        FieldMat { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FieldMat {
        let p = self.p;
        let c = c % p;
        let data = self.data.iter().map(|&a| mul_mod(a, c, p)).collect();
        FieldMat { data, ..*self }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &FieldMat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "axpy shape mismatch");
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = add_mod(*a, mul_mod(c, b, p), p);
        }
    }

    /// Linear combination `sum coeffs[i] * mats[i]`.
    pub fn combination(p: u32, rows: usize, cols: usize, coeffs: &[u32], mats: &[FieldMat]) -> FieldMat {
        let mut out = Self::zeros(p, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(*c, m);
        }
        out
    }

    pub fn trace(&self) -> u32 {
        let p = self.p;
        (0..self.rows.min(self.cols)).fold(0, |s, i| add_mod(s, self.get(i, i), p))
    }

    pub fn pow(&self, mut e: u64) -> FieldMat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn hstack(p: u32, rows: usize, blocks: &[&FieldMat]) -> FieldMat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(p: u32, cols: usize, blocks: &[&FieldMat]) -> FieldMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        FieldMat { p, rows, cols, data }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(p: u32, blocks: &[&FieldMat]) -> FieldMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FieldMat) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FieldMat {
        Self::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> FieldMat {
        Self::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> FieldMat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FieldMat {
            p: self.p,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &FieldMat) -> FieldMat {
        let p = self.p;
        let mut out = Self::zeros(p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * out.cols + j * other.cols + l] = mul_mod(a, other.get(k, l), p);
                    }
                }
            }
        }
        out
    }

    /// Flatten row-major into a single column.
    pub fn vectorize(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn unvectorize(p: u32, rows: usize, cols: usize, v: &[u32]) -> FieldMat {
        Self::from_vec(p, rows, cols, v.to_vec())
    }

    pub fn rref(&self) -> Rref {
        if self.p == 2 {
            rref_gf2(self)
        } else {
            rref_generic(self)
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the null space.
    pub fn kernel_basis(&self) -> FieldMat {
        let r = self.rref();
        kernel_from_rref(&r, self.cols)
    }

    /// Solves `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &FieldMat) -> Result<Option<FieldMat>> {
        if self.rows != b.rows {
            return Err(Error::ShapeMismatch {
                op: "solve",
                detail: format!("a has {} rows, b has {}", self.rows, b.rows),
            });
        }
        let n = self.cols;
        let aug = FieldMat::hstack(self.p, self.rows, &[self, b]);
        let r = aug.rref();
        if r.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = FieldMat::zeros(self.p, n, b.cols);
        for (row, &c) in r.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = r.reduced.get(row, n + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FieldMat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = FieldMat::hstack(self.p, n, &[self, &FieldMat::identity(self.p, n)]);
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of a maximal independent set of columns (leftmost greedy).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// A basis (as columns) of the column space, drawn from the original columns.
    pub fn column_space(&self) -> FieldMat {
        let piv = self.independent_columns();
        self.select_cols(&piv)
    }
}

fn kernel_from_rref(r: &Rref, cols: usize) -> FieldMat {
    let p = r.reduced.p;
    let mut is_pivot = vec![false; cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = FieldMat::zeros(p, cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.data[f * free.len() + j] = 1 % p;
        for (row, &c) in r.pivots.iter().enumerate() {
            let v = r.reduced.get(row, f);
            k.data[c * free.len() + j] = neg_mod(v, p);
        }
    }
    k
}

fn rref_generic(m: &FieldMat) -> Rref {
    let p = m.p;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u32]| {
            let f = row[c];
            if f != 0 {
                let nf = (p - f) as u64;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + nf * prow[j] as u64) % p as u64) as u32;
                }
            }
        };
        for row in before.chunks_mut(cols) {
            eliminate(row);
        }
        for row in after.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: FieldMat { p, rows, cols, data: a },
        pivots,
    }
}

fn rref_gf2(m: &FieldMat) -> Rref {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64);
    let mut bits = vec![0u64; rows * words];
    for i in 0..rows {
        for j in 0..cols {
            if m.data[i * cols + j] & 1 == 1 {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| bits[i * words + w] & b != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..words {
                bits.swap(pr * words + k, r * words + k);
            }
        }
        let prow: Vec<u64> = bits[r * words..(r + 1) * words].to_vec();
        for i in 0..rows {
            if i != r && bits[i * words + w] & b != 0 {
                for k in w..words {
                    bits[i * words + k] ^= prow[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut data = vec![0u32; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            data[i * cols + j] = ((bits[i * words + j / 64] >> (j % 64)) & 1) as u32;
        }
    }
    Rref {
        reduced: FieldMat { p: 2, rows, cols, data },
        pivots,
    }
}

/// Coordinates with respect to a fixed set of independent columns.
#[derive(Clone, Debug)]
pub struct ColumnBasis {
    basis: FieldMat,
    pivot_rows: Vec<usize>,
    inv: FieldMat,
}

impl ColumnBasis {
    /// `basis` must have independent columns.
    pub fn new(basis: FieldMat) -> Self {
        let t = basis.transpose().rref();
        assert_eq!(t.rank(), basis.cols(), "ColumnBasis requires independent columns");
        let pivot_rows = t.pivots;
        let inv = basis
            .select_rows(&pivot_rows)
            .inverse()
            .expect("pivot rows of an independent column set are invertible");
        ColumnBasis { basis, pivot_rows, inv }
    }

    /// Basis of the span of arbitrary columns.
    pub fn spanning(m: &FieldMat) -> Self {
        Self::new(m.column_space())
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FieldMat {
        &self.basis
    }

    /// Coordinates of `v`, assumed in the span.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let sel: Vec<u32> = self.pivot_rows.iter().map(|&i| v[i]).collect();
        self.inv.mul_vec(&sel)
    }

    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(v);
        if self.basis.mul_vec(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of every column of `m`; `None` if some column leaves the span.
    pub fn coords_matrix(&self, m: &FieldMat) -> Option<FieldMat> {
        let sel = m.select_rows(&self.pivot_rows);
        let c = self.inv.mul(&sel);
        if self.basis.mul(&c) == *m {
            Some(c)
        } else {
            None
        }
    }
}

/// Sum of two column spaces, as independent columns.
pub fn span_sum(p: u32, a: &FieldMat, b: &FieldMat) -> FieldMat {
    FieldMat::hstack(p, a.rows(), &[a, b]).column_space()
}

/// Intersection of the column spaces of `a` and `b` (both with independent columns).
pub fn intersection(p: u32, a: &FieldMat, b: &FieldMat) -> FieldMat {
    let n = a.rows();
    let stacked = FieldMat::hstack(p, n, &[a, &b.scale(p - 1)]);
    let k = stacked.kernel_basis();
    let top = k.block(0, 0, a.cols(), k.cols());
    a.mul(&top).column_space()
}

/// Extends independent columns `sub` to a basis of the ambient space; returns only the added columns.
pub fn complement(p: u32, sub: &FieldMat) -> FieldMat {
    let n = sub.rows();
    let aug = FieldMat::hstack(p, n, &[sub, &FieldMat::identity(p, n)]);
    let piv: Vec<usize> = aug
        .independent_columns()
        .into_iter()
        .filter(|&c| c >= sub.cols())
        .collect();
    aug.select_cols(&piv)
}

/// Integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend_from_slice(r);
        }
        IntMat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Rank over the rationals, by fraction-free elimination with gcd normalisation.
pub fn integer_rank(m: &IntMat) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pr) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let g = pivot_row[c].clone();
            let mut content = BigInt::zero();
            for j in c..m.cols {
                row[j] = &row[j] * &g - &f * &pivot_row[j];
                content = content.gcd(&row[j]);
            }
            if !content.is_zero() && content.abs() != BigInt::from(1) {
                for x in row.iter_mut().skip(c) {
                    *x = &*x / &content;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u32, rows: &[&[u32]]) -> FieldMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        FieldMat::from_rows(p, &v, cols).unwrap()
    }

    #[test]
    fn rref_identity_gf2() {
        let id = FieldMat::identity(2, 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn rref_equal_rows() {
        let a = m(2, &[&[1, 1], &[1, 1]]);
        let r = a.rref();
        assert_eq!(r.reduced, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn rref_empty() {
        let a = FieldMat::zeros(3, 0, 4);
        let r = a.rref();
        assert_eq!(r.reduced, a);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rref_mod5() {
        let a = m(5, &[&[2, 4, 1], &[1, 2, 4]]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.reduced, m(5, &[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn solve_cases() {
        let b = m(3, &[&[2, 1], &[0, 1]]);
        assert_eq!(FieldMat::identity(3, 2).solve(&b).unwrap(), Some(b.clone()));
        let a = m(2, &[&[1, 1]]);
        let x = a.solve(&m(2, &[&[1]])).unwrap().unwrap();
        assert_eq!(x, m(2, &[&[1], &[0]]));
        let z = FieldMat::zeros(2, 2, 2);
        assert_eq!(z.solve(&m(2, &[&[1], &[0]])).unwrap(), None);
        assert!(matches!(
            z.solve(&FieldMat::zeros(2, 3, 1)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(FieldMat::identity(2, 4).kernel_basis().cols(), 0);
        let k = m(2, &[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, m(2, &[&[1], &[1]]));
        let k = FieldMat::zeros(2, 3, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn integer_rank_cases() {
        let id = IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(integer_rank(&id), 3);
        assert_eq!(integer_rank(&IntMat::from_rows(&[vec![2], vec![4]])), 1);
        assert_eq!(integer_rank(&IntMat::zeros(3, 4)), 0);
        // rank 2 over Q but rank 1 mod 2
        let a = IntMat::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(integer_rank(&a), 2);
    }

    #[test]
    fn inverse_and_column_basis() {
        let a = m(7, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
        let b = m(3, &[&[1, 0], &[1, 1], &[0, 2]]);
        let cb = ColumnBasis::new(b.clone());
        let v = b.mul_vec(&[2, 1]);
        assert_eq!(cb.coords(&v), Some(vec![2, 1]));
        assert_eq!(cb.coords(&[1, 0, 0]), None);
    }

    #[test]
    fn intersection_and_complement() {
        let p = 2;
        let a = m(p, &[&[1, 0], &[0, 1], &[0, 0]]);
        let b = m(p, &[&[0, 0], &[1, 0], &[0, 1]]);
        let i = intersection(p, &a, &b);
        assert_eq!(i.cols(), 1);
        assert_eq!(i.col(0), vec![0, 1, 0]);
        let c = complement(p, &a);
        assert_eq!(c.cols(), 1);
        assert_eq!(span_sum(p, &a, &c).cols(), 3);
    }

    fn arb_mat(p: u32) -> impl Strategy<Value = FieldMat> {
        (0usize..=12, 0usize..=12).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| FieldMat::from_vec(p, r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_gf2(a in arb_mat(2)) {
            prop_assert_eq!(a.rank() + a.kernel_basis().cols(), a.cols());
            prop_assert!(a.mul(&a.kernel_basis()).is_zero());
        }

        #[test]
        fn rank_nullity_gf3(a in arb_mat(3)) {
            prop_assert_eq!(a.rank() + a.kernel_basis().cols(), a.cols());
            prop_assert!(a.mul(&a.kernel_basis()).is_zero());
        }

        #[test]
        fn rref_idempotent(a in arb_mat(3)) {
            let r = a.rref().reduced;
            prop_assert_eq!(r.rref().reduced, r);
        }

        #[test]
        fn gf2_packed_matches_generic(a in arb_mat(2)) {
            prop_assert_eq!(rref_gf2(&a), rref_generic(&a));
        }

        #[test]
        fn solve_reproduces_rhs(a in arb_mat(3), seed in 0u32..1000) {
            let b = FieldMat::from_fn(3, a.rows(), 2, |i, j| (i as u32 * 7 + j as u32 * 3 + seed) % 3);
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul(&x), b);
            }
        }
    }
}
