//! Exact scalar and dense-matrix arithmetic over the prime field F_p.
//!
//! Scalars are canonical residues `0..p-1` stored as `u32`. Everything here
//! is deterministic and allocation-straightforward; ranks at desk scale stay
//! small enough that dense Gaussian elimination is the right tool.

use crate::error::{Error, Result};

/// A sparse vector over F_p: strictly increasing indices, nonzero coefficients.
pub type SparseVec = Vec<(usize, u32)>;

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Canonical residue of a (possibly negative) integer.
    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

/// Sparse-vector helpers. Vectors are kept sorted by index with no zero entries.
pub mod sparse {
    use super::{PrimeField, SparseVec};

    pub fn from_dense(v: &[u32]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect()
    }

    pub fn to_dense(v: &SparseVec, len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for &(i, c) in v {
            out[i] = c;
        }
        out
    }

    /// acc += c * v, on a dense accumulator.
    pub fn add_scaled_into(f: &PrimeField, acc: &mut [u32], v: &SparseVec, c: u32) {
        if c == 0 {
            return;
        }
        for &(i, x) in v {
            acc[i] = f.add(acc[i], f.mul(c, x));
        }
    }

    pub fn scale(f: &PrimeField, v: &SparseVec, c: u32) -> SparseVec {
        if c == 0 {
            return Vec::new();
        }
        v.iter().map(|&(i, x)| (i, f.mul(c, x))).collect()
    }

    pub fn is_zero(v: &SparseVec) -> bool {
        v.is_empty()
    }
}

/// A dense matrix over F_p, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FpMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
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
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// y = M x.
    pub fn mul_vec(&self, f: &PrimeField, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0u32; self.rows];
        for (r, slot) in y.iter_mut().enumerate() {
            let mut acc = 0u64;
            let row = self.row(r);
            for (c, &xc) in x.iter().enumerate() {
                acc += row[c] as u64 * xc as u64;
            }
            *slot = (acc % f.p() as u64) as u32;
        }
        y
    }

    pub fn matmul(&self, f: &PrimeField, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find a pivot row
            let mut pr = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let factor = self.get(i, c);
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the null space { x : M x = 0 }, in RREF-canonical form.
    pub fn kernel(&self, f: &PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![0u32; self.cols];
            x[free] = 1;
            for (col, pr) in pivot_set.iter().enumerate() {
                if let Some(row) = pr {
                    x[col] = f.neg(m.get(*row, free));
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Solve M x = b; returns one solution if consistent.
    pub fn solve(&self, f: &PrimeField, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMat::zero(self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs);
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u32; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols);
        }
        Some(x)
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Incremental row-echelon accumulator, used for streamed rank computation
/// and span membership. Rows are kept fully reduced (RREF) so extracted
/// bases are canonical.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    /// (pivot column, row) sorted by pivot column.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the current rows, in place. Returns the first
    /// nonzero column of the residue, if any.
    fn reduce_in_place(&self, f: &PrimeField, v: &mut [u32]) -> Option<usize> {
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for j in *pc..self.width {
                    if row[j] != 0 {
                        v[j] = f.sub(v[j], f.mul(c, row[j]));
                    }
                }
            }
        }
        v.iter().position(|&x| x != 0)
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, f: &PrimeField, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.width);
        let Some(pivot) = self.reduce_in_place(f, &mut v) else {
            return false;
        };
        let inv = f.inv(v[pivot]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // back-substitute into existing rows to keep full RREF
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for j in pivot..self.width {
                    if v[j] != 0 {
                        row[j] = f.sub(row[j], f.mul(c, v[j]));
                    }
                }
            }
        }
        let pos = self.rows.partition_point(|(pc, _)| *pc < pivot);
        self.rows.insert(pos, (pivot, v));
        true
    }

    pub fn contains(&self, f: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(f, &mut w).is_none()
    }

    /// Coordinates of `v` in the echelon basis, if it lies in the span.
    pub fn coords_of(&self, f: &PrimeField, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        let mut coords = vec![0u32; self.rows.len()];
        for (k, (pc, row)) in self.rows.iter().enumerate() {
            let c = w[*pc];
            if c != 0 {
                coords[k] = c;
                for j in *pc..self.width {
                    if row[j] != 0 {
                        w[j] = f.sub(w[j], f.mul(c, row[j]));
                    }
                }
            }
        }
        if w.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(pc, _)| *pc).collect()
    }

    /// Null space of the stacked rows, RREF-canonical (same construction as
    /// [`FpMat::kernel`]).
    pub fn null_space(&self, f: &PrimeField) -> Vec<Vec<u32>> {
        let mut m = FpMat::zero(self.rows.len().max(1), self.width);
        for (r, (_, row)) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m.kernel(f)
    }
}
