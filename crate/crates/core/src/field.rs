//! Prime-field scalars, dense matrices, and subspaces kept in reduced
//! row-echelon form.
//!
//! Vectors are plain `Vec<u32>` with entries in `0..p`. Matrices act on
//! column vectors: entry `(i, j)` of `X` is the coefficient of `e_i` in
//! `X e_j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

const MAX_CHARACTERISTIC: u32 = 1 << 16;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub const fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `acc += c * v`, entrywise.
    #[inline]
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(c, x));
        }
    }

    /// Rescales a nonzero vector so that its first nonzero entry is 1.
    pub fn normalize(self, v: &mut [u32]) {
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let inv = self.inv(lead).expect("nonzero lead");
            for x in v.iter_mut() {
                *x = self.mul(*x, inv);
            }
        }
    }

    /// Base-`p` index of a vector, least significant entry first.
    pub fn encode(self, v: &[u32]) -> u64 {
        v.iter().rev().fold(0u64, |acc, &x| acc * self.p as u64 + x as u64)
    }

    pub fn decode(self, mut index: u64, len: usize) -> Vec<u32> {
        let mut v = vec![0u32; len];
        for x in v.iter_mut() {
            *x = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        v
    }

    /// All vectors of `F_p^len` whose first nonzero entry is 1, in increasing
    /// [`encode`](Self::encode) order.
    pub fn normalized_vectors(self, len: usize) -> Vec<Vec<u32>> {
        let total = crate::budget::checked_pow(self.p as u128, len) as u64;
        (1..total)
            .map(|i| self.decode(i, len))
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .collect()
    }
}

/// Brings `rows` into reduced row-echelon form in place, drops zero rows and
/// returns the pivot columns.
pub fn row_reduce(fp: Fp, rows: &mut Vec<Vec<u32>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = fp.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = fp.neg(row[c]);
                fp.axpy(row, f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Dense matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    fp: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(fp: Fp, rows: usize, cols: usize) -> Self {
        Matrix { fp, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = Self::zeros(fp, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, rejecting entries that are not reduced.
    pub fn from_rows(fp: Fp, rows: usize, cols: usize, entries: &[Vec<u64>]) -> Result<Self, Error> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(alloc::format!("expected a {rows}x{cols} matrix")));
        }
        let mut m = Self::zeros(fp, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= fp.modulus() as u64 {
                    return Err(Error::UnreducedEntry { value: v, p: fp.modulus() });
                }
                m.set(i, j, v as u32);
            }
        }
        Ok(m)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(fp: Fp, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(fp, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let fp = self.fp;
        let mut out = Matrix::zeros(fp, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                fp.axpy(dst, a, orow);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let fp = self.fp;
        let mut out = vec![0u32; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if a != 0 {
                    *o = fp.add(*o, fp.mul(a, x));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.fp.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.fp.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.fp.mul(*a, c);
        }
        out
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.fp.axpy(&mut self.data, c, &other.data);
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.fp, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.fp, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        row_reduce(self.fp, &mut rows, self.cols).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_zero()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = row_reduce(self.fp, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.fp, n, n);
        for (i, row) in rows.iter().enumerate().take(n) {
            for j in 0..n {
                inv.set(i, j, row[n + j]);
            }
        }
        Some(inv)
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let fp = self.fp;
        let mut rows = self.to_rows();
        let pivots = row_reduce(fp, &mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = fp.neg(row[free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vec<u32>> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::span(self.fp, self.rows, cols)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.fp, self.cols, self.nullspace())
    }

    pub fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.fp, b.fp);
        let mut out = Matrix::zeros(a.fp, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j));
            }
        }
        out
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(fp: Fp, cols: usize, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(fp, rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.data[r * cols..(r + b.rows) * cols].copy_from_slice(&b.data);
            r += b.rows;
        }
        out
    }
}

/// A linear subspace of `F_p^n` with a canonical basis: the nonzero rows of
/// its reduced row-echelon form. Equality, ordering and hashing are
/// therefore equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    fp: Fp,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(fp: Fp, ambient: usize) -> Self {
        Subspace { fp, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(fp: Fp, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { fp, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span<I>(fp: Fp, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut rows: Vec<Vec<u32>> = vectors.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = row_reduce(fp, &mut rows, ambient);
        Subspace { fp, ambient, basis: rows, pivots }
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                self.fp.axpy(&mut r, self.fp.neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut r = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&coords) {
            self.fp.axpy(&mut r, self.fp.neg(c), row);
        }
        r.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.fp, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Basis of the functionals vanishing on the subspace.
    pub fn annihilator(&self) -> Vec<Vec<u32>> {
        if self.basis.is_empty() {
            return Subspace::full(self.fp, self.ambient).basis;
        }
        let rows: Vec<Vec<u64>> = self.basis.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
        Matrix::from_rows(self.fp, rows.len(), self.ambient, &rows)
            .expect("reduced entries")
            .nullspace()
    }

    /// Matrix whose rows are the annihilating functionals.
    pub fn annihilator_matrix(&self) -> Matrix {
        let ann = self.annihilator();
        let mut m = Matrix::zeros(self.fp, ann.len(), self.ambient);
        for (i, f) in ann.iter().enumerate() {
            for (j, &x) in f.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.fp, self.ambient);
        }
        // w = sum_j beta_j w_j with A w = 0 for the annihilator A of self.
        let ann = self.annihilator_matrix();
        if ann.rows() == 0 {
            return other.clone();
        }
        let w = Matrix::from_columns(self.fp, self.ambient, &other.basis);
        let betas = ann.mul(&w).nullspace();
        let vectors = betas.into_iter().map(|beta| w.apply(&beta));
        Subspace::span(self.fp, self.ambient, vectors)
    }

    /// `A(U)` for a linear map `A` out of the ambient space.
    pub fn image(&self, a: &Matrix) -> Subspace {
        Subspace::span(self.fp, a.rows(), self.basis.iter().map(|v| a.apply(v)))
    }

    /// `{v : A v ∈ self}` for a linear map `A` into the ambient space.
    pub fn preimage(&self, a: &Matrix) -> Subspace {
        let ann = self.annihilator_matrix();
        if ann.rows() == 0 {
            return Subspace::full(self.fp, a.cols());
        }
        ann.mul(a).kernel()
    }

    /// Columns not used as pivots; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// True when the subspace is spanned by standard basis vectors.
    pub fn is_coordinate(&self) -> bool {
        self.basis.iter().all(|row| row.iter().filter(|&&x| x != 0).count() == 1)
    }
}
