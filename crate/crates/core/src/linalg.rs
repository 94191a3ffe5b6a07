//! Exact linear algebra over prime fields.
//!
//! Every [`Subspace`] is kept in reduced row-echelon form, so two subspaces
//! are equal exactly when their bases are equal.

use crate::error::{input, Result};
use crate::field::Prime;

/// Dense matrix with entries in `F_p`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: Prime,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: Prime) -> Self {
        Matrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: Prime) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<T: AsRef<[i64]>>(rows: &[T], cols: usize, p: Prime) -> Result<Self> {
        let mut m = Matrix::zeros(rows.len(), cols, p);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return input(format!("row {i} has length {}, expected {cols}", row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = p.reduce(x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.p != other.p {
            return input(format!(
                "cannot multiply {}x{} (mod {}) by {}x{} (mod {})",
                self.rows, self.cols, self.p, other.rows, other.cols, other.p
            ));
        }
        let p = self.p.get() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.p);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = a as u32;
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return input(format!("vector of length {} for {} columns", v.len(), self.cols));
        }
        let p = self.p.get() as u64;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
            })
            .collect())
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols, self.p);
        let mut m = Matrix::zeros(self.rows, self.cols, self.p);
        for (i, row) in rows.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(row);
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = self.p.neg(r.get(i, free));
            }
            vectors.push(v);
        }
        Subspace::span_of(self.cols, &vectors, self.p).expect("kernel vectors share the ambient dimension")
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// Gauss-Jordan elimination on `rows`; zero rows end up at the bottom.
fn rref_in_place(rows: &mut [Vec<u32>], cols: usize, p: Prime) -> Vec<usize> {
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
        let inv = p.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                eliminate(row, &pivot_row, factor, c, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `row -= factor * pivot_row`, touching only columns from `start` on.
#[inline]
fn eliminate(row: &mut [u32], pivot_row: &[u32], factor: u32, start: usize, p: Prime) {
    let f = p.neg(factor) as u64;
    let m = p.get() as u64;
    for (x, &y) in row[start..].iter_mut().zip(&pivot_row[start..]) {
        if y != 0 {
            *x = ((*x as u64 + f * y as u64) % m) as u32;
        }
    }
}

/// A linear subspace of `F_p^ambient` with a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    p: Prime,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, p: Prime) -> Self {
        Subspace { ambient, p, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize, p: Prime) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ambient, p, basis, pivots: (0..ambient).collect() }
    }

    /// Span of coordinate vectors (entries already reduced into `[0, p)`).
    pub fn span_of<T: AsRef<[u32]>>(ambient: usize, vectors: &[T], p: Prime) -> Result<Self> {
        let mut s = Subspace::zero(ambient, p);
        for v in vectors {
            s.insert(v.as_ref())?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient {
            return input(format!(
                "vector of length {} in a subspace of F_{}^{}",
                v.len(),
                self.p,
                self.ambient
            ));
        }
        if v.iter().any(|&x| x >= self.p.get()) {
            return input(format!("vector entries must be residues mod {}", self.p));
        }
        Ok(())
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w)
    }

    fn reduce_in_place(&self, w: &mut [u32]) {
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if w[c] != 0 {
                let factor = w[c];
                eliminate(w, row, factor, c, self.p);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> Result<bool> {
        let mut w = self.reduce(v)?;
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let inv = self.p.inv(w[c]);
        for x in w.iter_mut() {
            *x = self.p.mul(*x, inv);
        }
        for row in self.basis.iter_mut() {
            if row[c] != 0 {
                let f = row[c];
                eliminate(row, &w, f, 0, self.p);
            }
        }
        let at = self.pivots.partition_point(|&pc| pc < c);
        self.pivots.insert(at, c);
        self.basis.insert(at, w);
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.p != other.p {
            return input("subspaces live in different ambient spaces");
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let d = self.ambient;
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            rows.push(u.iter().chain(u.iter()).copied().collect());
        }
        for w in &other.basis {
            rows.push(w.iter().copied().chain(std::iter::repeat_n(0, d)).collect());
        }
        let pivots = rref_in_place(&mut rows, 2 * d, self.p);
        let vectors: Vec<&[u32]> = pivots
            .iter()
            .zip(&rows)
            .filter(|(&c, _)| c >= d)
            .map(|(_, row)| &row[d..])
            .collect();
        Subspace::span_of(d, &vectors, self.p)
    }
}
