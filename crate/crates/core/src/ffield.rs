//! Exact linear algebra over a machine-word prime field.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`, used as the default modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A prime field `Z/pZ` with `p < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: MERSENNE_61 }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::input(format!("modulus {p} exceeds 2^62")));
        }
        if !is_prime(p) {
            return Err(Error::input(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Errors unless `p > needed`.
    pub fn require_larger_than(&self, needed: u64) -> Result<()> {
        if self.p > needed {
            Ok(())
        } else {
            Err(Error::FieldTooSmall {
                modulus: self.p,
                needed,
            })
        }
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        if self.p == MERSENNE_61 {
            let r = (x as u64 & MERSENNE_61) + (x >> 61) as u64;
            if r >= MERSENNE_61 {
                r - MERSENNE_61
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Miller–Rabin with the first twelve prime bases, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly chosen prime with exactly `bits` bits, `bits ∈ [32, 62]`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> Result<PrimeField> {
    if !(32..=62).contains(&bits) {
        return Err(Error::input(format!("prime size {bits} bits outside [32, 62]")));
    }
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..lo << 1) | 1;
        if is_prime(candidate) {
            return Ok(PrimeField { p: candidate });
        }
    }
}

/// Dense row-major matrix over a [`PrimeField`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from row vectors, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds from column vectors of a common length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::input("column length mismatch"));
        }
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    /// Entries independently uniform in `[0, p)`.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, rng: &mut R, rows: usize, cols: usize) -> Self {
        let data = (0..rows * cols).map(|_| field.random_element(rng)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::input("matrix product shape or field mismatch"));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        Ok(out)
    }

    /// Rank by fraction-free elimination; pivots are the first nonzero entry
    /// in each column.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut a = self.data.clone();
        let cols = self.cols;
        let mut rank = 0;
        for col in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let p = a[rank * cols + col];
            for r in rank + 1..self.rows {
                let q = a[r * cols + col];
                if q == 0 {
                    continue;
                }
                for j in col..cols {
                    let x = f.mul(p, a[r * cols + j]);
                    let y = f.mul(q, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(x, y);
                }
            }
            rank += 1;
        }
        rank
    }

    /// `self⁻¹ · rhs` for square `self`, or `None` when `self` is singular.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        let n = self.rows;
        assert!(self.cols == n && rhs.rows == n, "solve needs a square system");
        let f = self.field;
        let w = n + rhs.cols;
        let mut a = vec![0u64; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(self.row(i));
            a[i * w + n..(i + 1) * w].copy_from_slice(rhs.row(i));
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * w + col] != 0)?;
            if piv != col {
                for j in 0..w {
                    a.swap(piv * w + j, col * w + j);
                }
            }
            let inv = f.inv(a[col * w + col]);
            for j in col..w {
                a[col * w + j] = f.mul(a[col * w + j], inv);
            }
            for r in 0..n {
                let q = a[r * w + col];
                if r == col || q == 0 {
                    continue;
                }
                for j in col..w {
                    let y = f.mul(q, a[col * w + j]);
                    a[r * w + j] = f.sub(a[r * w + j], y);
                }
            }
        }
        let mut out = Matrix::zeros(f, n, rhs.cols);
        for i in 0..n {
            out.data[i * rhs.cols..(i + 1) * rhs.cols].copy_from_slice(&a[i * w + n..(i + 1) * w]);
        }
        Some(out)
    }

    /// Greedy scan over `order`, keeping a column iff it is not in the span
    /// of the columns kept so far.
    pub fn select_independent_columns(&self, order: &[usize]) -> Vec<usize> {
        let mut basis = IncrementalBasis::new(self.field, self.rows);
        order
            .iter()
            .copied()
            .filter(|&j| basis.insert(self.column(j)))
            .collect()
    }

    /// Plain-text dump: a `rows cols p` header followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {} {}", self.rows, self.cols, self.field.p).unwrap();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }
}

/// Echelon basis maintained under insertion.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    field: PrimeField,
    dim: usize,
    vectors: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl IncrementalBasis {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        IncrementalBasis {
            field,
            dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn reduce(&self, v: &mut [u64]) {
        let f = self.field;
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b).skip(p) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v` if independent of the basis; returns whether it was kept.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[p]);
        for x in v.iter_mut().skip(p) {
            *x = self.field.mul(*x, inv);
        }
        self.vectors.push(v);
        self.pivots.push(p);
        true
    }
}

/// Dimension of a tensor product, or a size error on overflow.
pub fn kronecker_dim(lens: &[usize]) -> Result<usize> {
    lens.iter().try_fold(1usize, |acc, &l| {
        acc.checked_mul(l)
            .ok_or_else(|| Error::SizeLimit("tensor dimension overflows usize".into()))
    })
}

/// Tensor product of column vectors; the first vector varies slowest.
pub fn kronecker_column(field: PrimeField, vs: &[&[u64]]) -> Result<Vec<u64>> {
    if vs.iter().any(|v| v.is_empty()) {
        return Err(Error::input("kronecker factor is empty"));
    }
    let dim = kronecker_dim(&vs.iter().map(|v| v.len()).collect::<Vec<_>>())?;
    let mut out = Vec::with_capacity(dim);
    out.push(1 % field.p);
    for v in vs {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for &a in &out {
            for &b in v.iter() {
                next.push(field.mul(a, b));
            }
        }
        out = next;
    }
    Ok(out)
}
