//! Dense linear algebra over a prime field GF(p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_P: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: DEFAULT_P }
    }
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Input(format!("field modulus {p} must be an odd prime below 2^31")));
        }
        Ok(FieldSpec { p })
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero");
    pow_mod(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Deterministic RNG used by every randomized routine.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    pub data: Vec<u32>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Mat,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v, p);
            }
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Mat {
        let mut m = Mat::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    /// Column vector.
    pub fn col_vec(p: u32, v: &[u32]) -> Mat {
        Mat { rows: v.len(), cols: 1, p, data: v.to_vec() }
    }

    pub fn random(p: u32, rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
        Mat::from_fn(p, rows, cols, |_, _| rng.gen_range(0..p))
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let p = self.p as u64;
        let mut out = Mat::zeros(self.p, self.rows, o.cols);
        let mut acc = vec![0u64; o.cols];
        let limit = accumulation_limit(self.p);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                for (acc_j, &b) in acc.iter_mut().zip(orow) {
                    *acc_j += a * b as u64;
                }
                pending += 1;
                if pending >= limit {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for j in 0..o.cols {
                out.data[i * o.cols + j] = (acc[j] % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        let limit = accumulation_limit(self.p);
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s += self.data[i * self.cols + k] as u64 * x as u64;
                    if (k + 1) as u32 % limit == 0 {
                        s %= p;
                    }
                }
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| add_mod(a, b, p)).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| sub_mod(a, b, p)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        Mat { rows: self.rows, cols: self.cols, p, data: self.data.iter().map(|&a| sub_mod(0, a, p)).collect() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p;
        Mat { rows: self.rows, cols: self.cols, p, data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect() }
    }

    /// `self + c * o`
    pub fn axpy(&self, c: u32, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| add_mod(a, mul_mod(b, c, p), p)).collect(),
        }
    }

    pub fn hstack(p: u32, rows: usize, parts: &[&Mat]) -> Mat {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(p: u32, cols: usize, parts: &[&Mat]) -> Mat {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        Mat { rows, cols, p, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(p: u32, parts: &[&Mat]) -> Mat {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.p, rows, cols);
        for i in 0..rows {
            let src = &self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + cols];
            out.data[i * cols..(i + 1) * cols].copy_from_slice(src);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Mat) {
        for i in 0..m.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(&m.data[i * m.cols..(i + 1) * m.cols]);
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |s, i| add_mod(s, self.get(i, i), self.p))
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(m.data[r * cols + c], p);
            for j in c..cols {
                m.data[r * cols + j] = mul_mod(m.data[r * cols + j], inv, p);
            }
            let (before, rest) = m.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c];
                if f != 0 {
                    let nf = (p - f) as u64;
                    for j in c..cols {
                        if prow[j] != 0 {
                            row[j] = ((row[j] as u64 + nf * prow[j] as u64) % p as u64) as u32;
                        }
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
        Rref { rank: r, pivots, reduced: m }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            return self.transpose().rref().rank;
        }
        self.rref().rank
    }

    /// Columns spanning the null space.
    pub fn kernel_basis(&self) -> Mat {
        let r = self.rref();
        kernel_basis_from(&r, self.cols, self.p)
    }

    /// A particular solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: {} equations but right side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Mat::hstack(self.p, self.rows, &[self, b]);
        let r = aug.rref();
        let n = self.cols;
        if r.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.p, n, b.cols);
        for (i, &c) in r.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = r.reduced.get(i, n + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.p, n, &[self, &Mat::identity(self.p, n)]);
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.rows);
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

    pub fn is_nilpotent(&self) -> bool {
        self.rows == 0 || self.pow(self.rows as u64).is_zero()
    }

    /// Characteristic polynomial det(xI - m), coefficients from degree 0 upward.
    pub fn charpoly(&self) -> Result<Vec<u32>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("charpoly of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(hessenberg_charpoly(self))
    }

    /// Linear independent columns of `self` spanning its column space (a basis).
    pub fn col_basis(&self) -> Mat {
        let r = self.rref();
        self.select_cols(&r.pivots)
    }

    /// Basis of the image, as columns.
    pub fn image_basis(&self) -> Mat {
        self.col_basis()
    }
}

/// How many products of residues fit in a u64 accumulator before reducing.
fn accumulation_limit(p: u32) -> u32 {
    let sq = (p as u64 - 1) * (p as u64 - 1);
    ((u64::MAX - p as u64) / sq).clamp(1, 1 << 20) as u32
}

/// Column indices that are not pivots.
pub fn free_columns(r: &Rref, cols: usize) -> Vec<usize> {
    let mut is_piv = vec![false; cols];
    for &c in &r.pivots {
        is_piv[c] = true;
    }
    (0..cols).filter(|&c| !is_piv[c]).collect()
}

/// Null space basis read off a reduced echelon form; column j has a 1 at the j-th free column.
pub fn kernel_basis_from(r: &Rref, cols: usize, p: u32) -> Mat {
    let mut is_piv = vec![false; cols];
    for &c in &r.pivots {
        is_piv[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_piv[c]).collect();
    let mut k = Mat::zeros(p, cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.data[f * free.len() + j] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            let v = r.reduced.get(i, f);
            if v != 0 {
                k.data[pc * free.len() + j] = p - v;
            }
        }
    }
    k
}

fn hessenberg_charpoly(m: &Mat) -> Vec<u32> {
    let n = m.rows;
    let p = m.p;
    let mut h = m.clone();
    // reduce to upper Hessenberg form by similarity
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                let t = h.get(piv, c);
                h.data[piv * n + c] = h.get(j + 1, c);
                h.data[(j + 1) * n + c] = t;
            }
            for r in 0..n {
                let t = h.get(r, piv);
                h.data[r * n + piv] = h.get(r, j + 1);
                h.data[r * n + j + 1] = t;
            }
        }
        let inv = inv_mod(h.get(j + 1, j), p);
        for i in j + 2..n {
            let u = mul_mod(h.get(i, j), inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = sub_mod(h.get(i, c), mul_mod(u, h.get(j + 1, c), p), p);
                h.data[i * n + c] = v;
            }
            for r in 0..n {
                let v = add_mod(h.get(r, j + 1), mul_mod(u, h.get(r, i), p), p);
                h.data[r * n + j + 1] = v;
            }
        }
    }
    // recurrence for leading principal minors of xI - H
    let mut polys: Vec<Vec<u32>> = vec![vec![1]];
    for k in 0..n {
        let mut next = poly_mul(&[sub_mod(0, h.get(k, k), p), 1], &polys[k], p);
        let mut t = 1u32;
        for i in (0..k).rev() {
            t = mul_mod(t, h.get(i + 1, i), p);
            let c = mul_mod(t, h.get(i, k), p);
            if c != 0 {
                let term = poly_scale(&polys[i], c, p);
                next = poly_sub(&next, &term, p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

// ---- polynomials: coefficient vectors, lowest degree first ----

pub fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn poly_deg(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn poly_add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    poly_trim((0..n).map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    poly_trim((0..n).map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn poly_scale(a: &[u32], c: u32, p: u32) -> Vec<u32> {
    poly_trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_trim(out.into_iter().map(|v| v as u32).collect())
}

/// Division with remainder; `b` must be nonzero.
pub fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = poly_trim(b.to_vec());
    let db = poly_deg(&b).expect("division by zero polynomial");
    let mut r = poly_trim(a.to_vec());
    let lead_inv = inv_mod(b[db], p);
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_deg(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for i in 0..=db {
            r[dr - db + i] = sub_mod(r[dr - db + i], mul_mod(c, b[i], p), p);
        }
        r = poly_trim(r);
    }
    (poly_trim(q), r)
}

pub fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    poly_divrem(a, b, p).1
}

pub fn poly_monic(a: &[u32], p: u32) -> Vec<u32> {
    let a = poly_trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => poly_scale(&a, inv_mod(l, p), p),
    }
}

pub fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    poly_monic(&x, p)
}

pub fn poly_eval(f: &[u32], x: u32, p: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

/// `base^e mod modulus`.
pub fn poly_powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut result = poly_rem(&[1], modulus, p);
    let mut b = poly_rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &b, p), modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = poly_rem(&poly_mul(&b, &b, p), modulus, p);
        }
    }
    result
}

/// Evaluate a polynomial at a square matrix.
pub fn poly_eval_mat(f: &[u32], m: &Mat) -> Mat {
    let mut acc = Mat::zeros(m.p, m.rows, m.cols);
    for &c in f.iter().rev() {
        acc = acc.mul(m).add(&Mat::scalar(m.p, m.rows, c));
    }
    acc
}

/// All roots of `f` in GF(p), sorted ascending.
pub fn linear_roots(f: &[u32], p: u32, seed: u64) -> Result<Vec<u32>> {
    let f = poly_monic(f, p);
    if f.is_empty() {
        return Err(Error::Input("linear_roots of the zero polynomial".into()));
    }
    if f.len() == 1 {
        return Ok(vec![]);
    }
    // gcd(f, x^p - x) isolates the product of distinct linear factors
    let xp = poly_powmod(&[0, 1], p as u64, &f, p);
    let g = poly_gcd(&f, &poly_sub(&xp, &[0, 1], p), p);
    let mut roots = Vec::new();
    let mut r = rng(seed);
    split_linear(&g, p, &mut r, &mut roots);
    roots.sort_unstable();
    Ok(roots)
}

fn split_linear(g: &[u32], p: u32, r: &mut ChaCha8Rng, out: &mut Vec<u32>) {
    let Some(d) = poly_deg(g) else { return };
    if d == 0 {
        return;
    }
    if d == 1 {
        // monic x + c
        out.push(sub_mod(0, g[0], p));
        return;
    }
    if g[0] == 0 {
        out.push(0);
        let (q, _) = poly_divrem(g, &[0, 1], p);
        split_linear(&q, p, r, out);
        return;
    }
    loop {
        let a = r.gen_range(0..p);
        let h = poly_powmod(&[a, 1], ((p - 1) / 2) as u64, g, p);
        let h1 = poly_sub(&h, &[1], p);
        let c = poly_gcd(g, &h1, p);
        let dc = poly_deg(&c).unwrap_or(0);
        if dc > 0 && dc < d {
            let (q, _) = poly_divrem(g, &c, p);
            split_linear(&c, p, r, out);
            split_linear(&poly_monic(&q, p), p, r, out);
            return;
        }
    }
}

/// Fitting decomposition: `(ker f^N, im f^N)` as column bases, `N = rows(f)`.
pub fn fitting_split(f: &Mat) -> (Mat, Mat) {
    assert!(f.is_square(), "fitting_split needs a square matrix");
    let fnp = f.pow(f.rows.max(1) as u64);
    (fnp.kernel_basis(), fnp.col_basis())
}

/// Complementary standard basis vectors for the column span of `u` (which must have independent columns).
pub fn complement_basis(u: &Mat, dim: usize) -> Mat {
    let p = u.p;
    if u.cols == 0 {
        return Mat::identity(p, dim);
    }
    let r = u.transpose().rref();
    let mut is_piv = vec![false; dim];
    for &c in &r.pivots {
        is_piv[c] = true;
    }
    let free: Vec<usize> = (0..dim).filter(|&c| !is_piv[c]).collect();
    Mat::from_fn(p, dim, free.len(), |i, j| u32::from(i == free[j]))
}

/// A splitting of `k^dim` along the span of independent columns `u`.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// `[u | complement]`, invertible.
    pub basis: Mat,
    pub inverse: Mat,
    pub sub_dim: usize,
}

impl Splitting {
    pub fn new(u: &Mat, dim: usize) -> Splitting {
        let c = complement_basis(u, dim);
        let p = c.p;
        let basis = Mat::hstack(p, dim, &[u, &c]);
        let inverse = basis.inverse().expect("columns of a splitting must be independent");
        Splitting { basis, inverse, sub_dim: u.cols }
    }

    /// Projection onto the complement coordinates, killing the subspace.
    pub fn quotient_map(&self) -> Mat {
        let d = self.basis.rows;
        self.inverse.block(self.sub_dim, 0, d - self.sub_dim, d)
    }

    /// Section of the quotient map.
    pub fn section(&self) -> Mat {
        let d = self.basis.rows;
        self.basis.block(0, self.sub_dim, d, d - self.sub_dim)
    }

    /// Coordinates of vectors of the subspace in terms of its basis.
    pub fn sub_coords(&self) -> Mat {
        let d = self.basis.rows;
        self.inverse.block(0, 0, self.sub_dim, d)
    }
}

/// Basis of the intersection of two column spans.
pub fn intersect(a: &Mat, b: &Mat) -> Mat {
    let p = a.p;
    if a.cols == 0 || b.cols == 0 {
        return Mat::zeros(p, a.rows, 0);
    }
    let k = Mat::hstack(p, a.rows, &[a, &b.neg()]).kernel_basis();
    a.mul(&k.block(0, 0, a.cols, k.cols)).col_basis()
}

/// Basis of the sum of two column spans.
pub fn span_sum(a: &Mat, b: &Mat) -> Mat {
    Mat::hstack(a.p, a.rows, &[a, b]).col_basis()
}

/// Express columns of `v` in terms of independent columns `basis`; `None` if some column is outside the span.
pub fn coords_in(basis: &Mat, v: &Mat) -> Option<Mat> {
    basis.solve(v).ok().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn minor_rank(m: &Mat) -> usize {
        // largest k with a nonzero k x k minor, by cofactor expansion
        fn det(m: &Mat) -> u32 {
            let n = m.rows;
            if n == 0 {
                return 1;
            }
            let p = m.p;
            let mut s = 0u32;
            for j in 0..n {
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = m.select_rows(&rows).select_cols(&cols);
                let term = mul_mod(m.get(0, j), det(&minor), p);
                s = if j % 2 == 0 { add_mod(s, term, p) } else { sub_mod(s, term, p) };
            }
            s
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        for k in (1..=m.rows.min(m.cols)).rev() {
            for rs in subsets(m.rows, k) {
                for cs in subsets(m.cols, k) {
                    if det(&m.select_rows(&rs).select_cols(&cs)) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn cofactor_charpoly(m: &Mat) -> Vec<u32> {
        // det(xI - m) with polynomial entries, by Laplace expansion
        let p = m.p;
        let n = m.rows;
        let entries: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = sub_mod(0, m.get(i, j), p);
                        if i == j {
                            poly_trim(vec![c, 1])
                        } else {
                            poly_trim(vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(e: &[Vec<Vec<u32>>], p: u32) -> Vec<u32> {
            let n = e.len();
            if n == 0 {
                return vec![1];
            }
            let mut s: Vec<u32> = vec![];
            for j in 0..n {
                let minor: Vec<Vec<Vec<u32>>> =
                    e[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
                let term = poly_mul(&e[0][j], &det(&minor, p), p);
                s = if j % 2 == 0 { poly_add(&s, &term, p) } else { poly_sub(&s, &term, p) };
            }
            s
        }
        det(&entries, p)
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = Mat::identity(7, 2).rref();
        assert_eq!((r.rank, r.pivots.clone()), (2, vec![0, 1]));
        let z = Mat::zeros(7, 3, 4).rref();
        assert_eq!((z.rank, z.pivots.len()), (0, 0));
    }

    #[test]
    fn rank_matches_minor_oracle() {
        let mut r = rng(11);
        for _ in 0..20 {
            let mut m = Mat::random(7, 5, 5, &mut r);
            // force some rank deficiency
            if r.gen_bool(0.5) {
                let c0 = m.col(0);
                let c1 = m.col(1);
                for i in 0..5 {
                    m.set(i, 4, add_mod(c0[i], mul_mod(3, c1[i], 7), 7));
                }
            }
            assert_eq!(m.rank(), minor_rank(&m));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(5, 3).kernel_basis().cols, 0);
        assert_eq!(Mat::zeros(5, 2, 4).kernel_basis().cols, 4);
        let k = Mat::from_rows(5, &[vec![1, 1], vec![0, 0]]).kernel_basis();
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![4, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_rows(13, &[vec![3], vec![5]]);
        assert_eq!(Mat::identity(13, 2).solve(&b).unwrap().unwrap(), b);
        assert!(Mat::zeros(13, 2, 2).solve(&b).unwrap().is_none());
        let mut r = rng(5);
        for _ in 0..10 {
            let m = Mat::random(101, 6, 4, &mut r);
            let x0 = Mat::random(101, 4, 2, &mut r);
            let rhs = m.mul(&x0);
            let x = m.solve(&rhs).unwrap().unwrap();
            assert!(m.mul(&x).sub(&rhs).is_zero());
        }
        assert!(Mat::identity(13, 2).solve(&Mat::zeros(13, 3, 1)).is_err());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(Mat::identity(7, 2).charpoly().unwrap(), vec![1, 5, 1]);
        // companion matrix of x^3 + 2x + 5 over GF(11)
        let f = vec![5u32, 2, 0, 1];
        let c = Mat::from_fn(11, 3, 3, |i, j| {
            if j == 2 {
                (11 - f[i]) % 11
            } else {
                u32::from(i == j + 1)
            }
        });
        assert_eq!(c.charpoly().unwrap(), f);
        let mut r = rng(3);
        for _ in 0..10 {
            let m = Mat::random(11, 4, 4, &mut r);
            assert_eq!(m.charpoly().unwrap(), cofactor_charpoly(&m));
        }
        assert!(Mat::zeros(11, 2, 3).charpoly().is_err());
    }

    #[test]
    fn roots_examples() {
        let f = poly_mul(&[5, 1], &[4, 1], 7); // (x-2)(x-3)
        assert_eq!(linear_roots(&f, 7, 0).unwrap(), vec![2, 3]);
        assert!(linear_roots(&[1, 0, 1], 3, 0).unwrap().is_empty());
        assert!(linear_roots(&[], 3, 0).is_err());
        let mut r = rng(9);
        for _ in 0..10 {
            let f: Vec<u32> = vec![r.gen_range(0..101), r.gen_range(0..101), r.gen_range(0..101), 1];
            let brute: Vec<u32> = (0..101).filter(|&x| poly_eval(&f, x, 101) == 0).collect();
            assert_eq!(linear_roots(&f, 101, 1).unwrap(), brute);
        }
        // repeated roots are reported once
        let g = poly_mul(&poly_mul(&[5, 1], &[5, 1], 7), &[0, 1], 7);
        assert_eq!(linear_roots(&g, 7, 2).unwrap(), vec![0, 2]);
    }

    #[test]
    fn fitting_examples() {
        let nil = Mat::from_rows(7, &[vec![0, 1], vec![0, 0]]);
        let (k, i) = fitting_split(&nil);
        assert_eq!((k.cols, i.cols), (2, 0));
        let (k, i) = fitting_split(&Mat::identity(7, 3));
        assert_eq!((k.cols, i.cols), (0, 3));
        let d = Mat::from_rows(7, &[vec![0, 0], vec![0, 1]]);
        let (k, i) = fitting_split(&d);
        assert_eq!((k.cols, i.cols), (1, 1));
        assert_eq!(Mat::hstack(7, 2, &[&k, &i]).rank(), 2);
    }

    #[test]
    fn splitting_roundtrip() {
        let u = Mat::from_rows(5, &[vec![1], vec![2], vec![0]]);
        let s = Splitting::new(&u, 3);
        let q = s.quotient_map();
        assert!(q.mul(&u).is_zero());
        assert!(q.mul(&s.section()).is_identity());
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..=8, any::<u64>()).prop_map(|(n, seed)| {
            let mut r = rng(seed);
            let mut m = Mat::random(31, n, n, &mut r);
            // sparsify to hit singular and nilpotent cases
            for v in m.data.iter_mut() {
                if r.gen_bool(0.4) {
                    *v = 0;
                }
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rref_is_idempotent(m in small_mat()) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced);
        }

        #[test]
        fn rank_nullity(m in small_mat()) {
            prop_assert_eq!(m.rank() + m.kernel_basis().cols, m.cols);
            prop_assert!(m.mul(&m.kernel_basis()).is_zero());
        }

        #[test]
        fn fitting_pieces_invariant(m in small_mat()) {
            let (k, i) = fitting_split(&m);
            prop_assert_eq!(k.cols + i.cols, m.rows);
            prop_assert_eq!(intersect(&k, &i).cols, 0);
            prop_assert!(coords_in(&k, &m.mul(&k)).is_some());
            prop_assert!(coords_in(&i, &m.mul(&i)).is_some());
        }

        #[test]
        fn cayley_hamilton(m in small_mat()) {
            let f = m.charpoly().unwrap();
            prop_assert!(poly_eval_mat(&f, &m).is_zero());
        }
    }
}
