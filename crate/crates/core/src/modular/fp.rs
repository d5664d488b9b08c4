//! Dense matrices over a prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    /// The Jordan block of size `n` with eigenvalue 1: `g e_i = e_i + e_{i-1}`.
    pub fn jordan_block(p: u32, n: usize) -> Self {
        let mut m = Self::identity(p, n);
        for i in 1..n {
            m.set(i - 1, i, 1);
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as u64;
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (v % p) as u32;
            }
        }
        out
    }

    /// `self - λ·I`.
    pub fn minus_scalar(&self, lambda: u32) -> FpMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = (out.get(i, i) + self.p - lambda % self.p) % self.p;
            out.set(i, i, v);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut out = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// `self ⊗ other` with `(e_i ⊗ f_j)` ordered lexicographically.
    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = FpMatrix::zeros(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = (a as u64 * other.get(k, l) as u64 % self.p as u64) as u32;
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = v;
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        row_reduce(self.p, self.rows, self.cols, self.data.clone()).len()
    }

    /// Rank of `self^s` for `s = 0, 1, …` until it reaches zero or stops
    /// changing, computed by pushing a basis of the image through `self`.
    pub fn power_ranks(&self) -> Vec<usize> {
        assert!(self.is_square());
        let n = self.rows;
        let mut ranks = vec![n];
        // rows of `basis` span the current image, stored as vectors
        let mut basis: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        loop {
            let images: Vec<u32> = basis.iter().flat_map(|v| self.apply(v)).collect();
            let reduced = row_reduce(self.p, basis.len(), n, images);
            let r = reduced.len();
            ranks.push(r);
            if r == 0 || r == basis.len() {
                break;
            }
            basis = reduced;
        }
        ranks
    }

    /// `self · v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (a, p64) = (a as u64 % p as u64, p as u64);
    assert!(a != 0, "zero has no inverse");
    let mut result = 1u64;
    let mut base = a;
    let mut e = p64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    result as u32
}

/// Gaussian elimination on `rows × cols` row-major data; returns the nonzero
/// rows of an echelon form.
fn row_reduce(p: u32, rows: usize, cols: usize, mut data: Vec<u32>) -> Vec<Vec<u32>> {
    let p64 = p as u64;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if found != pivot_row {
            for j in 0..cols {
                data.swap(found * cols + j, pivot_row * cols + j);
            }
        }
        let inv = inv_mod(data[pivot_row * cols + col], p) as u64;
        for j in col..cols {
            let v = &mut data[pivot_row * cols + j];
            *v = (*v as u64 * inv % p64) as u32;
        }
        for r in (pivot_row + 1)..rows {
            let factor = data[r * cols + col] as u64;
            if factor == 0 {
                continue;
            }
            let neg = p64 - factor;
            for j in col..cols {
                let pv = data[pivot_row * cols + j] as u64;
                if pv != 0 {
                    let v = &mut data[r * cols + j];
                    *v = ((*v as u64 + neg * pv) % p64) as u32;
                }
            }
        }
        pivot_row += 1;
    }
    (0..pivot_row).map(|r| data[r * cols..(r + 1) * cols].to_vec()).collect()
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix over F_{} ({}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
