//! Exact rank of small integer matrices.
//!
//! [`exact_rank`] runs fraction-free (Bareiss) elimination. Every intermediate
//! entry is a minor of the input, so the arithmetic stays integral; it runs in
//! checked `i128` and restarts over big integers if a minor ever overflows.
//! A rank computed modulo a prime is a lower bound of the rational rank, so
//! when it already equals `min(rows, cols)` the exact pass is skipped.

use num_bigint::BigInt;
use num_traits::Zero;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            data.extend_from_slice(r.as_ref());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// Prime used by the modular fast path.
pub const FAST_PATH_PRIME: u64 = 2_147_483_647;

/// Rank over the rationals.
pub fn exact_rank(m: &IntMatrix) -> usize {
    let full = m.rows.min(m.cols);
    if full == 0 {
        return 0;
    }
    if rank_mod_prime(m, FAST_PATH_PRIME) == full {
        return full;
    }
    bareiss_rank(m)
}

/// Fraction-free elimination without the modular shortcut.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let work: Vec<i128> = m.data.iter().map(|&v| v as i128).collect();
    match bareiss_checked(work, m.rows, m.cols) {
        Some(r) => r,
        None => bareiss_big(m),
    }
}

fn bareiss_checked(mut a: Vec<i128>, rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + col];
        for i in rank + 1..rows {
            let lead = a[i * cols + col];
            for j in col + 1..cols {
                let x = pivot.checked_mul(a[i * cols + j])?;
                let y = lead.checked_mul(a[rank * cols + j])?;
                a[i * cols + j] = x.checked_sub(y)? / prev;
            }
            a[i * cols + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + col].clone();
            for j in col + 1..cols {
                let v = (&pivot * &a[i * cols + j] - &lead * &a[rank * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over `GF(prime)`. Never exceeds the rational rank.
pub fn rank_mod_prime(m: &IntMatrix, prime: u64) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let p = prime as i128;
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|&v| (v as i128).rem_euclid(p) as u64)
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = mod_pow(a[rank * cols + col], prime - 2, prime);
        for i in rank + 1..rows {
            let f = mul_mod(a[i * cols + col], inv, prime);
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = mul_mod(f, a[rank * cols + j], prime);
                a[i * cols + j] = (a[i * cols + j] + prime - sub) % prime;
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}
