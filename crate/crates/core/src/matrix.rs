//! Dense matrices of polynomials.

use crate::error::{Error, Limit, Result};
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{same_ring, RingRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    nrows: usize,
    ncols: usize,
    /// Row-major.
    entries: Vec<Polynomial>,
}

/// Refuse to enumerate more minors than this.
const MAX_MINORS: usize = 2_000_000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl PolyMatrix {
    pub fn zero(ring: &RingRef, nrows: usize, ncols: usize) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries: vec![Polynomial::zero(ring); nrows * ncols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Rows must have equal lengths; `ncols` is used when there are no rows.
    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>, ncols: usize) -> Result<PolyMatrix> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(ncols);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Invalid("rows of unequal length".into()));
            }
            for p in row {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors of `R^nrows`.
    pub fn from_columns(ring: &RingRef, nrows: usize, cols: &[FreeElement]) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(ring, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.rank() != nrows {
                return Err(Error::RankMismatch {
                    expected: nrows,
                    found: c.rank(),
                });
            }
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            for i in 0..nrows {
                m.set(i, j, c.get(i).clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Columns as elements of `R^nrows` (requires `nrows > 0`).
    pub fn columns(&self) -> Vec<FreeElement> {
        (0..self.ncols).map(|j| FreeElement::new(self.column(j))).collect()
    }

    /// Rows as elements of `R^ncols` (requires `ncols > 0`).
    pub fn row_vectors(&self) -> Vec<FreeElement> {
        (0..self.nrows).map(|i| FreeElement::new(self.row(i))).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(&self.ring, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::RankMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = PolyMatrix::zero(&self.ring, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.ncols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Appends the columns of `other`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.nrows != other.nrows {
            return Err(Error::RankMismatch {
                expected: self.nrows,
                found: other.nrows,
            });
        }
        let mut m = PolyMatrix::zero(&self.ring, self.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.ncols {
                m.set(i, self.ncols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Determinant by fraction-free (Bareiss) elimination over the free
    /// polynomial ring.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a: Vec<Vec<Polynomial>> = self.rows();
        let mut sign = false;
        let mut prev = Polynomial::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = !sign;
                    }
                    None => return Ok(Polynomial::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .ok_or_else(|| Error::Invalid("inexact division in Bareiss step".into()))?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -&d } else { d })
    }

    /// Nonzero `k x k` minors, without duplicates up to sign.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        if k == 0 {
            return Ok(vec![Polynomial::one(&self.ring)]);
        }
        if k > self.nrows || k > self.ncols {
            return Ok(Vec::new());
        }
        let count = binomial(self.nrows, k).saturating_mul(binomial(self.ncols, k));
        if count > MAX_MINORS {
            return Err(Error::Resource(Limit::Search));
        }
        let rows = subsets(self.nrows, k);
        let cols = subsets(self.ncols, k);
        let mut out: Vec<Polynomial> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for r in &rows {
            for c in &cols {
                let sub = self.submatrix(r, c);
                if (0..k).any(|i| (0..k).all(|j| sub.get(i, j).is_zero())) {
                    continue;
                }
                let d = sub.determinant()?;
                if d.is_zero() {
                    continue;
                }
                let d = d.monic();
                if seen.insert(d.clone()) {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }
}
