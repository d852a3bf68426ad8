//! Dense linear algebra over a field.

use crate::field::{Coeff, Field};

/// Row echelon form in place; returns the pivot columns.
pub fn row_reduce(field: Field, rows: &mut [Vec<Coeff>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: Field, rows: &[Vec<Coeff>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(field, &mut m).len()
}

/// Solves `x * rows = target` for a row vector `x`, if possible.
pub fn solve_left(field: Field, rows: &[Vec<Coeff>], target: &[Coeff]) -> Option<Vec<Coeff>> {
    // transpose: columns of the system are the given rows
    let n = rows.len();
    let m = target.len();
    let mut aug: Vec<Vec<Coeff>> = (0..m)
        .map(|j| {
            let mut r: Vec<Coeff> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let pivots = row_reduce(field, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

/// Rank of a matrix over `GF(p)` given by machine-word entries.
pub fn rank_mod_p(p: u32, rows: &[Vec<u32>]) -> usize {
    let p = p as u64;
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = crate::field::pow_mod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        let f = Field::Rationals;
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(Field::Rationals, &m), 2);
        assert_eq!(rank_mod_p(7, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(rank_mod_p(7, &[vec![1, 1], vec![1, 1]]), 1);
    }

    #[test]
    fn left_solution() {
        let f = Field::Rationals;
        let m = q(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_left(f, &m, &q(&[&[2, 3, 5]])[0]).unwrap();
        assert_eq!(x, vec![f.from_i64(2), f.from_i64(3)]);
        assert!(solve_left(f, &m, &q(&[&[1, 1, 0]])[0]).is_none());
    }
}
