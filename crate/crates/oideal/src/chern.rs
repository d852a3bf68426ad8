//! Parity of the top Chern class of a rank `n` bundle with
//! `c_t = (1 + t)^n / (1 + 2t)`.

use num_bigint::BigInt;

use oideal_core::{Error, Result};

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}

/// Coefficient of `t^(n-1)` in `(1 + t)^n (1 + 2t)^(-1) mod t^n`, inverting
/// `1 + 2t` as a geometric series.
pub fn chern_parity(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let num = binomial_row(n);
    let mut inv = Vec::with_capacity(n);
    let mut c = BigInt::from(1);
    for _ in 0..n {
        inv.push(c.clone());
        c *= -2;
    }
    // Cauchy product, degree n - 1 only
    let mut out = BigInt::from(0);
    for (k, a) in num.iter().enumerate().take(n) {
        out += a * &inv[n - 1 - k];
    }
    Ok(out)
}

/// `sum_(i < n) (-1)^i C(n, n-1-i) 2^i`.
pub fn closed_form(n: usize) -> BigInt {
    let row = binomial_row(n);
    let mut out = BigInt::from(0);
    let mut p = BigInt::from(1);
    for i in 0..n {
        let term = &row[n - 1 - i] * &p;
        if i % 2 == 0 {
            out += term;
        } else {
            out -= term;
        }
        p *= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_table() {
        for n in 2..=12 {
            let c = chern_parity(n).unwrap();
            assert_eq!(c, BigInt::from((n % 2) as i64), "n = {n}");
            assert_eq!(c, closed_form(n));
        }
        assert!(chern_parity(1).is_err());
    }
}
