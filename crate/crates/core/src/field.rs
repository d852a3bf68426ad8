//! Coefficient fields: the rationals and prime fields of characteristic below 2^31.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default characteristic for probabilistic runs.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); prime-field elements are
/// canonical residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u32),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rat(BigRational::zero()),
            Field::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rat(BigRational::one()),
            Field::Prime(_) => Coeff::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Mod(n.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in it.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match self {
            Field::Rationals => Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(Error::Invalid(format!(
                        "denominator {den} vanishes in characteristic {}",
                        self.characteristic()
                    )));
                }
                Ok(self.div(&self.from_bigint(num), &d))
            }
        }
    }

    /// Reduces a rational into this field, if its denominator is invertible.
    pub fn from_rational(&self, q: &BigRational) -> Option<Coeff> {
        self.from_fraction(q.numer(), q.denom()).ok()
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(q) => q.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(q) => q.is_one(),
            Coeff::Mod(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *p as u64 - *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Rat(x.recip())
            }
            (Field::Prime(p), Coeff::Mod(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Mod(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Bit length of the largest numerator/denominator; 0 for prime fields.
    pub fn bits(&self, a: &Coeff) -> u64 {
        match a {
            Coeff::Rat(q) => q.numer().bits().max(q.denom().bits()),
            Coeff::Mod(_) => 0,
        }
    }

    /// Integer value of a coefficient that is an integer (or any residue).
    pub fn to_i64(&self, a: &Coeff) -> Option<i64> {
        match a {
            Coeff::Rat(q) if q.is_integer() => q.to_integer().to_i64(),
            Coeff::Rat(_) => None,
            Coeff::Mod(v) => Some(*v as i64),
        }
    }

    /// Value of a coefficient in `GF(p)`, if defined.
    pub fn reduce_mod(&self, a: &Coeff, p: u32) -> Option<u32> {
        let target = Field::Prime(p);
        match a {
            Coeff::Rat(q) => match target.from_rational(q)? {
                Coeff::Mod(v) => Some(v),
                Coeff::Rat(_) => unreachable!(),
            },
            Coeff::Mod(v) => {
                if Field::Prime(p) == *self {
                    Some(*v)
                } else {
                    None
                }
            }
        }
    }

    /// Whether the coefficient prints with a leading minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match (self, a) {
            (_, Coeff::Rat(q)) => q.is_negative(),
            (Field::Prime(p), Coeff::Mod(v)) => *v > p / 2,
            _ => false,
        }
    }

    pub fn fmt_coeff(&self, a: &Coeff) -> String {
        match (self, a) {
            (_, Coeff::Rat(q)) => q.to_string(),
            (Field::Prime(p), Coeff::Mod(v)) => {
                if *v > p / 2 {
                    format!("-{}", p - v)
                } else {
                    v.to_string()
                }
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_large_moduli() {
        assert_eq!(Field::prime(4), Err(Error::NonPrimeModulus(4)));
        assert_eq!(Field::prime(1), Err(Error::NonPrimeModulus(1)));
        assert!(Field::prime(2147483647).is_ok());
        assert!(Field::prime(2147483659).is_err());
        assert_eq!(Field::prime(32003), Ok(Field::Prime(32003)));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let a = f.from_i64(v);
            assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        }
        assert_eq!(f.from_i64(-1), Coeff::Mod(6));
        assert_eq!(f.fmt_coeff(&Coeff::Mod(6)), "-1");
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = Field::Rationals;
        let half = f.from_fraction(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(f.fmt_coeff(&half), "1/2");
        let neg = f.from_fraction(&BigInt::from(3), &BigInt::from(-6)).unwrap();
        assert_eq!(f.fmt_coeff(&neg), "-1/2");
        assert!(f.is_zero(&f.add(&half, &neg)));
    }
}
