//! Exact coefficient fields: the rationals and prime fields GF(p) with p < 2^31.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Default prime used as a stand-in for an infinite residue field.
pub const DEFAULT_PRIME: u32 = 32003;

/// The coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffField {
    Rationals,
    Prime(u32),
}

/// A field element. Which variant is valid is decided by the owning [`CoeffField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Default for CoeffField {
    fn default() -> Self {
        CoeffField::Prime(DEFAULT_PRIME)
    }
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(CoeffField::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoeffField::Rationals => 0,
            CoeffField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoeffField::Rationals => Coeff::Rat(BigRational::zero()),
            CoeffField::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoeffField::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            CoeffField::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoeffField::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
            CoeffField::Prime(p) => {
                let p = BigInt::from(*p);
                let mut r = v % &p;
                if r.is_negative() {
                    r += &p;
                }
                Coeff::Mod(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// `num / den`, failing when the denominator vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(AlgebraError::DivisionByZero);
        }
        self.div(&self.from_bigint(num), &d)
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffField::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (CoeffField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoeffField::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            (CoeffField::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffField::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (CoeffField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, a) {
            (CoeffField::Prime(p), Coeff::Mod(x)) => Coeff::Mod(pow_mod(*x, p - 2, *p)),
            (CoeffField::Rationals, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            _ => panic!("coefficient does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, mut n: u32) -> Coeff {
        let mut acc = self.one();
        let mut b = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        acc
    }

    /// Human-readable form; prime field elements use the symmetric residue.
    pub fn format(&self, a: &Coeff) -> String {
        match (self, a) {
            (CoeffField::Prime(p), Coeff::Mod(x)) => {
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            (_, Coeff::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (_, Coeff::Mod(x)) => x.to_string(),
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "QQ"),
            CoeffField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_large_moduli() {
        assert!(CoeffField::prime(32003).is_ok());
        assert_eq!(CoeffField::prime(32004), Err(AlgebraError::NotPrime(32004)));
        assert!(CoeffField::prime(1).is_err());
        assert!(CoeffField::prime((1u64 << 31) + 11).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = CoeffField::prime(7).unwrap();
        for v in 1..7 {
            let a = f.from_i64(v);
            let inv = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &inv)));
        }
        assert_eq!(f.inv(&f.zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn fraction_with_vanishing_denominator() {
        let f = CoeffField::prime(5).unwrap();
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(10)).is_err());
        let q = CoeffField::Rationals;
        let half = q.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(q.format(&q.add(&half, &half)), "1");
    }

    #[test]
    fn symmetric_display() {
        let f = CoeffField::prime(7).unwrap();
        assert_eq!(f.format(&f.from_i64(-2)), "-2");
        assert_eq!(f.format(&f.from_i64(3)), "3");
    }
}
