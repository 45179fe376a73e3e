//! Dense exponent vectors.

use std::fmt;

use crate::error::{AlgebraError, Result};

/// Largest exponent a variable may carry.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

/// A monomial in a fixed number of variables.
///
/// `mask` has bit `i % 64` set when variable `i` occurs; it is only used to
/// reject divisibility quickly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
    mask: u64,
}

fn mask_of(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0, mask: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::from_exps_unchecked(exps)
    }

    pub fn from_exps(exps: Vec<u32>) -> Result<Self> {
        let mut degree: u32 = 0;
        for &e in &exps {
            if e > MAX_EXPONENT {
                return Err(AlgebraError::ExponentOverflow);
            }
            degree = degree.checked_add(e).ok_or(AlgebraError::ExponentOverflow)?;
        }
        let mask = mask_of(&exps);
        Ok(Monomial { exps, degree, mask })
    }

    pub(crate) fn from_exps_unchecked(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        let mask = mask_of(&exps);
        Monomial { exps, degree, mask }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Total (unweighted) degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.degree > other.degree {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).filter(|s| *s <= MAX_EXPONENT))
            .collect::<Option<Vec<_>>>()
            .ok_or(AlgebraError::ExponentOverflow)?;
        Monomial::from_exps(exps)
    }

    /// Product without the overflow check; callers guarantee small exponents.
    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree, mask: self.mask | other.mask }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Self::from_exps_unchecked(exps))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Self::from_exps_unchecked(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Self::from_exps_unchecked(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
            && self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Re-index variables: variable `i` of `self` becomes variable `map[i]` of a
    /// monomial in `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Self::from_exps_unchecked(exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_tracks_exponents() {
        let m = Monomial::from_exps(vec![2, 0, 3]).unwrap();
        assert_eq!(m.degree(), 5);
        let n = Monomial::from_exps(vec![1, 4, 0]).unwrap();
        assert_eq!(m.mul(&n).degree(), 10);
        assert_eq!(m.lcm(&n).exps(), &[2, 4, 3]);
        assert_eq!(m.div(&Monomial::var(3, 2)).unwrap().exps(), &[2, 0, 2]);
        assert!(m.div(&n).is_none());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Monomial::from_exps(vec![MAX_EXPONENT]).unwrap();
        assert_eq!(big.checked_mul(&Monomial::var(1, 0)), Err(AlgebraError::ExponentOverflow));
        assert!(Monomial::from_exps(vec![MAX_EXPONENT + 1]).is_err());
    }
}
