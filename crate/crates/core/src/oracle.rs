//! Degreewise linear algebra over the coefficient field, with no Gröbner
//! machinery: graded pieces of ideals are spanned by monomial multiples of
//! their generators and measured by row reduction.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoeffField};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// Refuse slices with this many monomials or more.
pub const MONOMIAL_GUARD: usize = 1_000_000;

/// Exponent vectors of weighted degree `n`.
pub fn monomials_of_degree(ring: &Ring, n: u64) -> Result<Vec<Vec<u32>>> {
    let w = ring.weights();
    let mut out = Vec::new();
    let mut cur = vec![0u32; w.len()];
    fn rec(i: usize, left: u64, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> bool {
        if i + 1 == w.len() {
            if left % w[i] as u64 == 0 {
                cur[i] = (left / w[i] as u64) as u32;
                out.push(cur.clone());
                if out.len() >= MONOMIAL_GUARD {
                    return false;
                }
            }
            cur[i] = 0;
            return true;
        }
        let mut e = 0u64;
        while e * w[i] as u64 <= left {
            cur[i] = e as u32;
            if !rec(i + 1, left - e * w[i] as u64, w, cur, out) {
                return false;
            }
            e += 1;
        }
        cur[i] = 0;
        true
    }
    if !rec(0, n, w, &mut cur, &mut out) {
        return Err(AlgebraError::Resource(format!("degree {n} has at least {MONOMIAL_GUARD} monomials")));
    }
    Ok(out)
}

/// Row echelon form built one vector at a time.
struct Echelon {
    field: CoeffField,
    rows: Vec<(usize, Vec<Coeff>)>,
}

impl Echelon {
    fn new(field: &CoeffField) -> Echelon {
        Echelon { field: field.clone(), rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<Coeff>) -> Vec<Coeff> {
        let f = &self.field;
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: Vec<Coeff>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// The degree-`n` slice of a polynomial ring with coordinates.
struct Slice {
    ring: Arc<Ring>,
    index: HashMap<Vec<u32>, usize>,
    monomials: Vec<Vec<u32>>,
}

impl Slice {
    fn new(ring: &Arc<Ring>, n: u64) -> Result<Slice> {
        let monomials = monomials_of_degree(ring, n)?;
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Slice { ring: ring.clone(), index, monomials })
    }

    fn len(&self) -> usize {
        self.monomials.len()
    }

    fn vector(&self, p: &Polynomial) -> Vec<Coeff> {
        let f = self.ring.field();
        let mut v = vec![f.zero(); self.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.index.get(m.exps()) {
                v[i] = c.clone();
            }
        }
        v
    }

    fn monomial(&self, i: usize) -> Polynomial {
        let m = Monomial::from_exps(self.monomials[i].clone()).expect("slice monomial");
        Polynomial::monomial(&self.ring, m, self.ring.field().one())
    }
}

fn homogeneous_gens(b: &Ideal) -> Result<Vec<Polynomial>> {
    let w = b.ring().weights().to_vec();
    let gens: Vec<Polynomial> = b.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.iter().any(|g| !g.is_homogeneous_for(&w)) {
        return Err(AlgebraError::NotHomogeneous("the oracle needs homogeneous generators".into()));
    }
    Ok(gens)
}

/// Echelon basis of `B_n` from the monomial multiples of the generators.
fn slice_of_ideal(b: &Ideal, slice: &Slice, n: u64) -> Result<Echelon> {
    let ring = b.ring();
    let mut e = Echelon::new(ring.field());
    for g in homogeneous_gens(b)? {
        let dg = g.degree().expect("nonzero");
        if dg > n {
            continue;
        }
        for m in monomials_of_degree(ring, n - dg)? {
            let m = Monomial::from_exps(m)?;
            let prod = g.mul_term(&m, &ring.field().one());
            e.insert(slice.vector(&prod));
            if e.rank() == slice.len() {
                return Ok(e);
            }
        }
    }
    Ok(e)
}

/// `dim_k (R/B)_n`.
pub fn oracle_dimension(b: &Ideal, n: u64) -> Result<u64> {
    let slice = Slice::new(b.ring(), n)?;
    let e = slice_of_ideal(b, &slice, n)?;
    Ok((slice.len() - e.rank()) as u64)
}

/// Whether the homogeneous components of `p` all lie in `B`.
pub fn oracle_contains(b: &Ideal, p: &Polynomial) -> Result<bool> {
    let ring = b.ring();
    let p = p.to_ring(ring)?;
    let mut degrees: Vec<u64> = p.terms().iter().map(|(m, _)| m.weighted_degree(ring.weights())).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let slice = Slice::new(ring, n)?;
        let mut e = slice_of_ideal(b, &slice, n)?;
        if e.insert(slice.vector(&p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim_k (R/(A : f))_n` as the rank of `R_n -> R_{n+deg f}/A`, `p -> pf`.
pub fn oracle_quotient_dimension(a: &Ideal, f: &Polynomial, n: u64) -> Result<u64> {
    let ring = a.ring();
    let f = f.to_ring(ring)?;
    if f.is_zero() || !f.is_homogeneous_for(ring.weights()) {
        return Err(AlgebraError::NotHomogeneous("the oracle needs a nonzero form".into()));
    }
    let df = f.degree().expect("nonzero");
    let source = Slice::new(ring, n)?;
    let target = Slice::new(ring, n + df)?;
    let base = slice_of_ideal(a, &target, n + df)?;
    let start = base.rank();
    let mut e = base;
    for i in 0..source.len() {
        e.insert(target.vector(&(&source.monomial(i) * &f)));
    }
    Ok((e.rank() - start) as u64)
}

/// `dim_k (R/(A ∩ B))_n = dim (R/A)_n + dim (R/B)_n - dim (R/(A+B))_n`.
pub fn oracle_intersection_dimension(a: &Ideal, b: &Ideal, n: u64) -> Result<u64> {
    let s = oracle_dimension(&a.sum(b)?, n)?;
    Ok(oracle_dimension(a, n)? + oracle_dimension(b, n)? - s)
}

/// `λ(A/B)` for standard graded `B ⊆ A`, summing slices until `(R/B)_n` vanishes.
pub fn oracle_colength(b: &Ideal, a: &Ideal, max_degree: u64) -> Result<u64> {
    if !b.ring().is_standard_graded() {
        return Err(AlgebraError::InvalidArgument("the colength oracle needs a standard grading".into()));
    }
    let mut total = 0;
    for n in 0..=max_degree {
        let db = oracle_dimension(b, n)?;
        if db == 0 {
            return Ok(total);
        }
        let da = oracle_dimension(a, n)?;
        if da > db {
            return Err(AlgebraError::NotContained("B is not inside A".into()));
        }
        total += db - da;
    }
    Err(AlgebraError::Resource(format!("(R/B)_n does not vanish for n <= {max_degree}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoeffField::default()).unwrap()
    }

    #[test]
    fn slice_dimensions() {
        let r = ring(&["x", "y", "z"]);
        let b = Ideal::parse(&r, "x^2, x*y").unwrap();
        assert_eq!(oracle_dimension(&b, 2).unwrap(), 4);
        assert_eq!(oracle_dimension(&b, 0).unwrap(), 1);
        let r2 = ring(&["x", "y"]);
        for n in 0..6 {
            assert_eq!(oracle_dimension(&Ideal::zero(&r2), n).unwrap(), n + 1);
        }
    }

    #[test]
    fn weighted_monomials() {
        let r = Ring::with_weights(&["x", "y"], &[2, 3], CoeffField::default()).unwrap();
        let ms = monomials_of_degree(&r, 6).unwrap();
        assert_eq!(ms, vec![vec![0, 2], vec![3, 0]]);
        assert!(monomials_of_degree(&r, 1).unwrap().is_empty());
    }

    #[test]
    fn membership_quotient_intersection() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, "x^2, x*y").unwrap();
        let p = |s: &str| crate::parse::parse_polynomial(&r, s).unwrap();
        assert!(oracle_contains(&a, &p("x^3 + x*y^2 + x^2")).unwrap());
        assert!(!oracle_contains(&a, &p("y^2")).unwrap());
        // (x^2, xy) : x = (x, y)
        assert_eq!(oracle_quotient_dimension(&a, &p("x"), 0).unwrap(), 1);
        assert_eq!(oracle_quotient_dimension(&a, &p("x"), 1).unwrap(), 0);
        // (x) ∩ (y) = (xy)
        let xi = Ideal::parse(&r, "x").unwrap();
        let yi = Ideal::parse(&r, "y").unwrap();
        assert_eq!(oracle_intersection_dimension(&xi, &yi, 2).unwrap(), 2);
    }

    #[test]
    fn colength_and_guard() {
        let r = ring(&["x", "y"]);
        let b = Ideal::parse(&r, "x^2, y^2").unwrap();
        assert_eq!(oracle_colength(&b, &Ideal::unit(&r), 10).unwrap(), 4);
        let big = ring(&["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"]);
        assert!(matches!(oracle_dimension(&Ideal::zero(&big), 40), Err(AlgebraError::Resource(_))));
    }
}
