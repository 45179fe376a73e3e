//! Polynomial rings and sparse polynomials over them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoeffField};
use crate::monomial::Monomial;
use crate::order::TermOrder;

/// Default ceiling on the number of S-pairs a single basis computation may treat.
pub const DEFAULT_PAIR_LIMIT: usize = 50_000;

/// A graded polynomial ring `k[x_1..x_n]` together with the term order its
/// polynomials are sorted by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    weights: Vec<u32>,
    field: CoeffField,
    order: TermOrder,
    pair_limit: usize,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: CoeffField) -> Result<Arc<Ring>> {
        let weights = vec![1; vars.len()];
        Self::with_weights(vars, &weights, field)
    }

    pub fn with_weights<S: AsRef<str>>(vars: &[S], weights: &[u32], field: CoeffField) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(AlgebraError::InvalidRing("no variables".into()));
        }
        if weights.len() != vars.len() {
            return Err(AlgebraError::InvalidRing("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::InvalidRing("weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring {
            vars,
            weights: weights.to_vec(),
            field,
            order: TermOrder::grevlex(),
            pair_limit: DEFAULT_PAIR_LIMIT,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn pair_limit(&self) -> usize {
        self.pair_limit
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Same variables, weights and field; the term order may differ.
    pub fn same_space(&self, other: &Ring) -> bool {
        self.vars == other.vars && self.weights == other.weights && self.field == other.field
    }

    pub fn with_order(&self, order: TermOrder) -> Arc<Ring> {
        Arc::new(Ring { order, ..self.clone() })
    }

    pub fn with_pair_limit(&self, pair_limit: usize) -> Arc<Ring> {
        Arc::new(Ring { pair_limit, ..self.clone() })
    }

    pub fn with_field(&self, field: CoeffField) -> Arc<Ring> {
        Arc::new(Ring { field, ..self.clone() })
    }

    /// A ring with extra variables placed in front; weights of the new variables given.
    pub fn prepend(&self, names: &[String], weights: &[u32]) -> Result<Arc<Ring>> {
        let vars: Vec<String> = names.iter().cloned().chain(self.vars.iter().cloned()).collect();
        let w: Vec<u32> = weights.iter().chain(&self.weights).copied().collect();
        let r = Ring::with_weights(&vars, &w, self.field.clone())?;
        Ok(r.with_pair_limit(self.pair_limit))
    }

    /// Drop the first `k` variables (they must not occur in polynomials moved across).
    pub fn drop_prefix(&self, k: usize) -> Result<Arc<Ring>> {
        let r = Ring::with_weights(&self.vars[k..], &self.weights[k..], self.field.clone())?;
        Ok(r.with_pair_limit(self.pair_limit))
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    /// A name not already used by a variable, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.vars.contains(&name) {
            i += 1;
            name = format!("{base}{i}");
        }
        name
    }
}

/// A sparse polynomial: `(monomial, coefficient)` pairs sorted strictly
/// decreasing in the ring's order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_space(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn int(ring: &Arc<Ring>, v: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Build from arbitrary terms: sorts, merges equal monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = f.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted and free of zeros.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Weighted degree of the highest-degree term.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(self.ring.weights())).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_for(self.ring.weights())
    }

    pub fn is_homogeneous_for(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring)
            || (self.ring.same_space(&other.ring) && self.ring.order() == other.ring.order())
        {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push((ma.checked_mul(mb)?, f.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, out))
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), f.mul(c, d))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiply by the term `c * m`; the order is compatible with products so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, d)| (n.mul(m), f.mul(c, d))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Re-sort under `order` (same variables), optionally making the result monic.
    pub fn normalize(&self, order: &TermOrder, monic: bool) -> Polynomial {
        let ring = self.ring.with_order(order.clone());
        let p = Polynomial::from_terms(&ring, self.terms.iter().cloned());
        if monic {
            p.monic()
        } else {
            p
        }
    }

    /// Move into a ring over the same variables, weights and field (re-sorting if the order differs).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if !self.ring.same_space(ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.ring.order() == ring.order() {
            return Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() });
        }
        Ok(Polynomial::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Substitute variables by index: variable `i` becomes variable `map[i]` of `ring`.
    pub fn remap(&self, ring: &Arc<Ring>, map: &[usize]) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.remap(map, n), c.clone())))
    }

    /// Divide out the exact factor `d`; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check(d)?;
        let f = self.ring.field();
        let (dm, dc) = match d.terms.first() {
            Some(t) => t,
            None => return Err(AlgebraError::DivisionByZero),
        };
        let dinv = f.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m.div(dm).ok_or_else(|| AlgebraError::InexactDivision("polynomial quotient".into()))?;
            let qc = f.mul(&c, &dinv);
            rem = rem.merge(&d.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        Ok(Polynomial::from_terms(&self.ring, quot))
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = self.ring.field();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = f.format(c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars()[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars()[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&cs);
            } else {
                if cs != "1" {
                    s.push_str(&cs);
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.format())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the `try_` form to handle that.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect("polynomial operands must share a ring")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
