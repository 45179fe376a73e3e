//! Ideals with memoized Gröbner bases, ideal arithmetic, and the graded
//! invariants of quotients: Krull dimension, Hilbert series, colength.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::groebner::{buchberger_in, GroebnerBasis};
use crate::hilbert_series::{finite_length, numerator, numerator_univariate, GradedHilbert, Poly2};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::parse::{parse_polynomial, ParseError};
use crate::poly::{Polynomial, Ring};

struct Inner {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    bases: Mutex<HashMap<TermOrder, Arc<GroebnerBasis>>>,
    hilbert: OnceLock<GradedHilbert>,
}

/// An ideal of a polynomial ring, given by generators. Cheap to clone; clones
/// share the basis cache.
#[derive(Clone)]
pub struct Ideal {
    inner: Arc<Inner>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.format())
    }
}

impl Ideal {
    /// Generators are moved into `ring` (which fixes the default order); zeros are dropped.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut v = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.to_ring(ring)?;
            if !g.is_zero() {
                v.push(g);
            }
        }
        Ok(Self::from_ring_gens(ring, v))
    }

    fn from_ring_gens(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ideal {
            inner: Arc::new(Inner {
                ring: ring.clone(),
                gens,
                homogeneous,
                bases: Mutex::new(HashMap::new()),
                hilbert: OnceLock::new(),
            }),
        }
    }

    /// The ideal generated by a known reduced basis (seeds the cache).
    pub fn from_basis(gb: Arc<GroebnerBasis>) -> Ideal {
        let ring = gb.ring().with_order(TermOrder::grevlex());
        let gens: Vec<Polynomial> = gb.generators().iter().map(|g| g.to_ring(&ring).expect("same space")).collect();
        let id = Self::from_ring_gens(&ring, gens);
        id.inner.bases.lock().expect("cache lock").insert(gb.order().clone(), gb);
        id
    }

    /// `self + <extra>` computed by extending the cached basis of `self`.
    pub fn extend_with(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let gb = self.gb()?;
        let ext = crate::groebner::extend(&gb, extra)?;
        let ring = self.inner.ring.clone();
        let gens: Vec<Polynomial> = ext.generators().iter().map(|g| g.to_ring(&ring).expect("same space")).collect();
        let id = Self::from_ring_gens(&ring, gens);
        id.inner.bases.lock().expect("cache lock").insert(ring.order().clone(), Arc::new(ext));
        Ok(id)
    }

    /// Parse a comma-separated generator list such as `"x^2, x*y"`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> std::result::Result<Ideal, ParseError> {
        let mut gens = Vec::new();
        let mut offset = 0;
        for piece in split_top_level(text) {
            if !piece.trim().is_empty() {
                let p = parse_polynomial(ring, piece)
                    .map_err(|e| ParseError { col: e.col + offset, msg: e.msg })?;
                gens.push(p);
            }
            offset += piece.chars().count() + 1;
        }
        Ok(Self::from_ring_gens(ring, gens.into_iter().filter(|g| !g.is_zero()).collect()))
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Self::from_ring_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Self::from_ring_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<Ring>) -> Ideal {
        Self::from_ring_gens(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.inner.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.inner.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inner.homogeneous
    }

    pub fn format(&self) -> String {
        if self.inner.gens.is_empty() {
            return "0".into();
        }
        self.inner.gens.iter().map(|g| g.format()).collect::<Vec<_>>().join(", ")
    }

    /// Reduced Gröbner basis under `order`, memoized.
    pub fn groebner(&self, order: &TermOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.inner.bases.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger_in(&self.inner.ring, &self.inner.gens, order)?);
        self.inner.bases.lock().expect("cache lock").entry(order.clone()).or_insert(gb.clone());
        Ok(gb)
    }

    /// Basis under the ring's own order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(self.inner.ring.order())
    }

    /// A copy generated by the reduced basis (smaller generating sets for later steps).
    pub fn minimized(&self) -> Result<Ideal> {
        let gb = self.gb()?;
        let id = Self::from_ring_gens(&self.inner.ring, gb.generators().to_vec());
        id.inner.bases.lock().expect("cache lock").insert(self.inner.ring.order().clone(), gb);
        Ok(id)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.inner.ring.same_space(&other.inner.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.inner.gens.is_empty()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.gb()?.contains(p)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.gb()?;
        for g in other.gens() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let a = self.gb()?;
        let b = other.groebner(self.inner.ring.order())?;
        Ok(a.generators() == b.generators())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = self.inner.gens.clone();
        for p in other.gens() {
            g.push(p.to_ring(&self.inner.ring)?);
        }
        Ok(Self::from_ring_gens(&self.inner.ring, dedup(g)))
    }

    pub fn add_gens(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let other = Ideal::new(&self.inner.ring, extra.to_vec())?;
        self.sum(&other)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = Vec::with_capacity(self.inner.gens.len() * other.gens().len());
        for a in self.gens() {
            for b in other.gens() {
                g.push(a.try_mul(&b.to_ring(&self.inner.ring)?)?);
            }
        }
        Ok(Self::from_ring_gens(&self.inner.ring, dedup(g)))
    }

    /// `A^n` with `A^0` the unit ideal.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.inner.ring);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `A ∩ B` through one auxiliary variable `w`: eliminate `w` from `w·A + (1-w)·B`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let ring = &self.inner.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        if self.is_unit()? {
            return Ideal::new(ring, other.gens().to_vec());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let w = ring.fresh_name("w");
        let big = ring.prepend(&[w], &[1])?;
        let n = ring.nvars();
        let shift: Vec<usize> = (1..=n).collect();
        let wv = Polynomial::var(&big, 0);
        let one_minus_w = &Polynomial::one(&big) - &wv;
        let mut gens = Vec::new();
        for a in self.gens() {
            gens.push(&wv * &a.remap(&big, &shift));
        }
        for b in other.gens() {
            gens.push(&one_minus_w * &b.remap(&big, &shift));
        }
        let both = Ideal::new(&big, gens)?;
        both.eliminate(1, ring)
    }

    /// `A ∩ k[x_{k+1}..]`, for an ideal whose first `k` variables are eliminated,
    /// returned in `target` (which must be the ring without those variables, up to order).
    pub fn eliminate(&self, k: usize, target: &Arc<Ring>) -> Result<Ideal> {
        let ring = &self.inner.ring;
        let order = TermOrder::block(k, target.order().clone());
        let gb = self.groebner(&order)?;
        let back: Vec<usize> = (0..ring.nvars()).map(|i| i.saturating_sub(k)).collect();
        let mut out = Vec::new();
        for g in gb.generators() {
            if g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)) {
                out.push(g.remap(target, &back));
            }
        }
        Ideal::new(target, out)
    }

    /// `A : B`, the intersection of `A : b` over the generators of `B`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for b in other.gens() {
            let c = self.quotient_by(b)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?.minimized()?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.inner.ring)))
    }

    /// `A : f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        let ring = self.inner.ring.clone();
        let f = f.to_ring(&ring)?;
        if f.is_zero() {
            return Err(AlgebraError::InvalidArgument("colon by the zero polynomial".into()));
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_unit()? {
            return Ok(Ideal::unit(&ring));
        }
        if self.is_homogeneous() {
            if f.len() == 1 {
                let mut acc = self.clone();
                let m = f.leading_monomial().unwrap().clone();
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        acc = acc.quotient_by_var(i, false)?;
                    }
                }
                return Ok(acc);
            }
            if let Some(k) = linear_pivot(&f) {
                return self.quotient_by_linear(&f, k, false);
            }
        }
        let fi = Ideal::new(&ring, vec![f.clone()])?;
        let meet = self.intersection(&fi)?;
        let mut gens = Vec::with_capacity(meet.gens().len());
        for g in meet.gens() {
            gens.push(g.div_exact(&f)?);
        }
        Ideal::new(&ring, gens)?.minimized()
    }

    /// `A : x_i` (or `A : x_i^∞` when `saturate`) for homogeneous `A`: in reverse
    /// lexicographic order with `x_i` last, divide basis elements by `x_i`.
    fn quotient_by_var(&self, i: usize, saturate: bool) -> Result<Ideal> {
        let ring = &self.inner.ring;
        let n = ring.nvars();
        // position map: variable j of `ring` -> position in the permuted ring
        let map: Vec<usize> = (0..n).map(|j| if j == i { n - 1 } else if j < i { j } else { j - 1 }).collect();
        let mut vars = vec![String::new(); n];
        let mut weights = vec![0u32; n];
        for j in 0..n {
            vars[map[j]] = ring.vars()[j].clone();
            weights[map[j]] = ring.weights()[j];
        }
        let perm = Ring::with_weights(&vars, &weights, ring.field().clone())?.with_pair_limit(ring.pair_limit());
        let gens: Vec<Polynomial> = self.gens().iter().map(|g| g.remap(&perm, &map)).collect();
        let gb = buchberger_in(&perm, &gens, &TermOrder::grevlex())?;
        let mut inv = vec![0usize; n];
        for j in 0..n {
            inv[map[j]] = j;
        }
        let mut out = Vec::with_capacity(gb.len());
        for g in gb.generators() {
            let e = g.terms().iter().map(|(m, _)| m.exps()[n - 1]).min().unwrap_or(0);
            let k = if saturate { e } else { e.min(1) };
            let terms: Vec<(Monomial, _)> = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut ex = m.exps().to_vec();
                    ex[n - 1] -= k;
                    (Monomial::from_exps_unchecked(ex), c.clone())
                })
                .collect();
            let p = Polynomial::from_terms(&perm, terms);
            out.push(p.remap(ring, &inv));
        }
        Ideal::new(ring, out)?.minimized()
    }

    /// Colon by a linear form `f` with nonzero coefficient on variable `k`:
    /// change coordinates so that `f` becomes `x_k`.
    fn quotient_by_linear(&self, f: &Polynomial, k: usize, saturate: bool) -> Result<Ideal> {
        let ring = &self.inner.ring;
        let fld = ring.field();
        let ck = linear_coeff(f, k).expect("pivot coefficient");
        let inv = fld.inv(&ck)?;
        // x_k -> (x_k - sum_{j != k} c_j x_j) / c_k
        let xk = Polynomial::var(ring, k);
        let others = f - &xk.scale(&ck);
        let forward = (&xk - &others).scale(&inv);
        let there: Vec<Polynomial> = self.gens().iter().map(|g| substitute_var(g, k, &forward)).collect::<Result<_>>()?;
        let moved = Ideal::new(ring, there)?;
        let col = moved.quotient_by_var(k, saturate)?;
        let back: Vec<Polynomial> = col.gens().iter().map(|g| substitute_var(g, k, f)).collect::<Result<_>>()?;
        Ideal::new(ring, back)?.minimized()
    }

    /// `A : f^∞`.
    pub fn saturation_by(&self, f: &Polynomial) -> Result<Ideal> {
        let ring = self.inner.ring.clone();
        let f = f.to_ring(&ring)?;
        if self.is_homogeneous() && f.len() == 1 && f.leading_monomial().unwrap().degree() == 1 {
            let i = f.leading_monomial().unwrap().support().next().unwrap();
            return self.quotient_by_var(i, true);
        }
        if self.is_homogeneous() {
            if let Some(k) = linear_pivot(&f) {
                return self.quotient_by_linear(&f, k, true);
            }
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient_by(&f)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `A : B^∞`, iterating `A : B` until it stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `A : B^k`.
    pub fn quotient_power(&self, other: &Ideal, k: u32) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.quotient(other)?;
        }
        Ok(cur)
    }

    /// Krull dimension of `R/A` as the largest set of variables independent
    /// modulo the initial ideal; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> Result<i64> {
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.inner.ring.nvars();
        let lms = gb.leading_monomials();
        Ok(max_independent(n, &lms) as i64)
    }

    pub fn hilbert_series(&self) -> Result<GradedHilbert> {
        if let Some(h) = self.inner.hilbert.get() {
            return Ok(h.clone());
        }
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(format!("Hilbert series of ({})", self.format())));
        }
        let gb = self.gb()?;
        let w = self.inner.ring.weights().to_vec();
        let h = GradedHilbert::new(numerator_univariate(&gb.leading_monomials(), &w), w);
        Ok(self.inner.hilbert.get_or_init(|| h).clone())
    }

    /// Numerator of the bigraded series, where variable `i` has bidegree `degs[i]`
    /// (the ideal must be homogeneous for that grading).
    pub fn bigraded_numerator(&self, degs: &[(u64, u64)]) -> Result<Poly2> {
        for g in self.gens() {
            let mut d = g.terms().iter().map(|(m, _)| {
                m.exps().iter().zip(degs).fold((0u64, 0u64), |a, (&e, d)| (a.0 + e as u64 * d.0, a.1 + e as u64 * d.1))
            });
            let first = d.next();
            if d.any(|x| Some(x) != first) {
                return Err(AlgebraError::NotHomogeneous(format!("{} is not bihomogeneous", g.format())));
            }
        }
        let gb = self.gb()?;
        Ok(numerator(&gb.leading_monomials(), degs))
    }
}

/// `λ(A/B)` for homogeneous `B ⊆ A`.
pub fn colength(b: &Ideal, a: &Ideal) -> Result<u64> {
    b.check_ring(a)?;
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous("colength needs homogeneous ideals".into()));
    }
    if !a.contains_ideal(b)? {
        return Err(AlgebraError::NotContained(format!("({}) is not inside ({})", b.format(), a.format())));
    }
    let nb = b.hilbert_series()?;
    let na = a.hilbert_series()?;
    let diff = nb.numerator().sub(na.numerator());
    match finite_length(&diff, b.ring().weights()) {
        Some(v) if v >= 0 => Ok(v as u64),
        Some(v) => Err(AlgebraError::Consistency(format!("negative length {v}"))),
        None => Err(AlgebraError::InfiniteLength(format!("({}) / ({})", a.format(), b.format()))),
    }
}

fn dedup(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if seen.insert(g.monic()) {
            out.push(g);
        }
    }
    out
}

pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn linear_coeff(f: &Polynomial, k: usize) -> Option<crate::field::Coeff> {
    f.terms().iter().find(|(m, _)| m.exps()[k] == 1 && m.degree() == 1).map(|(_, c)| c.clone())
}

/// Variable to pivot on when `f` is a homogeneous linear form.
fn linear_pivot(f: &Polynomial) -> Option<usize> {
    if !f.is_homogeneous() || f.terms().iter().any(|(m, _)| m.degree() != 1) {
        return None;
    }
    f.terms().iter().map(|(m, _)| m.support().next().unwrap()).max()
}

/// Replace variable `k` of `p` by `s`.
pub fn substitute_var(p: &Polynomial, k: usize, s: &Polynomial) -> Result<Polynomial> {
    let ring = p.ring();
    let top = p.terms().iter().map(|(m, _)| m.exps()[k]).max().unwrap_or(0) as usize;
    let mut pows = vec![Polynomial::one(ring)];
    for e in 1..=top {
        let next = pows[e - 1].try_mul(s)?;
        pows.push(next);
    }
    let mut groups: HashMap<u32, Vec<(Monomial, crate::field::Coeff)>> = HashMap::new();
    for (m, c) in p.terms() {
        let mut ex = m.exps().to_vec();
        let e = ex[k];
        ex[k] = 0;
        groups.entry(e).or_default().push((Monomial::from_exps_unchecked(ex), c.clone()));
    }
    let mut acc = Polynomial::zero(ring);
    for (e, terms) in groups {
        let part = Polynomial::from_terms(ring, terms);
        acc = acc.try_add(&part.try_mul(&pows[e as usize])?)?;
    }
    Ok(acc)
}

fn max_independent(n: usize, lms: &[Monomial]) -> usize {
    let supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    let mut best = 0;
    let mut chosen = vec![false; n];
    independent_dfs(0, n, &supports, &mut chosen, 0, &mut best);
    best
}

fn independent_dfs(i: usize, n: usize, sup: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
    if size + (n - i) <= *best {
        return;
    }
    if i == n {
        *best = size;
        return;
    }
    chosen[i] = true;
    // a leading monomial supported inside the chosen set forbids it
    let ok = !sup.iter().any(|s| s.contains(&i) && s.iter().all(|&v| chosen[v]));
    if ok {
        independent_dfs(i + 1, n, sup, chosen, size + 1, best);
    }
    chosen[i] = false;
    independent_dfs(i + 1, n, sup, chosen, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoeffField::default()).unwrap()
    }

    fn id(r: &Arc<Ring>, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        assert!(id(&r, "x^2, x*y").equals(&id(&r, "x^2, x*y, x^2*y")).unwrap());
        assert!(!id(&r, "x").equals(&id(&r, "x^2")).unwrap());
        assert!(id(&r, "x+y, y").equals(&id(&r, "x, y")).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring(&["t", "x"]);
        let x = ring(&["x"]);
        assert!(id(&r, "t - x").eliminate(1, &x).unwrap().is_zero());
        assert!(id(&r, "t*x - 1").eliminate(1, &x).unwrap().is_zero());
        let r = ring(&["t", "x", "y"]);
        let xy = ring(&["x", "y"]);
        let e = id(&r, "y - x*t, t^2").eliminate(1, &xy).unwrap();
        assert!(e.equals(&id(&xy, "y^2")).unwrap());
    }

    #[test]
    fn arithmetic() {
        let r = ring(&["x", "y"]);
        assert!(id(&r, "x").intersection(&id(&r, "y")).unwrap().equals(&id(&r, "x*y")).unwrap());
        assert!(id(&r, "x").product(&id(&r, "x, y")).unwrap().equals(&id(&r, "x^2, x*y")).unwrap());
        assert!(id(&r, "x, y").power(2).unwrap().equals(&id(&r, "x^2, x*y, y^2")).unwrap());
        assert!(id(&r, "x").power(0).unwrap().is_unit().unwrap());
    }

    #[test]
    fn intersection_of_example_components() {
        let r = ring(&["x", "y", "z", "t"]);
        let i = id(&r, "x^2, z^2").intersection(&id(&r, "x-y, z+t")).unwrap();
        for g in i.gens() {
            assert!(id(&r, "x^2, z^2").contains(g).unwrap());
            assert!(id(&r, "x-y, z+t").contains(g).unwrap());
        }
        // x^2 (z+t) and (x-y) z^2 lie in both components
        assert!(i.contains(&parse_polynomial(&r, "x^2*z + x^2*t").unwrap()).unwrap());
        assert!(i.contains(&parse_polynomial(&r, "x*z^2 - y*z^2").unwrap()).unwrap());
        assert!(!i.contains(&parse_polynomial(&r, "x^2").unwrap()).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        assert!(id(&r, "x^2, x*y").quotient(&id(&r, "x")).unwrap().equals(&id(&r, "x, y")).unwrap());
        assert!(id(&r, "x").quotient(&id(&r, "1")).unwrap().equals(&id(&r, "x")).unwrap());
        assert!(id(&r, "x^2, x*y").quotient_by(&Polynomial::zero(&r)).is_err());
        // linear and general paths agree
        let a = id(&r, "x^3, x^2*y + x*y^2");
        let f = parse_polynomial(&r, "x + 2*y").unwrap();
        let lin = a.quotient_by(&f).unwrap();
        let fi = Ideal::new(&r, vec![f.clone()]).unwrap();
        let gen: Vec<Polynomial> = a.intersection(&fi).unwrap().gens().iter().map(|g| g.div_exact(&f).unwrap()).collect();
        assert!(lin.equals(&Ideal::new(&r, gen).unwrap()).unwrap());
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal(&r);
        assert!(id(&r, "x^2, x*y").saturation(&m).unwrap().equals(&id(&r, "x")).unwrap());
        assert!(id(&r, "x").saturation(&m).unwrap().equals(&id(&r, "x")).unwrap());
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(id(&r, "x^2, x*y").krull_dim().unwrap(), 2);
        assert_eq!(id(&r, "1").krull_dim().unwrap(), -1);
        let r2 = ring(&["x", "y"]);
        assert_eq!(Ideal::zero(&r2).krull_dim().unwrap(), 2);
    }

    #[test]
    fn series() {
        let r = ring(&["x", "y", "z"]);
        let h = id(&r, "x^2, x*y").hilbert_series().unwrap();
        assert_eq!(h.h_polynomial().unwrap().0.coeffs(), &[1, 1, -1]);
        assert_eq!(h.dimension(), 2);
        let x = ring(&["x"]);
        let h = id(&x, "x^2").hilbert_series().unwrap();
        assert_eq!(h.total_length(), Some(2));
        assert!(id(&x, "x^2 + x").hilbert_series().is_err());
    }

    #[test]
    fn colengths() {
        let r = ring(&["x", "y"]);
        assert_eq!(colength(&id(&r, "x^2, x*y"), &id(&r, "x")).unwrap(), 1);
        assert_eq!(colength(&id(&r, "x"), &id(&r, "x")).unwrap(), 0);
        assert_eq!(colength(&id(&r, "x, y").power(2).unwrap(), &id(&r, "x, y")).unwrap(), 2);
        assert!(matches!(colength(&id(&r, "x"), &id(&r, "y")), Err(AlgebraError::NotContained(_))));
        assert!(matches!(colength(&id(&r, "x^2"), &id(&r, "x")), Err(AlgebraError::InfiniteLength(_))));
    }

    #[test]
    fn parse_positions_are_global() {
        let r = ring(&["x", "y"]);
        let e = Ideal::parse(&r, "x, y + w").unwrap_err();
        assert_eq!(e.col, 8);
    }
}
