//! Buchberger's algorithm with the Gebauer-Möller pair update and the normal
//! selection strategy, plus normal forms against a reduced basis.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{Polynomial, Ring};

type Term = (Monomial, Coeff);

/// A reduced, monic Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    fingerprint: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }

    /// Normal form of `p` after moving it into the basis ring.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.to_ring(&self.ring)?;
        normal_form(&p, self)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Remainder of `p` on division by `basis`: no term of the result is divisible
/// by a leading monomial of the basis.
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if !p.ring().same_space(&basis.ring) {
        return Err(AlgebraError::RingMismatch);
    }
    if p.ring().order() != basis.order() {
        return Err(AlgebraError::OrderMismatch);
    }
    let refs: Vec<&Polynomial> = basis.generators.iter().collect();
    Ok(reduce_full(&basis.ring, p.clone(), &refs))
}

fn to_ascending(p: Polynomial) -> Vec<Term> {
    let mut t = p.into_terms();
    t.reverse();
    t
}

/// `a - c*m*(g without its leading term)` where `a` is ascending.
fn sub_mul_tail(ring: &Ring, a: Vec<Term>, g: &Polynomial, m: &Monomial, c: &Coeff) -> Vec<Term> {
    let f = ring.field();
    let negc = f.neg(c);
    let gt = &g.terms()[1..];
    let mut out = Vec::with_capacity(a.len() + gt.len());
    let mut ai = a.into_iter().peekable();
    let mut bi = gt.iter().rev().map(|(n, d)| (n.mul(m), f.mul(&negc, d))).peekable();
    loop {
        let ord = match (ai.peek(), bi.peek()) {
            (Some(x), Some(y)) => ring.cmp_monomials(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ai.next().unwrap()),
            Ordering::Greater => out.push(bi.next().unwrap()),
            Ordering::Equal => {
                let (mx, cx) = ai.next().unwrap();
                let (_, cy) = bi.next().unwrap();
                let s = f.add(&cx, &cy);
                if !f.is_zero(&s) {
                    out.push((mx, s));
                }
            }
        }
    }
    out
}

fn find_reducer<'a>(basis: &[&'a Polynomial], m: &Monomial) -> Option<&'a Polynomial> {
    basis.iter().copied().find(|g| g.leading_monomial().map(|l| l.divides(m)).unwrap_or(false))
}

/// Full reduction (leading and tail terms).
fn reduce_full(ring: &Arc<Ring>, p: Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let f = ring.field();
    let mut work = to_ascending(p);
    let mut rem: Vec<Term> = Vec::new();
    while let Some((lm, lc)) = work.pop() {
        match find_reducer(basis, &lm) {
            Some(g) => {
                let q = lm.div(g.leading_monomial().unwrap()).unwrap();
                let c = f.div(&lc, g.leading_coeff().unwrap()).expect("nonzero leading coefficient");
                work = sub_mul_tail(ring, work, g, &q, &c);
            }
            None => rem.push((lm, lc)),
        }
    }
    Polynomial::from_sorted(ring, rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u64,
}

struct Engine {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    processed: usize,
    unit: bool,
}

impl Engine {
    fn new(ring: Arc<Ring>) -> Self {
        Engine { ring, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), processed: 0, unit: false }
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn actives(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn reduce(&self, p: Polynomial) -> Polynomial {
        let basis = self.actives();
        reduce_full(&self.ring, p, &basis)
    }

    /// Insert an element known to need no pairs with the current actives
    /// (used to seed from an existing basis).
    fn seed(&mut self, p: Polynomial) {
        self.polys.push(p);
        self.active.push(true);
    }

    /// Gebauer-Möller update with a new, fully reduced, monic element.
    fn insert(&mut self, h: Polynomial) {
        if h.is_constant() {
            self.unit = true;
        }
        let k = self.polys.len();
        self.polys.push(h);
        self.active.push(false);
        let hlm = self.lm(k).clone();
        let weights = self.ring.weights().to_vec();

        let mut cands: Vec<(usize, Monomial)> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lm(g).lcm(&hlm)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !cands.is_empty() {
            let (g1, l1) = cands.remove(0);
            let coprime = self.lm(g1).is_coprime(&hlm);
            let dominated = cands.iter().any(|(_, l2)| l2.divides(&l1)) || kept.iter().any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !self.lm(*g).is_coprime(&hlm))
            .map(|(g, l)| Pair { i: g, j: k, deg: l.weighted_degree(&weights), lcm: l })
            .collect();

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !hlm.divides(&p.lcm) || lm(p.i).lcm(&hlm) == p.lcm || lm(p.j).lcm(&hlm) == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..k {
            if self.active[g] && hlm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[k] = true;
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for idx in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[idx], &self.pairs[best]);
            let ord = a
                .deg
                .cmp(&b.deg)
                .then_with(|| ring.cmp_monomials(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Polynomial {
        let (gi, gj) = (&self.polys[p.i], &self.polys[p.j]);
        let mi = p.lcm.div(gi.leading_monomial().unwrap()).unwrap();
        let mj = p.lcm.div(gj.leading_monomial().unwrap()).unwrap();
        let f = self.ring.field();
        // both monic: s = mi*gi - mj*gj with leading terms cancelled
        let mut a: Vec<Term> = gi.terms()[1..].iter().rev().map(|(n, c)| (n.mul(&mi), c.clone())).collect();
        a = sub_mul_tail(&self.ring, a, gj, &mj, &f.one());
        a.reverse();
        Polynomial::from_sorted(&self.ring, a)
    }

    fn run(&mut self) -> Result<()> {
        let limit = self.ring.pair_limit();
        while !self.unit {
            let Some(pair) = self.pop_pair() else { break };
            self.processed += 1;
            if self.processed > limit {
                return Err(AlgebraError::Resource(format!(
                    "basis computation exceeded {limit} S-pairs"
                )));
            }
            let s = self.spoly(&pair);
            let r = self.reduce(s);
            if !r.is_zero() {
                self.insert(r.monic());
            }
        }
        Ok(())
    }

    fn finish(self) -> GroebnerBasis {
        let ring = self.ring.clone();
        if self.unit {
            return make_basis(ring.clone(), vec![Polynomial::one(&ring)]);
        }
        let mut act: Vec<Polynomial> = self.actives().into_iter().cloned().collect();
        act.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let mut out = Vec::with_capacity(act.len());
        for (idx, g) in act.iter().enumerate() {
            let others: Vec<&Polynomial> = act.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, p)| p).collect();
            let lead = g.terms()[0].clone();
            let tail = Polynomial::from_sorted(&ring, g.terms()[1..].to_vec());
            let mut t = reduce_full(&ring, tail, &others).into_terms();
            t.insert(0, lead);
            out.push(Polynomial::from_sorted(&ring, t).monic());
        }
        make_basis(ring, out)
    }
}

fn make_basis(ring: Arc<Ring>, generators: Vec<Polynomial>) -> GroebnerBasis {
    let mut h = DefaultHasher::new();
    ring.vars().hash(&mut h);
    ring.order().hash(&mut h);
    for g in &generators {
        g.hash(&mut h);
    }
    GroebnerBasis { ring, generators, fingerprint: h.finish() }
}

fn prepare(gens: &[Polynomial], ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let mut v = Vec::with_capacity(gens.len());
    for g in gens {
        let p = g.to_ring(ring)?;
        if !p.is_zero() {
            v.push(p);
        }
    }
    let w = ring.weights().to_vec();
    v.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        la.weighted_degree(&w).cmp(&lb.weighted_degree(&w)).then_with(|| ring.cmp_monomials(la, lb))
    });
    Ok(v)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(AlgebraError::InvalidArgument("no generators given; use buchberger_in for the zero ideal".into()));
    };
    buchberger_in(first.ring(), gens, order)
}

/// Like [`buchberger`] but with an explicit ring, so an empty generator list
/// gives the (empty) basis of the zero ideal.
pub fn buchberger_in(ring: &Arc<Ring>, gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let ring = ring.with_order(order.clone());
    let gens = prepare(gens, &ring)?;
    let mut eng = Engine::new(ring);
    for g in gens {
        let r = eng.reduce(g);
        if !r.is_zero() {
            eng.insert(r.monic());
        }
        if eng.unit {
            break;
        }
    }
    eng.run()?;
    Ok(eng.finish())
}

/// Basis of `base + <extra>`, reusing the fact that `base` is already a Gröbner basis.
pub fn extend(base: &GroebnerBasis, extra: &[Polynomial]) -> Result<GroebnerBasis> {
    let ring = base.ring.clone();
    let extra = prepare(extra, &ring)?;
    let mut eng = Engine::new(ring);
    for g in &base.generators {
        eng.seed(g.clone());
    }
    eng.unit = base.is_unit();
    for g in extra {
        if eng.unit {
            break;
        }
        let r = eng.reduce(g);
        if !r.is_zero() {
            eng.insert(r.monic());
        }
    }
    eng.run()?;
    Ok(eng.finish())
}
