//! Good q-filtrations on `M = R/I`, stored through their lifts to `R`.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};

/// Default bound on filtration indices explored by searches.
pub const DEFAULT_MAX_N: usize = 50;
/// Default bound on the exponent `k` in `M_{n+k} : q^k`.
pub const DEFAULT_MAX_K: u32 = 20;

#[derive(Clone, Debug)]
pub enum FiltrationKind {
    /// `M_n = (I + q^n)/I`.
    Adic { q: Ideal },
    /// `M_n = chain[n]` up to the end of the chain, then `q^{n-last} chain[last] + I`.
    Explicit { chain: Vec<Ideal>, tail: Ideal },
}

struct Inner {
    defining: Ideal,
    kind: FiltrationKind,
    levels: Mutex<Vec<Ideal>>,
    stability: OnceLock<usize>,
    positive_depth: OnceLock<bool>,
}

/// A good filtration of `R/I`. Levels are memoized; clones share the memo.
#[derive(Clone)]
pub struct Filtration {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for Filtration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.inner.kind {
            FiltrationKind::Adic { q } => write!(f, "adic({}) mod ({})", q.format(), self.inner.defining.format()),
            FiltrationKind::Explicit { chain, tail } => {
                write!(f, "explicit[{} levels, tail ({})] mod ({})", chain.len(), tail.format(), self.inner.defining.format())
            }
        }
    }
}

fn require_homogeneous(id: &Ideal, what: &str) -> Result<()> {
    if id.is_homogeneous() {
        Ok(())
    } else {
        Err(AlgebraError::NotHomogeneous(format!("{what} ({}) must be homogeneous", id.format())))
    }
}

impl Filtration {
    /// The q-adic filtration on `R/I`; `q` must be primary to the maximal ideal modulo `I`.
    pub fn adic(defining: &Ideal, q: &Ideal) -> Result<Filtration> {
        require_homogeneous(defining, "defining ideal")?;
        require_homogeneous(q, "filtration ideal")?;
        if q.gens().iter().any(|g| g.is_constant()) {
            return Err(AlgebraError::InvalidArgument("filtration ideal must be proper".into()));
        }
        if defining.sum(q)?.krull_dim()? != 0 {
            return Err(AlgebraError::InvalidArgument(format!(
                "({}) is not primary to the maximal ideal modulo ({})",
                q.format(),
                defining.format()
            )));
        }
        Ok(Self::build(defining.clone(), FiltrationKind::Adic { q: q.clone() }))
    }

    /// An explicit good filtration: `chain[0]` must be the unit ideal, the chain
    /// decreasing with `q chain[n] ⊆ chain[n+1]`. Levels are lifted by adding `I`.
    pub fn explicit(defining: &Ideal, chain: Vec<Ideal>, tail: &Ideal) -> Result<Filtration> {
        require_homogeneous(defining, "defining ideal")?;
        require_homogeneous(tail, "filtration ideal")?;
        if chain.is_empty() || !chain[0].is_unit()? {
            return Err(AlgebraError::InvalidArgument("an explicit chain starts with the unit ideal".into()));
        }
        if defining.sum(tail)?.krull_dim()? != 0 {
            return Err(AlgebraError::InvalidArgument("tail ideal is not primary to the maximal ideal".into()));
        }
        let mut lifted = Vec::with_capacity(chain.len());
        for c in &chain {
            require_homogeneous(c, "chain ideal")?;
            lifted.push(defining.sum(c)?.minimized()?);
        }
        for n in 0..lifted.len().saturating_sub(1) {
            if !lifted[n].contains_ideal(&lifted[n + 1])? {
                return Err(AlgebraError::InvalidArgument(format!("chain is not decreasing at index {n}")));
            }
            let qm = tail.product(&lifted[n])?;
            if !lifted[n + 1].contains_ideal(&qm)? {
                return Err(AlgebraError::InvalidArgument(format!("q M_{n} is not inside M_{}", n + 1)));
            }
        }
        Ok(Self::build(defining.clone(), FiltrationKind::Explicit { chain: lifted, tail: tail.clone() }))
    }

    fn build(defining: Ideal, kind: FiltrationKind) -> Filtration {
        let ring = defining.ring().clone();
        Filtration {
            inner: Arc::new(Inner {
                defining,
                kind,
                levels: Mutex::new(vec![Ideal::unit(&ring)]),
                stability: OnceLock::new(),
                positive_depth: OnceLock::new(),
            }),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.inner.defining.ring()
    }

    pub fn defining(&self) -> &Ideal {
        &self.inner.defining
    }

    pub fn kind(&self) -> &FiltrationKind {
        &self.inner.kind
    }

    pub fn is_adic(&self) -> bool {
        matches!(self.inner.kind, FiltrationKind::Adic { .. })
    }

    /// The ideal `q` with `q M_n = M_{n+1}` for large `n`.
    pub fn q(&self) -> &Ideal {
        match &self.inner.kind {
            FiltrationKind::Adic { q } => q,
            FiltrationKind::Explicit { tail, .. } => tail,
        }
    }

    /// Lift of `M_n` to `R`; always contains `I`, and `M_0` lifts to the unit ideal.
    pub fn level(&self, n: usize) -> Result<Ideal> {
        {
            let lv = self.inner.levels.lock().expect("level lock");
            if let Some(l) = lv.get(n) {
                return Ok(l.clone());
            }
        }
        let mut k = self.inner.levels.lock().expect("level lock").len();
        while k <= n {
            let prev = self.inner.levels.lock().expect("level lock")[k - 1].clone();
            let next = match &self.inner.kind {
                FiltrationKind::Explicit { chain, .. } if k < chain.len() => chain[k].clone(),
                _ => self.next_level(&prev)?,
            };
            let mut lv = self.inner.levels.lock().expect("level lock");
            if lv.len() == k {
                lv.push(next);
            }
            k = lv.len();
        }
        Ok(self.inner.levels.lock().expect("level lock")[n].clone())
    }

    /// `I + q·L`, extending the basis of `I`.
    fn next_level(&self, prev: &Ideal) -> Result<Ideal> {
        let q = self.q();
        let pg = prev.gb()?;
        let mut extra = Vec::with_capacity(q.gens().len() * pg.len());
        for f in q.gens() {
            for g in pg.generators() {
                extra.push(f.try_mul(&g.to_ring(f.ring())?)?);
            }
        }
        self.inner.defining.extend_with(&extra)
    }

    /// `I + J·M_n` lifted, for an ideal `J`.
    pub fn times_level(&self, j: &Ideal, n: usize) -> Result<Ideal> {
        let l = self.level(n)?;
        let lg = l.gb()?;
        let mut extra = Vec::new();
        for f in j.gens() {
            for g in lg.generators() {
                extra.push(f.try_mul(&g.to_ring(f.ring())?)?);
            }
        }
        self.inner.defining.extend_with(&extra)
    }

    /// The filtration `{(M_n + (elems)M)/(elems)M}` on `R/(I + elems)`.
    pub fn quotient_filtration(&self, elems: &[Polynomial]) -> Result<Filtration> {
        if elems.is_empty() {
            return Ok(self.clone());
        }
        let m1 = self.level(1)?;
        for e in elems {
            if !m1.contains(e)? {
                return Err(AlgebraError::NotContained(format!("{} is not in q", e.format())));
            }
        }
        let defining = self.inner.defining.add_gens(elems)?.minimized()?;
        match &self.inner.kind {
            FiltrationKind::Adic { q } => Ok(Self::build(defining, FiltrationKind::Adic { q: q.clone() })),
            FiltrationKind::Explicit { chain, tail } => {
                let mut c = Vec::with_capacity(chain.len());
                for l in chain {
                    c.push(l.add_gens(elems)?.minimized()?);
                }
                Ok(Self::build(defining, FiltrationKind::Explicit { chain: c, tail: tail.clone() }))
            }
        }
    }

    /// Least `n0` with `q M_n = M_{n+1}` for every `n >= n0`.
    pub fn stability_index(&self, max_n: usize) -> Result<usize> {
        if let Some(&s) = self.inner.stability.get() {
            return Ok(s);
        }
        let s = match &self.inner.kind {
            FiltrationKind::Adic { .. } => 0,
            FiltrationKind::Explicit { chain, .. } => {
                let last = chain.len() - 1;
                if last > max_n {
                    return Err(AlgebraError::Resource(format!("chain longer than max-n = {max_n}")));
                }
                // beyond the chain the tail rule holds by definition
                let mut n0 = last;
                while n0 > 0 {
                    let qm = self.times_level(self.q(), n0 - 1)?;
                    if !qm.equals(&self.level(n0)?)? {
                        break;
                    }
                    n0 -= 1;
                }
                n0
            }
        };
        Ok(*self.inner.stability.get_or_init(|| s))
    }

    /// Whether `R/I` has positive depth, decided by `I : m^∞ = I`.
    pub fn has_positive_depth(&self) -> Result<bool> {
        if let Some(&b) = self.inner.positive_depth.get() {
            return Ok(b);
        }
        let b = positive_depth(&self.inner.defining)?;
        Ok(*self.inner.positive_depth.get_or_init(|| b))
    }

    /// `M̃_n = (M_{n+k} : q^k)` for the least `k` where two consecutive values agree.
    pub fn ratliff_rush(&self, n: usize, max_k: u32) -> Result<(Ideal, u32)> {
        if !self.has_positive_depth()? {
            return Err(AlgebraError::InvalidArgument("Ratliff-Rush closure needs depth M > 0".into()));
        }
        let q = self.q();
        let mut prev = self.level(n + 1)?.quotient(q)?.minimized()?;
        for k in 2..=max_k {
            let cur = self.level(n + k as usize)?.quotient_power(q, k)?.minimized()?;
            if cur.equals(&prev)? {
                return Ok((prev, k - 1));
            }
            prev = cur;
        }
        Err(AlgebraError::Resource(format!("Ratliff-Rush closure of M_{n} did not stabilize within k = {max_k}")))
    }

    /// The Ratliff-Rush filtration as an explicit chain, cut where `M̃_n = M_n`
    /// holds on `window` consecutive indices past the stability index.
    pub fn ratliff_rush_filtration(&self, max_n: usize, max_k: u32, window: usize) -> Result<RatliffRushResult> {
        let n0 = self.stability_index(max_n)?;
        let mut tilde = vec![self.level(0)?];
        let mut exps = vec![0u32];
        let mut run = 0usize;
        let mut n = 1;
        while n <= max_n {
            let (t, k) = self.ratliff_rush(n, max_k)?;
            let same = t.equals(&self.level(n)?)?;
            tilde.push(t);
            exps.push(k);
            run = if same { run + 1 } else { 0 };
            if run >= window && n >= n0 + window {
                let keep = n + 1 - run;
                tilde.truncate(keep + 1);
                exps.truncate(keep + 1);
                let filtration = Filtration::explicit(&self.inner.defining, tilde.clone(), self.q())?;
                return Ok(RatliffRushResult { filtration, tilde, exponents: exps, agrees_from: keep });
            }
            n += 1;
        }
        Err(AlgebraError::Resource(format!("Ratliff-Rush filtration did not meet the original within n = {max_n}")))
    }
}

/// The Ratliff-Rush filtration with its per-level stabilization exponents.
#[derive(Clone, Debug)]
pub struct RatliffRushResult {
    pub filtration: Filtration,
    pub tilde: Vec<Ideal>,
    pub exponents: Vec<u32>,
    /// `M̃_n = M_n` for every checked `n >= agrees_from`.
    pub agrees_from: usize,
}

/// `depth R/I > 0`, i.e. the maximal ideal is not associated. Tries a few
/// linear forms first and falls back to `I : m = I`.
pub fn positive_depth(defining: &Ideal) -> Result<bool> {
    let ring = defining.ring();
    if defining.is_unit()? {
        return Ok(false);
    }
    if ring.is_standard_graded() && defining.is_homogeneous() {
        for seed in 0..3u64 {
            let l = crate::superficial::random_linear_form(ring, seed);
            if defining.quotient_by(&l)?.equals(defining)? {
                return Ok(true);
            }
        }
    }
    let m = Ideal::maximal(ring);
    Ok(defining.quotient(&m)?.equals(defining)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoeffField::default()).unwrap()
    }

    #[test]
    fn adic_levels() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        assert!(f.level(0).unwrap().is_unit().unwrap());
        assert!(f.level(2).unwrap().equals(&Ideal::parse(&r, "x^2, x*y, y^2").unwrap()).unwrap());
        assert_eq!(f.stability_index(10).unwrap(), 0);
    }

    #[test]
    fn adic_needs_primary_ideal() {
        let r = ring(&["x", "y"]);
        assert!(Filtration::adic(&Ideal::zero(&r), &Ideal::parse(&r, "x").unwrap()).is_err());
        assert!(Filtration::adic(&Ideal::parse(&r, "y").unwrap(), &Ideal::parse(&r, "x").unwrap()).is_ok());
    }

    #[test]
    fn explicit_tail_rule() {
        let r = ring(&["x", "y"]);
        let q = Ideal::parse(&r, "x^2, y^2").unwrap();
        let q1 = Ideal::parse(&r, "x^2, x*y, y^2").unwrap();
        let f = Filtration::explicit(&Ideal::zero(&r), vec![Ideal::unit(&r), q1.clone()], &q).unwrap();
        assert!(f.level(2).unwrap().equals(&q.product(&q1).unwrap()).unwrap());
        // a non-decreasing chain is rejected
        assert!(Filtration::explicit(&Ideal::zero(&r), vec![Ideal::unit(&r), q.clone(), q1], &q).is_err());
    }

    #[test]
    fn quotient_filtration_adds_elements() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let x = Polynomial::var(&r, 0);
        let g = f.quotient_filtration(&[x.clone()]).unwrap();
        assert!(g.defining().equals(&Ideal::parse(&r, "x").unwrap()).unwrap());
        assert!(g.is_adic());
        assert!(f.quotient_filtration(&[Polynomial::one(&r)]).is_err());
        assert!(f.quotient_filtration(&[]).unwrap().defining().is_zero());
    }

    #[test]
    fn ratliff_rush_of_monomial_ideal() {
        let r = ring(&["x", "y"]);
        let q = Ideal::parse(&r, "x^4, x^3*y, x*y^3, y^4").unwrap();
        let f = Filtration::adic(&Ideal::zero(&r), &q).unwrap();
        let (t, _) = f.ratliff_rush(1, DEFAULT_MAX_K).unwrap();
        assert!(t.contains(&crate::parse::parse_polynomial(&r, "x^2*y^2").unwrap()).unwrap());
        let m = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let (t, _) = m.ratliff_rush(2, DEFAULT_MAX_K).unwrap();
        assert!(t.equals(&m.level(2).unwrap()).unwrap());

        let rr = f.ratliff_rush_filtration(DEFAULT_MAX_N, DEFAULT_MAX_K, 2).unwrap();
        assert!(rr.filtration.stability_index(DEFAULT_MAX_N).unwrap() >= 1);
    }

    #[test]
    fn depth_zero_is_rejected() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::parse(&r, "x^2, x*y").unwrap(), &Ideal::maximal(&r)).unwrap();
        assert!(!f.has_positive_depth().unwrap());
        assert!(f.ratliff_rush(1, 5).is_err());
    }
}
