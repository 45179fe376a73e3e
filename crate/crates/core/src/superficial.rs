//! Superficial elements and sequences, and depth certificates for `M` and `gr(M)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coefficients::gr_presentation_with;
use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoeffField};
use crate::filtration::{positive_depth, Filtration, FiltrationKind};
use crate::hilbert_series::IntPoly;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};

/// Default number of indices a bounded colon check covers.
pub const DEFAULT_COLON_WINDOW: usize = 8;

fn random_coeff(field: &CoeffField, rng: &mut ChaCha8Rng) -> Coeff {
    match field {
        CoeffField::Prime(p) => field.from_i64(rng.gen_range(1..*p as i64)),
        CoeffField::Rationals => {
            let v: i64 = rng.gen_range(1..=97);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

/// Random combination of the variables with nonzero coefficients.
pub fn random_linear_form(ring: &Arc<Ring>, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = ring.field();
    let mut acc = Polynomial::zero(ring);
    for i in 0..ring.nvars() {
        let c = random_coeff(f, &mut rng);
        acc = &acc + &Polynomial::var(ring, i).scale(&c);
    }
    acc
}

/// Random k-linear combination of the generators of `q`, reproducible from `seed`.
pub fn random_superficial_candidate(f: &Filtration, seed: u64) -> Result<Polynomial> {
    let q = f.q();
    let gens = q.gens();
    let Some(first) = gens.first() else {
        return Err(AlgebraError::InvalidArgument("q has no generators".into()));
    };
    let deg = first.degree();
    if gens.iter().any(|g| !g.is_homogeneous() || g.degree() != deg) {
        return Err(AlgebraError::InvalidArgument(
            "random candidates need q generated by forms of a single degree".into(),
        ));
    }
    if gens.len() == 1 {
        return Ok(first.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fld = f.ring().field().clone();
    let mut acc = Polynomial::zero(f.ring());
    for g in gens {
        let c = random_coeff(&fld, &mut rng);
        acc = &acc + &g.scale(&c);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SuperficialMethod {
    GrAnnihilator,
    BoundedColon,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperficialCertificate {
    pub element: Polynomial,
    pub method: SuperficialMethod,
    /// Coefficients of `sum_n dim (0 :_gr a*)_n t^n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator_series: Option<Vec<i64>>,
    /// Bounded evidence: `(M_{n+1} : a) ∩ M_c = M_n` for `n` in `[c, c+window]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub not_in_q_squared: bool,
}

fn check_membership(f: &Filtration, a: &Polynomial) -> Result<()> {
    if !a.is_homogeneous() || a.is_zero() {
        return Err(AlgebraError::NotHomogeneous(format!("{} must be a nonzero form", a.format())));
    }
    if !f.level(1)?.contains(a)? {
        return Err(AlgebraError::NotSuperficial(format!("{} is not in q", a.format())));
    }
    if f.level(2)?.contains(a)? {
        return Err(AlgebraError::NotSuperficial(format!("{} lies in q^2", a.format())));
    }
    Ok(())
}

/// Certify that `a` is superficial for the filtration.
pub fn certify_superficial(f: &Filtration, a: &Polynomial, method: SuperficialMethod, window: Option<usize>) -> Result<SuperficialCertificate> {
    let a = a.to_ring(f.ring())?;
    check_membership(f, &a)?;
    match method {
        SuperficialMethod::GrAnnihilator => {
            let FiltrationKind::Adic { q } = f.kind() else {
                return Err(AlgebraError::InvalidArgument("the annihilator method needs an adic filtration".into()));
            };
            let mut gens = q.gens().to_vec();
            gens.push(a.clone());
            let gp = gr_presentation_with(f.defining(), &gens)?;
            let y = gp.y(gens.len() - 1);
            let colon = gp.ideal.quotient_by(&y)?;
            let diff = gp.specialized_numerator(&gp.ideal)?.sub(&gp.specialized_numerator(&colon)?);
            let series = divide_power(&diff, gp.m()).ok_or_else(|| {
                AlgebraError::NotSuperficial(format!("0 : {}* has infinite length in gr", a.format()))
            })?;
            Ok(SuperficialCertificate {
                element: a,
                method,
                annihilator_series: Some(series.coeffs().to_vec()),
                c: None,
                window: None,
                not_in_q_squared: true,
            })
        }
        SuperficialMethod::BoundedColon => {
            let window = window.unwrap_or(DEFAULT_COLON_WINDOW);
            let ai = Ideal::new(f.ring(), vec![a.clone()])?;
            let mut colons: Vec<Ideal> = Vec::new();
            let colon = |n: usize, colons: &mut Vec<Ideal>| -> Result<Ideal> {
                while colons.len() <= n {
                    let k = colons.len();
                    colons.push(f.level(k + 1)?.quotient(&ai)?);
                }
                Ok(colons[n].clone())
            };
            for c in 0..=window {
                let lc = f.level(c)?;
                let mut ok = true;
                for n in c..=c + window {
                    let meet = colon(n, &mut colons)?.intersection(&lc)?;
                    if !meet.equals(&f.level(n)?)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(SuperficialCertificate {
                        element: a,
                        method,
                        annihilator_series: None,
                        c: Some(c),
                        window: Some(window),
                        not_in_q_squared: true,
                    });
                }
            }
            Err(AlgebraError::NotSuperficial(format!("no c <= {window} satisfies the colon condition for {}", a.format())))
        }
    }
}

fn divide_power(p: &IntPoly, m: usize) -> Option<IntPoly> {
    let mut q = p.clone();
    for _ in 0..m {
        q = q.div_one_minus_tw(1)?;
    }
    Some(q)
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceCertificate {
    pub certificates: Vec<SuperficialCertificate>,
    pub maximal: bool,
}

/// Certify `seq[0]` on `F`, `seq[1]` on `F/seq[0]`, and so on.
pub fn certify_superficial_sequence(f: &Filtration, seq: &[Polynomial], method: SuperficialMethod) -> Result<SequenceCertificate> {
    let d = f.defining().krull_dim()?;
    if seq.len() as i64 > d {
        return Err(AlgebraError::InvalidArgument(format!("sequence of length {} exceeds dim M = {d}", seq.len())));
    }
    let mut cur = f.clone();
    let mut certificates = Vec::with_capacity(seq.len());
    for a in seq {
        certificates.push(certify_superficial(&cur, a, method, None)?);
        cur = cur.quotient_filtration(std::slice::from_ref(a))?;
    }
    Ok(SequenceCertificate { certificates, maximal: seq.len() as i64 == d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DepthTarget {
    Module,
    GrModule,
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthCertificate {
    pub target: DepthTarget,
    pub sequence: Vec<Polynomial>,
    pub depth_lower_bound: usize,
    /// `(n, JM ∩ M_{n+1} = J M_n)`.
    pub vv_checks: Vec<(usize, bool)>,
    /// Whether the Valabrega-Valla range is provably sufficient.
    pub vv_exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_depth: Option<bool>,
}

/// Longest prefix of `seq` that is a regular sequence on `R/I`.
pub fn depth_certificate_module(defining: &Ideal, seq: &[Polynomial]) -> Result<DepthCertificate> {
    let mut a = defining.clone();
    let mut count = 0;
    for s in seq {
        let s = s.to_ring(defining.ring())?;
        if !s.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(format!("{} is not a form", s.format())));
        }
        if !a.quotient_by(&s)?.equals(&a)? {
            break;
        }
        let next = a.add_gens(std::slice::from_ref(&s))?.minimized()?;
        if next.is_unit()? {
            break;
        }
        a = next;
        count += 1;
    }
    let pd = if seq.is_empty() { Some(positive_depth(defining)?) } else { None };
    Ok(DepthCertificate {
        target: DepthTarget::Module,
        sequence: seq.to_vec(),
        depth_lower_bound: if seq.is_empty() { pd.map(|b| b as usize).unwrap_or(0) } else { count },
        vv_checks: Vec::new(),
        vv_exact: false,
        positive_depth: pd,
    })
}

/// Exact depth of `R/I` for a standard graded homogeneous `I`: extend a regular
/// sequence of random linear forms until the maximal ideal becomes associated.
pub fn depth(defining: &Ideal, seed: u64) -> Result<(usize, Vec<Polynomial>)> {
    let ring = defining.ring();
    if !ring.is_standard_graded() || !defining.is_homogeneous() {
        return Err(AlgebraError::InvalidArgument("exact depth needs a standard graded homogeneous ideal".into()));
    }
    if defining.is_unit()? {
        return Err(AlgebraError::InvalidArgument("the zero module has no depth".into()));
    }
    let m = Ideal::maximal(ring);
    let mut a = defining.clone();
    let mut seq = Vec::new();
    let mut s = seed;
    'outer: while seq.len() < ring.nvars() {
        for _ in 0..4 {
            let l = random_linear_form(ring, s);
            s = s.wrapping_add(1);
            if a.quotient_by(&l)?.equals(&a)? {
                a = a.add_gens(std::slice::from_ref(&l))?.minimized()?;
                seq.push(l);
                continue 'outer;
            }
        }
        if !a.quotient(&m)?.equals(&a)? {
            break;
        }
        // m is not associated: some linear form is regular; keep drawing
        let mut found = false;
        for _ in 0..64 {
            let l = random_linear_form(ring, s);
            s = s.wrapping_add(1);
            if a.quotient_by(&l)?.equals(&a)? {
                a = a.add_gens(std::slice::from_ref(&l))?.minimized()?;
                seq.push(l);
                found = true;
                break;
            }
        }
        if !found {
            return Err(AlgebraError::Resource("no regular linear form found".into()));
        }
    }
    Ok((seq.len(), seq))
}

/// `A ∩ B = C` for `C ⊆ A ∩ B`; homogeneous inputs compare Hilbert series
/// through `H(A ∩ B) = H(A) + H(B) - H(A + B)`.
pub fn vv_holds(a: &Ideal, b: &Ideal, c: &Ideal) -> Result<bool> {
    if a.is_homogeneous() && b.is_homogeneous() && c.is_homogeneous() {
        let n = |i: &Ideal| -> Result<IntPoly> { Ok(i.hilbert_series()?.numerator().clone()) };
        return Ok(n(a)?.add(&n(b)?).sub(&n(&a.sum(b)?)?) == n(c)?);
    }
    a.intersection(b)?.equals(c)
}

/// Depth of `gr(M)` along `seq`: iterated colon by the `Y` variables of `seq`
/// in the presentation, with the Valabrega-Valla conditions recorded alongside.
pub fn depth_certificate_gr(f: &Filtration, seq: &[Polynomial], window: usize, max_n: usize) -> Result<DepthCertificate> {
    let FiltrationKind::Adic { q } = f.kind() else {
        return Err(AlgebraError::InvalidArgument("gr depth certificates need an adic filtration".into()));
    };
    let seq: Vec<Polynomial> = seq.iter().map(|s| s.to_ring(f.ring())).collect::<Result<_>>()?;
    let q1 = f.defining().sum(q)?;
    let mut span = f.defining().clone();
    let mut gens = Vec::new();
    for s in &seq {
        if !q1.contains(s)? {
            return Err(AlgebraError::InvalidArgument(format!("{} is not in q", s.format())));
        }
        gens.push(s.clone());
        span = span.add_gens(std::slice::from_ref(s))?;
    }
    for g in q.gens() {
        if !span.contains(g)? {
            gens.push(g.clone());
            span = span.add_gens(std::slice::from_ref(g))?;
        }
    }
    let base = 0;
    let gp = gr_presentation_with(f.defining(), &gens)?;
    let mut l = gp.ideal.clone();
    let mut count = 0;
    for j in 0..seq.len() {
        let y = gp.y(base + j);
        if !l.quotient_by(&y)?.equals(&l)? {
            break;
        }
        l = l.add_gens(std::slice::from_ref(&y))?.minimized()?;
        count += 1;
    }

    let module = depth_certificate_module(f.defining(), &seq)?;
    let module_regular = module.depth_lower_bound == seq.len();
    let mut vv_checks = Vec::new();
    let mut vv_exact = false;
    if !seq.is_empty() {
        let j = Ideal::new(f.ring(), seq.clone())?;
        let jm = f.defining().sum(&j)?.minimized()?;
        // reduction number of J, when J is a reduction
        let mut r = None;
        let reducible = jm.krull_dim()? <= q1.krull_dim()?;
        for n in (0..=max_n.min(window + 16)).filter(|_| reducible) {
            if f.times_level(&j, n)?.equals(&f.level(n + 1)?)? {
                r = Some(n);
                break;
            }
        }
        let n0 = f.stability_index(max_n)?;
        let hi = match r {
            Some(r) => {
                vv_exact = true;
                r.max(n0).max(1)
            }
            None => n0 + window,
        };
        for n in 1..=hi {
            let ok = vv_holds(&jm, &f.level(n + 1)?, &f.times_level(&j, n)?)?;
            vv_checks.push((n, ok));
            if !ok && count < seq.len() {
                break;
            }
        }
    }
    let vv_all = module_regular && vv_checks.iter().all(|c| c.1);
    if count == seq.len() && !vv_all {
        return Err(AlgebraError::Consistency("gr-regular sequence violates the Valabrega-Valla conditions".into()));
    }
    if vv_exact && vv_all && count != seq.len() {
        return Err(AlgebraError::Consistency("Valabrega-Valla conditions hold but gr colon test fails".into()));
    }
    Ok(DepthCertificate {
        target: DepthTarget::GrModule,
        sequence: seq,
        depth_lower_bound: count,
        vv_checks,
        vv_exact,
        positive_depth: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoeffField::default()).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn candidates_are_reproducible() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let a = random_superficial_candidate(&f, 7).unwrap();
        assert_eq!(a, random_superficial_candidate(&f, 7).unwrap());
        assert_eq!(a.len(), 2);
        let g = Filtration::adic(&Ideal::zero(&r), &Ideal::parse(&r, "x, y^2").unwrap()).unwrap();
        assert!(random_superficial_candidate(&g, 1).is_err());
    }

    #[test]
    fn superficial_in_polynomial_ring() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let x = p(&r, "x");
        let c = certify_superficial(&f, &x, SuperficialMethod::GrAnnihilator, None).unwrap();
        assert_eq!(c.annihilator_series, Some(vec![]));
        let b = certify_superficial(&f, &x, SuperficialMethod::BoundedColon, Some(3)).unwrap();
        assert_eq!(b.c, Some(0));
        assert!(certify_superficial(&f, &p(&r, "x^2"), SuperficialMethod::GrAnnihilator, None).is_err());
    }

    #[test]
    fn nilpotent_is_not_superficial() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::parse(&r, "x^2").unwrap(), &Ideal::maximal(&r)).unwrap();
        let x = p(&r, "x");
        assert!(matches!(
            certify_superficial(&f, &x, SuperficialMethod::GrAnnihilator, None),
            Err(AlgebraError::NotSuperficial(_))
        ));
        assert!(matches!(
            certify_superficial(&f, &x, SuperficialMethod::BoundedColon, Some(3)),
            Err(AlgebraError::NotSuperficial(_))
        ));
    }

    #[test]
    fn module_depth() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, "x^2, x*y").unwrap();
        assert_eq!(depth_certificate_module(&i, &[p(&r, "z")]).unwrap().depth_lower_bound, 1);
        assert_eq!(depth(&i, 0).unwrap().0, 1);
        let r2 = ring(&["x", "y"]);
        assert_eq!(depth_certificate_module(&Ideal::zero(&r2), &[p(&r2, "x"), p(&r2, "y")]).unwrap().depth_lower_bound, 2);
        assert_eq!(depth(&Ideal::zero(&r2), 0).unwrap().0, 2);
    }

    #[test]
    fn gr_depth_of_polynomial_ring() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let c = depth_certificate_gr(&f, &[p(&r, "x"), p(&r, "y")], 2, 20).unwrap();
        assert_eq!(c.depth_lower_bound, 2);
        assert!(c.vv_exact);
        let r3 = ring(&["x", "y", "z"]);
        let g = Filtration::adic(&Ideal::parse(&r3, "x^2, x*y").unwrap(), &Ideal::maximal(&r3)).unwrap();
        assert_eq!(depth_certificate_gr(&g, &[p(&r3, "z")], 2, 20).unwrap().depth_lower_bound, 1);
    }

    #[test]
    fn sequence_flags() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::zero(&r), &Ideal::maximal(&r)).unwrap();
        let s = certify_superficial_sequence(&f, &[p(&r, "x"), p(&r, "y")], SuperficialMethod::GrAnnihilator).unwrap();
        assert!(s.maximal);
        let s = certify_superficial_sequence(&f, &[p(&r, "x")], SuperficialMethod::GrAnnihilator).unwrap();
        assert!(!s.maximal);
    }
}
