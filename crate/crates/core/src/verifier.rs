//! Checks of the bounds on `e_2` and of their equality conditions, assembled
//! into machine-readable reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coefficients::{filtration_hilbert_exact, filtration_hilbert_sampled, FiltrationHilbertSummary};
use crate::error::{AlgebraError, Result};
use crate::filtration::{Filtration, DEFAULT_MAX_K, DEFAULT_MAX_N};
use crate::ideal::{colength, Ideal};
use crate::poly::Polynomial;
use crate::superficial::{
    certify_superficial, certify_superficial_sequence, depth, depth_certificate_gr, depth_certificate_module,
    random_superficial_candidate, DepthCertificate, SuperficialCertificate, SuperficialMethod, vv_holds,
    DEFAULT_COLON_WINDOW,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `e_2 <= sum_n n λ(M_{n+1}/JM_n)` when `depth M >= d-1`, with its equality criterion.
    UpperBound,
    /// `e_2(M) - e_2(N)` against the same sum, `N` the `J`-adic filtration.
    DifferenceBound,
    /// `e_2(M) - e_2(N/a_1M)` against the same sum, in dimension two.
    DifferenceQuotient,
    /// `e_2 >= -C(s+2,2) λ((a_1..a_{d-1})M : a_d / (a_1..a_{d-1})M)`.
    LowerBound,
    /// `e_2(q) <= 0` for a parameter ideal when `depth M >= d-1`.
    ParameterIdeal,
    /// The upper bound for Cohen-Macaulay `M`; equality iff `depth gr >= d-1`.
    CohenMacaulay,
    /// The upper bound for the maximal ideal; equality iff `M` is Cohen-Macaulay and `depth gr >= d-1`.
    MaximalIdeal,
    /// `e_2 >= 0` for Cohen-Macaulay `M`.
    NonNegativity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::UpperBound,
        TheoremId::DifferenceBound,
        TheoremId::DifferenceQuotient,
        TheoremId::LowerBound,
        TheoremId::ParameterIdeal,
        TheoremId::CohenMacaulay,
        TheoremId::MaximalIdeal,
        TheoremId::NonNegativity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::UpperBound => "upper-bound",
            TheoremId::DifferenceBound => "difference-bound",
            TheoremId::DifferenceQuotient => "difference-quotient",
            TheoremId::LowerBound => "lower-bound",
            TheoremId::ParameterIdeal => "parameter-ideal",
            TheoremId::CohenMacaulay => "cohen-macaulay",
            TheoremId::MaximalIdeal => "maximal-ideal",
            TheoremId::NonNegativity => "non-negativity",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    BoundHolds,
    EqualityHolds,
    #[serde(rename = "BoundViolated-HypothesisFailed")]
    BoundViolatedHypothesisFailed,
    Inapplicable,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::BoundHolds => "BoundHolds",
            Verdict::EqualityHolds => "EqualityHolds",
            Verdict::BoundViolatedHypothesisFailed => "BoundViolated-HypothesisFailed",
            Verdict::Inapplicable => "Inapplicable",
        }
    }

    pub fn bound_holds(&self) -> bool {
        matches!(self, Verdict::BoundHolds | Verdict::EqualityHolds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Superficial(SuperficialCertificate),
    Depth(DepthCertificate),
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub hypotheses: Vec<Check>,
    pub quantities: BTreeMap<String, i64>,
    /// Equality criteria, evaluated whether or not equality holds.
    pub conditions: Vec<Check>,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub field: String,
    pub seed: u64,
}

impl TheoremReport {
    fn new(theorem: TheoremId, f: &Filtration, seed: u64) -> TheoremReport {
        TheoremReport {
            theorem,
            hypotheses: Vec::new(),
            quantities: BTreeMap::new(),
            conditions: Vec::new(),
            verdict: Verdict::Inapplicable,
            certificates: Vec::new(),
            notes: Vec::new(),
            field: f.ring().field().to_string(),
            seed,
        }
    }

    fn hyp(&mut self, name: &str, ok: bool, evidence: impl Into<String>) {
        self.hypotheses.push(Check { name: name.into(), ok, evidence: evidence.into() });
    }

    fn cond(&mut self, name: &str, ok: bool, evidence: impl Into<String>) {
        self.conditions.push(Check { name: name.into(), ok, evidence: evidence.into() });
    }

    fn set(&mut self, name: &str, v: i64) {
        self.quantities.insert(name.into(), v);
    }

    pub fn hypotheses_ok(&self) -> bool {
        self.hypotheses.iter().all(|h| h.ok)
    }

    pub fn quantity(&self, name: &str) -> Option<i64> {
        self.quantities.get(name).copied()
    }

    pub fn hypothesis(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|h| h.name == name).map(|h| h.ok)
    }

    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions.iter().find(|h| h.name == name).map(|h| h.ok)
    }

    /// Theorem verdict: a violation is only admissible next to a failed hypothesis.
    fn conclude(&mut self, holds: bool, equal: bool) -> Result<()> {
        self.verdict = match (self.hypotheses_ok(), holds) {
            (true, false) => {
                return Err(AlgebraError::Consistency(format!(
                    "{}: bound violated although every hypothesis is verified",
                    self.theorem
                )))
            }
            (false, false) => Verdict::BoundViolatedHypothesisFailed,
            (false, true) => Verdict::Inapplicable,
            (true, true) if equal => Verdict::EqualityHolds,
            (true, true) => Verdict::BoundHolds,
        };
        Ok(())
    }

    /// Corollary verdict: any failed hypothesis makes the statement inapplicable.
    fn conclude_corollary(&mut self, holds: bool, equal: bool) -> Result<()> {
        if !self.hypotheses_ok() {
            self.verdict = Verdict::Inapplicable;
            return Ok(());
        }
        self.conclude(holds, equal)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_n: usize,
    pub max_k: u32,
    pub window: usize,
    /// Defaults to the gr annihilator for adic filtrations, bounded colons otherwise.
    pub method: Option<SuperficialMethod>,
    /// Recompute every adic summary by sampling and require agreement.
    pub cross_check: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            max_n: DEFAULT_MAX_N,
            max_k: DEFAULT_MAX_K,
            window: DEFAULT_COLON_WINDOW,
            method: None,
            cross_check: true,
        }
    }
}

impl VerifyOptions {
    fn method_for(&self, f: &Filtration) -> SuperficialMethod {
        self.method.unwrap_or(if f.is_adic() { SuperficialMethod::GrAnnihilator } else { SuperficialMethod::BoundedColon })
    }
}

/// Route A for adic filtrations (sampling otherwise), cross-checked by Route B.
pub fn coefficients(f: &Filtration, opts: &VerifyOptions) -> Result<FiltrationHilbertSummary> {
    if !f.is_adic() {
        return filtration_hilbert_sampled(f, None, opts.max_n);
    }
    let a = filtration_hilbert_exact(f)?;
    if opts.cross_check {
        let b = filtration_hilbert_sampled(f, None, opts.max_n)?;
        if !a.agrees_with(&b) {
            return Err(AlgebraError::Consistency(format!(
                "routes disagree: h = {:?} vs {:?}, e = {:?} vs {:?}",
                a.h, b.h, a.e, b.e
            )));
        }
    }
    Ok(a)
}

/// A sequence of `len` random combinations of the generators of `q`, each
/// certified on the quotient by its predecessors; retries a few seeds per slot.
pub fn find_superficial_sequence(f: &Filtration, len: usize, seed: u64, opts: &VerifyOptions) -> Result<Vec<Polynomial>> {
    let method = opts.method_for(f);
    let mut cur = f.clone();
    let mut seq = Vec::with_capacity(len);
    let mut s = seed;
    for i in 0..len {
        let mut found = None;
        for _ in 0..8 {
            let a = random_superficial_candidate(f, s)?;
            s = s.wrapping_add(1);
            match certify_superficial(&cur, &a, method, Some(opts.window)) {
                Ok(_) => {
                    found = Some(a);
                    break;
                }
                Err(AlgebraError::NotSuperficial(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        let a = found.ok_or_else(|| AlgebraError::NotSuperficial(format!("no superficial element found for slot {i}")))?;
        cur = cur.quotient_filtration(std::slice::from_ref(&a))?;
        seq.push(a);
    }
    Ok(seq)
}

/// `sum_{n>=1} n λ(M_{n+1}/JM_n)` with the per-index terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSum {
    pub total: i64,
    /// `terms[n-1] = λ(M_{n+1}/JM_n)`.
    pub terms: Vec<u64>,
    /// First `n >= max(1, n0)` with `JM_n = M_{n+1}`; every later term vanishes.
    pub reduction_index: usize,
}

pub fn bound_sum(f: &Filtration, j: &Ideal, max_n: usize) -> Result<BoundSum> {
    if !j.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous(format!("({}) is not homogeneous", j.format())));
    }
    if !f.level(1)?.contains_ideal(j)? {
        return Err(AlgebraError::NotContained(format!("({}) is not inside q", j.format())));
    }
    let n0 = f.stability_index(max_n)?;
    let mut terms = Vec::new();
    let mut total = 0i64;
    for n in 1..=max_n {
        let t = match colength(&f.times_level(j, n)?, &f.level(n + 1)?) {
            Ok(t) => t,
            Err(AlgebraError::InfiniteLength(_)) => {
                return Err(AlgebraError::InvalidArgument(format!(
                    "({}) is not a reduction: M_{}/JM_{n} has infinite length",
                    j.format(),
                    n + 1
                )))
            }
            Err(e) => return Err(e),
        };
        terms.push(t);
        total += n as i64 * t as i64;
        if t == 0 && n >= n0 {
            return Ok(BoundSum { total, terms, reduction_index: n });
        }
    }
    Err(AlgebraError::Resource(format!(
        "({}) is not a reduction: JM_n = M_(n+1) fails for every n <= {max_n}",
        j.format()
    )))
}

fn convert(f: &Filtration, seq: &[Polynomial]) -> Result<Vec<Polynomial>> {
    seq.iter().map(|a| a.to_ring(f.ring())).collect()
}

fn dimension_at_least_two(r: &mut TheoremReport, f: &Filtration) -> Result<usize> {
    let d = f.defining().krull_dim()?;
    if d < 2 {
        return Err(AlgebraError::InvalidArgument(format!("{} needs dim M >= 2, found {d}", r.theorem)));
    }
    r.set("d", d);
    r.hyp("dim M >= 2", true, format!("Krull dimension {d}"));
    Ok(d as usize)
}

fn is_hypothesis_failure(e: &AlgebraError) -> bool {
    matches!(
        e,
        AlgebraError::NotSuperficial(_)
            | AlgebraError::NotContained(_)
            | AlgebraError::NotHomogeneous(_)
            | AlgebraError::InvalidArgument(_)
    )
}

/// Records the superficiality hypothesis; returns whether it holds.
fn superficial_hypothesis(r: &mut TheoremReport, name: &str, f: &Filtration, seq: &[Polynomial], d: usize, opts: &VerifyOptions) -> Result<bool> {
    let method = opts.method_for(f);
    match certify_superficial_sequence(f, seq, method) {
        Ok(sc) => {
            let ok = sc.maximal && seq.len() == d;
            let evidence = if ok {
                format!("{} elements certified by {method:?}", seq.len())
            } else {
                format!("{} elements certified, dimension {d}", seq.len())
            };
            r.hyp(name, ok, evidence);
            r.certificates.extend(sc.certificates.into_iter().map(Certificate::Superficial));
            Ok(ok)
        }
        Err(e) if is_hypothesis_failure(&e) => {
            r.hyp(name, false, e.to_string());
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

/// `depth M`, exactly when the ring is standard graded, otherwise the length of
/// the regular prefix of the superficial sequence (exact once it is certified).
fn module_depth(r: &mut TheoremReport, f: &Filtration, seq: &[Polynomial], superficial: bool, seed: u64) -> Result<Option<usize>> {
    let cert = depth_certificate_module(f.defining(), seq)?;
    let along = cert.depth_lower_bound;
    r.set("depth_M_along_sequence", along as i64);
    r.certificates.push(Certificate::Depth(cert));
    if f.ring().is_standard_graded() && f.defining().is_homogeneous() {
        let (dep, _) = depth(f.defining(), seed)?;
        r.set("depth_M", dep as i64);
        if superficial && dep.min(seq.len()) != along {
            return Err(AlgebraError::Consistency(format!(
                "depth M = {dep} but the superficial sequence has a regular prefix of length {along}"
            )));
        }
        return Ok(Some(dep));
    }
    if superficial {
        if along < seq.len() {
            r.set("depth_M", along as i64);
            return Ok(Some(along));
        }
        return Ok(Some(along.max(seq.len())));
    }
    Ok(None)
}

/// `depth gr(M) >= k` along the first `k` elements of `seq`.
fn gr_depth_condition(r: &mut TheoremReport, f: &Filtration, seq: &[Polynomial], k: usize, opts: &VerifyOptions) -> Result<(bool, String)> {
    let prefix = &seq[..k.min(seq.len())];
    if f.is_adic() {
        let cert = depth_certificate_gr(f, prefix, opts.window, opts.max_n)?;
        let ok = cert.depth_lower_bound >= k;
        let ev = format!("initial forms regular for {} of {k} elements in gr", cert.depth_lower_bound);
        r.certificates.push(Certificate::Depth(cert));
        return Ok((ok, ev));
    }
    let module = depth_certificate_module(f.defining(), prefix)?;
    if module.depth_lower_bound < k {
        return Ok((false, format!("only {} elements regular on M", module.depth_lower_bound)));
    }
    let j = Ideal::new(f.ring(), prefix.to_vec())?;
    let jm = f.defining().sum(&j)?;
    let hi = f.stability_index(opts.max_n)? + opts.window;
    for n in 1..=hi {
        if !vv_holds(&jm, &f.level(n + 1)?, &f.times_level(&j, n)?)? {
            return Ok((false, format!("JM ∩ M_{} != JM_{n}", n + 1)));
        }
    }
    r.notes.push(format!("depth of gr for an explicit filtration checked on n <= {hi} only"));
    Ok((true, format!("Valabrega-Valla conditions for n <= {hi}")))
}

/// `((I + J_1) : a_d) ∩ M_1 = I + J_1` with `J_1 = (a_1..a_{d-1})`.
fn colon_condition(f: &Filtration, seq: &[Polynomial]) -> Result<bool> {
    let (last, first) = seq.split_last().ok_or_else(|| AlgebraError::InvalidArgument("empty sequence".into()))?;
    let a = f.defining().add_gens(first)?;
    let lhs = a.quotient_by(last)?.intersection(&f.level(1)?)?;
    lhs.equals(&a)
}

/// Everything the upper bound and its corollaries share.
struct UpperData {
    d: usize,
    superficial: bool,
    depth: Option<usize>,
    e2: i64,
    bound: Option<i64>,
    depth_gr: bool,
    colon: bool,
}

fn upper_data(r: &mut TheoremReport, f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<UpperData> {
    let d = dimension_at_least_two(r, f)?;
    let seq = convert(f, seq)?;
    let superficial = superficial_hypothesis(r, "maximal superficial sequence", f, &seq, d, opts)?;
    let dep = module_depth(r, f, &seq, superficial, opts.seed)?;

    let summary = coefficients(f, opts)?;
    for i in 0..=2 {
        r.set(&format!("e{i}"), summary.e(i));
    }
    r.set("postulation", summary.postulation);
    let e2 = summary.e(2);

    let j = Ideal::new(f.ring(), seq.clone())?;
    let bound = match bound_sum(f, &j, opts.max_n) {
        Ok(b) => {
            r.set("bound_sum", b.total);
            r.set("reduction_index", b.reduction_index as i64);
            Some(b.total)
        }
        Err(e) if !superficial => {
            r.notes.push(format!("bound not computed: {e}"));
            None
        }
        Err(e) => return Err(e),
    };

    let (depth_gr, ev) = if seq.len() >= d - 1 {
        gr_depth_condition(r, f, &seq, d - 1, opts)?
    } else {
        (false, "sequence too short".to_string())
    };
    r.cond("depth gr(M) >= d-1", depth_gr, ev);
    let colon = if seq.len() == d { colon_condition(f, &seq)? } else { false };
    r.cond("(J_1 M : a_d) ∩ M_1 = J_1 M", colon, "ideal equality in R");
    Ok(UpperData { d, superficial, depth: dep, e2, bound, depth_gr, colon })
}

fn depth_hypothesis(r: &mut TheoremReport, name: &str, dep: Option<usize>, need: usize) -> bool {
    match dep {
        Some(v) => {
            r.hyp(name, v >= need, format!("depth M = {v}"));
            v >= need
        }
        None => {
            r.hyp(name, false, "depth not certified");
            false
        }
    }
}

/// `e_2 <= sum_n n λ(M_{n+1}/JM_n)` for `depth M >= d-1`, equality iff
/// `depth gr(M) >= d-1` and `(J_1M : a_d) ∩ M_1 = J_1M`.
pub fn verify_upper_bound(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(TheoremId::UpperBound, f, opts.seed);
    let u = upper_data(&mut r, f, seq, opts)?;
    depth_hypothesis(&mut r, "depth M >= d-1", u.depth, u.d - 1);
    let Some(bound) = u.bound else {
        r.verdict = Verdict::Inapplicable;
        return Ok(r);
    };
    let (holds, equal) = (u.e2 <= bound, u.e2 == bound);
    if r.hypotheses_ok() && equal != (u.depth_gr && u.colon) {
        return Err(AlgebraError::Consistency(format!(
            "equality is {equal} but the criterion gives {}",
            u.depth_gr && u.colon
        )));
    }
    r.conclude(holds, equal)?;
    Ok(r)
}

/// Minimal number of generators of `(q + I)/I`.
fn minimal_generators(f: &Filtration) -> Result<u64> {
    let ring = f.ring();
    let q1 = f.level(1)?;
    let mq = Ideal::maximal(ring).product(f.q())?.sum(f.defining())?;
    colength(&mq, &q1)
}

/// Corollaries of the upper bound for parameter ideals, Cohen-Macaulay modules
/// and the maximal ideal.
pub fn verify_corollary(id: TheoremId, f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    match id {
        TheoremId::ParameterIdeal | TheoremId::CohenMacaulay | TheoremId::MaximalIdeal => {}
        TheoremId::NonNegativity => return verify_non_negativity(f, seq, opts),
        other => return Err(AlgebraError::InvalidArgument(format!("{other} is not a corollary"))),
    }
    let mut r = TheoremReport::new(id, f, opts.seed);
    let u = upper_data(&mut r, f, seq, opts)?;
    let d = u.d;
    match id {
        TheoremId::ParameterIdeal => {
            depth_hypothesis(&mut r, "depth M >= d-1", u.depth, d - 1);
            let mu = minimal_generators(f)?;
            r.set("generators_of_q", mu as i64);
            r.hyp("q is a parameter ideal", f.is_adic() && mu == d as u64, format!("q-adic: {}, minimal generators {mu}", f.is_adic()));
            if r.hypotheses_ok() && u.bound != Some(0) {
                return Err(AlgebraError::Consistency("parameter ideal with a nonzero bound".into()));
            }
            r.conclude_corollary(u.e2 <= 0, u.e2 == 0)?;
        }
        TheoremId::CohenMacaulay => {
            depth_hypothesis(&mut r, "M Cohen-Macaulay", u.depth, d);
            let Some(bound) = u.bound else {
                r.verdict = Verdict::Inapplicable;
                return Ok(r);
            };
            let equal = u.e2 == bound;
            if r.hypotheses_ok() && equal != u.depth_gr {
                return Err(AlgebraError::Consistency(format!("equality is {equal} but depth gr >= d-1 is {}", u.depth_gr)));
            }
            r.conclude_corollary(u.e2 <= bound, equal)?;
        }
        TheoremId::MaximalIdeal => {
            depth_hypothesis(&mut r, "depth M >= d-1", u.depth, d - 1);
            let m = f.defining().sum(&Ideal::maximal(f.ring()))?;
            let is_m = f.is_adic() && f.level(1)?.equals(&m)?;
            r.hyp("q is the maximal ideal", is_m, if is_m { "q + I = m + I" } else { "q + I differs from m + I" });
            let cm = u.depth == Some(d);
            let dep = u.depth.map_or("not certified".to_string(), |v| v.to_string());
            r.cond("M Cohen-Macaulay", cm, format!("depth {dep} of dimension {d}"));
            let Some(bound) = u.bound else {
                r.verdict = Verdict::Inapplicable;
                return Ok(r);
            };
            let equal = u.e2 == bound;
            if r.hypotheses_ok() && equal != (cm && u.depth_gr) {
                return Err(AlgebraError::Consistency(format!(
                    "equality is {equal} but Cohen-Macaulay and depth gr >= d-1 gives {}",
                    cm && u.depth_gr
                )));
            }
            r.conclude_corollary(u.e2 <= bound, equal)?;
        }
        _ => unreachable!(),
    }
    if !u.superficial {
        r.notes.push("the sequence was not certified superficial".into());
    }
    Ok(r)
}

/// The three corollaries of the upper bound on one input.
pub fn corollary_suite(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<Vec<TheoremReport>> {
    [TheoremId::ParameterIdeal, TheoremId::CohenMacaulay, TheoremId::MaximalIdeal]
        .into_iter()
        .map(|id| verify_corollary(id, f, seq, opts))
        .collect()
}

struct DifferenceData {
    d: usize,
    e2_m: i64,
    e2_n: i64,
    e2_n_mod_a1: i64,
    bound: i64,
    /// `(-1)^d (e_d(N/a_1M) - e_d(N))`, the exact value of the correction.
    correction: i64,
    depth_gr_n: bool,
}

fn difference_data(r: &mut TheoremReport, f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<Option<DifferenceData>> {
    let d = dimension_at_least_two(r, f)?;
    let seq = convert(f, seq)?;
    let sup_m = superficial_hypothesis(r, "maximal superficial sequence for M", f, &seq, d, opts)?;
    let j = Ideal::new(f.ring(), seq.clone())?;
    let n = match Filtration::adic(f.defining(), &j) {
        Ok(n) => n,
        Err(e) if is_hypothesis_failure(&e) => {
            r.hyp("J is m-primary", false, e.to_string());
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let sup_n = superficial_hypothesis(r, "maximal superficial sequence for N", &n, &seq, d, opts)?;
    if !(sup_m && sup_n) {
        return Ok(None);
    }
    let e2_m = coefficients(f, opts)?.e(2);
    let sn = coefficients(&n, opts)?;
    let e2_n = sn.e(2);
    let n1 = n.quotient_filtration(&seq[..1])?;
    let sn1 = coefficients(&n1, opts)?;
    let e2_n_mod_a1 = sn1.e(2);
    let bound = bound_sum(f, &j, opts.max_n)?.total;
    r.set("e2_M", e2_m);
    r.set("e2_N", e2_n);
    r.set("e2_N_mod_a1", e2_n_mod_a1);
    r.set("bound_sum", bound);

    let a1 = &seq[0];
    let lambda0 = colength(f.defining(), &f.defining().quotient_by(a1)?)? as i64;
    r.set("lambda_0_colon_a1", lambda0);
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let correction = sign * (sn1.e(d) - sn.e(d));

    if d == 2 {
        // termwise λ((J^{n+1}M : a_1)/J^nM), stopped once the partial sums reach the exact total
        let mut partial = -lambda0;
        let mut raw = 0i64;
        let mut hit = None;
        let mut run = 0;
        for k in 1..=opts.max_n {
            let lhs = n.level(k + 1)?.quotient_by(a1)?;
            let c = colength(&n.level(k)?, &lhs)? as i64;
            raw += c;
            partial += c - lambda0;
            if partial == correction {
                hit.get_or_insert(k);
                run += 1;
            } else {
                hit = None;
                run = 0;
            }
            if hit.is_some() && (lambda0 == 0 || run > opts.window) {
                break;
            }
        }
        let Some(k) = hit else {
            return Err(AlgebraError::Consistency(format!(
                "correction sum does not reach {correction} within n = {}",
                opts.max_n
            )));
        };
        r.set("correction_truncation", k as i64);
        r.set("tail_positive", (lambda0 > 0) as i64);
        if lambda0 > 0 {
            r.set("correction_partial_sum", raw - (run as i64 - 1) * lambda0);
            r.notes.push(format!(
                "the correction terms tend to λ(0 : a_1) = {lambda0}; the bound is stated with each term reduced by it, truncated at n = {k}"
            ));
        }
    }
    r.set("correction_sum", correction);
    r.notes.push("correction terms read as λ((J^(n+1)M : a_1)/J^nM)".into());

    let k = if d == 2 { 1 } else { d - 1 };
    let cert = depth_certificate_gr(&n, &seq[..k], opts.window, opts.max_n)?;
    let depth_gr_n = cert.depth_lower_bound >= k;
    r.certificates.push(Certificate::Depth(cert));
    Ok(Some(DifferenceData { d, e2_m, e2_n, e2_n_mod_a1, bound, correction, depth_gr_n }))
}

/// `e_2(M) - e_2(N) <= sum_n n λ(M_{n+1}/JM_n)` (plus the correction sum in
/// dimension two), `N` the `J`-adic filtration of the sequence.
pub fn verify_difference_bound(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(TheoremId::DifferenceBound, f, opts.seed);
    let Some(dd) = difference_data(&mut r, f, seq, opts)? else {
        r.verdict = Verdict::Inapplicable;
        return Ok(r);
    };
    let diff = dd.e2_m - dd.e2_n;
    r.set("difference", diff);
    let clean = diff <= dd.bound;
    if dd.d == 2 {
        let dep = module_depth(&mut r, f, &convert(f, seq)?, true, opts.seed)?;
        depth_hypothesis(&mut r, "depth M > 0", dep, 1);
        r.set("bound_with_correction", dd.bound + dd.correction);
        r.cond("depth gr_N(M) > 0", dd.depth_gr_n, "initial form of a_1 in gr_N");
        r.cond("difference <= bound without correction", clean, format!("{diff} <= {}", dd.bound));
        if r.hypotheses_ok() && dd.depth_gr_n && !clean {
            return Err(AlgebraError::Consistency("depth gr_N(M) > 0 but the clean difference bound fails".into()));
        }
        let full = dd.bound + dd.correction;
        r.conclude(diff <= full, diff == full)?;
    } else {
        r.hyp("depth gr_N(M) >= d-1", dd.depth_gr_n, format!("{} initial forms", dd.d - 1));
        r.conclude(clean, diff == dd.bound)?;
    }
    Ok(r)
}

/// `e_2(M) - e_2(N/a_1M) <= sum_n n λ(M_{n+1}/JM_n)` in dimension two.
pub fn verify_difference_quotient(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(TheoremId::DifferenceQuotient, f, opts.seed);
    let Some(dd) = difference_data(&mut r, f, seq, opts)? else {
        r.verdict = Verdict::Inapplicable;
        return Ok(r);
    };
    if dd.d != 2 {
        return Err(AlgebraError::InvalidArgument("the quotient form of the difference bound needs d = 2".into()));
    }
    let dep = module_depth(&mut r, f, &convert(f, seq)?, true, opts.seed)?;
    depth_hypothesis(&mut r, "depth M > 0", dep, 1);
    let diff = dd.e2_m - dd.e2_n_mod_a1;
    r.set("difference", diff);
    r.conclude(diff <= dd.bound, diff == dd.bound)?;
    Ok(r)
}

/// `sum_{n=1}^{m} n`, empty for `m <= 0`.
fn triangular(m: i64) -> i64 {
    if m <= 0 {
        0
    } else {
        m * (m + 1) / 2
    }
}

/// `e_2 >= -C(s+2,2) λ((a_1..a_{d-1})M : a_d / (a_1..a_{d-1})M)`, `s` the
/// postulation number of the Ratliff-Rush filtration of `M/(a_1..a_{d-2})M`.
pub fn verify_lower_bound(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(TheoremId::LowerBound, f, opts.seed);
    lower_bound_into(&mut r, f, seq, opts)?;
    Ok(r)
}

/// Fills the lower-bound quantities; `Ok(None)` when they could not be computed.
fn lower_bound_into(r: &mut TheoremReport, f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<Option<(i64, i64, i64)>> {
    let d = dimension_at_least_two(r, f)?;
    let seq = convert(f, seq)?;
    let superficial = superficial_hypothesis(r, "maximal superficial sequence", f, &seq, d, opts)?;
    let dep = module_depth(r, f, &seq, superficial, opts.seed)?;
    let depth_ok = depth_hypothesis(r, "depth M >= d-1", dep, d - 1);
    let e2 = coefficients(f, opts)?.e(2);
    r.set("e2", e2);
    if !(superficial && depth_ok) {
        r.notes.push("Ratliff-Rush filtration not computed".into());
        r.verdict = Verdict::Inapplicable;
        return Ok(None);
    }

    let g = f.quotient_filtration(&seq[..d - 2])?;
    let sg = coefficients(&g, opts)?;
    if sg.e(2) != e2 {
        return Err(AlgebraError::Consistency(format!("e_2 changes from {e2} to {} on slicing", sg.e(2))));
    }
    let rr = g.ratliff_rush_filtration(opts.max_n, opts.max_k, opts.window)?;
    let srr = filtration_hilbert_sampled(&rr.filtration, None, opts.max_n)?;
    if srr.hilbert_polynomial != sg.hilbert_polynomial {
        return Err(AlgebraError::Consistency("the Ratliff-Rush filtration has a different Hilbert polynomial".into()));
    }
    if srr.e(2) != sg.e(2) {
        return Err(AlgebraError::Consistency(format!("e_2 of the Ratliff-Rush filtration is {}, expected {}", srr.e(2), sg.e(2))));
    }
    let s = srr.postulation;
    r.set("e2_ratliff_rush", srr.e(2));
    r.set("postulation_ratliff_rush", s);
    r.set("ratliff_rush_agrees_from", rr.agrees_from as i64);

    let (last, first) = seq.split_last().expect("d >= 2");
    let a = f.defining().add_gens(first)?;
    let lambda = colength(&a, &a.quotient_by(last)?)? as i64;
    let factor = triangular(s + 1);
    let bound = -factor * lambda;
    r.set("lambda", lambda);
    r.set("binomial_factor", factor);
    r.set("lower_bound", bound);
    r.conclude(e2 >= bound, e2 == bound)?;
    Ok(Some((e2, lambda, bound)))
}

/// `e_2 >= 0` for Cohen-Macaulay `M`, through the lower bound with a vanishing λ-term.
fn verify_non_negativity(f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(TheoremId::NonNegativity, f, opts.seed);
    let computed = lower_bound_into(&mut r, f, seq, opts)?;
    let d = r.quantity("d").unwrap_or(0);
    let dep = r.quantity("depth_M").or_else(|| r.quantity("depth_M_along_sequence")).unwrap_or(-1);
    let cm = dep == d;
    r.hyp("M Cohen-Macaulay", cm, format!("depth {dep} of dimension {d}"));
    let e2 = r.quantity("e2").unwrap_or(0);
    if let Some((_, lambda, _)) = computed {
        if r.hypotheses_ok() && lambda != 0 {
            return Err(AlgebraError::Consistency(format!("Cohen-Macaulay module with λ-term {lambda}")));
        }
    }
    r.verdict = Verdict::Inapplicable;
    r.conclude_corollary(e2 >= 0, e2 == 0)?;
    Ok(r)
}

/// Dispatch by statement.
pub fn verify(id: TheoremId, f: &Filtration, seq: &[Polynomial], opts: &VerifyOptions) -> Result<TheoremReport> {
    match id {
        TheoremId::UpperBound => verify_upper_bound(f, seq, opts),
        TheoremId::DifferenceBound => verify_difference_bound(f, seq, opts),
        TheoremId::DifferenceQuotient => verify_difference_quotient(f, seq, opts),
        TheoremId::LowerBound => verify_lower_bound(f, seq, opts),
        TheoremId::ParameterIdeal | TheoremId::CohenMacaulay | TheoremId::MaximalIdeal | TheoremId::NonNegativity => {
            verify_corollary(id, f, seq, opts)
        }
    }
}

/// The identities relating the coefficients of `M` and `M/aM`.
#[derive(Clone, Debug, Serialize)]
pub struct SlicingReport {
    pub element: Polynomial,
    pub d: usize,
    pub dim_quotient: i64,
    /// `λ(0 :_M a)`.
    pub lambda_ann: i64,
    pub e: Vec<i64>,
    pub e_quotient: Vec<i64>,
    /// `λ((M_{i+1} : a)/M_i)` for `i = 0..`.
    pub colon_terms: Vec<i64>,
    /// Least `n` from which the `e_d` identity holds on the checked window.
    pub truncation: usize,
    pub checks: Vec<Check>,
    pub certificate: SuperficialCertificate,
}

pub fn slicing_consistency(f: &Filtration, a: &Polynomial, opts: &VerifyOptions) -> Result<SlicingReport> {
    let a = a.to_ring(f.ring())?;
    let certificate = certify_superficial(f, &a, opts.method_for(f), Some(opts.window))?;
    let d = f.defining().krull_dim()?;
    if d < 1 {
        return Err(AlgebraError::InvalidArgument("slicing needs dim M >= 1".into()));
    }
    let d = d as usize;
    let g = f.quotient_filtration(std::slice::from_ref(&a))?;
    let dim_quotient = g.defining().krull_dim()?;
    let mut checks = Vec::new();
    let fail = |what: String| Err(AlgebraError::Consistency(format!("slicing by {}: {what}", a.format())));
    if dim_quotient != d as i64 - 1 {
        return fail(format!("dim M/aM = {dim_quotient}, expected {}", d - 1));
    }
    checks.push(Check { name: "dim M/aM = d-1".into(), ok: true, evidence: format!("{dim_quotient}") });

    let sf = coefficients(f, opts)?;
    let sg = coefficients(&g, opts)?;
    let e: Vec<i64> = (0..=d).map(|i| sf.e(i)).collect();
    let e_quotient: Vec<i64> = (0..=d).map(|i| sg.e(i)).collect();
    for i in 0..d.saturating_sub(1) {
        if e[i] != e_quotient[i] {
            return fail(format!("e_{i} changes from {} to {}", e[i], e_quotient[i]));
        }
        checks.push(Check { name: format!("e_{i}(M/aM) = e_{i}(M)"), ok: true, evidence: format!("{}", e[i]) });
    }

    let defining = f.defining();
    let lambda_ann = colength(defining, &defining.quotient_by(&a)?)? as i64;
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let expect = e[d - 1] + sign(d - 1) * lambda_ann;
    if e_quotient[d - 1] != expect {
        return fail(format!("e_{} of the quotient is {}, expected {expect}", d - 1, e_quotient[d - 1]));
    }
    checks.push(Check {
        name: format!("e_{0}(M/aM) = e_{0}(M) + (-1)^{0} λ(0:a)", d - 1),
        ok: true,
        evidence: format!("{} = {} + ({}) {lambda_ann}", e_quotient[d - 1], e[d - 1], sign(d - 1)),
    });

    let target = sign(d) * (e_quotient[d] - e[d]);
    let mut colon_terms = Vec::new();
    let mut partial = 0i64;
    let mut start = None;
    for n in 0..=opts.max_n {
        let t = colength(&f.level(n)?, &f.level(n + 1)?.quotient_by(&a)?)? as i64;
        colon_terms.push(t);
        partial += t - lambda_ann;
        if partial == target {
            let s = *start.get_or_insert(n);
            if n >= s + opts.window {
                checks.push(Check {
                    name: format!("e_{d} identity with colon terms"),
                    ok: true,
                    evidence: format!("holds for n in [{s}, {n}]"),
                });
                return Ok(SlicingReport {
                    element: a.clone(),
                    d,
                    dim_quotient,
                    lambda_ann,
                    e,
                    e_quotient,
                    colon_terms,
                    truncation: s,
                    checks,
                    certificate,
                });
            }
        } else {
            start = None;
        }
    }
    fail(format!("e_{d} identity does not settle within n = {}", opts.max_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;
    use crate::poly::Ring;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoeffField::default()).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(r, s).unwrap()
    }

    fn adic(r: &Arc<Ring>, i: &str, q: &str) -> Filtration {
        let id = if i.is_empty() { Ideal::zero(r) } else { Ideal::parse(r, i).unwrap() };
        Filtration::adic(&id, &Ideal::parse(r, q).unwrap()).unwrap()
    }

    #[test]
    fn bound_sum_of_parameter_ideal_is_zero() {
        let r = ring(&["x", "y"]);
        let f = adic(&r, "", "x, y");
        let b = bound_sum(&f, f.q(), 10).unwrap();
        assert_eq!(b.total, 0);
        assert_eq!(b.reduction_index, 1);
        let j = Ideal::parse(&r, "x").unwrap();
        let err = bound_sum(&f, &j, 6).unwrap_err();
        assert!(err.to_string().contains("not a reduction"), "{err}");
    }

    #[test]
    fn bound_sum_for_monomial_reduction() {
        // q = (x^2, xy, y^2), J = (x^2, y^2): M_2 = q^2 = J q, so every term vanishes
        let r = ring(&["x", "y"]);
        let f = adic(&r, "", "x^2, x*y, y^2");
        let j = Ideal::parse(&r, "x^2, y^2").unwrap();
        assert_eq!(bound_sum(&f, &j, 10).unwrap().total, 0);
        // q = m with J = (x^2, y): not a reduction of m, since y, x^2 miss x
        let g = adic(&r, "", "x, y");
        let j2 = Ideal::parse(&r, "x^2, y").unwrap();
        assert!(bound_sum(&g, &j2, 5).is_err());
    }

    #[test]
    fn polynomial_ring_upper_bound_is_equality() {
        let r = ring(&["x", "y", "z"]);
        let f = adic(&r, "", "x, y, z");
        let seq = vec![p(&r, "x"), p(&r, "y"), p(&r, "z")];
        let rep = verify_upper_bound(&f, &seq, &VerifyOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::EqualityHolds);
        assert_eq!(rep.quantity("e2"), Some(0));
        assert_eq!(rep.quantity("bound_sum"), Some(0));
        assert_eq!(rep.condition("depth gr(M) >= d-1"), Some(true));
        assert_eq!(rep.condition("(J_1 M : a_d) ∩ M_1 = J_1 M"), Some(true));
        assert_eq!(rep.quantity("depth_M"), Some(3));
    }

    #[test]
    fn non_superficial_sequence_fails_hypothesis() {
        let r = ring(&["x", "y"]);
        let f = adic(&r, "", "x, y");
        let rep = verify_upper_bound(&f, &[p(&r, "x"), p(&r, "x")], &VerifyOptions::default()).unwrap();
        assert_eq!(rep.hypothesis("maximal superficial sequence"), Some(false));
        assert_eq!(rep.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn depth_one_ring_with_maximal_ideal() {
        // gr = R itself: e_2 = -1 and the bound must hold strictly
        let r = ring(&["x", "y", "z"]);
        let f = adic(&r, "x^2, x*y", "x, y, z");
        let opts = VerifyOptions::default();
        let seq = find_superficial_sequence(&f, 2, 3, &opts).unwrap();
        let rep = verify_upper_bound(&f, &seq, &opts).unwrap();
        assert_eq!(rep.quantity("e2"), Some(-1));
        assert!(rep.hypotheses_ok());
        assert_eq!(rep.verdict, Verdict::BoundHolds);
        let m = verify_corollary(TheoremId::MaximalIdeal, &f, &seq, &opts).unwrap();
        assert_eq!(m.condition("M Cohen-Macaulay"), Some(false));
        assert_eq!(m.verdict, Verdict::BoundHolds);
        let low = verify_lower_bound(&f, &seq, &opts).unwrap();
        assert!(low.verdict.bound_holds());
        assert!(low.quantity("lambda").unwrap() >= 1);
        let cm = verify_corollary(TheoremId::CohenMacaulay, &f, &seq, &opts).unwrap();
        assert_eq!(cm.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn non_negativity_for_cm_quadrics() {
        let r = ring(&["x", "y"]);
        let f = adic(&r, "", "x^4, x^3*y, x*y^3, y^4");
        let opts = VerifyOptions::default();
        let seq = vec![p(&r, "x^4"), p(&r, "y^4")];
        let rep = verify_corollary(TheoremId::NonNegativity, &f, &seq, &opts).unwrap();
        assert!(rep.hypotheses_ok(), "{:?}", rep.hypotheses);
        assert_eq!(rep.quantity("lambda"), Some(0));
        assert!(rep.quantity("e2").unwrap() >= 0);
        assert!(rep.verdict.bound_holds());
    }

    #[test]
    fn difference_bound_when_filtration_is_j_adic() {
        let r = ring(&["x", "y", "z"]);
        let f = adic(&r, "x^2, x*y", "x, y, z");
        let opts = VerifyOptions::default();
        let seq = find_superficial_sequence(&f, 2, 11, &opts).unwrap();
        let rep = verify_difference_bound(&f, &seq, &opts).unwrap();
        assert!(rep.hypotheses_ok(), "{:?}", rep.hypotheses);
        assert!(rep.verdict.bound_holds());
        assert_eq!(rep.quantity("lambda_0_colon_a1"), Some(0));
        let e2n = rep.quantity("e2_N").unwrap();
        let e2n1 = rep.quantity("e2_N_mod_a1").unwrap();
        assert_eq!(rep.quantity("correction_sum"), Some(e2n1 - e2n));
        let q = verify_difference_quotient(&f, &seq, &opts).unwrap();
        assert!(q.verdict.bound_holds());
    }

    #[test]
    fn slicing_with_annihilator() {
        // k[x,y]/(x^2, xy): 0 : y = (x) has length one
        let r = ring(&["x", "y"]);
        let f = adic(&r, "x^2, x*y", "x, y");
        let rep = slicing_consistency(&f, &p(&r, "y"), &VerifyOptions::default()).unwrap();
        assert_eq!(rep.lambda_ann, 1);
        assert_eq!(rep.e_quotient[0], rep.e[0] + 1);
        let r3 = ring(&["x", "y", "z"]);
        let g = adic(&r3, "x^2, x*y", "x, y, z");
        let opts = VerifyOptions::default();
        let a = find_superficial_sequence(&g, 1, 5, &opts).unwrap();
        let rep = slicing_consistency(&g, &a[0], &opts).unwrap();
        assert_eq!(rep.lambda_ann, 0);
        assert_eq!(rep.e[0], rep.e_quotient[0]);
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(TheoremId::parse(t.name()), Some(t));
        }
        assert_eq!(serde_json::to_string(&Verdict::BoundViolatedHypothesisFailed).unwrap(), "\"BoundViolated-HypothesisFailed\"");
    }
}
