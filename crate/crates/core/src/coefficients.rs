//! Hilbert functions and coefficients of good filtrations.
//!
//! Two independent routes: the associated graded ring presented through the
//! Rees algebra (exact, adic filtrations), and sampling `H(n)` level by level
//! (any good filtration).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::filtration::{Filtration, FiltrationKind};
use crate::hilbert_series::{binomial, IntPoly, Poly2};
use crate::ideal::{colength, Ideal};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    ReesExact,
    SampledFit,
}

/// Evidence behind a sampled summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCertificate {
    /// Largest sampled index.
    pub n_max: usize,
    /// Number of trailing vanishing h-values required.
    pub window: usize,
    pub stability_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationHilbertSummary {
    pub h: Vec<i64>,
    pub e: Vec<i64>,
    /// Coefficients `(-1)^i e_i` of `C(X+d-i-1, d-i-1)`, `i < d`.
    pub hilbert_polynomial: Vec<i64>,
    pub postulation: i64,
    pub d: usize,
    pub route: Route,
    pub samples: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SampleCertificate>,
}

impl FiltrationHilbertSummary {
    /// `H(n)` from the series `h / (1-t)^d` (zero for negative `n`).
    pub fn series_value(&self, n: i64) -> i64 {
        series_value(&self.h, self.d, n)
    }

    pub fn polynomial_value(&self, n: i64) -> i64 {
        polynomial_value(&self.e, self.d, n)
    }

    /// `e_i = h^{(i)}(1)/i!`, also past `d`.
    pub fn e(&self, i: usize) -> i64 {
        match self.e.get(i) {
            Some(&v) => v,
            None => self.h_polynomial().taylor_at_one(i) as i64,
        }
    }

    /// Same h-vector, coefficients, dimension and postulation number.
    pub fn agrees_with(&self, other: &FiltrationHilbertSummary) -> bool {
        self.h == other.h && self.e == other.e && self.d == other.d && self.postulation == other.postulation
    }

    pub fn h_polynomial(&self) -> IntPoly {
        IntPoly::new(self.h.clone())
    }
}

fn series_value(h: &[i64], d: usize, n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    if d == 0 {
        return h.get(n as usize).copied().unwrap_or(0);
    }
    let mut v: i128 = 0;
    for (k, &c) in h.iter().enumerate() {
        if k as i64 > n {
            break;
        }
        v += c as i128 * binomial(n - k as i64 + d as i64 - 1, d as i64 - 1);
    }
    v as i64
}

fn polynomial_value(e: &[i64], d: usize, n: i64) -> i64 {
    let mut v: i128 = 0;
    for i in 0..d {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        v += sign * e[i] as i128 * binomial(n + d as i64 - i as i64 - 1, d as i64 - i as i64 - 1);
    }
    v as i64
}

/// Assemble a summary from an h-polynomial, with both coefficient formulas checked.
pub fn summary_from_h(h: &IntPoly, d: usize, route: Route, samples: Vec<u64>, certificate: Option<SampleCertificate>) -> Result<FiltrationHilbertSummary> {
    if h.is_zero() || h.eval_one() == 0 {
        return Err(AlgebraError::Consistency("h-polynomial vanishes at 1".into()));
    }
    let mut e = Vec::with_capacity(d + 1);
    let mut der = h.clone();
    let mut fact: i128 = 1;
    for i in 0..=d {
        if i > 0 {
            der = der.derivative();
            fact *= i as i128;
        }
        let at_one = der.eval_one() as i128;
        if at_one % fact != 0 {
            return Err(AlgebraError::InexactDivision(format!("derivative {i} of h at 1")));
        }
        let by_derivative = at_one / fact;
        let by_binomials = h.taylor_at_one(i);
        if by_derivative != by_binomials {
            return Err(AlgebraError::Consistency(format!("e_{i}: {by_derivative} vs {by_binomials}")));
        }
        e.push(by_binomials as i64);
    }
    let hv = h.coeffs().to_vec();
    let poly: Vec<i64> = (0..d).map(|i| if i % 2 == 0 { e[i] } else { -e[i] }).collect();
    let top = h.degree().unwrap_or(0) as i64;
    let mut postulation = None;
    let mut n = top;
    while n >= -(d as i64) - 1 {
        if series_value(&hv, d, n) != polynomial_value(&e, d, n) {
            postulation = Some(n);
            break;
        }
        n -= 1;
    }
    let postulation = postulation.ok_or_else(|| AlgebraError::Consistency("no postulation number found".into()))?;
    let samples = if samples.is_empty() {
        (0..=(top.max(0) as usize + d + 1)).map(|n| series_value(&hv, d, n as i64) as u64).collect()
    } else {
        samples
    };
    Ok(FiltrationHilbertSummary { h: hv, e, hilbert_polynomial: poly, postulation, d, route, samples, certificate })
}

/// `H(n) = λ(M_n / M_{n+1})`.
pub fn hilbert_function(f: &Filtration, n: usize) -> Result<u64> {
    colength(&f.level(n + 1)?, &f.level(n)?)
}

/// `gr(M)` presented as `S[Y_1..Y_m] / L`, with `Y_j` standing for the class of `f_j` in degree one.
#[derive(Clone, Debug)]
pub struct GrPresentation {
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
    /// Number of variables of `S`; `Y_j` is variable `nx + j`.
    pub nx: usize,
    pub generators: Vec<Polynomial>,
    /// `(internal degree, filtration degree)` per variable.
    pub bidegrees: Vec<(u64, u64)>,
}

impl GrPresentation {
    pub fn y(&self, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, self.nx + j)
    }

    /// `Q(t)` with series `Q(t)/(1-t)^m` of `S[Y]/L'`, after summing out the internal grading.
    pub fn specialized_numerator(&self, l: &Ideal) -> Result<IntPoly> {
        let num = l.bigraded_numerator(&self.bidegrees)?;
        let xw: Vec<u64> = self.bidegrees[..self.nx].iter().map(|d| d.0).collect();
        specialize(&num, &xw)
    }

    /// Embed a polynomial of `S` into the presentation ring.
    pub fn embed(&self, p: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (0..self.nx).collect();
        p.remap(&self.ring, &map)
    }

    pub fn m(&self) -> usize {
        self.generators.len()
    }
}

/// Divide each `t`-row by `prod (1 - u^{w_i})` and set `u = 1`.
pub fn specialize(num: &Poly2, x_weights: &[u64]) -> Result<IntPoly> {
    let Some(top) = num.t_degree() else { return Ok(IntPoly::zero()) };
    let mut out = vec![0i64; top as usize + 1];
    for j in 0..=top {
        let mut row = num.t_row(j);
        for &w in x_weights {
            row = row.div_one_minus_tw(w as usize).ok_or_else(|| {
                AlgebraError::InexactDivision(format!("row t^{j} of the bigraded numerator"))
            })?;
        }
        out[j as usize] = row.eval_one();
    }
    Ok(IntPoly::new(out))
}

/// Presentation of the associated graded ring of the q-adic filtration on
/// `R/I`, where `q` is generated by `gens` (in that order).
pub fn gr_presentation_with(defining: &Ideal, gens: &[Polynomial]) -> Result<GrPresentation> {
    let ring = defining.ring();
    let nx = ring.nvars();
    if gens.is_empty() {
        return Err(AlgebraError::InvalidArgument("no filtration generators".into()));
    }
    let mut deltas = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() || !g.is_homogeneous() || g.is_constant() {
            return Err(AlgebraError::NotHomogeneous(format!("generator {} must be homogeneous of positive degree", g.format())));
        }
        deltas.push(g.degree().unwrap());
    }
    let tname = ring.fresh_name("T");
    let mut ynames = Vec::with_capacity(gens.len());
    for j in 0..gens.len() {
        let mut name = ring.fresh_name(&format!("Y{}", j + 1));
        while name == tname || ynames.contains(&name) {
            name.push('_');
        }
        ynames.push(name);
    }
    let mut vars = vec![tname];
    vars.extend(ring.vars().iter().cloned());
    vars.extend(ynames.iter().cloned());
    let mut weights = vec![1u32];
    weights.extend_from_slice(ring.weights());
    for &d in &deltas {
        let w = u32::try_from(d + 1).map_err(|_| AlgebraError::ExponentOverflow)?;
        weights.push(w);
    }
    let big = Ring::with_weights(&vars, &weights, ring.field().clone())?.with_pair_limit(ring.pair_limit());
    let into_big: Vec<usize> = (1..=nx).collect();
    let t = Polynomial::var(&big, 0);
    let mut rel = Vec::new();
    for g in defining.gens() {
        rel.push(g.remap(&big, &into_big));
    }
    for (j, g) in gens.iter().enumerate() {
        let y = Polynomial::var(&big, 1 + nx + j);
        rel.push(&y - &(&g.remap(&big, &into_big) * &t));
    }
    let target = big.drop_prefix(1)?;
    let rees = Ideal::new(&big, rel)?.eliminate(1, &target)?;
    let into_target: Vec<usize> = (0..nx).collect();
    let mut extra: Vec<Polynomial> = defining.gens().iter().map(|g| g.remap(&target, &into_target)).collect();
    extra.extend(gens.iter().map(|g| g.remap(&target, &into_target)));
    let ideal = rees.add_gens(&extra)?.minimized()?;
    let mut bidegrees: Vec<(u64, u64)> = ring.weights().iter().map(|&w| (w as u64, 0)).collect();
    bidegrees.extend(deltas.iter().map(|&d| (d, 1)));
    Ok(GrPresentation { ring: target, ideal, nx, generators: gens.to_vec(), bidegrees })
}

pub fn gr_presentation(f: &Filtration) -> Result<GrPresentation> {
    match f.kind() {
        FiltrationKind::Adic { q } => gr_presentation_with(f.defining(), q.gens()),
        FiltrationKind::Explicit { .. } => Err(AlgebraError::InvalidArgument("gr presentation needs an adic filtration".into())),
    }
}

/// Route A: read the h-polynomial off the associated graded ring.
pub fn filtration_hilbert_exact(f: &Filtration) -> Result<FiltrationHilbertSummary> {
    let gp = gr_presentation(f)?;
    summary_from_presentation(f, &gp)
}

pub fn summary_from_presentation(f: &Filtration, gp: &GrPresentation) -> Result<FiltrationHilbertSummary> {
    let q1 = gp.specialized_numerator(&gp.ideal)?;
    let m = gp.m();
    let (h, k) = q1.strip_one_minus_t(m);
    let d = m - k;
    let dim = f.defining().krull_dim()?;
    if dim != d as i64 {
        return Err(AlgebraError::Consistency(format!("pole order {d} differs from dim M = {dim}")));
    }
    summary_from_h(&h, d, Route::ReesExact, Vec::new(), None)
}

/// Default number of trailing vanishing h-values for Route B.
pub fn default_window(d: usize) -> usize {
    d + 3
}

/// Route B: sample `H(0..N)` and take `d`-th differences until `window`
/// trailing values vanish past the stability index.
pub fn filtration_hilbert_sampled(f: &Filtration, window: Option<usize>, max_n: usize) -> Result<FiltrationHilbertSummary> {
    let dim = f.defining().krull_dim()?;
    if dim < 0 {
        return Err(AlgebraError::InvalidArgument("the module is zero".into()));
    }
    let d = dim as usize;
    let window = window.unwrap_or_else(|| default_window(d)).max(1);
    let n0 = f.stability_index(max_n)?;
    let mut samples: Vec<u64> = Vec::new();
    let mut n_max = n0 + window;
    loop {
        if n_max > max_n {
            return Err(AlgebraError::Resource(format!("Hilbert function not certified polynomial within n = {max_n}")));
        }
        while samples.len() <= n_max {
            samples.push(hilbert_function(f, samples.len())?);
        }
        let h = difference_h(&samples, d);
        if h[n_max + 1 - window..=n_max].iter().all(|&c| c == 0) {
            let hp = IntPoly::new(h);
            let cert = SampleCertificate { n_max, window, stability_index: n0 };
            let s = summary_from_h(&hp, d, Route::SampledFit, samples.clone(), Some(cert))?;
            for (n, &v) in samples.iter().enumerate() {
                if s.series_value(n as i64) != v as i64 {
                    return Err(AlgebraError::Consistency(format!("sample H({n}) disagrees with the fitted series")));
                }
            }
            return Ok(s);
        }
        n_max += 1;
    }
}

/// `h_k = sum_j (-1)^j C(d,j) H(k-j)`.
fn difference_h(samples: &[u64], d: usize) -> Vec<i64> {
    (0..samples.len())
        .map(|k| {
            (0..=d.min(k))
                .map(|j| {
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * binomial(d as i64, j as i64) as i64 * samples[k - j] as i64
                })
                .sum()
        })
        .collect()
}

/// `u_n = e_0 - H(n)` in dimension one, with the second formula
/// `λ(M_{n+1}/aM_n) - λ(0 :_{M_n} a)` evaluated alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dim1Profile {
    pub e0: i64,
    pub u: Vec<i64>,
    pub u_lengths: Vec<i64>,
    /// `e_0, e_1` recomputed from the `u_n`.
    pub e_from_u: Vec<i64>,
    pub summary: FiltrationHilbertSummary,
}

pub fn dim1_profile(f: &Filtration, a: &Polynomial, max_n: usize) -> Result<Dim1Profile> {
    if f.defining().krull_dim()? != 1 {
        return Err(AlgebraError::InvalidArgument("dimension-one profile needs dim M = 1".into()));
    }
    if !f.level(1)?.contains(a)? {
        return Err(AlgebraError::NotContained(format!("{} is not in q", a.format())));
    }
    let summary = filtration_hilbert_sampled(f, None, max_n)?;
    let e0 = summary.e(0);
    let top = summary.postulation.max(0) as usize + 2;
    let defining = f.defining();
    let ann = defining.quotient_by(a)?;
    let ai = Ideal::new(f.ring(), vec![a.clone()])?;
    let mut u = Vec::with_capacity(top + 1);
    let mut u_lengths = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let h = hilbert_function(f, n)? as i64;
        u.push(e0 - h);
        let ln = f.level(n)?;
        let a_mn = f.times_level(&ai, n)?;
        let first = colength(&a_mn, &f.level(n + 1)?)? as i64;
        let meet = ann.intersection(&ln)?;
        let second = match colength(defining, &meet) {
            Ok(v) => v as i64,
            Err(AlgebraError::InfiniteLength(_)) => {
                return Err(AlgebraError::NotSuperficial(format!("0 : {} has infinite length", a.format())))
            }
            Err(e) => return Err(e),
        };
        u_lengths.push(first - second);
    }
    if u != u_lengths {
        return Err(AlgebraError::Consistency(format!("u_n mismatch: {u:?} vs {u_lengths:?}")));
    }
    if u.last() != Some(&0) {
        return Err(AlgebraError::Consistency("u_n does not vanish past the postulation number".into()));
    }
    let e_from_u = (0..=1).map(|i| e_from_u_values(e0, &u, i)).collect();
    Ok(Dim1Profile { e0, u, u_lengths, e_from_u, summary })
}

/// `e_i = sum_{n >= i-1} C(n, i-1) u_n`, reading `u_{-1} = e_0` and `C(-1,-1) = 1`.
pub fn e_from_u_values(e0: i64, u: &[i64], i: usize) -> i64 {
    if i == 0 {
        return e0;
    }
    u.iter().enumerate().map(|(n, &v)| binomial(n as i64, i as i64 - 1) as i64 * v).sum()
}
