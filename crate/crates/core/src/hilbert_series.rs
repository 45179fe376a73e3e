//! Hilbert series numerators of monomial ideals and integer polynomial
//! arithmetic on them.

use std::collections::BTreeMap;
use std::fmt;

use crate::monomial::Monomial;

/// Dense univariate polynomial with integer coefficients; `coeffs[k]` is the
/// coefficient of `t^k`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `(1 - t)^n`
    pub fn one_minus_t_pow(n: usize) -> Self {
        let mut p = IntPoly::one();
        for _ in 0..n {
            p = p.mul_one_minus_tw(1);
        }
        p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn mul_one_minus_tw(&self, w: usize) -> IntPoly {
        let mut out = vec![0i64; self.coeffs.len() + w];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
            out[k + w] -= c;
        }
        IntPoly::new(out)
    }

    /// Exact quotient by `1 - t^w`, or `None` if it does not divide.
    pub fn div_one_minus_tw(&self, w: usize) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.coeffs.len();
        if n <= w {
            return None;
        }
        let mut q = vec![0i64; n - w];
        for k in 0..q.len() {
            q[k] = self.coeffs[k] + if k >= w { q[k - w] } else { 0 };
        }
        // remaining coefficients must vanish
        for k in (n - w)..n {
            let back = if k >= w && k - w < q.len() { q[k - w] } else { 0 };
            if self.coeffs[k] + back != 0 {
                return None;
            }
        }
        Some(IntPoly::new(q))
    }

    /// Divide by `(1 - t)` as often as possible; returns the quotient and the count.
    pub fn strip_one_minus_t(&self, max: usize) -> (IntPoly, usize) {
        let mut p = self.clone();
        let mut k = 0;
        while k < max && !p.is_zero() {
            match p.div_one_minus_tw(1) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        (p, k)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as i64 * c).collect())
    }

    /// i-th derivative evaluated at 1, divided by i!: `sum_k C(k, i) c_k`.
    pub fn taylor_at_one(&self, i: usize) -> i128 {
        self.coeffs.iter().enumerate().map(|(k, &c)| binomial(k as i64, i as i64) * c as i128).sum()
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("t"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("t"))
    }
}

/// `C(n, k)` for integer `n` (negative allowed) and `k >= 0`; zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k {
        num *= (n - j) as i128;
        den *= (j + 1) as i128;
    }
    num / den
}

/// Sparse polynomial in two variables `u, t` with integer coefficients,
/// keyed by `(deg_u, deg_t)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Poly2 {
    terms: BTreeMap<(u64, u64), i64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        let mut p = Poly2::default();
        p.terms.insert((0, 0), 1);
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (u64, u64), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    /// `self += sign * u^a t^b * other`
    pub fn add_shifted(&mut self, other: &Poly2, shift: (u64, u64), sign: i64) {
        for (&(a, b), &c) in &other.terms {
            self.add_term((a + shift.0, b + shift.1), sign * c);
        }
    }

    pub fn mul_one_minus(&self, d: (u64, u64)) -> Poly2 {
        let mut out = self.clone();
        out.add_shifted(self, d, -1);
        out
    }

    /// Coefficient of `t^j` as a polynomial in `u`.
    pub fn t_row(&self, j: u64) -> IntPoly {
        let top = self.terms.keys().filter(|k| k.1 == j).map(|k| k.0).max();
        match top {
            None => IntPoly::zero(),
            Some(top) => {
                let mut v = vec![0i64; top as usize + 1];
                for (&(a, b), &c) in &self.terms {
                    if b == j {
                        v[a as usize] = c;
                    }
                }
                IntPoly::new(v)
            }
        }
    }

    pub fn t_degree(&self) -> Option<u64> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Collapse to the `u`-grading (requires all `t`-degrees zero for a faithful result).
    pub fn u_part(&self) -> IntPoly {
        self.t_row(0)
    }
}

/// Minimal generators of the monomial ideal generated by `gens`.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.degree());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(v.len());
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn pairwise_coprime(g: &[Monomial]) -> bool {
    let mut seen = 0u64;
    let mut wide = false;
    for m in g {
        if m.nvars() > 64 {
            wide = true;
            break;
        }
        let mask = m.support().fold(0u64, |a, i| a | (1 << i));
        if seen & mask != 0 {
            return false;
        }
        seen |= mask;
    }
    if wide {
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !g[i].is_coprime(&g[j]) {
                    return false;
                }
            }
        }
    }
    true
}

fn bideg(m: &Monomial, degs: &[(u64, u64)]) -> (u64, u64) {
    m.exps().iter().zip(degs).fold((0, 0), |acc, (&e, d)| (acc.0 + e as u64 * d.0, acc.1 + e as u64 * d.1))
}

/// Numerator `N` of the (bi)graded Hilbert series of `S/(gens)`, where the
/// series equals `N / prod_i (1 - u^{a_i} t^{b_i})` and `degs[i] = (a_i, b_i)`.
pub fn numerator(gens: &[Monomial], degs: &[(u64, u64)]) -> Poly2 {
    num_rec(minimalize(gens), degs)
}

fn num_rec(g: Vec<Monomial>, degs: &[(u64, u64)]) -> Poly2 {
    if g.is_empty() {
        return Poly2::one();
    }
    if pairwise_coprime(&g) {
        let mut p = Poly2::one();
        for m in &g {
            p = p.mul_one_minus(bideg(m, degs));
        }
        return p;
    }
    // pivot on the variable occurring in the most non-pure-power generators
    let n = g[0].nvars();
    let mut count = vec![0usize; n];
    let mut min_exp = vec![u32::MAX; n];
    for m in &g {
        if m.support().count() < 2 {
            continue;
        }
        for i in m.support() {
            count[i] += 1;
            min_exp[i] = min_exp[i].min(m.exps()[i]);
        }
    }
    let i = (0..n).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).expect("variables");
    let e = min_exp[i];
    let mut pe = vec![0u32; n];
    pe[i] = e;
    let p = Monomial::from_exps_unchecked(pe);

    let mut plus: Vec<Monomial> = g.iter().filter(|m| m.exps()[i] < e).cloned().collect();
    plus.push(p.clone());
    let colon: Vec<Monomial> = g
        .iter()
        .map(|m| {
            let mut ex = m.exps().to_vec();
            ex[i] = ex[i].saturating_sub(e);
            Monomial::from_exps_unchecked(ex)
        })
        .collect();

    let mut out = num_rec(minimalize(&plus), degs);
    let rest = num_rec(minimalize(&colon), degs);
    out.add_shifted(&rest, bideg(&p, degs), 1);
    out
}

/// Numerator for a single grading by `weights`.
pub fn numerator_univariate(gens: &[Monomial], weights: &[u32]) -> IntPoly {
    let degs: Vec<(u64, u64)> = weights.iter().map(|&w| (w as u64, 0)).collect();
    numerator(gens, &degs).u_part()
}

/// Hilbert series `numerator / prod (1 - t^{w_i})` of a graded quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHilbert {
    numerator: IntPoly,
    weights: Vec<u32>,
}

impl GradedHilbert {
    pub fn new(numerator: IntPoly, weights: Vec<u32>) -> Self {
        GradedHilbert { numerator, weights }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Coefficients of `1 / prod (1 - t^{w_i})` up to `t^n`.
    fn denominator_series(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n + 1];
        s[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for k in w..=n {
                s[k] += s[k - w];
            }
        }
        s
    }

    /// Dimension of the degree-`n` component.
    pub fn value(&self, n: usize) -> i64 {
        let s = self.denominator_series(n);
        (0..=n).map(|k| self.numerator.coeff(k) * s[n - k]).sum()
    }

    /// Krull dimension, i.e. order of the pole at `t = 1`; `-1` for the zero module.
    pub fn dimension(&self) -> i64 {
        if self.numerator.is_zero() {
            return -1;
        }
        let n = self.weights.len();
        let (_, k) = self.numerator.strip_one_minus_t(n);
        (n - k) as i64
    }

    /// `(h, d)` with series `h / (1-t)^d` and `h(1) != 0`; only for standard grading.
    pub fn h_polynomial(&self) -> Option<(IntPoly, usize)> {
        if self.weights.iter().any(|&w| w != 1) || self.numerator.is_zero() {
            return None;
        }
        let n = self.weights.len();
        let (h, k) = self.numerator.strip_one_minus_t(n);
        Some((h, n - k))
    }

    /// Multiplicity `h(1)` under the standard grading.
    pub fn multiplicity(&self) -> Option<i64> {
        self.h_polynomial().map(|(h, _)| h.eval_one())
    }

    /// Total dimension when finite (dimension zero or the zero module).
    pub fn total_length(&self) -> Option<i64> {
        finite_length(&self.numerator, &self.weights)
    }
}

/// Sum of coefficients of `p / prod (1 - t^{w_i})` when that quotient is a polynomial.
pub fn finite_length(p: &IntPoly, weights: &[u32]) -> Option<i64> {
    let mut q = p.clone();
    for &w in weights {
        q = q.div_one_minus_tw(w as usize)?;
    }
    Some(q.eval_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec()).unwrap()
    }

    #[test]
    fn numerator_of_x2_xy() {
        // 1 - 2t^2 + t^3 = (1-t)(1+t-t^2)
        let n = numerator_univariate(&[m(&[2, 0, 0]), m(&[1, 1, 0])], &[1, 1, 1]);
        assert_eq!(n.coeffs(), &[1, 0, -2, 1]);
        let h = GradedHilbert::new(n, vec![1, 1, 1]);
        let (hp, d) = h.h_polynomial().unwrap();
        assert_eq!(hp.coeffs(), &[1, 1, -1]);
        assert_eq!(d, 2);
        assert_eq!((0..3).map(|k| h.value(k)).collect::<Vec<_>>(), vec![1, 3, 4]);
    }

    #[test]
    fn zero_ideal_and_pure_power() {
        let h = GradedHilbert::new(numerator_univariate(&[], &[1]), vec![1]);
        assert_eq!(h.dimension(), 1);
        assert_eq!(h.value(7), 1);
        let h = GradedHilbert::new(numerator_univariate(&[m(&[2])], &[1]), vec![1]);
        assert_eq!(h.dimension(), 0);
        assert_eq!(h.total_length(), Some(2));
        assert_eq!(h.h_polynomial().unwrap().0.coeffs(), &[1, 1]);
    }

    #[test]
    fn unit_ideal_has_zero_numerator() {
        let h = GradedHilbert::new(numerator_univariate(&[m(&[0, 0])], &[1, 1]), vec![1, 1]);
        assert!(h.numerator().is_zero());
        assert_eq!(h.dimension(), -1);
    }

    #[test]
    fn weighted_grading() {
        // k[x,y], deg x = 1, deg y = 2: dims 1,1,2,2,3,...
        let h = GradedHilbert::new(numerator_univariate(&[], &[1, 2]), vec![1, 2]);
        assert_eq!((0..6).map(|k| h.value(k)).collect::<Vec<_>>(), vec![1, 1, 2, 2, 3, 3]);
        assert_eq!(h.dimension(), 2);
    }

    #[test]
    fn exact_division() {
        let p = IntPoly::new(vec![1, 0, -1]);
        assert_eq!(p.div_one_minus_tw(1).unwrap().coeffs(), &[1, 1]);
        assert_eq!(p.div_one_minus_tw(2).unwrap().coeffs(), &[1]);
        assert!(IntPoly::new(vec![1, 1]).div_one_minus_tw(1).is_none());
        assert_eq!(IntPoly::one_minus_t_pow(2).coeffs(), &[1, -2, 1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 2), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(4, 0), 1);
    }

    #[test]
    fn bigraded_numerator_specializes() {
        let gens = [m(&[1, 1]), m(&[0, 2])];
        let bi = numerator(&gens, &[(1, 0), (1, 1)]);
        let uni = numerator_univariate(&gens, &[1, 1]);
        // setting t = 1 recovers the single grading
        let mut coll = vec![0i64; 4];
        for (&(a, _), &c) in bi.terms() {
            coll[a as usize] += c;
        }
        assert_eq!(IntPoly::new(coll), uni);
    }

    #[test]
    fn format_polynomial() {
        assert_eq!(IntPoly::new(vec![1, 1, -1]).to_string(), "1 + t - t^2");
        assert_eq!(IntPoly::new(vec![0, -2, 3]).to_string(), "-2*t + 3*t^2");
    }
}
