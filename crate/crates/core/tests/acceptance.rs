//! Acceptance gate: one PASS/FAIL line per criterion, every comparison exact.

mod common;

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use filtra::coefficients::{dim1_profile, filtration_hilbert_exact, filtration_hilbert_sampled, FiltrationHilbertSummary};
use filtra::examples::example;
use filtra::hilbert_series::binomial;
use filtra::oracle::{oracle_colength, oracle_dimension, oracle_quotient_dimension};
use filtra::superficial::depth;
use filtra::task::FiltrationExpr;
use filtra::verifier::{
    find_superficial_sequence, slicing_consistency, verify, verify_lower_bound, verify_upper_bound, TheoremId,
    TheoremReport, Verdict, VerifyOptions,
};
use filtra::{CoeffField, Filtration, Ideal, Polynomial, Ring};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(vars, CoeffField::default()).unwrap()
}

fn adic(r: &Arc<Ring>, i: &str, q: &str) -> Filtration {
    let i = if i.is_empty() { Ideal::zero(r) } else { Ideal::parse(r, i).unwrap() };
    Filtration::adic(&i, &Ideal::parse(r, q).unwrap()).unwrap()
}

fn bundled(id: &str) -> Filtration {
    let tf = example(id).unwrap().task_file();
    let name = tf.filtrations[0].0.clone();
    tf.filtration(&FiltrationExpr::Named(name)).unwrap()
}

fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    filtra::parse_polynomial(r, s).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn sequence(f: &Filtration, len: usize) -> Result<Vec<Polynomial>, String> {
    find_superficial_sequence(f, len, 0, &opts()).map_err(err)
}

fn q(r: &TheoremReport, name: &str) -> Result<i64, String> {
    r.quantity(name).ok_or_else(|| format!("{} report has no {name}", r.theorem))
}

/// `λ(M_n/M_{n+1})` summed slice by slice.
fn oracle_h(f: &Filtration, n: usize) -> Result<i64, String> {
    Ok(oracle_colength(&f.level(n + 1).map_err(err)?, &f.level(n).map_err(err)?, 200).map_err(err)? as i64)
}

/// `λ(A/B)` for `B ⊆ A` with `A/B` of finite length but `R/B` possibly not:
/// slice differences up to `top`, which must vanish on the last few degrees.
fn oracle_finite_colength(b: &Ideal, a: &Ideal) -> Result<i64, String> {
    let top: u64 = if b.ring().nvars() <= 3 { 16 } else { 8 };
    let mut total = 0i64;
    for n in 0..=top {
        let diff = oracle_dimension(b, n).map_err(err)? as i64 - oracle_dimension(a, n).map_err(err)? as i64;
        ensure!(diff >= 0, "B is not inside A in degree {n}");
        ensure!(n + 4 <= top || diff == 0, "A/B does not vanish in degree {n}");
        total += diff;
    }
    Ok(total)
}

fn same_summary(a: &FiltrationHilbertSummary, b: &FiltrationHilbertSummary) -> bool {
    a.h == b.h && a.e == b.e && a.postulation == b.postulation
}

fn criterion_1() -> Outcome {
    let f = bundled("3.6");
    let a = filtration_hilbert_exact(&f).map_err(err)?;
    let b = filtration_hilbert_sampled(&f, None, 50).map_err(err)?;
    ensure!(a.h == [1, 1, -1], "h = {:?}", a.h);
    ensure!(a.e(2) == -1, "e2 = {}", a.e(2));
    ensure!(same_summary(&a, &b), "routes differ: {:?} / {:?}", a.e, b.e);
    Ok(format!("h = {:?}, e = {:?} on both routes", a.h, a.e))
}

fn criterion_2() -> Outcome {
    let tf = example("3.2").unwrap().task_file();
    let i = tf.ideal("I").map_err(err)?;
    let j = tf.ideal("J").map_err(err)?;
    let r = tf.ring();
    let (f1, f2) = (poly(&r, "x^2 + y^2"), poly(&r, "z^2 + t^2"));
    let base = i.add_gens(&[f1]).map_err(err)?;
    let colon = base.quotient_by(&f2).map_err(err)?;
    let lhs = colon.intersection(&i.sum(&j).map_err(err)?).map_err(err)?;
    ensure!(lhs.equals(&base).map_err(err)?, "((x^2+y^2) : (z^2+t^2)) ∩ J differs from (x^2+y^2)");
    let hc = colon.hilbert_series().map_err(err)?;
    for n in 0..=8u64 {
        ensure!(hc.value(n as usize) as u64 == oracle_quotient_dimension(&base, &f2, n).map_err(err)?, "colon slice {n} disagrees with the oracle");
    }
    let (dep, regular) = depth(&i, 0).map_err(err)?;
    ensure!(dep == 1, "depth {dep}");
    let dim = i.krull_dim().map_err(err)?;
    ensure!(dim == 2, "dimension {dim}");
    let l = &regular[0];
    for n in 0..=8u64 {
        ensure!(oracle_quotient_dimension(&i, l, n).map_err(err)? == oracle_dimension(&i, n).map_err(err)?, "the certified form is a zero divisor in degree {n}");
    }
    Ok("colon equality holds, dim 2, depth 1".into())
}

fn criterion_3() -> Outcome {
    let f = bundled("3.3");
    let seq = sequence(&f, 2)?;
    let r = verify_upper_bound(&f, &seq, &opts()).map_err(err)?;
    ensure!(r.verdict == Verdict::EqualityHolds, "verdict {}", r.verdict);
    ensure!(r.hypotheses_ok(), "hypotheses {:?}", r.hypotheses);
    ensure!(r.conditions.len() == 2 && r.conditions.iter().all(|c| c.ok), "conditions {:?}", r.conditions);
    ensure!(q(&r, "e2")? == 0, "e2 = {}", q(&r, "e2")?);
    ensure!(q(&r, "depth_M")? == 1, "depth {}", q(&r, "depth_M")?);
    Ok(format!("e2 = 0 = bound, {}", r.verdict))
}

fn criterion_4() -> Outcome {
    let f = bundled("4.2");
    let seq = sequence(&f, 3)?;
    let r = verify_upper_bound(&f, &seq, &opts()).map_err(err)?;
    ensure!(q(&r, "d")? == 3 && q(&r, "depth_M")? == 1, "d = {}, depth = {}", q(&r, "d")?, q(&r, "depth_M")?);
    ensure!(q(&r, "e2")? == 1, "e2 = {}", q(&r, "e2")?);
    ensure!(q(&r, "bound_sum")? == 0, "bound = {}", q(&r, "bound_sum")?);
    ensure!(r.verdict == Verdict::BoundViolatedHypothesisFailed, "verdict {}", r.verdict);
    ensure!(r.hypothesis("depth M >= d-1") == Some(false), "depth hypothesis not the failing one");
    Ok(format!("e2 = 1 > 0 = bound, {}", r.verdict))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let cm = [
        ("k[x,y], (x^2, y^2)", ring(&["x", "y"]), "", "x^2, y^2"),
        ("k[x,y,z]/(xz - y^2), (x, z)", ring(&["x", "y", "z"]), "x*z - y^2", "x, z"),
        ("k[x,y,z]/(x^3+y^3+z^3), (x, y)", ring(&["x", "y", "z"]), "x^3 + y^3 + z^3", "x, y"),
        ("k[x,y,z,w]/(xw - yz), (x, w, y - z)", ring(&["x", "y", "z", "w"]), "x*w - y*z", "x, w, y - z"),
    ];
    let mut cases: Vec<(String, Filtration, bool)> = cm.iter().map(|(n, r, i, qq)| (n.to_string(), adic(r, i, qq), true)).collect();
    // mixed degrees: the generators themselves form the sequence
    let xy = ring(&["x", "y"]);
    let mixed = adic(&xy, "", "x^2, y^3");
    let r = verify(TheoremId::ParameterIdeal, &mixed, &[poly(&xy, "x^2"), poly(&xy, "y^3")], &opts()).map_err(err)?;
    ensure!(r.hypotheses_ok() && q(&r, "e2")? == 0, "k[x,y], (x^2, y^3): e2 = {}, {:?}", q(&r, "e2")?, r.hypotheses);
    lines.push("k[x,y], (x^2, y^3): e2 = 0".into());
    cases.push(("example 3.2".into(), bundled("3.2"), false));
    cases.push(("example 3.3".into(), bundled("3.3"), false));
    for (name, f, is_cm) in &cases {
        let d = f.defining().krull_dim().map_err(err)? as usize;
        let r = verify(TheoremId::ParameterIdeal, f, &sequence(f, d)?, &opts()).map_err(err)?;
        ensure!(r.hypotheses_ok(), "{name}: hypotheses {:?}", r.hypotheses);
        let e2 = q(&r, "e2")?;
        ensure!(e2 <= 0 && r.verdict.bound_holds(), "{name}: e2 = {e2}, {}", r.verdict);
        if *is_cm {
            ensure!(e2 == 0 && q(&r, "depth_M")? == d as i64, "{name}: e2 = {e2} on a Cohen-Macaulay ring");
            let c = verify(TheoremId::CohenMacaulay, f, &sequence(f, d)?, &opts()).map_err(err)?;
            ensure!(c.hypotheses_ok() && c.verdict.bound_holds(), "{name}: Cohen-Macaulay check {}", c.verdict);
        }
        lines.push(format!("{name}: e2 = {e2}"));
    }
    let f = bundled("4.2");
    let r = verify(TheoremId::ParameterIdeal, &f, &sequence(&f, 3)?, &opts()).map_err(err)?;
    ensure!(r.verdict == Verdict::Inapplicable, "example 4.2: {}", r.verdict);
    lines.push("example 4.2 Inapplicable".into());
    Ok(lines.join("; "))
}

/// `dim_k q/mq` with the lifts `I + q`, `I + mq`.
fn oracle_generators(f: &Filtration) -> Result<u64, String> {
    let i = f.defining();
    let q1 = f.level(1).map_err(err)?;
    let mq = i.sum(&f.q().product(&Ideal::maximal(i.ring())).map_err(err)?).map_err(err)?;
    oracle_colength(&mq, &q1, 200).map_err(err)
}

fn criterion_6() -> Outcome {
    let xy = ring(&["x", "y"]);
    let xyz = ring(&["x", "y", "z"]);
    let cases = [
        ("k[x,y], (x^4, x^3y, xy^3, y^4)", adic(&xy, "", "x^4, x^3*y, x*y^3, y^4")),
        ("k[x,y], (x, y)^2", adic(&xy, "", "x^2, x*y, y^2")),
        ("k[x,y], (x^3, x^2y, y^3)", adic(&xy, "", "x^3, x^2*y, y^3")),
        ("k[x,y,z]/(xz - y^2), m", adic(&xyz, "x*z - y^2", "x, y, z")),
    ];
    let mut lines = Vec::new();
    for (name, f) in &cases {
        let d = f.defining().krull_dim().map_err(err)? as usize;
        let mu = oracle_generators(f)?;
        ensure!(mu > d as u64, "{name}: q needs only {mu} generators");
        let r = verify(TheoremId::NonNegativity, f, &sequence(f, d)?, &opts()).map_err(err)?;
        ensure!(r.hypotheses_ok(), "{name}: hypotheses {:?}", r.hypotheses);
        let (e2, lambda, lower) = (q(&r, "e2")?, q(&r, "lambda")?, q(&r, "lower_bound")?);
        ensure!(e2 >= 0 && lambda == 0 && e2 >= lower, "{name}: e2 = {e2}, λ = {lambda}, lower bound {lower}");
        ensure!(r.verdict.bound_holds(), "{name}: {}", r.verdict);
        lines.push(format!("{name}: e2 = {e2}"));
    }
    Ok(lines.join("; "))
}

fn criterion_7() -> Outcome {
    let f = bundled("3.3");
    let seq = sequence(&f, 2)?;
    let r = verify_lower_bound(&f, &seq, &opts()).map_err(err)?;
    let (e2, lambda, s) = (q(&r, "e2")?, q(&r, "lambda")?, q(&r, "postulation_ratliff_rush")?);
    // λ((I + a_1) : a_2 / (I + a_1)) degree by degree
    let a1 = f.defining().add_gens(&seq[..1]).map_err(err)?;
    let oracle = oracle_finite_colength(&a1, &a1.quotient_by(&seq[1]).map_err(err)?)?;
    let quotient_slices: i64 = (0..=14u64)
        .map(|n| oracle_dimension(&a1, n).unwrap() as i64 - oracle_quotient_dimension(&a1, &seq[1], n).unwrap() as i64)
        .sum();
    ensure!(quotient_slices == oracle, "colon slices {quotient_slices} vs {oracle}");
    ensure!(oracle == lambda, "λ = {lambda}, oracle {oracle}");
    let factor = if s + 2 >= 2 { binomial(s + 2, 2) as i64 } else { 0 };
    ensure!(q(&r, "binomial_factor")? == factor, "factor {} vs {factor}", q(&r, "binomial_factor")?);
    ensure!(e2 >= -factor * lambda && r.verdict.bound_holds(), "e2 = {e2} below -{factor}·{lambda}");
    Ok(format!("s = {s}, λ = {lambda} (oracle {oracle}), e2 = {e2} >= {}", -factor * lambda))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for id in ["3.2", "3.3", "3.6", "4.2"] {
        let f = bundled(id);
        let a = filtration_hilbert_exact(&f).map_err(err)?;
        let b = filtration_hilbert_sampled(&f, None, 50).map_err(err)?;
        ensure!(same_summary(&a, &b), "{id}: routes differ");
        let n0 = f.stability_index(50).map_err(err)?;
        for n in 0..=n0 + 3 {
            let h = oracle_h(&f, n)?;
            ensure!(h == a.series_value(n as i64), "{id}: H({n}) = {} but the oracle gives {h}", a.series_value(n as i64));
        }
        lines.push(format!("{id}: H(0..={}) confirmed", n0 + 3));
    }
    Ok(lines.join("; "))
}

fn criterion_9() -> Outcome {
    let xy = ring(&["x", "y"]);
    let xyz = ring(&["x", "y", "z"]);
    let cases = [
        ("k[x,y]/(xy), m", adic(&xy, "x*y", "x, y")),
        ("k[x,y]/(x^2, xy), m", adic(&xy, "x^2, x*y", "x, y")),
        ("k[x,y,z]/(xy, xz, yz), m", adic(&xyz, "x*y, x*z, y*z", "x, y, z")),
        ("k[x,y]/(x^3 - y^2 x), (x, y)^2", adic(&xy, "x^3 - x*y^2", "x^2, x*y, y^2")),
    ];
    let mut lines = Vec::new();
    for (name, f) in &cases {
        let a = sequence(f, 1)?.remove(0);
        let p = dim1_profile(f, &a, 50).map_err(err)?;
        let s = filtration_hilbert_exact(f).map_err(err)?;
        let i = f.defining();
        let ann = i.quotient_by(&a).map_err(err)?;
        let ai = Ideal::new(i.ring(), vec![a.clone()]).map_err(err)?;
        let mut u = Vec::new();
        let mut u_lengths = Vec::new();
        for n in 0..p.u.len() {
            u.push(s.e(0) - oracle_h(f, n)?);
            let first = oracle_colength(&f.times_level(&ai, n).map_err(err)?, &f.level(n + 1).map_err(err)?, 200).map_err(err)? as i64;
            let meet = ann.intersection(&f.level(n).map_err(err)?).map_err(err)?;
            let second = oracle_finite_colength(i, &meet)?;
            u_lengths.push(first - second);
        }
        ensure!(u == u_lengths && u == p.u, "{name}: u = {u:?}, lengths {u_lengths:?}, library {:?}", p.u);
        ensure!(u.last() == Some(&0), "{name}: u does not vanish");
        for k in 1..=2usize {
            let e: i64 = u.iter().enumerate().map(|(n, &un)| binomial(n as i64, k as i64 - 1) as i64 * un).sum();
            ensure!(e == s.e(k), "{name}: e_{k} from u is {e}, route A gives {}", s.e(k));
        }
        lines.push(format!("{name}: u = {u:?}"));
    }
    Ok(lines.join("; "))
}

fn criterion_10() -> Outcome {
    let xy = ring(&["x", "y"]);
    let mut cases: Vec<(String, Filtration, Polynomial)> = Vec::new();
    for (id, seeds) in [("3.6", 0..2u64), ("3.2", 0..1), ("3.3", 0..2), ("4.2", 0..1)] {
        let f = bundled(id);
        for seed in seeds {
            let a = find_superficial_sequence(&f, 1, seed * 97, &opts()).map_err(err)?.remove(0);
            cases.push((format!("example {id} / seed {seed}"), f.clone(), a));
        }
    }
    cases.push(("k[x,y]/(x^2, xy) by y".into(), adic(&xy, "x^2, x*y", "x, y"), poly(&xy, "y")));
    let mut lines = Vec::new();
    for (name, f, a) in &cases {
        let rep = slicing_consistency(f, a, &opts()).map_err(err)?;
        ensure!(rep.checks.iter().all(|c| c.ok), "{name}: {:?}", rep.checks);
        let d = rep.d;
        let i = f.defining();
        let lambda = oracle_finite_colength(i, &i.quotient_by(a).map_err(err)?)?;
        ensure!(lambda == rep.lambda_ann, "{name}: λ(0:a) = {}, oracle {lambda}", rep.lambda_ann);
        let e = filtration_hilbert_exact(f).map_err(err)?;
        let eq = filtration_hilbert_exact(&f.quotient_filtration(std::slice::from_ref(a)).map_err(err)?).map_err(err)?;
        for k in 0..d.saturating_sub(1) {
            ensure!(eq.e(k) == e.e(k), "{name}: e_{k} changes");
        }
        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        ensure!(eq.e(d - 1) == e.e(d - 1) + sign(d - 1) * lambda, "{name}: e_(d-1) identity");
        let mut partial = 0i64;
        for n in 0..=rep.truncation + 3 {
            let ln = f.level(n).map_err(err)?;
            let colon = f.level(n + 1).map_err(err)?.quotient_by(a).map_err(err)?;
            partial += oracle_colength(&ln, &colon, 200).map_err(err)? as i64;
            if n >= rep.truncation {
                let rhs = sign(d) * (partial - (n as i64 + 1) * lambda);
                ensure!(eq.e(d) - e.e(d) == rhs, "{name}: e_d identity fails at n = {n}");
            }
        }
        lines.push(format!("{name}: λ = {lambda}"));
    }
    ensure!(cases.len() >= 5, "only {} slices", cases.len());
    Ok(format!("{} slices; {}", cases.len(), lines.join("; ")))
}

fn criterion_11() -> Outcome {
    let mut checks = 0;
    for seed in 0..60 {
        checks += common::check_instance(&common::instance(seed))?;
    }
    Ok(format!("60 instances, {checks} comparisons"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("example 3.6: h = 1 + t - t^2, e2 = -1, routes agree", criterion_1, 5),
        ("example 3.2: colon equality and depth one", criterion_2, 10),
        ("example 3.3: e2 = 0, upper bound with equality", criterion_3, 120),
        ("example 4.2: e2 = 1 above a zero bound, hypothesis failed", criterion_4, 120),
        ("parameter ideals: e2 <= 0, zero when Cohen-Macaulay", criterion_5, 300),
        ("non-parameter q on Cohen-Macaulay rings: e2 >= 0", criterion_6, 300),
        ("lower bound on example 3.3 with λ from the oracle", criterion_7, 300),
        ("route equivalence and oracle Hilbert functions", criterion_8, 300),
        ("dimension-one identities", criterion_9, 60),
        ("slicing identities", criterion_10, 300),
        ("engine against the linear-algebra oracle", criterion_11, 300),
    ];
    let mut failed = Vec::new();
    let out = std::io::stdout();
    for (k, (title, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(m) if took > Duration::from_secs(*limit) => Err(format!("{m}; took longer than {limit} s")),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(m) => ("PASS", m.clone()),
            Err(m) => ("FAIL", m.clone()),
        };
        let mut o = out.lock();
        let _ = writeln!(o, "{tag} {:>2} {title} [{:.2} s] {detail}", k + 1, took.as_secs_f64());
        if result.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
