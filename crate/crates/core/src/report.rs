//! Running task files, JSON envelopes and plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::coefficients::{dim1_profile, filtration_hilbert_exact, filtration_hilbert_sampled, Dim1Profile, FiltrationHilbertSummary};
use crate::error::{AlgebraError, Result};
use crate::examples::ExampleEntry;
use crate::filtration::Filtration;
use crate::poly::Polynomial;
use crate::superficial::{certify_superficial_sequence, depth, SuperficialCertificate, SuperficialMethod};
use crate::task::{TaskDecl, TaskFile, TaskKind, TaskTarget};
use crate::verifier::{find_superficial_sequence, slicing_consistency, verify, Check, SlicingReport, TheoremReport, VerifyOptions};

pub const TOOL: &str = "filtra";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteChoice {
    A,
    B,
    Both,
}

impl RouteChoice {
    pub fn parse(s: &str) -> Option<RouteChoice> {
        match s {
            "A" | "a" => Some(RouteChoice::A),
            "B" | "b" => Some(RouteChoice::B),
            "both" => Some(RouteChoice::Both),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunFlags {
    pub route: RouteChoice,
    /// Trailing vanishing h-values required by sampling; `None` for the default.
    pub sample_window: Option<usize>,
    pub verify: VerifyOptions,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags { route: RouteChoice::A, sample_window: None, verify: VerifyOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskOutput {
    Gb {
        ideal: String,
        order: String,
        basis: Vec<String>,
    },
    Hilbert {
        filtration: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        route_a: Option<FiltrationHilbertSummary>,
        #[serde(skip_serializing_if = "Option::is_none")]
        route_b: Option<FiltrationHilbertSummary>,
        #[serde(skip_serializing_if = "Option::is_none")]
        routes_agree: Option<bool>,
    },
    Superficial {
        filtration: String,
        sequence: Vec<Polynomial>,
        certificates: Vec<SuperficialCertificate>,
        maximal: bool,
    },
    Verify(TheoremReport),
    Slicing(SlicingReport),
    Profile(Dim1Profile),
    Depth {
        ideal: String,
        depth: usize,
        sequence: Vec<Polynomial>,
    },
    Example {
        id: String,
        description: String,
        checks: Vec<Check>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    /// SHA-256 of the canonical task text.
    pub fingerprint: String,
    pub canonical: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: InputInfo,
    pub field: String,
    pub seed: u64,
    pub reports: Vec<TaskOutput>,
}

impl RunOutput {
    /// 0 when every check passed, 2 when a statement did not apply or a bundled value was missed.
    pub fn exit_code(&self) -> i32 {
        let failed = self.reports.iter().any(|r| match r {
            TaskOutput::Verify(t) => !t.verdict.bound_holds(),
            TaskOutput::Example { checks, .. } => checks.iter().any(|c| !c.ok),
            _ => false,
        });
        if failed {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn fingerprint(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn options_for(t: &TaskDecl, flags: &RunFlags) -> Result<(RunFlags, Option<String>)> {
    let mut fl = flags.clone();
    let num = |k: &str| -> Option<u64> { t.option(k).and_then(|v| v.parse().ok()) };
    if let Some(r) = t.option("route") {
        fl.route = RouteChoice::parse(r).ok_or_else(|| AlgebraError::InvalidArgument(format!("bad route {r}")))?;
    }
    if let Some(w) = num("window") {
        fl.sample_window = Some(w as usize);
        fl.verify.window = w as usize;
    }
    if let Some(n) = num("max-n") {
        fl.verify.max_n = n as usize;
    }
    if let Some(k) = num("max-k") {
        fl.verify.max_k = k as u32;
    }
    if let Some(s) = num("seed") {
        fl.verify.seed = s;
    }
    match t.option("method") {
        Some("gr") => fl.verify.method = Some(SuperficialMethod::GrAnnihilator),
        Some("colon") => fl.verify.method = Some(SuperficialMethod::BoundedColon),
        _ => {}
    }
    Ok((fl, t.option("seq").map(|s| s.to_string())))
}

fn sequence_or_random(tf: &TaskFile, f: &Filtration, seq: &Option<String>, len: usize, fl: &RunFlags) -> Result<Vec<Polynomial>> {
    match seq {
        Some(name) => tf
            .sequence(name)
            .map(|s| s.to_vec())
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown sequence {name}"))),
        None => find_superficial_sequence(f, len, fl.verify.seed, &fl.verify),
    }
}

fn run_one(tf: &TaskFile, t: &TaskDecl, flags: &RunFlags) -> Result<TaskOutput> {
    let (fl, seq) = options_for(t, flags)?;
    let filtration = |t: &TaskDecl| -> Result<Filtration> {
        match &t.target {
            TaskTarget::Filtration(e) => tf.filtration(e),
            TaskTarget::Ideal(n) => Err(AlgebraError::InvalidArgument(format!("{n} is not a filtration"))),
        }
    };
    let dim = |f: &Filtration| -> Result<usize> { Ok(f.defining().krull_dim()?.max(0) as usize) };
    Ok(match t.kind {
        TaskKind::Gb => {
            let TaskTarget::Ideal(n) = &t.target else { unreachable!() };
            let i = tf.ideal(n)?;
            let gb = i.gb()?;
            TaskOutput::Gb {
                ideal: n.clone(),
                order: gb.order().name(),
                basis: gb.generators().iter().map(|g| g.format()).collect(),
            }
        }
        TaskKind::Depth => {
            let TaskTarget::Ideal(n) = &t.target else { unreachable!() };
            let (d, sequence) = depth(&tf.ideal(n)?, fl.verify.seed)?;
            TaskOutput::Depth { ideal: n.clone(), depth: d, sequence }
        }
        TaskKind::Hilbert => {
            let f = filtration(t)?;
            let want_a = fl.route != RouteChoice::B && f.is_adic();
            let want_b = fl.route != RouteChoice::A || !f.is_adic();
            let route_a = if want_a { Some(filtration_hilbert_exact(&f)?) } else { None };
            let route_b = if want_b { Some(filtration_hilbert_sampled(&f, fl.sample_window, fl.verify.max_n)?) } else { None };
            let routes_agree = match (&route_a, &route_b) {
                (Some(a), Some(b)) => {
                    if !a.agrees_with(b) {
                        return Err(AlgebraError::Consistency(format!("routes disagree: e = {:?} vs {:?}", a.e, b.e)));
                    }
                    Some(true)
                }
                _ => None,
            };
            TaskOutput::Hilbert { filtration: t.target.to_string(), route_a, route_b, routes_agree }
        }
        TaskKind::Superficial => {
            let f = filtration(t)?;
            let s = sequence_or_random(tf, &f, &seq, dim(&f)?, &fl)?;
            let method = fl.verify.method.unwrap_or(if f.is_adic() {
                SuperficialMethod::GrAnnihilator
            } else {
                SuperficialMethod::BoundedColon
            });
            let sc = certify_superficial_sequence(&f, &s, method)?;
            TaskOutput::Superficial { filtration: t.target.to_string(), sequence: s, certificates: sc.certificates, maximal: sc.maximal }
        }
        TaskKind::Verify(id) => {
            let f = filtration(t)?;
            let s = sequence_or_random(tf, &f, &seq, dim(&f)?, &fl)?;
            TaskOutput::Verify(verify(id, &f, &s, &fl.verify)?)
        }
        TaskKind::Slicing => {
            let f = filtration(t)?;
            let s = sequence_or_random(tf, &f, &seq, 1, &fl)?;
            let a = s.first().ok_or_else(|| AlgebraError::InvalidArgument("empty sequence".into()))?;
            TaskOutput::Slicing(slicing_consistency(&f, a, &fl.verify)?)
        }
        TaskKind::Profile => {
            let f = filtration(t)?;
            let s = sequence_or_random(tf, &f, &seq, 1, &fl)?;
            let a = s.first().ok_or_else(|| AlgebraError::InvalidArgument("empty sequence".into()))?;
            TaskOutput::Profile(dim1_profile(&f, a, fl.verify.max_n)?)
        }
    })
}

/// Run every task of the file, in order.
pub fn run_task_file(tf: &TaskFile, flags: &RunFlags) -> Result<RunOutput> {
    let canonical = tf.to_canonical();
    let reports = tf.tasks.iter().map(|t| run_one(tf, t, flags)).collect::<Result<Vec<_>>>()?;
    Ok(RunOutput {
        tool: TOOL,
        version: VERSION,
        input: InputInfo { fingerprint: fingerprint(&canonical), canonical },
        field: tf.field.to_string(),
        seed: flags.verify.seed,
        reports,
    })
}

/// Values observed in a run, keyed like [`ExampleEntry::expected`].
fn observed(reports: &[TaskOutput]) -> BTreeMap<&'static str, i64> {
    let mut m = BTreeMap::new();
    for r in reports {
        match r {
            TaskOutput::Depth { depth, .. } => {
                m.insert("depth", *depth as i64);
            }
            TaskOutput::Hilbert { route_a, route_b, .. } => {
                if let Some(s) = route_a.as_ref().or(route_b.as_ref()) {
                    m.insert("d", s.d as i64);
                    m.insert("e2", s.e(2));
                }
            }
            TaskOutput::Verify(t) => {
                for (k, key) in [("d", "d"), ("e2", "e2"), ("bound_sum", "bound_sum")] {
                    if let Some(v) = t.quantity(k) {
                        m.insert(key, v);
                    }
                }
                if let Some(c) = t.condition("(J_1 M : a_d) ∩ M_1 = J_1 M") {
                    m.insert("colon_equality", c as i64);
                }
            }
            _ => {}
        }
    }
    m
}

/// Run a bundled example and compare with its stored values.
pub fn run_example(entry: &ExampleEntry, flags: &RunFlags) -> Result<RunOutput> {
    run_example_file(entry, &entry.task_file(), flags)
}

/// Like [`run_example`], on a reparsed copy of the bundled file (other field or order).
pub fn run_example_file(entry: &ExampleEntry, tf: &TaskFile, flags: &RunFlags) -> Result<RunOutput> {
    let mut out = run_task_file(tf, flags)?;
    let seen = observed(&out.reports);
    let mut checks = Vec::new();
    for &(name, want) in entry.expected {
        let got = seen.get(name).copied();
        checks.push(Check {
            name: format!("{name} = {want}"),
            ok: got == Some(want),
            evidence: match got {
                Some(v) => format!("computed {v}"),
                None => "not computed".into(),
            },
        });
    }
    if let Some(h) = entry.h {
        let got = out.reports.iter().find_map(|r| match r {
            TaskOutput::Hilbert { route_a, route_b, .. } => route_a.as_ref().or(route_b.as_ref()).map(|s| s.h.clone()),
            _ => None,
        });
        checks.push(Check {
            name: format!("h = {h:?}"),
            ok: got.as_deref() == Some(h),
            evidence: format!("computed {got:?}"),
        });
    }
    out.reports.push(TaskOutput::Example { id: entry.id.into(), description: entry.description.into(), checks });
    Ok(out)
}

fn render_summary(s: &mut String, label: &str, h: &FiltrationHilbertSummary) {
    let _ = writeln!(s, "  {label}: h = {} (d = {}), e = {:?}, postulation {}", h.h_polynomial(), h.d, h.e, h.postulation);
}

fn render_checks(s: &mut String, title: &str, checks: &[Check]) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(s, "  {title}:");
    for c in checks {
        let _ = writeln!(s, "    [{}] {} ({})", if c.ok { "ok" } else { "FAIL" }, c.name, c.evidence);
    }
}

pub fn render_human(out: &RunOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} over {}, seed {}", out.tool, out.version, out.field, out.seed);
    for r in &out.reports {
        match r {
            TaskOutput::Gb { ideal, order, basis } => {
                let _ = writeln!(s, "gb {ideal} ({order}), {} elements", basis.len());
                for g in basis {
                    let _ = writeln!(s, "  {g}");
                }
            }
            TaskOutput::Depth { ideal, depth, sequence } => {
                let seq: Vec<String> = sequence.iter().map(|p| p.format()).collect();
                let _ = writeln!(s, "depth R/{ideal} = {depth}");
                if !seq.is_empty() {
                    let _ = writeln!(s, "  regular sequence: {}", seq.join(", "));
                }
            }
            TaskOutput::Hilbert { filtration, route_a, route_b, routes_agree } => {
                let _ = writeln!(s, "hilbert {filtration}");
                if let Some(a) = route_a {
                    render_summary(&mut s, "route A", a);
                }
                if let Some(b) = route_b {
                    render_summary(&mut s, "route B", b);
                }
                if let Some(ok) = routes_agree {
                    let _ = writeln!(s, "  routes agree: {ok}");
                }
            }
            TaskOutput::Superficial { filtration, sequence, maximal, .. } => {
                let seq: Vec<String> = sequence.iter().map(|p| p.format()).collect();
                let _ = writeln!(s, "superficial {filtration}: {} (maximal: {maximal})", seq.join(", "));
            }
            TaskOutput::Verify(t) => {
                let _ = writeln!(s, "verify {}: {}", t.theorem, t.verdict);
                render_checks(&mut s, "hypotheses", &t.hypotheses);
                let q: Vec<String> = t.quantities.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = writeln!(s, "  quantities: {}", q.join(", "));
                render_checks(&mut s, "equality conditions", &t.conditions);
                for n in &t.notes {
                    let _ = writeln!(s, "  note: {n}");
                }
            }
            TaskOutput::Slicing(r) => {
                let _ = writeln!(s, "slicing by {}: λ(0:a) = {}, e = {:?}, e(M/aM) = {:?}", r.element, r.lambda_ann, r.e, r.e_quotient);
                render_checks(&mut s, "identities", &r.checks);
            }
            TaskOutput::Profile(p) => {
                let _ = writeln!(s, "dimension-one profile: e0 = {}, u = {:?}, e from u = {:?}", p.e0, p.u, p.e_from_u);
            }
            TaskOutput::Example { id, description, checks } => {
                let _ = writeln!(s, "example {id}: {description}");
                render_checks(&mut s, "expected values", checks);
            }
        }
    }
    s
}
