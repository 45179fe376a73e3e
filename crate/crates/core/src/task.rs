//! Line-oriented task files.
//!
//! ```text
//! # comment
//! field GF(32003)
//! vars x, y, z
//! ideal I = x^2, x*y
//! ideal q = x, y, z
//! seq a = x + y, z
//! filtration F = adic(q) mod I
//! task verify upper-bound F seq=a
//! ```
//!
//! Declarations may appear in any order. Ideals accept either generators or
//! one of `intersect(A, B, ..)`, `sum(..)`, `product(..)`, `quotient(A, B)`,
//! `power(A, k)`; filtrations are `adic(q) [mod I]` or
//! `explicit(M0, M1, ..; q) [mod I]`. Variables take optional weights `x:2`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::field::CoeffField;
use crate::filtration::Filtration;
use crate::ideal::{split_top_level, Ideal};
use crate::order::TermOrder;
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Ring};
use crate::verifier::TheoremId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct TaskError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, TaskError> {
    Err(TaskError { line, col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdealExpr {
    Gens(Vec<Polynomial>),
    Intersect(Vec<String>),
    Sum(Vec<String>),
    Product(Vec<String>),
    Quotient(String, String),
    Power(String, u32),
}

impl IdealExpr {
    fn refs(&self) -> Vec<&str> {
        match self {
            IdealExpr::Gens(_) => Vec::new(),
            IdealExpr::Intersect(v) | IdealExpr::Sum(v) | IdealExpr::Product(v) => v.iter().map(|s| s.as_str()).collect(),
            IdealExpr::Quotient(a, b) => vec![a, b],
            IdealExpr::Power(a, _) => vec![a],
        }
    }

    fn canonical(&self) -> String {
        match self {
            IdealExpr::Gens(g) if g.is_empty() => "0".into(),
            IdealExpr::Gens(g) => g.iter().map(|p| p.format()).collect::<Vec<_>>().join(", "),
            IdealExpr::Intersect(v) => format!("intersect({})", v.join(", ")),
            IdealExpr::Sum(v) => format!("sum({})", v.join(", ")),
            IdealExpr::Product(v) => format!("product({})", v.join(", ")),
            IdealExpr::Quotient(a, b) => format!("quotient({a}, {b})"),
            IdealExpr::Power(a, k) => format!("power({a}, {k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationExpr {
    Adic { q: String, defining: Option<String> },
    Explicit { chain: Vec<String>, tail: String, defining: Option<String> },
    Named(String),
}

impl fmt::Display for FiltrationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let modulo = |d: &Option<String>| d.as_ref().map(|d| format!(" mod {d}")).unwrap_or_default();
        match self {
            FiltrationExpr::Adic { q, defining } => write!(f, "adic({q}){}", modulo(defining)),
            FiltrationExpr::Explicit { chain, tail, defining } => {
                write!(f, "explicit({}; {tail}){}", chain.join(", "), modulo(defining))
            }
            FiltrationExpr::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Gb,
    Hilbert,
    Superficial,
    Verify(TheoremId),
    Slicing,
    Profile,
    Depth,
}

impl TaskKind {
    fn takes_ideal(&self) -> bool {
        matches!(self, TaskKind::Gb | TaskKind::Depth)
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskKind::Gb => f.write_str("gb"),
            TaskKind::Hilbert => f.write_str("hilbert"),
            TaskKind::Superficial => f.write_str("superficial"),
            TaskKind::Verify(t) => write!(f, "verify {t}"),
            TaskKind::Slicing => f.write_str("slicing"),
            TaskKind::Profile => f.write_str("profile"),
            TaskKind::Depth => f.write_str("depth"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskTarget {
    Ideal(String),
    Filtration(FiltrationExpr),
}

impl fmt::Display for TaskTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskTarget::Ideal(n) => f.write_str(n),
            TaskTarget::Filtration(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub kind: TaskKind,
    pub target: TaskTarget,
    pub options: BTreeMap<String, String>,
}

impl TaskDecl {
    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(|s| s.as_str())
    }
}

const OPTION_KEYS: [&str; 7] = ["seq", "route", "window", "max-n", "max-k", "seed", "method"];

#[derive(Clone, Debug)]
pub struct TaskFile {
    pub field: CoeffField,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub lex: bool,
    pub homogeneous: bool,
    pub ideals: Vec<(String, IdealExpr)>,
    pub sequences: Vec<(String, Vec<Polynomial>)>,
    pub filtrations: Vec<(String, FiltrationExpr)>,
    pub tasks: Vec<TaskDecl>,
    ring: Arc<Ring>,
}

impl PartialEq for TaskFile {
    fn eq(&self, other: &Self) -> bool {
        self.to_canonical() == other.to_canonical()
    }
}

impl TaskFile {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn ideal_expr(&self, name: &str) -> Option<&IdealExpr> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn has_ideal(&self, name: &str) -> bool {
        self.ideal_expr(name).is_some()
    }

    pub fn ideal(&self, name: &str) -> crate::Result<Ideal> {
        let expr = self
            .ideal_expr(name)
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown ideal {name}")))?;
        let fold = |names: &[String], op: &dyn Fn(&Ideal, &Ideal) -> crate::Result<Ideal>| -> crate::Result<Ideal> {
            let mut acc = self.ideal(&names[0])?;
            for n in &names[1..] {
                acc = op(&acc, &self.ideal(n)?)?;
            }
            Ok(acc)
        };
        match expr {
            IdealExpr::Gens(g) => Ideal::new(&self.ring, g.clone()),
            IdealExpr::Intersect(v) => fold(v, &|a, b| a.intersection(b)),
            IdealExpr::Sum(v) => fold(v, &|a, b| a.sum(b)),
            IdealExpr::Product(v) => fold(v, &|a, b| a.product(b)),
            IdealExpr::Quotient(a, b) => self.ideal(a)?.quotient(&self.ideal(b)?),
            IdealExpr::Power(a, k) => self.ideal(a)?.power(*k),
        }
    }

    pub fn sequence(&self, name: &str) -> Option<&[Polynomial]> {
        self.sequences.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_slice())
    }

    pub fn filtration(&self, expr: &FiltrationExpr) -> crate::Result<Filtration> {
        let defining = |d: &Option<String>| match d {
            Some(n) => self.ideal(n),
            None => Ok(Ideal::zero(&self.ring)),
        };
        match expr {
            FiltrationExpr::Adic { q, defining: d } => Filtration::adic(&defining(d)?, &self.ideal(q)?),
            FiltrationExpr::Explicit { chain, tail, defining: d } => {
                let chain = chain.iter().map(|n| self.ideal(n)).collect::<crate::Result<Vec<_>>>()?;
                Filtration::explicit(&defining(d)?, chain, &self.ideal(tail)?)
            }
            FiltrationExpr::Named(n) => {
                let e = self
                    .filtrations
                    .iter()
                    .find(|(m, _)| m == n)
                    .map(|(_, e)| e)
                    .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown filtration {n}")))?;
                self.filtration(e)
            }
        }
    }

    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field));
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&self.weights)
            .map(|(v, &w)| if w == 1 { v.clone() } else { format!("{v}:{w}") })
            .collect();
        out.push_str(&format!("vars {}\n", vars.join(", ")));
        if self.lex {
            out.push_str("order lex\n");
        }
        if self.homogeneous {
            out.push_str("homogeneous\n");
        }
        for (n, e) in &self.ideals {
            out.push_str(&format!("ideal {n} = {}\n", e.canonical()));
        }
        for (n, s) in &self.sequences {
            let body: Vec<String> = s.iter().map(|p| p.format()).collect();
            out.push_str(&format!("seq {n} = {}\n", body.join(", ")));
        }
        for (n, e) in &self.filtrations {
            out.push_str(&format!("filtration {n} = {e}\n"));
        }
        for t in &self.tasks {
            out.push_str(&format!("task {} {}", t.kind, t.target));
            for (k, v) in &t.options {
                out.push_str(&format!(" {k}={v}"));
            }
            out.push('\n');
        }
        out
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Cursor {
        Cursor { chars: text.chars().collect(), pos: 0, line }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TaskError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.line, self.col(), format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), TaskError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        if start == self.pos || self.chars[start].is_ascii_digit() {
            return err(self.line, start + 1, "expected an identifier");
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }

    /// A run of non-space characters.
    fn word(&mut self) -> Result<(String, usize), TaskError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(self.line, start + 1, "unexpected end of line");
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }

    fn lookahead_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let r = self.ident().ok().map(|p| p.0);
        self.pos = save;
        r
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let col = self.col();
        let s = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        (s, col)
    }

    fn finish(&mut self) -> Result<(), TaskError> {
        if self.at_end() {
            Ok(())
        } else {
            err(self.line, self.col(), "unexpected trailing input")
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_field(c: &mut Cursor) -> Result<CoeffField, TaskError> {
    let (w, col) = c.word()?;
    if w == "QQ" {
        return Ok(CoeffField::Rationals);
    }
    if let Some(p) = w.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
        let p: u64 = p.parse().map_err(|_| TaskError { line: c.line, col, msg: format!("bad prime {p}") })?;
        return CoeffField::prime(p).map_err(|e| TaskError { line: c.line, col, msg: e.to_string() });
    }
    err(c.line, col, format!("unknown field {w}; expected QQ or GF(p)"))
}

fn parse_vars(c: &mut Cursor) -> Result<(Vec<String>, Vec<u32>), TaskError> {
    let mut vars = Vec::new();
    let mut weights = Vec::new();
    loop {
        let (v, col) = c.ident()?;
        if vars.contains(&v) {
            return err(c.line, col, format!("duplicate variable {v}"));
        }
        let w = if c.eat(':') {
            let (w, wc) = c.word_until(',')?;
            match w.parse::<u32>() {
                Ok(w) if w > 0 => w,
                _ => return err(c.line, wc, format!("bad weight {w}")),
            }
        } else {
            1
        };
        vars.push(v);
        weights.push(w);
        if !c.eat(',') {
            break;
        }
    }
    c.finish()?;
    Ok((vars, weights))
}

impl Cursor {
    fn word_until(&mut self, stop: char) -> Result<(String, usize), TaskError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].is_whitespace() && self.chars[self.pos] != stop {
            self.pos += 1;
        }
        if start == self.pos {
            return err(self.line, start + 1, "unexpected end of line");
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }
}

struct Ctx<'a> {
    ring: &'a Arc<Ring>,
    homogeneous: bool,
    ideals: &'a HashSet<String>,
    seqs: &'a HashSet<String>,
    filtrations: &'a HashSet<String>,
}

impl Ctx<'_> {
    fn ideal_ref(&self, c: &mut Cursor) -> Result<String, TaskError> {
        let (n, col) = c.ident()?;
        if !self.ideals.contains(&n) {
            return err(c.line, col, format!("unknown ideal {n}"));
        }
        Ok(n)
    }

    fn polys(&self, text: &str, col0: usize, line: usize) -> Result<Vec<Polynomial>, TaskError> {
        let mut out = Vec::new();
        let mut offset = 0;
        for piece in split_top_level(text) {
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            let col = col0 + offset + lead;
            if piece.trim().is_empty() {
                return err(line, col, "empty polynomial");
            }
            let p = parse_polynomial(self.ring, piece).map_err(|e| TaskError { line, col: col0 + offset + e.col - 1, msg: e.msg })?;
            if self.homogeneous && !p.is_homogeneous() {
                return err(line, col, format!("{} is not homogeneous", p.format()));
            }
            out.push(p);
            offset += piece.chars().count() + 1;
        }
        Ok(out)
    }

    fn ideal_body(&self, c: &mut Cursor) -> Result<IdealExpr, TaskError> {
        if let Some(f) = c.lookahead_ident() {
            let save = c.pos;
            c.ident()?;
            if ["intersect", "sum", "product", "quotient", "power"].contains(&f.as_str()) && c.eat('(') {
                let expr = match f.as_str() {
                    "quotient" => {
                        let a = self.ideal_ref(c)?;
                        c.expect(',')?;
                        let b = self.ideal_ref(c)?;
                        IdealExpr::Quotient(a, b)
                    }
                    "power" => {
                        let a = self.ideal_ref(c)?;
                        c.expect(',')?;
                        let (k, col) = c.word_until(')')?;
                        let k: u32 = k.parse().map_err(|_| TaskError { line: c.line, col, msg: format!("bad exponent {k}") })?;
                        IdealExpr::Power(a, k)
                    }
                    _ => {
                        let mut names = vec![self.ideal_ref(c)?];
                        while c.eat(',') {
                            names.push(self.ideal_ref(c)?);
                        }
                        match f.as_str() {
                            "intersect" => IdealExpr::Intersect(names),
                            "sum" => IdealExpr::Sum(names),
                            _ => IdealExpr::Product(names),
                        }
                    }
                };
                c.expect(')')?;
                c.finish()?;
                return Ok(expr);
            }
            c.pos = save;
        }
        let (text, col) = c.rest();
        if text.trim() == "0" {
            return Ok(IdealExpr::Gens(Vec::new()));
        }
        Ok(IdealExpr::Gens(self.polys(&text, col, c.line)?))
    }

    fn modulo(&self, c: &mut Cursor) -> Result<Option<String>, TaskError> {
        if c.lookahead_ident().as_deref() == Some("mod") {
            c.ident()?;
            return Ok(Some(self.ideal_ref(c)?));
        }
        Ok(None)
    }

    fn filtration_expr(&self, c: &mut Cursor) -> Result<FiltrationExpr, TaskError> {
        let (head, col) = c.ident()?;
        match head.as_str() {
            "adic" if c.eat('(') => {
                let q = self.ideal_ref(c)?;
                c.expect(')')?;
                Ok(FiltrationExpr::Adic { q, defining: self.modulo(c)? })
            }
            "explicit" if c.eat('(') => {
                let mut chain = vec![self.ideal_ref(c)?];
                while c.eat(',') {
                    chain.push(self.ideal_ref(c)?);
                }
                c.expect(';')?;
                let tail = self.ideal_ref(c)?;
                c.expect(')')?;
                Ok(FiltrationExpr::Explicit { chain, tail, defining: self.modulo(c)? })
            }
            _ if self.filtrations.contains(&head) => Ok(FiltrationExpr::Named(head)),
            _ => err(c.line, col, format!("unknown filtration {head}")),
        }
    }

    fn task(&self, c: &mut Cursor) -> Result<TaskDecl, TaskError> {
        let (k, col) = c.ident()?;
        let kind = match k.as_str() {
            "gb" => TaskKind::Gb,
            "hilbert" => TaskKind::Hilbert,
            "superficial" => TaskKind::Superficial,
            "slicing" => TaskKind::Slicing,
            "profile" => TaskKind::Profile,
            "depth" => TaskKind::Depth,
            "verify" => {
                let (t, tc) = c.word()?;
                match TheoremId::parse(&t) {
                    Some(t) => TaskKind::Verify(t),
                    None => return err(c.line, tc, format!("unknown statement {t}")),
                }
            }
            _ => return err(c.line, col, format!("unknown task {k}")),
        };
        let target = if kind.takes_ideal() {
            TaskTarget::Ideal(self.ideal_ref(c)?)
        } else {
            TaskTarget::Filtration(self.filtration_expr(c)?)
        };
        let mut options = BTreeMap::new();
        while !c.at_end() {
            let (w, wc) = c.word()?;
            let Some((key, value)) = w.split_once('=') else {
                return err(c.line, wc, format!("expected key=value, found {w}"));
            };
            if !OPTION_KEYS.contains(&key) {
                return err(c.line, wc, format!("unknown option {key}"));
            }
            let vcol = wc + key.chars().count() + 1;
            match key {
                "seq" if !self.seqs.contains(value) => return err(c.line, vcol, format!("unknown sequence {value}")),
                "route" if !["A", "B", "both"].contains(&value) => return err(c.line, vcol, "route must be A, B or both"),
                "method" if !["gr", "colon"].contains(&value) => return err(c.line, vcol, "method must be gr or colon"),
                "window" | "max-n" | "max-k" | "seed" if value.parse::<u64>().is_err() => {
                    return err(c.line, vcol, format!("{key} needs a non-negative integer"))
                }
                _ => {}
            }
            if options.insert(key.to_string(), value.to_string()).is_some() {
                return err(c.line, wc, format!("option {key} given twice"));
            }
        }
        Ok(TaskDecl { kind, target, options })
    }
}

pub fn parse_task(text: &str) -> Result<TaskFile, TaskError> {
    parse_task_with(text, None, None)
}

/// Parse with the field and the term order optionally replaced.
pub fn parse_task_with(text: &str, field_override: Option<CoeffField>, lex_override: Option<bool>) -> Result<TaskFile, TaskError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();

    let mut field = None;
    let mut vars = None;
    let mut lex = false;
    let mut homogeneous = false;
    let mut declared: HashMap<String, (usize, &'static str)> = HashMap::new();
    let (mut ideals, mut seqs, mut filts) = (HashSet::new(), HashSet::new(), HashSet::new());
    for &(ln, l) in &lines {
        let mut c = Cursor::new(l, ln);
        let (kw, col) = c.ident()?;
        match kw.as_str() {
            "field" => {
                if field.is_some() {
                    return err(ln, col, "field declared twice");
                }
                field = Some(parse_field(&mut c)?);
                c.finish()?;
            }
            "vars" => {
                if vars.is_some() {
                    return err(ln, col, "vars declared twice");
                }
                vars = Some(parse_vars(&mut c)?);
            }
            "order" => {
                let (o, oc) = c.ident()?;
                lex = match o.as_str() {
                    "lex" => true,
                    "grevlex" => false,
                    _ => return err(ln, oc, format!("unknown order {o}")),
                };
                c.finish()?;
            }
            "homogeneous" => {
                homogeneous = true;
                c.finish()?;
            }
            "ideal" | "seq" | "filtration" => {
                let (name, nc) = c.ident()?;
                let kind: &'static str = match kw.as_str() {
                    "ideal" => "ideal",
                    "seq" => "seq",
                    _ => "filtration",
                };
                if let Some((prev, _)) = declared.get(&name) {
                    return err(ln, nc, format!("{name} already declared on line {prev}"));
                }
                declared.insert(name.clone(), (ln, kind));
                match kind {
                    "ideal" => ideals.insert(name),
                    "seq" => seqs.insert(name),
                    _ => filts.insert(name),
                };
            }
            "task" => {}
            _ => return err(ln, col, format!("unknown declaration {kw}")),
        }
    }
    let field = field_override.or(field).unwrap_or_default();
    let lex = lex_override.unwrap_or(lex);
    let Some((vars, weights)) = vars else {
        return err(1, 1, "missing vars declaration");
    };
    let mut ring = Ring::with_weights(&vars, &weights, field.clone()).map_err(|e| TaskError { line: 1, col: 1, msg: e.to_string() })?;
    if lex {
        ring = ring.with_order(TermOrder::lex());
    }

    let ctx = Ctx { ring: &ring, homogeneous, ideals: &ideals, seqs: &seqs, filtrations: &filts };
    let mut ideal_decls = Vec::new();
    let mut seq_decls = Vec::new();
    let mut filt_decls = Vec::new();
    let mut tasks = Vec::new();
    let mut ideal_lines = HashMap::new();
    for &(ln, l) in &lines {
        let mut c = Cursor::new(l, ln);
        let (kw, _) = c.ident()?;
        match kw.as_str() {
            "ideal" => {
                let (name, _) = c.ident()?;
                c.expect('=')?;
                ideal_lines.insert(name.clone(), ln);
                ideal_decls.push((name, ctx.ideal_body(&mut c)?));
            }
            "seq" => {
                let (name, _) = c.ident()?;
                c.expect('=')?;
                let (text, col) = c.rest();
                seq_decls.push((name, ctx.polys(&text, col, ln)?));
            }
            "filtration" => {
                let (name, _) = c.ident()?;
                c.expect('=')?;
                let col = c.col();
                let e = ctx.filtration_expr(&mut c)?;
                if matches!(e, FiltrationExpr::Named(_)) {
                    return err(ln, col, "a filtration declaration needs adic(..) or explicit(..)");
                }
                c.finish()?;
                filt_decls.push((name, e));
            }
            "task" => tasks.push(ctx.task(&mut c)?),
            _ => {}
        }
    }

    // ideal definitions must be acyclic
    let deps: HashMap<&str, Vec<&str>> = ideal_decls.iter().map(|(n, e)| (n.as_str(), e.refs())).collect();
    let mut state: HashMap<&str, u8> = HashMap::new();
    fn visit<'a>(n: &'a str, deps: &HashMap<&'a str, Vec<&'a str>>, state: &mut HashMap<&'a str, u8>) -> Option<&'a str> {
        match state.get(n) {
            Some(2) => return None,
            Some(1) => return Some(n),
            _ => {}
        }
        state.insert(n, 1);
        for &m in &deps[n] {
            if let Some(c) = visit(m, deps, state) {
                return Some(c);
            }
        }
        state.insert(n, 2);
        None
    }
    for (n, _) in &ideal_decls {
        if let Some(c) = visit(n, &deps, &mut state) {
            return err(ideal_lines[c], 1, format!("ideal {c} is defined in terms of itself"));
        }
    }
    Ok(TaskFile {
        field,
        vars,
        weights,
        lex,
        homogeneous,
        ideals: ideal_decls,
        sequences: seq_decls,
        filtrations: filt_decls,
        tasks,
        ring,
    })
}
