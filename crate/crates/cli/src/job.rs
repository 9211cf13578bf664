//! Job specifications: the JSON document and the command-line shorthand.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::Value;
use spure::classes::{generate_class, transpose_class, ClassBounds, ClassKind, ModuleClass};
use spure::linalg::{IntMatrix, RingSpec};
use spure::purity::make_ses;
use spure::{BigInt, Caps, Class, Matrix, Module, Ring, Ses};

/// Malformed input, with the place it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub at: String,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type Parsed<V> = std::result::Result<V, ParseError>;

fn err<V>(at: impl Into<String>, message: impl Into<String>) -> Parsed<V> {
    Err(ParseError {
        at: at.into(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Canonicalize,
    Transpose,
    CheckPurity,
    ClassEquiv,
    Dual,
    Flat,
    Pinj,
    Preenvelope,
    Envelope,
    Ext,
    Dims,
    CrossCheck,
    Suite,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Canonicalize,
        Command::Transpose,
        Command::CheckPurity,
        Command::ClassEquiv,
        Command::Dual,
        Command::Flat,
        Command::Pinj,
        Command::Preenvelope,
        Command::Envelope,
        Command::Ext,
        Command::Dims,
        Command::CrossCheck,
        Command::Suite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Canonicalize => "canonicalize",
            Command::Transpose => "transpose",
            Command::CheckPurity => "check-purity",
            Command::ClassEquiv => "class-equiv",
            Command::Dual => "dual",
            Command::Flat => "flat",
            Command::Pinj => "pinj",
            Command::Preenvelope => "preenvelope",
            Command::Envelope => "envelope",
            Command::Ext => "ext",
            Command::Dims => "dims",
            Command::CrossCheck => "cross-check",
            Command::Suite => "suite",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// How a class is specified before it is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    Kind {
        kind: ClassKind,
        bounds: Option<ClassBounds>,
    },
    IdealQuotients {
        entry_bound: u64,
    },
    Members(Vec<Module>),
    Transpose(Box<ClassSpec>),
}

impl ClassSpec {
    pub fn build(&self, ring: &Ring) -> spure::Result<Class> {
        match self {
            ClassSpec::Kind { kind, bounds } => {
                generate_class(ring, *kind, bounds.unwrap_or_else(|| ClassBounds::standard(ring)))
            }
            ClassSpec::IdealQuotients { entry_bound } => Ok(ModuleClass::ideal_quotients(ring, *entry_bound)),
            ClassSpec::Members(ms) => ModuleClass::explicit(ring, ms.clone()),
            ClassSpec::Transpose(inner) => Ok(transpose_class(&inner.build(ring)?)),
        }
    }
}

/// Sequence `0 → A → B → B/A → 0` given by `B` and generators of `A` in `B`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesSpec {
    pub b: Module,
    pub a_gens: Matrix,
}

impl SesSpec {
    pub fn build(&self) -> spure::Result<Ses> {
        make_ses(&self.b, &self.a_gens)
    }
}

/// Everything a run needs; every field is resolved.
#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    pub ring: Option<Ring>,
    pub module: Option<Module>,
    pub module2: Option<Module>,
    pub ses: Option<SesSpec>,
    pub class: Option<ClassSpec>,
    pub class2: Option<ClassSpec>,
    /// `None` means every criterion
    pub criterion: Option<String>,
    pub degree: usize,
    pub depth: usize,
    pub order_bound: u64,
    pub caps: Caps,
    pub corpus_size: usize,
    pub seed: u64,
}

impl Job {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            ring: None,
            module: None,
            module2: None,
            ses: None,
            class: None,
            class2: None,
            criterion: Some("default".into()),
            degree: 1,
            depth: 4,
            order_bound: 16,
            caps: Caps::default(),
            corpus_size: 500,
            seed: 42,
        }
    }

    /// The arguments as they were resolved, for the report header.
    pub fn echo(&self) -> Value {
        use crate::render::{class_spec_json, module_json, ses_json};
        let mut m = serde_json::Map::new();
        m.insert("command".into(), self.command.name().into());
        if let Some(r) = &self.ring {
            m.insert("ring".into(), r.to_string().into());
        }
        if let Some(x) = &self.module {
            m.insert("module".into(), module_json(x));
        }
        if let Some(x) = &self.module2 {
            m.insert("module2".into(), module_json(x));
        }
        if let Some(s) = &self.ses {
            m.insert("ses".into(), ses_json(s));
        }
        if let Some(c) = &self.class {
            m.insert("class".into(), class_spec_json(c));
        }
        if let Some(c) = &self.class2 {
            m.insert("class2".into(), class_spec_json(c));
        }
        match self.command {
            Command::CheckPurity => {
                m.insert(
                    "criterion".into(),
                    self.criterion.clone().unwrap_or_else(|| "all".into()).into(),
                );
            }
            Command::Ext => {
                m.insert("degree".into(), self.degree.into());
            }
            Command::Dims => {
                m.insert("depth".into(), self.depth.into());
                m.insert("order_bound".into(), self.order_bound.into());
            }
            _ => {}
        }
        Value::Object(m)
    }

    pub fn need_ring(&self) -> Parsed<&Ring> {
        self.ring
            .as_ref()
            .map_or_else(|| err("--ring", "this command needs a ring"), Ok)
    }

    pub fn need_module(&self) -> Parsed<&Module> {
        self.module
            .as_ref()
            .map_or_else(|| err("--module", "this command needs a module"), Ok)
    }

    pub fn need_module2(&self) -> Parsed<&Module> {
        self.module2
            .as_ref()
            .map_or_else(|| err("--module2", "this command needs a second module"), Ok)
    }

    pub fn need_class(&self) -> Parsed<&ClassSpec> {
        self.class
            .as_ref()
            .map_or_else(|| err("--class", "this command needs a class"), Ok)
    }
}

pub fn parse_int(s: &str, at: &str) -> Parsed<BigInt> {
    let t = s.trim();
    if t.is_empty() || !t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
        return err(at, format!("expected an integer, found {s:?}"));
    }
    BigInt::from_str(t).or_else(|_| err(at, format!("expected an integer, found {s:?}")))
}

/// `Z`, `Zmod4`, `Z/4`, `Zmod(4)`.
pub fn parse_ring(s: &str, at: &str) -> Parsed<Ring> {
    let t = s.trim();
    if t == "Z" {
        return Ok(RingSpec::Integers);
    }
    let digits = t
        .strip_prefix("Zmod")
        .or_else(|| t.strip_prefix("Z/"))
        .map(|d| d.trim_start_matches('(').trim_end_matches(')'));
    match digits {
        Some(d) => {
            let m = parse_int(d, at)?;
            RingSpec::modulo(m).or_else(|e| err(at, e.to_string()))
        }
        None => err(at, format!("expected Z or Zmod<m>, found {s:?}")),
    }
}

/// Shorthand: `0`, `Z6`, `R`, `R2`, `Z2+Z4`, and `Z` for the integers themselves.
pub fn parse_module_shorthand(s: &str, ring: &Ring, at: &str) -> Parsed<Module> {
    let mut orders: Vec<BigInt> = Vec::new();
    let mut col = 1;
    let t = s.trim();
    if t == "0" {
        return Ok(Module::zero(ring));
    }
    for part in t.split('+') {
        let here = format!("{at}, column {col}");
        let p = part.trim();
        let free = |n: usize, orders: &mut Vec<BigInt>| orders.extend(std::iter::repeat_n(BigInt::from(0), n));
        if let Some(rest) = p.strip_prefix('R') {
            let n = if rest.is_empty() {
                1
            } else {
                rest.parse::<usize>()
                    .or_else(|_| err(&here, format!("bad rank in {p:?}")))?
            };
            free(n, &mut orders);
        } else if p == "Z" {
            if ring.is_finite() {
                return err(
                    here,
                    format!("Z is not a module over {ring}; write R for the ring itself"),
                );
            }
            free(1, &mut orders);
        } else if let Some(rest) = p.strip_prefix('Z') {
            let d = parse_int(rest.trim_start_matches('/'), &here)?;
            if d <= BigInt::from(0) {
                return err(here, format!("cyclic order must be positive in {p:?}"));
            }
            orders.push(d);
        } else {
            return err(here, format!("expected Z<n>, R or R<n>, found {p:?}"));
        }
        col += part.len() + 1;
    }
    Ok(Module::from_orders(ring, &orders))
}

fn int_value(v: &Value, at: &str) -> Parsed<BigInt> {
    match v {
        Value::String(s) => parse_int(s, at),
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap_or(0))),
        Value::Number(n) if n.is_u64() => Ok(BigInt::from(n.as_u64().unwrap_or(0))),
        _ => err(at, format!("expected an integer, found {v}")),
    }
}

fn usize_value(v: &Value, at: &str) -> Parsed<usize> {
    let i = int_value(v, at)?;
    i.to_string()
        .parse::<usize>()
        .or_else(|_| err(at, format!("expected a non-negative count, found {v}")))
}

/// A list of integer columns, each of length `len`.
pub fn columns_value(v: &Value, len: usize, at: &str) -> Parsed<Matrix> {
    let Value::Array(cols) = v else {
        return err(at, "expected a list of columns");
    };
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let here = format!("{at}[{j}]");
        let entries = match c {
            Value::Array(xs) => xs
                .iter()
                .enumerate()
                .map(|(i, x)| int_value(x, &format!("{here}[{i}]")))
                .collect::<Parsed<Vec<_>>>()?,
            // a bare integer is a column of length one
            x => vec![int_value(x, &here)?],
        };
        if entries.len() != len {
            return err(here, format!("column has {} entries, expected {len}", entries.len()));
        }
        out.push(entries);
    }
    Ok(IntMatrix::from_cols(len, &out))
}

/// `{gens, relations}`, or a shorthand string.
pub fn module_value(v: &Value, ring: &Ring, named: &BTreeMap<String, Module>, at: &str) -> Parsed<Module> {
    match v {
        Value::String(s) => match named.get(s) {
            Some(m) => Ok(m.clone()),
            None => parse_module_shorthand(s, ring, at),
        },
        Value::Object(o) => {
            let gens = usize_value(o.get("gens").unwrap_or(&Value::Null), &format!("{at}.gens"))?;
            let rel = match o.get("relations") {
                Some(r) => columns_value(r, gens, &format!("{at}.relations"))?,
                None => IntMatrix::zeros(gens, 0),
            };
            Module::new(ring.clone(), gens, rel).or_else(|e| err(at, e.to_string()))
        }
        _ => err(at, "expected a module name, shorthand or {gens, relations}"),
    }
}

fn bounds_value(v: &Value, ring: &Ring, at: &str) -> Parsed<ClassBounds> {
    let mut b = ClassBounds::standard(ring);
    let Value::Object(o) = v else {
        return err(at, "expected {max_gens, max_rels, entry_bound}");
    };
    for (k, x) in o {
        let here = format!("{at}.{k}");
        match k.as_str() {
            "max_gens" => b.max_gens = usize_value(x, &here)?,
            "max_rels" => b.max_rels = usize_value(x, &here)?,
            "entry_bound" => b.entry_bound = usize_value(x, &here)? as u64,
            _ => return err(here, "unknown bound"),
        }
    }
    Ok(b)
}

pub fn class_value(v: &Value, ring: &Ring, named: &BTreeMap<String, Module>, at: &str) -> Parsed<ClassSpec> {
    match v {
        Value::String(s) => parse_class_shorthand(s, at),
        Value::Object(o) => {
            if let Some(ms) = o.get("members") {
                let Value::Array(xs) = ms else {
                    return err(format!("{at}.members"), "expected a list of modules");
                };
                let members = xs
                    .iter()
                    .enumerate()
                    .map(|(i, x)| module_value(x, ring, named, &format!("{at}.members[{i}]")))
                    .collect::<Parsed<Vec<_>>>()?;
                return Ok(ClassSpec::Members(members));
            }
            let kind = match o.get("kind") {
                Some(Value::String(k)) => k.as_str(),
                _ => return err(format!("{at}.kind"), "expected a class kind"),
            };
            match kind {
                "transpose" => {
                    let inner = o.get("of").map_or_else(|| err(format!("{at}.of"), "missing"), Ok)?;
                    Ok(ClassSpec::Transpose(Box::new(class_value(
                        inner,
                        ring,
                        named,
                        &format!("{at}.of"),
                    )?)))
                }
                "ideal-quotients" => {
                    let entry_bound = match o.get("entry_bound") {
                        Some(x) => usize_value(x, &format!("{at}.entry_bound"))? as u64,
                        None => 8,
                    };
                    Ok(ClassSpec::IdealQuotients { entry_bound })
                }
                k => {
                    let kind = generated_kind(k, &format!("{at}.kind"))?;
                    let bounds = o
                        .get("bounds")
                        .map(|b| bounds_value(b, ring, &format!("{at}.bounds")))
                        .transpose()?;
                    Ok(ClassSpec::Kind { kind, bounds })
                }
            }
        }
        _ => err(at, "expected a class kind or {kind, bounds} or {members}"),
    }
}

fn generated_kind(k: &str, at: &str) -> Parsed<ClassKind> {
    match ClassKind::parse(k) {
        Some(kind) if ClassKind::GENERATED.contains(&kind) => Ok(kind),
        _ => err(
            at,
            format!(
                "unknown class kind {k:?}; expected one of cyclic-free, fp-bounded, cyclic-cyclically-presented, cyclically-presented, ideal-quotients, transpose:<kind>"
            ),
        ),
    }
}

/// A kind name, `ideal-quotients`, or `transpose:<kind>`.
pub fn parse_class_shorthand(s: &str, at: &str) -> Parsed<ClassSpec> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("transpose:") {
        return Ok(ClassSpec::Transpose(Box::new(parse_class_shorthand(inner, at)?)));
    }
    if t == "ideal-quotients" {
        return Ok(ClassSpec::IdealQuotients { entry_bound: 8 });
    }
    Ok(ClassSpec::Kind {
        kind: generated_kind(t, at)?,
        bounds: None,
    })
}

/// Comma-separated module shorthands forming an explicit class.
pub fn parse_members(s: &str, ring: &Ring, at: &str) -> Parsed<ClassSpec> {
    let members = s
        .split(',')
        .enumerate()
        .map(|(i, p)| parse_module_shorthand(p, ring, &format!("{at}, member {}", i + 1)))
        .collect::<Parsed<Vec<_>>>()?;
    Ok(ClassSpec::Members(members))
}

/// Splits on commas outside brackets.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Generators of `A`: `[2]`, `[1,0]` (one generator) or `[[1,0],[0,2]]`.
fn gens_value(v: &Value, n: usize, at: &str) -> Parsed<Matrix> {
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array()) && !xs.is_empty() => {
            if xs.len() == n {
                columns_value(&Value::Array(vec![v.clone()]), n, at)
            } else if n == 1 {
                columns_value(v, 1, at)
            } else {
                err(at, format!("a generator needs {n} coordinates, found {}", xs.len()))
            }
        }
        Value::Array(_) => columns_value(v, n, at),
        _ => err(at, "expected a list of generators"),
    }
}

/// `B=<module>,A=<generators>`.
pub fn parse_ses_shorthand(s: &str, ring: &Ring, at: &str) -> Parsed<SesSpec> {
    let mut b = None;
    let mut a = None;
    for (pos, part) in split_top(s) {
        let here = format!("{at}, column {}", pos + 1);
        match part.split_once('=') {
            Some(("B", v)) => b = Some(parse_module_shorthand(v, ring, &here)?),
            Some(("A", v)) => {
                a = Some(serde_json::from_str::<Value>(v).or_else(|e| err(&here, format!("bad generator list: {e}")))?)
            }
            _ => return err(here, format!("expected B=... or A=..., found {part:?}")),
        }
    }
    let Some(b) = b else { return err(at, "missing B=") };
    let a_gens = match a {
        Some(v) => gens_value(&v, b.gens(), &format!("{at}, A"))?,
        None => IntMatrix::zeros(b.gens(), 0),
    };
    Ok(SesSpec { b, a_gens })
}

fn ses_value(v: &Value, ring: &Ring, named: &BTreeMap<String, Module>, at: &str) -> Parsed<SesSpec> {
    match v {
        Value::String(s) => parse_ses_shorthand(s, ring, at),
        Value::Object(o) => {
            let b = module_value(o.get("B").unwrap_or(&Value::Null), ring, named, &format!("{at}.B"))?;
            let a_gens = match o.get("A") {
                Some(x) => gens_value(x, b.gens(), &format!("{at}.A"))?,
                None => IntMatrix::zeros(b.gens(), 0),
            };
            Ok(SesSpec { b, a_gens })
        }
        _ => err(at, "expected {B, A} or B=...,A=..."),
    }
}

fn ring_value(v: &Value, at: &str) -> Parsed<Ring> {
    match v {
        Value::String(s) => parse_ring(s, at),
        Value::Object(o) if o.contains_key("Zmod") => {
            let m = int_value(&o["Zmod"], &format!("{at}.Zmod"))?;
            RingSpec::modulo(m).or_else(|e| err(at, e.to_string()))
        }
        Value::Array(xs) => match xs.as_slice() {
            [Value::String(z)] if z == "Z" => Ok(RingSpec::Integers),
            [Value::String(z), m] if z == "Zmod" => {
                RingSpec::modulo(int_value(m, &format!("{at}[1]"))?).or_else(|e| err(at, e.to_string()))
            }
            _ => err(at, "expected [\"Z\"] or [\"Zmod\", m]"),
        },
        _ => err(at, "expected a ring"),
    }
}

/// Reads a JSON job document.
pub fn parse_job(text: &str) -> Parsed<Job> {
    let doc: Value = serde_json::from_str(text)
        .or_else(|e| err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let Value::Object(o) = &doc else {
        return err("document", "expected an object");
    };
    let command = match o.get("command") {
        Some(Value::String(c)) => {
            Command::parse(c).map_or_else(|| err("command", format!("unknown command {c:?}")), Ok)?
        }
        _ => return err("command", "missing"),
    };
    let mut job = Job::new(command);
    for k in o.keys() {
        if !["ring", "modules", "class", "command", "args", "caps"].contains(&k.as_str()) {
            return err(k.clone(), "unknown field");
        }
    }
    if let Some(r) = o.get("ring") {
        job.ring = Some(ring_value(r, "ring")?);
    }
    let mut named = BTreeMap::new();
    if let Some(ms) = o.get("modules") {
        let ring = job.need_ring()?.clone();
        let Value::Object(ms) = ms else {
            return err("modules", "expected an object of named modules");
        };
        for (name, m) in ms {
            let module = module_value(m, &ring, &named, &format!("modules.{name}"))?;
            named.insert(name.clone(), module);
        }
    }
    if let Some(c) = o.get("class") {
        job.class = Some(class_value(c, job.need_ring()?, &named, "class")?);
    }
    if let Some(Value::Object(caps)) = o.get("caps") {
        for (k, x) in caps {
            let at = format!("caps.{k}");
            let v = usize_value(x, &at)?;
            match k.as_str() {
                "hom" => job.caps.hom = positive(v, &at)?,
                "submodules" => job.caps.submodules = positive(v, &at)?,
                "corpus_size" => job.corpus_size = positive(v, &at)?,
                "seed" => job.seed = v as u64,
                _ => return err(at, "unknown cap"),
            }
        }
    }
    if let Some(args) = o.get("args") {
        let Value::Object(args) = args else {
            return err("args", "expected an object");
        };
        for (k, x) in args {
            let at = format!("args.{k}");
            match k.as_str() {
                "module" => job.module = Some(module_value(x, job.need_ring()?, &named, &at)?),
                "module2" => job.module2 = Some(module_value(x, job.need_ring()?, &named, &at)?),
                "ses" => job.ses = Some(ses_value(x, job.need_ring()?, &named, &at)?),
                "class2" => job.class2 = Some(class_value(x, job.need_ring()?, &named, &at)?),
                "criterion" => match x {
                    Value::String(c) => job.criterion = Some(parse_criterion(c, &at)?),
                    _ => return err(at, "expected i, ii, iii, iv or all"),
                },
                "degree" => job.degree = usize_value(x, &at)?,
                "depth" => job.depth = usize_value(x, &at)?,
                "order_bound" => job.order_bound = usize_value(x, &at)? as u64,
                _ => return err(at, "unknown argument"),
            }
        }
    }
    job.caps.seed = job.seed;
    Ok(job)
}

fn positive(v: usize, at: &str) -> Parsed<usize> {
    if v == 0 {
        err(at, "must be positive")
    } else {
        Ok(v)
    }
}

/// Checks a criterion selector; `all` and `default` are kept as words.
pub fn parse_criterion(s: &str, at: &str) -> Parsed<String> {
    match s {
        "i" | "ii" | "iii" | "iv" | "all" | "default" => Ok(s.to_string()),
        _ => err(at, format!("expected i, ii, iii, iv or all, found {s:?}")),
    }
}
