//! Text formats: ideal files, poset files, Graphviz DOT and JSON reports.
//!
//! An ideal file starts with `vars: x y z`; every later line that is not
//! blank or a `#` comment holds one generator, either as a product such as
//! `x^2*y` or as an exponent vector `[2,1,0]`.
//!
//! A poset file starts with `elements: a b c` and lists strict relations
//! `a < b`, one per line.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::BettiTable;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poset::FinitePoset;
use crate::verify::{EntryWitness, StrandWitness};

/// A parsed ideal together with the generators dropped by minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub removed: Vec<Monomial>,
}

fn input_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Input {
        line,
        column,
        message: message.into(),
    }
}

/// Significant lines as `(1-based line number, column offset, text)` with
/// comments and surrounding whitespace removed.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some((n + 1, offset, trimmed))
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses an ideal file and minimizes the generators.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let mut lines = significant_lines(text);
    let Some((ln, off, header)) = lines.next() else {
        return Err(input_error(1, 1, "missing `vars:` line"));
    };
    let Some(names) = header.strip_prefix("vars:") else {
        return Err(input_error(ln, off + 1, "expected `vars:` declaration"));
    };
    let mut variables: Vec<String> = Vec::new();
    let mut col = off + "vars:".len();
    let mut rest = names;
    while !rest.trim_start().is_empty() {
        let skip = rest.len() - rest.trim_start().len();
        col += skip;
        rest = &rest[skip..];
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let name = &rest[..end];
        if !is_identifier(name) {
            return Err(input_error(ln, col + 1, format!("invalid variable name `{name}`")));
        }
        if variables.iter().any(|v| v == name) {
            return Err(input_error(ln, col + 1, format!("variable `{name}` declared twice")));
        }
        variables.push(name.to_string());
        col += end;
        rest = &rest[end..];
    }
    let index: HashMap<&str, usize> = variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut generators = Vec::new();
    for (ln, off, line) in lines {
        let exps = if line.starts_with('[') {
            parse_vector(line, ln, off, variables.len())?
        } else {
            parse_product(line, ln, off, &index)?
        };
        generators.push(Monomial::new(exps));
    }
    let ideal = MonomialIdeal::new(variables, generators)?;
    let (ideal, removed) = ideal.minimize();
    Ok(ParsedIdeal { ideal, removed })
}

fn parse_exponent(s: &str, ln: usize, col: usize) -> Result<u32> {
    let s = s.trim();
    if s.starts_with('-') {
        return Err(input_error(ln, col, format!("negative exponent `{s}`")));
    }
    s.parse::<u32>()
        .map_err(|_| input_error(ln, col, format!("invalid exponent `{s}`")))
}

fn parse_vector(line: &str, ln: usize, off: usize, n: usize) -> Result<Vec<u32>> {
    let Some(inner) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return Err(input_error(ln, off + 1, "unterminated exponent vector"));
    };
    let mut out = Vec::new();
    let mut col = off + 2;
    if !inner.trim().is_empty() {
        for part in inner.split(',') {
            out.push(parse_exponent(part, ln, col + part.len() - part.trim_start().len())?);
            col += part.len() + 1;
        }
    }
    if out.len() != n {
        return Err(input_error(
            ln,
            off + 1,
            format!("exponent vector has {} entries, expected {n}", out.len()),
        ));
    }
    Ok(out)
}

fn parse_product(line: &str, ln: usize, off: usize, index: &HashMap<&str, usize>) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; index.len()];
    if line == "1" {
        return Ok(exps);
    }
    let mut col = off + 1;
    for factor in line.split('*') {
        let lead = factor.len() - factor.trim_start().len();
        let f = factor.trim();
        let fcol = col + lead;
        let (name, e) = match f.split_once('^') {
            Some((name, e)) => (name.trim(), parse_exponent(e, ln, fcol + name.len() + 1)?),
            None => (f, 1),
        };
        let Some(&v) = index.get(name) else {
            let what = if name.is_empty() { "empty factor".to_string() } else { format!("undeclared variable `{name}`") };
            return Err(input_error(ln, fcol, what));
        };
        exps[v] += e;
        col += factor.len() + 1;
    }
    Ok(exps)
}

/// Renders an ideal in the file format, one product per line.
pub fn write_ideal(ideal: &MonomialIdeal) -> String {
    let mut s = format!("vars: {}\n", ideal.variables().join(" "));
    for g in ideal.generators() {
        let _ = writeln!(s, "{}", ideal.render(g));
    }
    s
}

/// Parses a poset file.
pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut lines = significant_lines(text);
    let Some((ln, off, header)) = lines.next() else {
        return Err(input_error(1, 1, "missing `elements:` line"));
    };
    let Some(names) = header.strip_prefix("elements:") else {
        return Err(input_error(ln, off + 1, "expected `elements:` declaration"));
    };
    let labels: Vec<String> = names.split_whitespace().map(str::to_string).collect();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if index.len() != labels.len() {
        return Err(input_error(ln, off + 1, "duplicate element label"));
    }
    let mut relations = Vec::new();
    for (ln, off, line) in lines {
        let Some((a, b)) = line.split_once('<') else {
            return Err(input_error(ln, off + 1, "expected a relation `a < b`"));
        };
        let lookup = |name: &str, col: usize| {
            index
                .get(name.trim())
                .copied()
                .ok_or_else(|| input_error(ln, col, format!("unknown element `{}`", name.trim())))
        };
        let lo = lookup(a, off + 1)?;
        let hi = lookup(b, off + a.len() + 2)?;
        relations.push((lo, hi));
    }
    FinitePoset::from_relations(labels, &relations)
}

/// Renders a poset as its element list and cover relations.
pub fn write_poset(p: &FinitePoset) -> String {
    let mut s = format!("elements: {}\n", p.labels().join(" "));
    for (lo, hi) in p.cover_pairs() {
        let _ = writeln!(s, "{} < {}", p.label(lo), p.label(hi));
    }
    s
}

/// Graphviz description of the Hasse diagram, drawn bottom to top.
pub fn hasse_dot(p: &FinitePoset) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for &x in p.linear_extension() {
        let _ = writeln!(s, "  n{x} [label=\"{}\"];", p.label(x).replace('"', "\\\""));
    }
    for (lo, hi) in p.cover_pairs() {
        let _ = writeln!(s, "  n{lo} -> n{hi};");
    }
    s.push_str("}\n");
    s
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub generators: Vec<Monomial>,
    pub rendered: Vec<String>,
    pub removed: Vec<Monomial>,
}

impl IdealJson {
    pub fn new(parsed: &ParsedIdeal) -> Self {
        let ideal = &parsed.ideal;
        IdealJson {
            variables: ideal.variables().to_vec(),
            generators: ideal.generators().to_vec(),
            rendered: ideal.generators().iter().map(|g| ideal.render(g)).collect(),
            removed: parsed.removed.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    /// `(lower, upper)` index pairs.
    pub covers: Vec<(usize, usize)>,
    pub degrees: Vec<Monomial>,
}

impl LatticeJson {
    pub fn new(p: &FinitePoset, degrees: &[Monomial]) -> Self {
        LatticeJson {
            elements: p.labels().to_vec(),
            covers: p.cover_pairs(),
            degrees: degrees.to_vec(),
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_covers(self.elements.clone(), &self.covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimJson {
    pub i: usize,
    pub element: String,
    pub multidegree: Monomial,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntryJson {
    pub i: usize,
    pub multidegree: Monomial,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub multigraded: Vec<BettiEntryJson>,
    pub totals: Vec<usize>,
}

impl From<&BettiTable> for BettiJson {
    fn from(t: &BettiTable) -> Self {
        BettiJson {
            multigraded: t
                .multigraded()
                .iter()
                .map(|((i, m), v)| BettiEntryJson {
                    i: *i,
                    multidegree: m.clone(),
                    value: *v,
                })
                .collect(),
            totals: t.totals(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub is_complex: Option<bool>,
    pub is_resolution: Option<bool>,
    pub is_minimal: Option<bool>,
    pub lattice_linear: Option<bool>,
    pub scarf: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessesJson {
    pub complex: Option<StrandWitness>,
    pub resolution: Option<StrandWitness>,
    pub unit_entry: Option<EntryWitness>,
}

/// The machine-readable report written by `--json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub command: String,
    pub ideal: Option<IdealJson>,
    pub field: String,
    pub variant: Option<String>,
    pub lattice: Option<LatticeJson>,
    pub dims: Vec<DimJson>,
    pub betti: Option<BettiJson>,
    pub flags: FlagsJson,
    pub witnesses: WitnessesJson,
    pub warnings: Vec<String>,
}

impl ReportJson {
    pub fn new(command: &str, field: &str) -> Self {
        ReportJson {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            ideal: None,
            field: field.to_string(),
            variant: None,
            lattice: None,
            dims: Vec::new(),
            betti: None,
            flags: FlagsJson::default(),
            witnesses: WitnessesJson::default(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report JSON: {e}")))
    }
}
