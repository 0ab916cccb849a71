//! The `.peria` text format.
//!
//! ```text
//! # comment
//! vertex x1 cyclic 2
//! vertex z cyclic inf
//! vertex t table 3 0 1 2 1 2 0 2 0 1
//! vertex w opaque acylhyp=unknown
//! edge x1 z 2
//! gen t 1
//! ```

use serde::Serialize;

use super::group::{for_each_table_check, Acylhyp, VertexGroup, VertexGroupSpec};
use super::{check_compatible, LabelledGraph, PeriagroupPresentation};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Located<T> {
    line: usize,
    col: usize,
    item: T,
}

/// Syntactically valid but semantically unchecked presentation text.
#[derive(Debug, Clone, Default)]
pub struct RawPresentation {
    vertices: Vec<Located<(String, VertexGroupSpec)>>,
    edges: Vec<Located<(String, String, u32)>>,
    gens: Vec<Located<(String, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationEntry {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    fn record(&mut self, check: String, res: std::result::Result<(), String>) {
        let (passed, detail) = match res {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.entries.push(ValidationEntry { check, passed, detail });
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a line into tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: (usize, &str), line: usize, what: &str) -> Result<T> {
    tok.1.parse().map_err(|_| parse_err(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

/// Parses presentation text without semantic validation.
pub fn parse_raw(text: &str) -> Result<RawPresentation> {
    let mut raw = RawPresentation::default();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else { continue };
        let arg = |k: usize| -> Result<(usize, &str)> {
            toks.get(k).copied().ok_or_else(|| parse_err(line, content.len() + 1, format!("`{head}` line is missing argument {k}")))
        };
        let name_at = |k: usize| -> Result<String> {
            let (c, n) = arg(k)?;
            if valid_name(n) {
                Ok(n.to_string())
            } else {
                Err(parse_err(line, c, format!("invalid vertex name `{n}`")))
            }
        };
        let expect_len = |n: usize| -> Result<()> {
            match toks.get(n) {
                Some(&(c, t)) => Err(parse_err(line, c, format!("unexpected token `{t}`"))),
                None => Ok(()),
            }
        };
        match head {
            "vertex" => {
                let name = name_at(1)?;
                let kind = arg(2)?;
                let spec = match kind.1 {
                    "cyclic" => {
                        let m = arg(3)?;
                        expect_len(4)?;
                        if m.1 == "inf" {
                            VertexGroupSpec::CyclicInfinite
                        } else {
                            let order: u32 = parse_num(m, line, "a cyclic order or `inf`")?;
                            if order < 2 {
                                return Err(parse_err(line, m.0, "cyclic order must be at least 2"));
                            }
                            VertexGroupSpec::Cyclic(order)
                        }
                    }
                    "table" => {
                        let k: usize = parse_num(arg(3)?, line, "a table size")?;
                        if k == 0 {
                            return Err(parse_err(line, arg(3)?.0, "table size must be positive"));
                        }
                        let mut rows = vec![Vec::with_capacity(k); k];
                        for idx in 0..k * k {
                            let v: usize = parse_num(arg(4 + idx)?, line, "a table entry")?;
                            rows[idx / k].push(v);
                        }
                        expect_len(4 + k * k)?;
                        VertexGroupSpec::Table(rows)
                    }
                    "opaque" => {
                        let a = arg(3)?;
                        expect_len(4)?;
                        let flag = match a.1 {
                            "acylhyp=yes" => Acylhyp::Yes,
                            "acylhyp=no" => Acylhyp::No,
                            "acylhyp=unknown" => Acylhyp::Unknown,
                            other => return Err(parse_err(line, a.0, format!("expected acylhyp=yes|no|unknown, found `{other}`"))),
                        };
                        VertexGroupSpec::Opaque(flag)
                    }
                    other => return Err(parse_err(line, kind.0, format!("unknown group kind `{other}`"))),
                };
                raw.vertices.push(Located { line, col, item: (name, spec) });
            }
            "edge" => {
                let (u, v) = (name_at(1)?, name_at(2)?);
                let label: u32 = parse_num(arg(3)?, line, "an edge label")?;
                expect_len(4)?;
                raw.edges.push(Located { line, col, item: (u, v, label) });
            }
            "gen" => {
                let v = name_at(1)?;
                let e: i64 = parse_num(arg(2)?, line, "an element")?;
                expect_len(3)?;
                raw.gens.push(Located { line, col, item: (v, e) });
            }
            other => return Err(parse_err(line, col, format!("unknown directive `{other}`"))),
        }
    }
    Ok(raw)
}

impl RawPresentation {
    /// Runs every semantic check and records each outcome.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport { entries: Vec::new() };
        let _ = self.checks(&mut |check, res| {
            report.record(check, res);
            Ok(())
        });
        report
    }

    /// Builds the presentation, failing on the first defect.
    pub fn build(&self) -> Result<PeriagroupPresentation> {
        let mut first: Option<(String, String)> = None;
        let built = self.checks(&mut |check, res| match res {
            Ok(()) => Ok(()),
            Err(d) => {
                first = Some((check, d));
                Err(())
            }
        });
        match (built, first) {
            (Some(p), None) => Ok(p),
            (_, Some((_, detail))) => Err(self.error_for(&detail)),
            (None, None) => Err(Error::Verification("validation stopped without a defect".into())),
        }
    }

    fn error_for(&self, detail: &str) -> Error {
        // Each check reports `line:col: message`; recover the location for a located error.
        let mut parts = detail.splitn(3, ':');
        match (parts.next().and_then(|l| l.parse().ok()), parts.next().and_then(|c| c.parse().ok()), parts.next()) {
            (Some(line), Some(col), Some(msg)) => Error::Parse { line, col, msg: msg.trim().to_string() },
            _ => Error::Precondition(detail.to_string()),
        }
    }

    /// Walks the checks in a fixed order. `sink` returning `Err` aborts the walk.
    fn checks(
        &self,
        sink: &mut dyn FnMut(String, std::result::Result<(), String>) -> std::result::Result<(), ()>,
    ) -> Option<PeriagroupPresentation> {
        let mut names: Vec<String> = Vec::new();
        let mut ok = true;
        for v in &self.vertices {
            let dup = names.contains(&v.item.0);
            let res = if dup { Err(format!("{}:{}: vertex `{}` declared twice", v.line, v.col, v.item.0)) } else { Ok(()) };
            sink(format!("vertex {} declared once", v.item.0), res).ok()?;
            names.push(v.item.0.clone());
        }
        let mut groups: Vec<Option<VertexGroup>> = Vec::new();
        for v in &self.vertices {
            let name = &v.item.0;
            let mut gens: Vec<i64> = Vec::new();
            for g in self.gens.iter().filter(|g| &g.item.0 == name) {
                gens.push(g.item.1);
            }
            if let VertexGroupSpec::Table(t) = &v.item.1 {
                let gens_opt = (!gens.is_empty()).then_some(gens.as_slice());
                let mut idx = 0;
                let labels = ["table shape", "identity", "inverses", "associativity"];
                let res = for_each_table_check(t, gens_opt, |r| {
                    let label = labels[idx.min(3)];
                    idx += 1;
                    let r = r.map_err(|d| format!("{}:{}: {d}", v.line, v.col));
                    let failed = r.is_err();
                    sink(format!("{label} of {name}"), r).map_err(|_| String::new())?;
                    if failed {
                        ok = false;
                    }
                    Ok(())
                });
                if res.is_err() {
                    return None;
                }
                if !ok {
                    groups.push(None);
                    continue;
                }
            }
            let built = VertexGroup::new(name, v.item.1.clone(), (!gens.is_empty()).then_some(gens));
            let res = built.as_ref().map(|_| ()).map_err(|e| format!("{}:{}: {e}", v.line, v.col));
            sink(format!("group and generators of {name}"), res).ok()?;
            ok &= built.is_ok();
            groups.push(built.ok());
        }
        for g in &self.gens {
            let res = if names.contains(&g.item.0) {
                Ok(())
            } else {
                Err(format!("{}:{}: generator for unknown vertex `{}`", g.line, g.col, g.item.0))
            };
            ok &= res.is_ok();
            sink(format!("generator line {} names a vertex", g.line), res).ok()?;
        }
        let mut graph = LabelledGraph::new(names.len());
        for e in &self.edges {
            let (u, v, l) = &e.item;
            let check = format!("edge {u} {v}");
            let (a, b) = match (names.iter().position(|n| n == u), names.iter().position(|n| n == v)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    ok = false;
                    sink(check, Err(format!("{}:{}: edge names an undeclared vertex", e.line, e.col))).ok()?;
                    continue;
                }
            };
            let res = if a == b {
                Err(format!("{}:{}: self-loop at `{u}`", e.line, e.col))
            } else if *l < 2 {
                Err(format!("{}:{}: label {l} is below 2", e.line, e.col))
            } else if graph.adjacent(a, b) {
                Err(format!("{}:{}: edge {u} {v} declared twice", e.line, e.col))
            } else {
                Ok(())
            };
            ok &= res.is_ok();
            sink(check.clone(), res.clone()).ok()?;
            if res.is_err() {
                continue;
            }
            if let (Some(_), Some(_)) = (&groups[a], &groups[b]) {
                let gs: Vec<VertexGroup> = vec![groups[a].clone().unwrap(), groups[b].clone().unwrap()];
                let pair = [names[a].clone(), names[b].clone()];
                let res = check_compatible(&pair, &gs, 0, 1, *l).map_err(|err| format!("{}:{}: {err}", e.line, e.col));
                ok &= res.is_ok();
                sink(format!("compatibility of {u} {v}"), res).ok()?;
            }
            graph.set_label(a, b, *l);
        }
        if !ok {
            return None;
        }
        Some(PeriagroupPresentation { names, groups: groups.into_iter().map(Option::unwrap).collect(), graph })
    }
}

/// Parses and validates `.peria` text.
pub fn parse_presentation(text: &str) -> Result<PeriagroupPresentation> {
    parse_raw(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_parses() {
        let p = parse_presentation(include_str!("../../corpus/ex-periagroup.peria")).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.label(0, 1), Some(5));
        assert!(p.group(3).spec.is_opaque());
    }

    #[test]
    fn compatibility_violation_is_located() {
        let err = parse_presentation("vertex a cyclic 2\nvertex b cyclic 4\nedge a b 3\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, col: 1, msg: "edge {a, b} has label 3 but a vertex group has order at least 3".into() });
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = parse_presentation("vertex a cyclic two\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 17, .. }));
        let err = parse_presentation("vertex a cyclic 2\nvortex b cyclic 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 1, .. }));
    }

    #[test]
    fn missing_inverse_fails_validation_with_named_element() {
        let raw = parse_raw("vertex t table 2 0 1 1 1\n").unwrap();
        let report = raw.validate();
        assert!(!report.ok());
        let failed: Vec<_> = report.entries.iter().filter(|e| !e.passed).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].detail.contains("element 1 has no inverse"), "{:?}", failed[0]);
        assert!(raw.build().is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let p = parse_presentation("# header\n\nvertex a cyclic inf # free\nvertex b cyclic inf\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(!p.graph().adjacent(0, 1));
    }

    #[test]
    fn custom_generators_must_generate() {
        let err = parse_presentation("vertex a cyclic 4\ngen a 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
