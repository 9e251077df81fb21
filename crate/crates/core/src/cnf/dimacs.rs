use std::fmt::Write as _;

use super::{Clause, CnfSet, Lit};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDimacs {
    pub cnf: CnfSet,
    pub warnings: Vec<String>,
}

/// Lenient parse; warnings are discarded.
pub fn parse_dimacs(text: &str) -> Result<CnfSet> {
    parse_dimacs_with(text, false).map(|p| p.cnf)
}

/// Parses DIMACS cnf. Header counts that disagree with the body are
/// warnings, or [`Error::HeaderMismatch`] when `strict`. Repeated literals
/// are merged and tautological clauses dropped with a warning.
pub fn parse_dimacs_with(text: &str, strict: bool) -> Result<ParsedDimacs> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut warnings = Vec::new();
    let mut read = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        if body.starts_with('%') {
            break;
        }
        if body.starts_with('p') {
            if header.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "duplicate problem line".into(),
                });
            }
            let f: Vec<_> = body.split_whitespace().collect();
            let parsed = match f.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            let Some(h) = parsed else {
                return Err(Error::Parse {
                    line,
                    msg: format!("malformed problem line {body:?}"),
                });
            };
            header = Some(h);
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(Error::Parse {
                line,
                msg: "clause before problem line".into(),
            });
        };
        for tok in body.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid literal {tok:?}"),
            })?;
            if x == 0 {
                read += 1;
                finish(&mut clauses, &mut warnings, std::mem::take(&mut current), line);
                continue;
            }
            if current.is_empty() {
                current_line = line;
            }
            if x.unsigned_abs() as usize > nv {
                let msg = format!("line {line}: variable {} exceeds declared count {nv}", x.unsigned_abs());
                if strict {
                    return Err(Error::HeaderMismatch(msg));
                }
                warnings.push(msg);
            }
            if x.unsigned_abs() > u32::MAX as u64 {
                return Err(Error::Parse {
                    line,
                    msg: format!("variable {x} out of range"),
                });
            }
            current.push(Lit::from_dimacs(x));
        }
    }
    let Some((nv, nc)) = header else {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: "missing problem line".into(),
        });
    };
    if !current.is_empty() {
        warnings.push(format!("line {current_line}: final clause lacks terminating 0"));
        read += 1;
        finish(&mut clauses, &mut warnings, current, current_line);
    }
    if read != nc {
        let msg = format!("header declares {nc} clauses, found {read}");
        if strict {
            return Err(Error::HeaderMismatch(msg));
        }
        warnings.push(msg);
    }
    Ok(ParsedDimacs {
        cnf: CnfSet::new(clauses, nv),
        warnings,
    })
}

fn finish(clauses: &mut Vec<Clause>, warnings: &mut Vec<String>, lits: Vec<Lit>, line: usize) {
    match Clause::new(lits) {
        Some(c) => clauses.push(c),
        None => warnings.push(format!("line {line}: tautological clause dropped")),
    }
}

/// Writes `c` in DIMACS cnf, one clause per line in order.
pub fn emit_dimacs(c: &CnfSet) -> String {
    let mut out = format!("p cnf {} {}\n", c.num_vars, c.clauses.len());
    for cl in &c.clauses {
        for l in cl.lits() {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
