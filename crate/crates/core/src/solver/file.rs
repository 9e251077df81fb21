use super::{BoolSystem, Equation};
use crate::boolalg::{parse_expr_at, Symbols};
use crate::error::{Error, Result};

/// A parsed system file together with its name table.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub symbols: Symbols,
    pub system: BoolSystem,
}

/// Parses one equation `lhs = rhs` per line. `#` starts a comment and an
/// optional `vars: a, b, c` line declares variables (and their order) up
/// front, including ones no equation mentions.
pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut symbols = Symbols::new();
    let mut equations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(list) = body.strip_prefix("vars:") {
            if !equations.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "variable declarations must precede equations".into(),
                });
            }
            for name in list.split([',', ' ', '\t']).filter(|s| !s.is_empty()) {
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_') || name.starts_with(|c: char| c.is_ascii_digit()) {
                    return Err(Error::Parse {
                        line,
                        msg: format!("invalid variable name {name:?}"),
                    });
                }
                symbols.intern(name);
            }
            continue;
        }
        let mut sides = body.split('=');
        let (Some(lhs), Some(rhs), None) = (sides.next(), sides.next(), sides.next()) else {
            return Err(Error::Parse {
                line,
                msg: "expected exactly one '='".into(),
            });
        };
        let lhs = parse_expr_at(lhs, &mut symbols, line)?;
        let rhs = parse_expr_at(rhs, &mut symbols, line)?;
        equations.push(Equation::new(lhs, rhs));
    }
    Ok(SystemFile {
        system: BoolSystem::new(equations, symbols.vars()),
        symbols,
    })
}
