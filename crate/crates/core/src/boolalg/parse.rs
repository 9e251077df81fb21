use std::collections::HashMap;

use super::{BoolFunc, VarId};
use crate::error::{Error, Result};

/// Name table mapping external variable names to dense [`VarId`]s.
#[derive(Debug, Clone, Default)]
pub struct Symbols {
    names: Vec<String>,
    index: HashMap<String, VarId>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `name`, allocating the next one if unseen.
    pub fn intern(&mut self, name: &str) -> VarId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: VarId) -> String {
        self.names
            .get(v.index())
            .cloned()
            .unwrap_or_else(|| v.to_string())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len() as u32).map(VarId)
    }

    pub fn render(&self, f: &BoolFunc) -> String {
        f.render_with(&|v| self.name(v))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Const(bool),
    And,
    Or,
    Xor,
    Not,
    Prime,
    LParen,
    RParen,
}

fn lex(text: &str, line: usize) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '&' => Tok::And,
            '|' => Tok::Or,
            '^' => Tok::Xor,
            '~' => Tok::Not,
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0' => Tok::Const(false),
            '1' => Tok::Const(true),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Ident(text[i..end].to_string())
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unexpected character {other:?} at column {}", i + 1),
                })
            }
        };
        toks.push(tok);
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    symbols: &'a mut Symbols,
    line: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<BoolFunc> {
        let mut f = self.xor()?;
        while self.eat(&Tok::Or) {
            f = f.or(&self.xor()?);
        }
        Ok(f)
    }

    fn xor(&mut self) -> Result<BoolFunc> {
        let mut f = self.and()?;
        while self.eat(&Tok::Xor) {
            f = f.xor(&self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<BoolFunc> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = f.and(&self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<BoolFunc> {
        if self.eat(&Tok::Not) {
            return Ok(self.unary()?.not());
        }
        let mut f = self.atom()?;
        while self.eat(&Tok::Prime) {
            f = f.not();
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<BoolFunc> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(BoolFunc::var(self.symbols.intern(&name)))
            }
            Some(Tok::Const(b)) => {
                self.pos += 1;
                Ok(BoolFunc::constant(b))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.or()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                Ok(f)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses an expression in the function grammar: identifiers, `0`/`1`,
/// `~x` or `x'` (NOT), `&`, `^`, `|` with that precedence, and parentheses.
pub fn parse_expr(text: &str, symbols: &mut Symbols) -> Result<BoolFunc> {
    parse_expr_at(text, symbols, 1)
}

pub(crate) fn parse_expr_at(text: &str, symbols: &mut Symbols, line: usize) -> Result<BoolFunc> {
    let toks = lex(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        symbols,
        line,
    };
    let f = p.or()?;
    if p.pos != p.toks.len() {
        return p.err(format!("trailing input {:?}", p.toks[p.pos]));
    }
    Ok(f)
}
