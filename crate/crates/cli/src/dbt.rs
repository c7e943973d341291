//! Reader for annotated de Bruijn term files:
//!
//! ```text
//! # optional comments
//! [(i->i)->i]              optional free-index context
//! \[((i->i)->i)->i->i].(2 \[i].(2 3 1))
//! ```
//!
//! Indices are 1-based; application is juxtaposition inside parentheses.

use holsk_core::debruijn::{DbContext, DbTerm};
use holsk_core::stt::{parse_type, SimpleType};

#[derive(Debug)]
pub struct DbtError(pub String);

impl std::fmt::Display for DbtError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct P<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> P<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), DbtError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(DbtError(format!("expected `{}` at byte {}", c as char, self.pos)))
        }
    }

    /// Reads the bracketed type annotation after a `\`; types contain no
    /// brackets, so scan to the matching `]`.
    fn bracketed_type(&mut self) -> Result<SimpleType, DbtError> {
        self.expect(b'[')?;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b']' {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        self.expect(b']')?;
        parse_type(text).map_err(|e| DbtError(e.to_string()))
    }

    fn atom(&mut self) -> Result<DbTerm, DbtError> {
        match self.peek() {
            Some(b'\\') => {
                self.pos += 1;
                let ty = self.bracketed_type()?;
                self.expect(b'.')?;
                Ok(DbTerm::lam(ty, self.term()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: u32 = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|e| DbtError(format!("bad index: {}", e)))?;
                if n == 0 {
                    return Err(DbtError("indices are 1-based".into()));
                }
                Ok(DbTerm::Index(n))
            }
            other => Err(DbtError(format!(
                "unexpected {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn term(&mut self) -> Result<DbTerm, DbtError> {
        let mut t = self.atom()?;
        while matches!(self.peek(), Some(b'\\' | b'(') | Some(b'0'..=b'9')) {
            t = DbTerm::app(t, self.atom()?);
        }
        Ok(t)
    }
}

pub fn parse_dbt(input: &str) -> Result<(DbTerm, DbContext), DbtError> {
    let stripped: String = input
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let mut ctx = Vec::new();
    let mut rest = stripped.trim_start();
    if rest.starts_with('[') {
        let close = rest
            .find(']')
            .ok_or(DbtError("unclosed context bracket".into()))?;
        let inner = &rest[1..close];
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                ctx.push(parse_type(part.trim()).map_err(|e| DbtError(e.to_string()))?);
            }
        }
        rest = &rest[close + 1..];
    }
    let mut p = P { src: rest.as_bytes(), pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(DbtError(format!("trailing input at byte {}", p.pos)));
    }
    Ok((t, DbContext(ctx)))
}
