//! A small s-expression reader with byte spans, shared by the theory and
//! term file formats.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom(String, Span),
    List(Vec<SExpr>, Span),
}

impl SExpr {
    pub fn span(&self) -> Span {
        match self {
            SExpr::Atom(_, s) | SExpr::List(_, s) => *s,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a, _) => Some(a),
            SExpr::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            SExpr::Atom(..) => None,
        }
    }

    /// Head atom of a list, e.g. `sort` in `(sort i)`.
    pub fn head(&self) -> Option<&str> {
        self.list()?.first()?.atom()
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(a, _) => write!(f, "{}", a),
            SExpr::List(items, _) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", it)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexprError {
    #[error("unbalanced `)` at byte {0}")]
    UnexpectedClose(usize),
    #[error("unclosed `(` opened at byte {0}")]
    UnclosedParen(usize),
}

/// Reads every top-level s-expression in `input`. `;` comments run to end
/// of line.
pub fn read_all(input: &str) -> Result<Vec<SExpr>, SexprError> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;
    let mut stack: Vec<(usize, Vec<SExpr>)> = Vec::new();
    let mut top: Vec<SExpr> = Vec::new();
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b';' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            b'(' => {
                stack.push((pos, Vec::new()));
                pos += 1;
            }
            b')' => {
                let (start, items) = stack.pop().ok_or(SexprError::UnexpectedClose(pos))?;
                let e = SExpr::List(items, Span::new(start, pos + 1));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(e),
                    None => top.push(e),
                }
                pos += 1;
            }
            c if c.is_ascii_whitespace() => pos += 1,
            _ => {
                let start = pos;
                while pos < bytes.len()
                    && !bytes[pos].is_ascii_whitespace()
                    && !matches!(bytes[pos], b'(' | b')' | b';')
                {
                    pos += 1;
                }
                let a = SExpr::Atom(input[start..pos].to_string(), Span::new(start, pos));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(a),
                    None => top.push(a),
                }
            }
        }
    }
    if let Some((start, _)) = stack.first() {
        return Err(SexprError::UnclosedParen(*start));
    }
    Ok(top)
}
