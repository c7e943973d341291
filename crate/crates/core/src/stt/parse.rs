//! Text syntax for simple types and terms.
//!
//! ```text
//! fun x : T -> t        abstraction
//! forall x : T, p       universal quantification
//! exists x : T, p       existential quantification
//! t u                   application (left-associative)
//! /\  \/  =>  ~  =      connectives
//! true  false
//! i  o  T -> U          types
//! ```

use super::{SimpleType, SttContext, SttTerm};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Arrow,    // ->
    FatArrow, // =>
    And,      // /\
    Or,       // \/
    Tilde,
    Equals,
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => {
                toks.push((Tok::LParen, Span { start, end: i + 1 }));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, Span { start, end: i + 1 }));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, Span { start, end: i + 1 }));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, Span { start, end: i + 1 }));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, Span { start, end: i + 1 }));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, Span { start, end: i + 1 }));
                i += 1;
            }
            '~' => {
                toks.push((Tok::Tilde, Span { start, end: i + 1 }));
                i += 1;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::Arrow, Span { start, end: i + 2 }));
                i += 2;
            }
            '=' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::FatArrow, Span { start, end: i + 2 }));
                i += 2;
            }
            '=' => {
                toks.push((Tok::Equals, Span { start, end: i + 1 }));
                i += 1;
            }
            '/' if bytes.get(i + 1) == Some(&b'\\') => {
                toks.push((Tok::And, Span { start, end: i + 2 }));
                i += 2;
            }
            '\\' if bytes.get(i + 1) == Some(&b'/') => {
                toks.push((Tok::Or, Span { start, end: i + 2 }));
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < bytes.len() {
                    let d = bytes[j] as char;
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        j += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(src[i..j].to_string()), Span { start, end: j }));
                i = j;
            }
            other => {
                return Err(ParseError {
                    span: Span { start, end: i + 1 },
                    message: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(Span { start: self.len, end: self.len })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {}", what)))
        }
    }

    fn err(&self, message: String) -> ParseError {
        ParseError { span: self.span(), message }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s != "i" && s != "o" => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {}", what))),
        }
    }

    fn parse_type_atom(&mut self) -> Result<SimpleType, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "i" => {
                self.pos += 1;
                Ok(SimpleType::I)
            }
            Some(Tok::Ident(s)) if s == "o" => {
                self.pos += 1;
                Ok(SimpleType::O)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.parse_type()?;
                self.expect(Tok::RParen, "`)` closing a type")?;
                Ok(t)
            }
            _ => Err(self.err("expected a type".into())),
        }
    }

    // Greedy with backtracking: `i -> x` stops after `i` because `x` is not
    // a type, leaving the arrow for the enclosing `fun`.
    fn parse_type(&mut self) -> Result<SimpleType, ParseError> {
        let dom = self.parse_type_atom()?;
        if self.peek() == Some(&Tok::Arrow) {
            let save = self.pos;
            self.pos += 1;
            match self.parse_type() {
                Ok(cod) => return Ok(SimpleType::arrow(dom, cod)),
                Err(_) => self.pos = save,
            }
        }
        Ok(dom)
    }

    fn parse_term(&mut self) -> Result<SttTerm, ParseError> {
        self.parse_implies()
    }

    fn parse_binder(&mut self) -> Result<SttTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(kw)) if kw == "fun" => {
                self.pos += 1;
                let x = self.ident("a binder name")?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.parse_type()?;
                self.expect(Tok::Arrow, "`->` before the abstraction body")?;
                let body = self.parse_term()?;
                Ok(SttTerm::abs(x, ty, body))
            }
            Some(Tok::Ident(kw)) if kw == "forall" || kw == "exists" => {
                self.pos += 1;
                let x = self.ident("a binder name")?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.parse_type()?;
                self.expect(Tok::Comma, "`,` before the quantifier body")?;
                let body = self.parse_term()?;
                Ok(if kw == "forall" {
                    SttTerm::forall(x, ty, body)
                } else {
                    SttTerm::exists(x, ty, body)
                })
            }
            _ => Err(self.err("expected a term".into())),
        }
    }

    fn at_binder(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "fun" || s == "forall" || s == "exists")
    }

    fn parse_implies(&mut self) -> Result<SttTerm, ParseError> {
        if self.at_binder() {
            return self.parse_binder();
        }
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Tok::FatArrow) {
            self.pos += 1;
            let rhs = self.parse_implies()?;
            Ok(SttTerm::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<SttTerm, ParseError> {
        if self.at_binder() {
            return self.parse_binder();
        }
        let lhs = self.parse_and()?;
        if self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.parse_or()?;
            Ok(SttTerm::Or(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn parse_and(&mut self) -> Result<SttTerm, ParseError> {
        if self.at_binder() {
            return self.parse_binder();
        }
        let lhs = self.parse_unary()?;
        if self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.parse_and()?;
            Ok(SttTerm::And(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn parse_unary(&mut self) -> Result<SttTerm, ParseError> {
        if self.at_binder() {
            return self.parse_binder();
        }
        let lhs = self.parse_neg()?;
        if self.peek() == Some(&Tok::Equals) {
            self.pos += 1;
            let rhs = self.parse_neg()?;
            return Ok(SttTerm::Eq(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn parse_neg(&mut self) -> Result<SttTerm, ParseError> {
        if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            let t = self.parse_neg()?;
            return Ok(SttTerm::Not(Box::new(t)));
        }
        self.parse_app()
    }

    fn parse_app(&mut self) -> Result<SttTerm, ParseError> {
        let mut t = self.parse_atom()?;
        loop {
            let save = self.pos;
            match self.parse_atom() {
                Ok(arg) => t = SttTerm::app(t, arg),
                Err(_) => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(t)
    }

    fn parse_atom(&mut self) -> Result<SttTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(SttTerm::Top)
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(SttTerm::Bot)
            }
            Some(Tok::Ident(s))
                if !matches!(s.as_str(), "i" | "o" | "fun" | "forall" | "exists") =>
            {
                self.pos += 1;
                Ok(SttTerm::var(s))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.parse_term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.err("expected a term".into())),
        }
    }

    fn parse_context(&mut self) -> Result<SttContext, ParseError> {
        let mut ctx = SttContext::new();
        self.expect(Tok::LBracket, "`[`")?;
        if self.peek() == Some(&Tok::RBracket) {
            self.pos += 1;
            return Ok(ctx);
        }
        loop {
            let x = self.ident("a variable name")?;
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.parse_type()?;
            ctx.push(x, ty);
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => return Err(self.err("expected `,` or `]`".into())),
            }
        }
        Ok(ctx)
    }

    fn at_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input".into()))
        }
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser { toks: lex(src)?, pos: 0, len: src.len() })
}

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    let mut p = parser(src)?;
    let t = p.parse_type()?;
    p.at_end()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<SttTerm, ParseError> {
    let mut p = parser(src)?;
    let t = p.parse_term()?;
    p.at_end()?;
    Ok(t)
}

/// Parses an optional `[x : T, ...]` context prefix followed by a term, the
/// payload of an `.stt` file. Lines starting with `#` are comments.
pub fn parse_context(src: &str) -> Result<(SttContext, SttTerm), ParseError> {
    let stripped: String = src
        .lines()
        .map(|l| if l.trim_start().starts_with('#') { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let mut p = parser(&stripped)?;
    let ctx = if p.peek() == Some(&Tok::LBracket) {
        p.parse_context()?
    } else {
        SttContext::new()
    };
    let t = p.parse_term()?;
    p.at_end()?;
    Ok((ctx, t))
}
