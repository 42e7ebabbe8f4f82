//! Ground fact syntax: `name(term, ...).` with `%` line comments.

use std::fmt;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Term {
    Int(u64),
    Ident(String),
    Str(String),
    Compound(String, Vec<Term>),
}

impl Term {
    pub(crate) fn int(&self) -> Option<u64> {
        match self {
            Term::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Identifier or quoted string.
    pub(crate) fn text(&self) -> Option<&str> {
        match self {
            Term::Ident(s) | Term::Str(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(n) => write!(f, "{n}"),
            Term::Ident(s) => f.write_str(s),
            Term::Str(s) => write_quoted(f, s),
            Term::Compound(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fact {
    pub line: usize,
    pub name: String,
    pub args: Vec<Term>,
}

impl Fact {
    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, message: message.into() }
    }

    pub(crate) fn signature(&self) -> String {
        format!("{}/{}", self.name, self.args.len())
    }
}

/// True for labels that can be written without quotes.
pub(crate) fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn write_quoted(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    f.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

/// Writes `s` unquoted when it is a plain identifier, quoted otherwise.
pub(crate) fn label(s: &str) -> String {
    if is_plain_ident(s) {
        s.to_string()
    } else {
        let mut out = String::new();
        write_quoted(&mut out, s).unwrap();
        out
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                b'%' => {
                    while self.src.get(self.pos).is_some_and(|&c| c != b'\n') {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        let line = self.line;
        let found = self.peek();
        if found != Some(c) {
            self.line = line;
        }
        match found {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) if c == b'.' && x == b':' => Err(self.err("rules are not supported, only ground facts")),
            Some(_) => Err(self.err(format!("expected '{}' near {:?}", c as char, self.snippet()))),
            None => Err(self.err(format!("expected '{}' at end of input", c as char))),
        }
    }

    fn snippet(&self) -> &str {
        let end = self.text[self.pos..].find(['\n', ' ']).map_or(self.text.len(), |i| self.pos + i);
        &self.text[self.pos..end.min(self.pos + 20)]
    }

    fn ident(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected a name near {:?}", self.snippet())));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn string(&mut self) -> Result<String, Error> {
        self.pos += 1;
        let mut out = String::new();
        let mut chars = self.text[self.pos..].char_indices();
        loop {
            let Some((i, c)) = chars.next() else {
                return Err(self.err("unterminated string"));
            };
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                '\\' => match chars.next() {
                    Some((_, 'n')) => out.push('\n'),
                    Some((_, c @ ('"' | '\\'))) => out.push(c),
                    _ => return Err(self.err("invalid escape in string")),
                },
                '\n' => return Err(self.err("newline inside string")),
                c => out.push(c),
            }
        }
    }

    fn term(&mut self) -> Result<Term, Error> {
        match self.peek() {
            Some(b'"') => Ok(Term::Str(self.string()?)),
            Some(c) if c.is_ascii_digit() => {
                let s = self.ident()?;
                s.parse().map(Term::Int).map_err(|_| self.err(format!("invalid integer {s:?}")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident()?;
                if self.peek() == Some(b'(') {
                    Ok(Term::Compound(name, self.args()?))
                } else {
                    Ok(Term::Ident(name))
                }
            }
            Some(_) => Err(self.err(format!("unexpected {:?}", self.snippet()))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, Error> {
        self.expect(b'(')?;
        let mut args = vec![self.term()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(b')')?;
        Ok(args)
    }
}

pub(crate) fn parse_facts(text: &str) -> Result<Vec<Fact>, Error> {
    let mut lx = Lexer { src: text.as_bytes(), text, pos: 0, line: 1 };
    let mut facts = Vec::new();
    while lx.peek().is_some() {
        let line = lx.line;
        let name = lx.ident()?;
        if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(lx.err(format!("invalid predicate name {name:?}")));
        }
        let args = if lx.peek() == Some(b'(') { lx.args()? } else { Vec::new() };
        lx.expect(b'.')?;
        facts.push(Fact { line, name, args });
    }
    Ok(facts)
}
