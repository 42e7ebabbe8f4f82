//! Text syntax for formulas.
//!
//! ```text
//! iff     := implies ( "<->" iff )?
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := binary ( "&" binary )*
//! binary  := unary ( ("U" | "W" | "R") binary )?
//! unary   := ("!" | "X" | "Xw" | "F" | "G") unary | primary
//! primary := "true" | "false" | IDENT | QUOTED | "(" iff ")"
//! ```
//!
//! Keywords are reserved; quote them (`"X"`) to use them as activity labels.

use crate::activity::Activity;
use crate::error::Error;
use crate::ltlf::Formula;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Quoted(String),
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::FormulaSyntax { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            b'!' | b'~' => {
                out.push((start, Tok::Not));
                i += 1;
            }
            b'&' => {
                i += if bytes.get(i + 1) == Some(&b'&') { 2 } else { 1 };
                out.push((start, Tok::And));
            }
            b'|' => {
                i += if bytes.get(i + 1) == Some(&b'|') { 2 } else { 1 };
                out.push((start, Tok::Or));
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((start, Tok::Implies));
                i += 2;
            }
            b'<' if text[i..].starts_with("<->") => {
                out.push((start, Tok::Iff));
                i += 3;
            }
            b'"' => {
                i += 1;
                let mut label = String::new();
                loop {
                    let Some(ch) = text[i..].chars().next() else {
                        return Err(syntax(start, "unterminated quoted label"));
                    };
                    i += ch.len_utf8();
                    match ch {
                        '"' => break,
                        '\\' => {
                            let Some(esc) = text[i..].chars().next() else {
                                return Err(syntax(start, "unterminated quoted label"));
                            };
                            i += esc.len_utf8();
                            label.push(esc);
                        }
                        _ => label.push(ch),
                    }
                }
                out.push((start, Tok::Quoted(label)));
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_owned())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(start, format!("unknown operator {ch:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn iff(&mut self) -> Result<Formula, Error> {
        let lhs = self.implies()?;
        if self.peek() == Some(&Tok::Iff) {
            self.bump();
            return Ok(Formula::iff(lhs, self.iff()?));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, Error> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, Error> {
        let mut items = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::Or(items) })
    }

    fn and(&mut self) -> Result<Formula, Error> {
        let mut items = vec![self.binary()?];
        while self.peek() == Some(&Tok::And) {
            self.bump();
            items.push(self.binary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::And(items) })
    }

    fn binary(&mut self) -> Result<Formula, Error> {
        let lhs = self.unary()?;
        let ctor: fn(Formula, Formula) -> Formula = if self.peek_keyword("U") {
            Formula::until
        } else if self.peek_keyword("W") {
            Formula::weak_until
        } else if self.peek_keyword("R") {
            Formula::release
        } else {
            return Ok(lhs);
        };
        self.bump();
        Ok(ctor(lhs, self.binary()?))
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        let ctor: fn(Formula) -> Formula = match self.peek() {
            Some(Tok::Not) => Formula::not,
            Some(Tok::Ident(s)) => match s.as_str() {
                "X" => Formula::next,
                "Xw" => Formula::weak_next,
                "F" => Formula::eventually,
                "G" => Formula::globally,
                _ => return self.primary(),
            },
            _ => return self.primary(),
        };
        self.bump();
        Ok(ctor(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, Error> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(self.toks.get(self.pos - 1).map_or(self.end, |t| t.0), "expected ')'")),
                }
            }
            Some(Tok::Ident(s)) => match s.as_str() {
                "true" => Ok(Formula::True),
                "false" => Ok(Formula::False),
                "U" | "W" | "R" | "X" | "Xw" | "F" | "G" => {
                    Err(syntax(offset, format!("unexpected operator {s}")))
                }
                _ => Ok(Formula::Atom(Activity::new(&s).map_err(|e| syntax(offset, e.to_string()))?)),
            },
            Some(Tok::Quoted(s)) => {
                Ok(Formula::Atom(Activity::new(&s).map_err(|e| syntax(offset, e.to_string()))?))
            }
            Some(t) => Err(syntax(offset, format!("unexpected token {t:?}"))),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

/// Parses a formula; errors carry the byte offset of the offending token.
pub fn parse_formula(text: &str) -> Result<Formula, Error> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let f = p.iff()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(f)
}
