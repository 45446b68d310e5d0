use super::Expr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Next token and its starting offset, without consuming it.
    fn peek(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            let len = number_len(rest);
            let text = &rest[..len];
            return text
                .parse::<f64>()
                .map(|v| (Tok::Num(v), start))
                .map_err(|_| Error::Parse { offset: start, expected: vec!["number".into()] });
        }
        if c.is_ascii_alphabetic() {
            let len = rest.find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_').unwrap_or(rest.len());
            return Ok((Tok::Ident(rest[..len].to_string()), start));
        }
        Ok((Tok::Sym(c), start))
    }

    fn advance(&mut self, tok: &Tok) {
        self.pos += match tok {
            Tok::Num(_) => number_len(&self.src[self.pos..]),
            Tok::Ident(s) => s.len(),
            Tok::Sym(c) => c.len_utf8(),
            Tok::End => 0,
        };
    }
}

/// Length of the decimal literal at the start of `s`: digits, an optional
/// fraction and an optional exponent.
fn number_len(s: &str) -> usize {
    let b = s.as_bytes();
    let mut j = 0;
    while j < b.len() && b[j].is_ascii_digit() {
        j += 1;
    }
    if j < b.len() && b[j] == b'.' {
        j += 1;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
    }
    if j < b.len() && (b[j] == b'e' || b[j] == b'E') {
        let mut k = j + 1;
        if k < b.len() && (b[k] == b'+' || b[k] == b'-') {
            k += 1;
        }
        if k < b.len() && b[k].is_ascii_digit() {
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            j = k;
        }
    }
    j
}

const ATOM_START: [&str; 7] = ["number", "i", "xi", "tau", "exp", "(", "-"];

fn err(offset: usize, expected: &[&str]) -> Error {
    Error::Parse { offset, expected: expected.iter().map(|s| s.to_string()).collect() }
}

struct Parser<'a> {
    lex: Lexer<'a>,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let (tok, _) = self.lex.peek()?;
            match tok {
                Tok::Sym('+') => {
                    self.lex.advance(&tok);
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.lex.advance(&tok);
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let (tok, _) = self.lex.peek()?;
            match tok {
                Tok::Sym('*') => {
                    self.lex.advance(&tok);
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.lex.advance(&tok);
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let (tok, _) = self.lex.peek()?;
        if tok == Tok::Sym('-') {
            self.lex.advance(&tok);
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        let (tok, _) = self.lex.peek()?;
        if tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.lex.advance(&tok);
        let (mut tok, mut at) = self.lex.peek()?;
        let negative = tok == Tok::Sym('-');
        if negative {
            self.lex.advance(&tok);
            (tok, at) = self.lex.peek()?;
        }
        match tok {
            Tok::Num(v) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => {
                self.lex.advance(&tok);
                let k = v as i32;
                Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
            }
            _ if negative => Err(err(at, &["integer"])),
            _ => Err(err(at, &["integer", "-"])),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let (tok, at) = self.lex.peek()?;
        if tok == Tok::Sym(c) {
            self.lex.advance(&tok);
            Ok(())
        } else {
            Err(Error::Parse { offset: at, expected: vec![c.to_string()] })
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, at) = self.lex.peek()?;
        match &tok {
            Tok::Num(v) => {
                self.lex.advance(&tok);
                Ok(Expr::Num(*v))
            }
            Tok::Ident(name) => {
                let e = match name.as_str() {
                    "i" => Expr::I,
                    "xi" => Expr::Xi,
                    "tau" => Expr::Tau,
                    "exp" => {
                        self.lex.advance(&tok);
                        self.expect('(')?;
                        let inner = self.expr()?;
                        self.expect(')')?;
                        return Ok(Expr::Exp(Box::new(inner)));
                    }
                    _ => return Err(err(at, &ATOM_START)),
                };
                self.lex.advance(&tok);
                Ok(e)
            }
            Tok::Sym('(') => {
                self.lex.advance(&tok);
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => Err(err(at, &ATOM_START)),
        }
    }
}

/// Parses an expression; errors carry the byte offset and the expected tokens.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { lex: Lexer { src, pos: 0 } };
    let e = p.expr()?;
    let (tok, at) = p.lex.peek()?;
    if tok != Tok::End {
        return Err(err(at, &["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(e)
}
