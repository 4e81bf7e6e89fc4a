//! Text grammar for polynomials in `x, y, z`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor | factor)*     juxtaposition multiplies
//! factor := atom ['^' integer]
//! atom   := integer | 'x' | 'y' | 'z' | '(' expr ')' | '-' factor
//! ```
//!
//! Division is only allowed by a nonzero constant. The Unicode minus sign is
//! read as `-`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::poly::{HomogeneousPoly, LinearForm, Poly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Num(s.parse().expect("digits"))));
            }
            'x' | 'X' => {
                out.push((pos, Tok::Var(0)));
                i += 1;
            }
            'y' | 'Y' => {
                out.push((pos, Tok::Var(1)));
                i += 1;
            }
            'z' | 'Z' => {
                out.push((pos, Tok::Var(2)));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((pos, Tok::Op(c)));
                i += 1;
            }
            '\u{2212}' => {
                out.push((pos, Tok::Op('-')));
                i += 1;
            }
            _ => return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.pos();
                let d = self.factor()?;
                let c = match (d.total_degree(), d.num_terms()) {
                    (Some(0), 1) => d.coeff(&[0, 0, 0]),
                    (None, _) => return Err(Error::Parse { pos: at, msg: "division by zero".into() }),
                    _ => return Err(Error::Parse { pos: at, msg: "division by a non-constant".into() }),
                };
                acc = acc.scale(&(Scalar::from_integer(1.into()) / c));
            } else if self.starts_atom() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let Some(e) = n.to_u32().filter(|&e| e <= 1000) else {
                        return self.err("exponent too large");
                    };
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Poly::constant(Scalar::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.at += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(-&self.factor()?)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, at: 0, end: src.len() };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses and checks homogeneity. The zero polynomial is rejected.
pub fn parse_homogeneous(src: &str) -> Result<HomogeneousPoly> {
    let p = parse_poly(src)?;
    if p.is_zero() {
        return Err(Error::Parse { pos: 0, msg: "polynomial is zero".into() });
    }
    HomogeneousPoly::new(p)
}

/// Parses a linear form such as `x - 2*y + z`.
pub fn parse_line(src: &str) -> Result<LinearForm> {
    let h = parse_homogeneous(src)?;
    if h.degree() != 1 {
        return Err(Error::Parse { pos: 0, msg: format!("expected a linear form, got degree {}", h.degree()) });
    }
    LinearForm::from_poly(&h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_textbook_style_inputs() {
        let f = parse_homogeneous("x*(x*y\u{2212}z^2)").unwrap();
        assert_eq!(f.to_string(), "x^2*y - x*z^2");
        let g = parse_homogeneous("x(x^4+z^4)(x^8+(xz+y^2)^4)").unwrap();
        assert_eq!(g.degree(), 13);
        let h = parse_homogeneous("1/2*x^2 - 3/4 y z").unwrap();
        assert_eq!(h.to_string(), "1/2*x^2 - 3/4*y*z");
        assert_eq!(parse_homogeneous("-(x+y)^2").unwrap().to_string(), "-x^2 - 2*x*y - y^2");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(parse_poly("x + * y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x + w"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("(x+y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/0"), Err(Error::Parse { .. })));
        match parse_homogeneous("x^2 + y") {
            Err(Error::NotHomogeneous { term, expected, found }) => {
                assert_eq!((term.as_str(), expected, found), ("y", 2, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lines() {
        let l = parse_line("2*x - 4*y").unwrap();
        assert_eq!(l.to_string(), "x - 2*y");
        assert!(parse_line("x*y").is_err());
    }
}
