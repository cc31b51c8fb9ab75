//! Human-syntax polynomial parser and the JSON ideal file format.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{MonomialOrder, MultiPoly, Ring};
use super::rat::{parse_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '\u{2212}' => {
                out.push(Token::Op('-'));
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = constant_value(&d)
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.ring, parse_rat(&n)?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = self.ring.index_of(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(self.ring, i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_value(p: &MultiPoly) -> Option<Rat> {
    match p.terms() {
        [] => Some(Rat::zero()),
        [(m, c)] if m.is_one() => Some(c.clone()),
        _ => None,
    }
}

/// Parses e.g. `"x^2*y - 3/2*x + 1"` in the given ring.
pub fn parse_poly(ring: &Arc<Ring>, src: &str) -> Result<MultiPoly> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { ring, tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(out)
}

/// JSON ideal file: `{"vars": [...], "polys": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub polys: Vec<String>,
}

impl IdealFile {
    pub fn parse(&self, order: MonomialOrder) -> Result<Vec<MultiPoly>> {
        let ring = Ring::new(self.vars.iter().cloned(), order)?;
        if self.polys.is_empty() {
            return Err(Error::Invalid("ideal file lists no polynomials".into()));
        }
        self.polys.iter().map(|s| parse_poly(&ring, s)).collect()
    }

    pub fn from_polys(polys: &[MultiPoly]) -> Self {
        let vars = polys.first().map(|p| p.ring().names().to_vec()).unwrap_or_default();
        IdealFile { vars, polys: polys.iter().map(ToString::to_string).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratio};
    use proptest::prelude::*;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn parses_rational_coefficients() {
        let r = xy();
        let p = parse_poly(&r, "x^2*y - 3/2*x + 1").unwrap();
        assert_eq!(p.to_string(), "x^2*y - 3/2*x + 1");
        assert_eq!(p.eval(&[rat(2), rat(1)]), rat(2));
    }

    #[test]
    fn parses_unicode_minus_and_parentheses() {
        let r = xy();
        let p = parse_poly(&r, "(x − y)^2").unwrap();
        assert_eq!(p, parse_poly(&r, "x^2 - 2*x*y + y^2").unwrap());
        assert_eq!(parse_poly(&r, "-x/4").unwrap().eval(&[rat(1), rat(0)]), ratio(-1, 4));
    }

    #[test]
    fn rejects_bad_input() {
        let r = xy();
        assert!(parse_poly(&r, "x + z").is_err());
        assert!(parse_poly(&r, "x / y").is_err());
        assert!(parse_poly(&r, "x ^ y").is_err());
        assert!(parse_poly(&r, "(x").is_err());
        assert!(parse_poly(&r, "").is_err());
    }

    #[test]
    fn ideal_file_json() {
        let f: IdealFile = serde_json::from_str(r#"{"vars":["x","y"],"polys":["x^2","y^3"]}"#).unwrap();
        let polys = f.parse(MonomialOrder::Grevlex).unwrap();
        assert_eq!(polys.len(), 2);
        assert_eq!(IdealFile::from_polys(&polys), f);
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(coeffs in prop::collection::vec((-5i64..=5, 1i64..=4), 1..6)) {
            let r = xy();
            let x = MultiPoly::var(&r, 0);
            let y = MultiPoly::var(&r, 1);
            let mut p = MultiPoly::zero(&r);
            for (k, (n, d)) in coeffs.iter().enumerate() {
                let m = x.pow(k as u32 % 3).mul(&y.pow(k as u32 / 3));
                p = p.add(&m.scale(&ratio(*n, *d)));
            }
            let back = parse_poly(&r, &p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
