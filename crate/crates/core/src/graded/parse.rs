//! Polynomial grammar: integers, declared variables, `+ - * ^`, parentheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients over a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out = out.add(&ZPoly::monomial(e, x * y));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut out = ZPoly::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Sum of exponents over the variable range `lo..hi`, per term.
    pub fn partial_degrees(&self, lo: usize, hi: usize) -> Vec<u32> {
        self.terms.keys().map(|e| e[lo..hi].iter().sum()).collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono.join("*")
            } else if *c == -BigInt::one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", c, mono.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, String)>,
    at: usize,
    vars: &'a [String],
    context: &'a str,
}

/// Parses `src` as a polynomial in `vars`.
pub fn parse_poly(src: &str, vars: &[String], context: &str) -> Result<ZPoly> {
    let toks = lex(src, context)?;
    let mut p = Parser { toks, at: 0, vars, context };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        _ => Err(p.err("unexpected token")),
    }
}

fn lex(src: &str, context: &str) -> Result<Vec<(Tok, usize, String)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col, s));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Ident(s.clone()), col, s));
        } else if "+-*^()".contains(c) {
            out.push((Tok::Sym(c), col, c.to_string()));
            i += 1;
        } else {
            return Err(Error::Parse {
                context: context.into(),
                column: col,
                token: c.to_string(),
                message: "unexpected character".into(),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1, "end of input".into()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn err(&self, msg: &str) -> Error {
        let (_, col, text) = &self.toks[self.at];
        Error::Parse { context: self.context.into(), column: *col, token: text.clone(), message: msg.into() }
    }

    fn expr(&mut self) -> Result<ZPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ZPoly> {
        let mut acc = self.unary()?;
        while let Tok::Sym('*') = self.peek() {
            self.at += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ZPoly> {
        match self.peek() {
            Tok::Sym('-') => {
                self.at += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Sym('+') => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ZPoly> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.at += 1;
            match self.peek().clone() {
                Tok::Int(k) => {
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.at += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPoly> {
        let n = self.vars.len();
        match self.peek().clone() {
            Tok::Int(k) => {
                self.at += 1;
                Ok(ZPoly::constant(n, k))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.at += 1;
                    Ok(ZPoly::var(n, i))
                }
                None => Err(self.err("undeclared variable")),
            },
            Tok::Sym('(') => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Tok::Sym(')') => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["u".into(), "x".into(), "y".into()]
    }

    #[test]
    fn precedence() {
        let p = parse_poly("2*u*x^2 - (x+y)^2 + 3", &vars(), "t").unwrap();
        let q = parse_poly("3 + 2*u*x*x - x^2 - 2*x*y - y^2", &vars(), "t").unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_poly("-x^2", &vars(), "t").unwrap(), parse_poly("-(x^2)", &vars(), "t").unwrap());
    }

    #[test]
    fn errors_name_column_and_token() {
        match parse_poly("x + * y", &vars(), "relations[0]").unwrap_err() {
            Error::Parse { column, token, context, .. } => {
                assert_eq!((column, token.as_str(), context.as_str()), (5, "*", "relations[0]"));
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_poly("x + z", &vars(), "t"), Err(Error::Parse { column: 5, .. })));
        assert!(parse_poly("x^y", &vars(), "t").is_err());
        assert!(parse_poly("(x", &vars(), "t").is_err());
        assert!(parse_poly("x $", &vars(), "t").is_err());
    }

    #[test]
    fn render_round_trip() {
        let p = parse_poly("u*x^2 - 3*y + 7", &vars(), "t").unwrap();
        let s = p.render(&vars());
        assert_eq!(parse_poly(&s, &vars(), "t").unwrap(), p);
    }
}
