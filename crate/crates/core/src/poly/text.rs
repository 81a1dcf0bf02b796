//! Canonical text form, a LaTeX-style rendering, the expression parser and
//! the JSON encoding of polynomials.
//!
//! Text form: terms in decreasing monomial order, `*` between factors,
//! explicit `^` exponents, rational coefficients as `num/den`, e.g.
//! `c[0][1]^2*q[1] - 3/2*c[1][1] + 1`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Coeff, Monomial, PolyError, Polynomial, UPoly, VarRegistry};

fn monomial_text(reg: &VarRegistry, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(reg.var(i).name.clone()),
            _ => parts.push(format!("{}^{}", reg.var(i).name, e)),
        }
    }
    parts.join("*")
}

fn monomial_latex(reg: &VarRegistry, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(reg.var(i).latex()),
            _ => parts.push(format!("{{{}}}^{{{}}}", reg.var(i).latex(), e)),
        }
    }
    parts.join(" ")
}

fn coeff_text(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn coeff_latex(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn render(p: &Polynomial, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let reg = p.registry();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = if latex { monomial_latex(reg, m) } else { monomial_text(reg, m) };
        let coeff = if latex { coeff_latex(&abs) } else { coeff_text(&abs) };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&mono);
        } else if latex {
            out.push_str(&format!("{coeff} {mono}"));
        } else {
            out.push_str(&format!("{coeff}*{mono}"));
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl Polynomial {
    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

fn render_upoly(u: &UPoly, latex: bool) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for d in (0..u.coeffs().len()).rev() {
        let c = &u.coeffs()[d];
        if c.is_zero() {
            continue;
        }
        let xpow = match (d, latex) {
            (0, _) => String::new(),
            (1, _) => "x".to_string(),
            (_, true) => format!("x^{{{d}}}"),
            (_, false) => format!("x^{d}"),
        };
        let cs = render(c, latex);
        let part = if xpow.is_empty() {
            if c.len() > 1 {
                format!("({cs})")
            } else {
                cs
            }
        } else if c.constant_value().is_some_and(|v| v.is_one()) {
            xpow
        } else if c.len() > 1 || c.leading_coeff().is_some_and(|v| v.is_negative()) {
            if latex {
                format!("({cs}) {xpow}")
            } else {
                format!("({cs})*{xpow}")
            }
        } else if latex {
            format!("{cs} {xpow}")
        } else {
            format!("{cs}*{xpow}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_upoly(self, false))
    }
}

impl UPoly {
    pub fn to_latex(&self) -> String {
        render_upoly(self, true)
    }
}

/// Syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(s[start..i].parse().expect("digits"))));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            while i < bytes.len() && bytes[i] == b'[' {
                let open = i;
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits || i >= bytes.len() || bytes[i] != b']' {
                    return Err(ParseError::Syntax { pos: open, message: "malformed index, expected [digits]".into() });
                }
                i += 1;
            }
            while i < bytes.len() && bytes[i] == b'\'' {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    reg: &'a Arc<VarRegistry>,
    resolve: &'a dyn Fn(&str) -> Option<Polynomial>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let pos = self.pos();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(ParseError::Syntax { pos, message: "division by zero".into() }),
                    None => {
                        return Err(ParseError::Syntax { pos, message: "can only divide by a nonzero constant".into() })
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos: self.pos(),
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Polynomial::constant(self.reg, Coeff::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                (self.resolve)(&name).ok_or(ParseError::UnknownVariable { pos, name })
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression, resolving identifiers with `resolve`.
pub fn parse_with(
    s: &str,
    reg: &Arc<VarRegistry>,
    resolve: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial, ParseError> {
    let toks = lex(s)?;
    let mut parser = Parser { toks, at: 0, end: s.len(), reg, resolve };
    let p = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

/// Parses an expression whose identifiers are registry variable names.
pub fn parse_polynomial(s: &str, reg: &Arc<VarRegistry>) -> Result<Polynomial, ParseError> {
    parse_with(s, reg, &|name| reg.index_of(name).map(|i| Polynomial::var(reg, i)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u16>,
}

/// JSON encoding `{vars: [...], terms: [{coeff: "num/den", exps: [...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl Polynomial {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            vars: self.registry().vars().iter().map(|v| v.name.clone()).collect(),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| TermJson { coeff: format!("{}/{}", c.numer(), c.denom()), exps: m.exps().to_vec() })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson, reg: &Arc<VarRegistry>) -> Result<Polynomial, PolyError> {
        let names: Vec<&str> = reg.vars().iter().map(|v| v.name.as_str()).collect();
        if json.vars.iter().map(String::as_str).ne(names.iter().copied()) {
            return Err(PolyError::RegistryMismatch);
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.exps.len() != reg.len() {
                return Err(PolyError::Arity { expected: reg.len(), found: t.exps.len() });
            }
            terms.push((Monomial::from_exps(&t.exps), parse_coeff(&t.coeff)?));
        }
        Ok(Polynomial::from_terms(reg, terms))
    }
}

pub fn parse_coeff(s: &str) -> Result<Coeff, PolyError> {
    let bad = || PolyError::Coefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Coeff::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Var, VarKind};

    fn reg() -> Arc<VarRegistry> {
        Arc::new(
            VarRegistry::new(vec![
                Var::new(VarKind::Chern { block: 0, index: 1 }, 1),
                Var::new(VarKind::Chern { block: 1, index: 1 }, 1),
                Var::new(VarKind::Quantum { index: 1 }, 2),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn canonical_text() {
        let r = reg();
        let p = parse_polynomial("q[1] + c[1][1]*c[0][1] - 3/2*c[1][1]^2 - 1", &r).unwrap();
        assert_eq!(p.to_string(), "c[0][1]*c[1][1] - 3/2*c[1][1]^2 + q[1] - 1");
        assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn hand_expansion_of_binomial_product() {
        let r = reg();
        let p = parse_polynomial("(c[0][1] + c[1][1])^2 - (c[0][1] - c[1][1])^2", &r).unwrap();
        assert_eq!(p.to_string(), "4*c[0][1]*c[1][1]");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = reg();
        assert_eq!(
            parse_polynomial("q[2]", &r),
            Err(ParseError::UnknownVariable { pos: 0, name: "q[2]".into() })
        );
        assert!(matches!(parse_polynomial("c[0][1] +", &r), Err(ParseError::Syntax { pos: 9, .. })));
        assert!(matches!(parse_polynomial("c[0][1] / c[1][1]", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("c[0][ 1]", &r), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_polynomial("(1", &r), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn latex_rendering() {
        let r = reg();
        let p = parse_polynomial("c[0][1]^2 - 1/2*q[1]", &r).unwrap();
        assert_eq!(p.to_latex(), "{c^{(0)}_{1}}^{2} - \\frac{1}{2} q_{1}");
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let r = reg();
        let p = parse_polynomial("2/3*c[0][1]^2*q[1] - c[1][1] + 5", &r).unwrap();
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let back = Polynomial::from_json(&serde_json::from_str(&json).unwrap(), &r).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), json);
        assert!(json.contains("\"coeff\":\"2/3\""));
        assert!(json.contains("\"coeff\":\"5/1\""));
    }
}
