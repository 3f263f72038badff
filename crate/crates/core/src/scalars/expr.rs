//! Parameter registry, expression parser and printer.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | ident | func '(' expr ')' | '(' expr ')' | 'e[' idx* '|' idx* ']'
//! number := digits ('/' digits)? 'i'? | 'i'
//! func   := conj | re | im
//! ```
//!
//! Numeric literals are lexed greedily, so `1/2i` is the single literal
//! `(1/2)i`. Form atoms are only meaningful where a form is expected.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::{Poly, PolyMonomial, Var};
use super::{GaussianRational, ParamScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {column}: expected {expected}, found {found}")]
    Syntax { column: usize, expected: String, found: String },
    #[error("column {column}: unknown parameter `{name}`")]
    UnknownParameter { column: usize, name: String },
    #[error("column {column}: {message}")]
    Invalid { column: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Complex,
    Real,
}

/// Ordered list of named parameters. Declaration order fixes the monomial
/// order used for normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    names: Vec<(String, VarKind)>,
    index: HashMap<String, u32>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a parameter, or returns the existing one if the kind agrees.
    pub fn declare(&mut self, name: &str, kind: VarKind) -> Result<Var, String> {
        if !is_identifier(name) || RESERVED.contains(&name) {
            return Err(format!("`{name}` is not a valid parameter name"));
        }
        if let Some(&slot) = self.index.get(name) {
            if self.names[slot as usize].1 != kind {
                return Err(format!("parameter `{name}` redeclared with a different kind"));
            }
            return Ok(self.var_of(slot));
        }
        let slot = self.names.len() as u32;
        self.names.push((name.to_string(), kind));
        self.index.insert(name.to_string(), slot);
        Ok(self.var_of(slot))
    }

    fn var_of(&self, slot: u32) -> Var {
        match self.names[slot as usize].1 {
            VarKind::Complex => Var::complex(slot),
            VarKind::Real => Var::real(slot),
        }
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.index.get(name).map(|&s| self.var_of(s))
    }

    pub fn slot(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn name(&self, slot: u32) -> &str {
        &self.names[slot as usize].0
    }

    pub fn kind(&self, slot: u32) -> VarKind {
        self.names[slot as usize].1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, VarKind)> {
        self.names.iter().map(|(n, k)| (n.as_str(), *k))
    }

    /// The parameter as a scalar. Panics on unknown names.
    pub fn param(&self, name: &str) -> ParamScalar {
        ParamScalar::var(self.get(name).unwrap_or_else(|| panic!("unknown parameter {name}")))
    }

    pub fn show_var(&self, v: Var) -> String {
        let name = self.name(v.slot());
        if v.is_conjugate() {
            format!("conj({name})")
        } else {
            name.to_string()
        }
    }

    pub fn show_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let (negative, body) = self.show_term(m, c);
            match (k, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }

    fn show_term(&self, m: &PolyMonomial, c: &GaussianRational) -> (bool, String) {
        let negative = (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
        let c = if negative { -c } else { c.clone() };
        let mono: Vec<String> = m
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    self.show_var(v)
                } else {
                    format!("{}^{e}", self.show_var(v))
                }
            })
            .collect();
        let mono = mono.join("*");
        let coeff = if !c.re.is_zero() && !c.im.is_zero() { format!("({c})") } else { c.to_string() };
        let body = if m.is_one() {
            coeff
        } else if c.is_one() {
            mono
        } else {
            format!("{coeff}*{mono}")
        };
        (negative, body)
    }

    /// Canonical text of a scalar; re-parses to an equal value.
    pub fn show(&self, s: &ParamScalar) -> String {
        let num = self.show_poly(s.numer());
        if s.denom().is_one() {
            return num;
        }
        let num = if s.numer().len() > 1 { format!("({num})") } else { num };
        let den_simple = matches!(s.denom().terms(), [(m, c)] if c.is_one() && m.0.len() == 1);
        let den = self.show_poly(s.denom());
        let den = if den_simple { den } else { format!("({den})") };
        format!("{num}/{den}")
    }
}

const RESERVED: &[&str] = &["i", "conj", "re", "im", "e"];

fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(GaussianRational),
    Ident(String),
    Op(char),
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(g) => format!("number `{g}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k] as char;
        let col = k + 1;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            let num: BigInt = src[start..k].parse().expect("digits");
            let mut val = BigRational::from_integer(num);
            if k + 1 < b.len() && b[k] == b'/' && b[k + 1].is_ascii_digit() {
                let s2 = k + 1;
                k = s2;
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                let den: BigInt = src[s2..k].parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::Invalid { column: s2 + 1, message: "zero denominator in literal".into() });
                }
                val /= BigRational::from_integer(den);
            }
            let imag = k < b.len()
                && b[k] == b'i'
                && !(k + 1 < b.len() && (b[k + 1].is_ascii_alphanumeric() || b[k + 1] == b'_'));
            let g = if imag {
                k += 1;
                GaussianRational::new(BigRational::zero(), val)
            } else {
                GaussianRational::new(val, BigRational::zero())
            };
            out.push((Tok::Num(g), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < b.len() && (b[k].is_ascii_alphanumeric() || b[k] == b'_') {
                k += 1;
            }
            let word = &src[start..k];
            if word == "i" {
                out.push((Tok::Num(GaussianRational::i()), col));
            } else {
                out.push((Tok::Ident(word.to_string()), col));
            }
        } else if "+-*/^()[]|,".contains(c) {
            out.push((Tok::Op(c), col));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                column: col,
                expected: "expression".into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, src.len() + 1));
    Ok(out)
}

/// Parsed expression tree, shared by the scalar and form parsers.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(GaussianRational),
    Param { name: String, column: usize },
    Form { holo: Vec<usize>, anti: Vec<usize>, column: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
    Conj(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }
    fn column(&self) -> usize {
        self.toks[self.pos].1
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn err<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            expected: expected.into(),
            found: describe(self.peek()),
        })
    }
    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("`{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    let col = self.column();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            match self.peek().clone() {
                Tok::Num(g) if g.im.is_zero() && g.re.is_integer() && !g.re.is_negative() => {
                    self.bump();
                    let e: u32 = g.re.numer().try_into().map_err(|_| ParseError::Invalid {
                        column: self.column(),
                        message: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn index_list(&mut self, stop: char) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Op(c) if c == stop => {
                    self.bump();
                    return Ok(out);
                }
                Tok::Num(g) if g.im.is_zero() && g.re.is_integer() && g.re.is_positive() => {
                    let col = self.column();
                    self.bump();
                    let v: usize = g.re.numer().try_into().map_err(|_| ParseError::Invalid {
                        column: col,
                        message: "index too large".into(),
                    })?;
                    out.push(v);
                    if *self.peek() == Tok::Op(',') {
                        self.bump();
                    } else if *self.peek() != Tok::Op(stop) {
                        return self.err(&format!("`,` or `{stop}`"));
                    }
                }
                _ => return self.err("positive index"),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Num(g) => Ok(Expr::Num(g)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "e" && *self.peek() == Tok::Op('[') {
                    self.bump();
                    let holo = self.index_list('|')?;
                    let anti = self.index_list(']')?;
                    return Ok(Expr::Form { holo, anti, column: col });
                }
                let func = match name.as_str() {
                    "conj" => Some(Expr::Conj as fn(Box<Expr>) -> Expr),
                    "re" => Some(Expr::Re as fn(Box<Expr>) -> Expr),
                    "im" => Some(Expr::Im as fn(Box<Expr>) -> Expr),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(f(Box::new(e)));
                }
                Ok(Expr::Param { name, column: col })
            }
            _ => {
                self.pos -= 1;
                self.err("number, parameter or `(`")
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("operator or end of input");
    }
    Ok(e)
}

/// Values an [`Expr`] can be evaluated into.
pub trait ExprValue: Sized {
    fn scalar(s: ParamScalar) -> Self;
    fn form_atom(holo: &[usize], anti: &[usize]) -> Result<Self, String>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Result<Self, String>;
    /// Division by a scalar-valued expression.
    fn div(&self, o: &Self) -> Result<Self, String>;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
}

pub fn eval<V: ExprValue>(e: &Expr, reg: &Registry) -> Result<V, ParseError> {
    Ok(match e {
        Expr::Num(g) => V::scalar(ParamScalar::constant(g.clone())),
        Expr::Param { name, column } => match reg.get(name) {
            Some(v) => V::scalar(ParamScalar::var(v)),
            None => return Err(ParseError::UnknownParameter { column: *column, name: name.clone() }),
        },
        Expr::Form { holo, anti, column } => {
            V::form_atom(holo, anti).map_err(|message| ParseError::Invalid { column: *column, message })?
        }
        Expr::Neg(a) => eval::<V>(a, reg)?.neg(),
        Expr::Add(a, b) => eval::<V>(a, reg)?.add(&eval(b, reg)?),
        Expr::Sub(a, b) => eval::<V>(a, reg)?.sub(&eval(b, reg)?),
        Expr::Mul(a, b) => eval::<V>(a, reg)?
            .mul(&eval(b, reg)?)
            .map_err(|message| ParseError::Invalid { column: 1, message })?,
        Expr::Div(a, b, column) => eval::<V>(a, reg)?
            .div(&eval(b, reg)?)
            .map_err(|message| ParseError::Invalid { column: *column, message })?,
        Expr::Pow(a, k) => {
            let base: V = eval(a, reg)?;
            let mut acc = V::scalar(ParamScalar::one());
            for _ in 0..*k {
                acc = acc.mul(&base).map_err(|message| ParseError::Invalid { column: 1, message })?;
            }
            acc
        }
        Expr::Conj(a) => eval::<V>(a, reg)?.conj(),
        Expr::Re(a) => {
            let x: V = eval(a, reg)?;
            let half = V::scalar(ParamScalar::constant(GaussianRational::from_ratio(1, 2)));
            x.add(&x.conj()).mul(&half).map_err(|message| ParseError::Invalid { column: 1, message })?
        }
        Expr::Im(a) => {
            let x: V = eval(a, reg)?;
            let k = V::scalar(ParamScalar::constant(GaussianRational::from_parts(0, 1, -1, 2)));
            x.sub(&x.conj()).mul(&k).map_err(|message| ParseError::Invalid { column: 1, message })?
        }
    })
}

impl ExprValue for ParamScalar {
    fn scalar(s: ParamScalar) -> Self {
        s
    }
    fn form_atom(_: &[usize], _: &[usize]) -> Result<Self, String> {
        Err("form atom in a scalar expression".into())
    }
    fn add(&self, o: &Self) -> Self {
        ParamScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ParamScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self, String> {
        Ok(ParamScalar::mul(self, o))
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        ParamScalar::div(self, o).map_err(|e| e.to_string())
    }
    fn neg(&self) -> Self {
        ParamScalar::neg(self)
    }
    fn conj(&self) -> Self {
        ParamScalar::conj(self)
    }
}

pub fn parse_scalar(src: &str, reg: &Registry) -> Result<ParamScalar, ParseError> {
    eval(&parse_expr(src)?, reg)
}

/// Writes `name^e` products; used by diagnostic printers elsewhere.
pub fn show_monomial(reg: &Registry, m: &PolyMonomial) -> String {
    let mut s = String::new();
    for (k, &(v, e)) in m.0.iter().enumerate() {
        if k > 0 {
            s.push('*');
        }
        s.push_str(&reg.show_var(v));
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
