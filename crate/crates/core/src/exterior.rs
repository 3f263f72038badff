//! Bigraded exterior algebra on the invariant coframe `η^1..η^n`,
//! `η̄^1..η̄^n`.
//!
//! A monomial `η^{I|J}` is stored as two bitmasks (bit `j-1` for index
//! `j`) and always means `η^{i_1}∧…∧η^{i_p}∧η̄^{j_1}∧…∧η̄^{j_q}` with both
//! index lists ascending.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::scalars::{eval, parse_expr, ExprValue, GaussianRational, ParamScalar, ParseError, Registry, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub holo: u32,
    pub anti: u32,
}

fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Number of pairs `(a, b)` with `a ∈ x`, `b ∈ y`, `a > b`.
fn inversions(x: u32, y: u32) -> u32 {
    let mut count = 0;
    let mut rest = y;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        count += (x >> b >> 1).count_ones();
    }
    count
}

impl Monomial {
    pub const ONE: Monomial = Monomial { holo: 0, anti: 0 };

    pub fn new(holo: u32, anti: u32) -> Self {
        Monomial { holo, anti }
    }

    /// From ascending index lists (1-based).
    pub fn from_indices(holo: &[usize], anti: &[usize]) -> Self {
        Monomial { holo: mask_of(holo), anti: mask_of(anti) }
    }

    pub fn eta(j: usize) -> Self {
        Monomial { holo: 1 << (j - 1), anti: 0 }
    }

    pub fn eta_bar(j: usize) -> Self {
        Monomial { holo: 0, anti: 1 << (j - 1) }
    }

    pub fn p(self) -> usize {
        self.holo.count_ones() as usize
    }

    pub fn q(self) -> usize {
        self.anti.count_ones() as usize
    }

    pub fn bidegree(self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn degree(self) -> usize {
        self.p() + self.q()
    }

    pub fn holo_indices(self) -> Vec<usize> {
        indices_of(self.holo)
    }

    pub fn anti_indices(self) -> Vec<usize> {
        indices_of(self.anti)
    }

    /// Largest index used, 0 for the unit monomial.
    pub fn max_index(self) -> usize {
        (32 - (self.holo | self.anti).leading_zeros()) as usize
    }

    /// `self ∧ o = sign · (union)`, or `None` on a repeated factor.
    pub fn wedge(self, o: Monomial) -> Option<(Monomial, bool)> {
        if self.holo & o.holo != 0 || self.anti & o.anti != 0 {
            return None;
        }
        let parity = self.q() * o.p() + (inversions(self.holo, o.holo) + inversions(self.anti, o.anti)) as usize;
        Some((Monomial { holo: self.holo | o.holo, anti: self.anti | o.anti }, parity % 2 == 1))
    }

    pub fn complement(self, n: usize) -> Monomial {
        let full = full_mask(n);
        Monomial { holo: full & !self.holo, anti: full & !self.anti }
    }

    /// Canonical factor list: holomorphic factors first, `(index, is_bar)`.
    pub fn factors(self) -> Vec<(usize, bool)> {
        let mut out: Vec<(usize, bool)> = self.holo_indices().into_iter().map(|i| (i, false)).collect();
        out.extend(self.anti_indices().into_iter().map(|j| (j, true)));
        out
    }

    pub fn factor(j: usize, bar: bool) -> Monomial {
        if bar {
            Monomial::eta_bar(j)
        } else {
            Monomial::eta(j)
        }
    }

    /// Lexicographic key on the index lists, used for printed output.
    pub fn print_key(self) -> (Vec<usize>, Vec<usize>) {
        (self.holo_indices(), self.anti_indices())
    }

    pub fn show(self) -> String {
        let h: Vec<String> = self.holo_indices().iter().map(|i| i.to_string()).collect();
        let a: Vec<String> = self.anti_indices().iter().map(|i| i.to_string()).collect();
        format!("e[{}|{}]", h.join(","), a.join(","))
    }
}

pub fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// All monomials of bidegree `(p, q)` in dimension `n`, in mask order.
pub fn basis(n: usize, p: usize, q: usize) -> Vec<Monomial> {
    let holo = subsets(n, p);
    let anti = subsets(n, q);
    let mut out = Vec::with_capacity(holo.len() * anti.len());
    for &h in &holo {
        for &a in &anti {
            out.push(Monomial::new(h, a));
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Sparse invariant form with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<C> {
    n: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Form<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Form { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: C) -> Self {
        Self::monomial(n, Monomial::ONE, c)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, C::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: C) -> Self {
        let mut f = Self::zero(n);
        assert!(m.max_index() <= n, "monomial index exceeds dimension");
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    pub fn eta(n: usize, j: usize) -> Self {
        Self::monomial(n, Monomial::eta(j), C::one())
    }

    pub fn eta_bar(n: usize, j: usize) -> Self {
        Self::monomial(n, Monomial::eta_bar(j), C::one())
    }

    /// Wedge of covectors in the given (not necessarily sorted) order.
    pub fn from_factors(n: usize, factors: &[(usize, bool)]) -> Self {
        let mut f = Self::one(n);
        for &(j, bar) in factors {
            f = f.wedge(&Self::monomial(n, Monomial::factor(j, bar), C::one()));
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), ExteriorError> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(ExteriorError::DimensionMismatch { left: self.n, right: o.n })
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Panics on dimension mismatch; see [`Form::try_add`].
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("forms of equal dimension")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Form { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let v = c.mul(k);
            if !v.is_zero() {
                out.terms.insert(*m, v);
            }
        }
        out
    }

    pub fn try_wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.check(o)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((m, neg)) = ma.wedge(*mb) {
                    let c = ca.mul(cb);
                    out.add_term(m, if neg { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Panics on dimension mismatch; see [`Form::try_wedge`].
    pub fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).expect("forms of equal dimension")
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..k {
            r = r.wedge(self);
        }
        r
    }

    /// `conj(c η^{I|J}) = (-1)^{pq} conj(c) η^{J|I}`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let cm = Monomial::new(m.anti, m.holo);
            let c = c.conj();
            out.terms.insert(cm, if m.p() * m.q() % 2 == 1 { c.neg() } else { c });
        }
        out
    }

    pub fn project(&self, p: usize, q: usize) -> Self {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.bidegree() == (p, q)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn degree_part(&self, k: usize) -> Self {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Bidegrees present, ascending.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|m| m.bidegree()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `Some((p, q))` if homogeneous and nonzero.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        match self.bidegrees().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Form<D>, E> {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Applies a linear map given on monomials.
    pub fn linear_map(&self, f: impl Fn(Monomial) -> Form<C>) -> Form<C> {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let img = f(*m);
            for (mm, cc) in img.terms {
                out.add_term(mm, cc.mul(c));
            }
        }
        out
    }

    /// Monomials sorted lexicographically by index lists.
    pub fn sorted_terms(&self) -> Vec<(Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by_key(|(m, _)| m.print_key());
        v
    }

    /// Text form `c1*e[..|..] + c2*e[..|..]`, with the coefficient printer
    /// supplied by the caller.
    pub fn show_with(&self, show: impl Fn(&C) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let s = show(c);
            let (neg, s) = match s.strip_prefix('-') {
                Some(rest) if is_simple(rest) => (true, rest.to_string()),
                _ => (false, s),
            };
            match (k, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            let _ = if s == "1" {
                write!(out, "{}", m.show())
            } else if is_simple(&s) {
                write!(out, "{s}*{}", m.show())
            } else {
                write!(out, "({s})*{}", m.show())
            };
        }
        out
    }
}

impl Form<ParamScalar> {
    pub fn show(&self, reg: &Registry) -> String {
        self.show_with(|c| reg.show(c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    pub fn to_gaussian(&self) -> Option<Form<GaussianRational>> {
        self.try_map(|c| c.as_constant().ok_or(())).ok()
    }
}

impl Form<GaussianRational> {
    pub fn show_numeric(&self) -> String {
        self.show_with(|c| c.to_string())
    }

    pub fn to_param(&self) -> Form<ParamScalar> {
        self.map(|c| ParamScalar::constant(c.clone()))
    }
}

fn is_simple(s: &str) -> bool {
    !s.contains([' ', '+', '-', '/'])
}

/// Forms without a fixed ambient dimension, for parsing.
#[derive(Clone, Debug, Default)]
struct Loose(BTreeMap<Monomial, ParamScalar>);

impl Loose {
    fn push(&mut self, m: Monomial, c: ParamScalar) {
        let v = match self.0.remove(&m) {
            Some(x) => x.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.0.insert(m, v);
        }
    }

    fn as_scalar(&self) -> Option<ParamScalar> {
        match self.0.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.0.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }
}

impl ExprValue for Loose {
    fn scalar(s: ParamScalar) -> Self {
        let mut l = Loose::default();
        l.push(Monomial::ONE, s);
        l
    }
    fn form_atom(holo: &[usize], anti: &[usize]) -> Result<Self, String> {
        if holo.iter().chain(anti).any(|&i| i > MAX_DIM) {
            return Err(format!("index exceeds maximum dimension {MAX_DIM}"));
        }
        let mut f = Loose::scalar(ParamScalar::one());
        let factors = holo.iter().map(|&i| (i, false)).chain(anti.iter().map(|&j| (j, true)));
        for (j, bar) in factors {
            f = f.mul(&Loose(BTreeMap::from([(Monomial::factor(j, bar), ParamScalar::one())])))?;
        }
        Ok(f)
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.push(*m, c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Result<Self, String> {
        let mut out = Loose::default();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                if let Some((m, neg)) = ma.wedge(*mb) {
                    let c = ca.mul(cb);
                    out.push(m, if neg { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        let s = o.as_scalar().ok_or("division by a form")?;
        let inv = s.inv().ok_or("division by zero")?;
        Ok(Loose(self.0.iter().map(|(m, c)| (*m, c.mul(&inv))).collect()))
    }
    fn neg(&self) -> Self {
        Loose(self.0.iter().map(|(m, c)| (*m, c.neg())).collect())
    }
    fn conj(&self) -> Self {
        let f = Form { n: MAX_DIM, terms: self.0.clone() };
        Loose(f.conj().terms)
    }
}

/// Parses a form expression such as `a1*e[1,2|] + i*e[1|1]`.
pub fn parse_form(src: &str, reg: &Registry, n: usize) -> Result<Form<ParamScalar>, ParseError> {
    let loose: Loose = eval(&parse_expr(src)?, reg)?;
    let mut f = Form::zero(n);
    for (m, c) in loose.0 {
        if m.max_index() > n {
            return Err(ParseError::Invalid {
                column: 1,
                message: format!("form uses index {} but the dimension is {n}", m.max_index()),
            });
        }
        f.add_term(m, c);
    }
    Ok(f)
}
