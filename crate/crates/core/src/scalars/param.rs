use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::gcd::poly_gcd;
use super::poly::{Poly, Var};
use super::{GaussianRational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("denominator vanishes under the given substitution")]
    DenominatorVanishes,
    #[error("no value supplied for parameter slot {slot}")]
    MissingParameter { slot: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value for real parameter slot {slot} is not real")]
    NonRealValue { slot: u32 },
}

/// Values for parameter slots. A complex slot's conjugate variable receives
/// the conjugate of its value automatically.
pub type Assignment = BTreeMap<u32, ParamScalar>;

/// Rational function over Q(i) in the registered parameters.
///
/// Canonical form: numerator and denominator coprime, denominator monic
/// in graded lex order, zero stored as `0/1`. Structural equality is
/// therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    num: Poly,
    den: Poly,
}

impl Default for ParamScalar {
    fn default() -> Self {
        ParamScalar::zero()
    }
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ParamScalar::constant(GaussianRational::from_int(1))
    }

    pub fn constant(c: GaussianRational) -> Self {
        ParamScalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(k: i64) -> Self {
        ParamScalar::constant(GaussianRational::from_int(k))
    }

    pub fn var(v: Var) -> Self {
        ParamScalar { num: Poly::var(v), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        ParamScalar { num: p, den: Poly::one() }
    }

    /// `num / den`, reduced. Fails if `den` is zero.
    pub fn ratio(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return ParamScalar::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        Self::fix_scale(num, den)
    }

    fn fix_scale(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return ParamScalar { num, den };
        }
        let k = lc.inv().expect("nonzero denominator");
        ParamScalar { num: num.scale(&k), den: den.scale(&k) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return ParamScalar { num, den: self.den.clone() };
            }
            return Self::normalize(num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &o.den);
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        let den = self.den.mul(&d1);
        if g.is_one() {
            // the sum of reduced fractions with coprime denominators is reduced
            return Self::fix_scale(num, den);
        }
        Self::normalize(num, den)
    }

    pub fn neg(&self) -> Self {
        ParamScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ParamScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return ParamScalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = o.den.exact_div(&g1).expect("gcd divides");
        let c = o.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        Self::fix_scale(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::fix_scale(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        let inv = o.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = ParamScalar::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn conj(&self) -> Self {
        Self::fix_scale(self.num.conj(), self.den.conj())
    }

    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale(&GaussianRational::from_ratio(1, 2))
    }

    pub fn im(&self) -> Self {
        // (z - conj z) / (2i) = -(i/2)(z - conj z)
        self.sub(&self.conj()).scale(&GaussianRational::from_parts(0, 1, -1, 2))
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Partial derivative treating `v` as independent of its conjugate.
    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalize(num, self.den.mul(&self.den))
    }

    /// Replaces assigned parameters by their values.
    ///
    /// Errors with [`ScalarError::DenominatorVanishes`] if the denominator
    /// becomes identically zero.
    pub fn substitute(&self, a: &Assignment) -> Result<Self, ScalarError> {
        let touched = self.vars().iter().any(|v| a.contains_key(&v.slot()));
        if !touched {
            return Ok(self.clone());
        }
        for v in self.vars() {
            if v.is_real() {
                if let Some(val) = a.get(&v.slot()) {
                    if !val.is_real() {
                        return Err(ScalarError::NonRealValue { slot: v.slot() });
                    }
                }
            }
        }
        let n = eval_poly(&self.num, a);
        let d = eval_poly(&self.den, a);
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(n.mul(&d.inv().expect("nonzero")))
    }

    /// Substitutes and insists on a constant result.
    pub fn specialize(&self, a: &Assignment) -> Result<GaussianRational, ScalarError> {
        let s = self.substitute(a)?;
        if let Some(v) = s.vars().into_iter().next() {
            return Err(ScalarError::MissingParameter { slot: v.slot() });
        }
        Ok(s.as_constant().expect("no variables left"))
    }

    /// Numerator made monic: the polynomial condition `self = 0` in
    /// canonical form, `None` for the zero scalar.
    pub fn condition_polynomial(&self) -> Option<Poly> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.monic())
        }
    }
}

fn eval_poly(p: &Poly, a: &Assignment) -> ParamScalar {
    let mut acc = ParamScalar::zero();
    let mut powers: BTreeMap<(Var, u32), ParamScalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut term = ParamScalar::constant(c.clone());
        for &(v, e) in &m.0 {
            let factor = powers
                .entry((v, e))
                .or_insert_with(|| {
                    let base = match a.get(&v.slot()) {
                        Some(val) if v.is_conjugate() => val.conj(),
                        Some(val) => val.clone(),
                        None => ParamScalar::var(v),
                    };
                    base.pow(e)
                })
                .clone();
            term = term.mul(&factor);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Raw form with variable ids; use a registry to print with names.
impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl Ring for ParamScalar {
    fn zero() -> Self {
        ParamScalar::zero()
    }
    fn one() -> Self {
        ParamScalar::one()
    }
    fn is_zero(&self) -> bool {
        ParamScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ParamScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ParamScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ParamScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        ParamScalar::neg(self)
    }
    fn conj(&self) -> Self {
        ParamScalar::conj(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        ParamScalar::constant(g.clone())
    }
    fn from_param(p: &ParamScalar) -> Option<Self> {
        Some(p.clone())
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}
