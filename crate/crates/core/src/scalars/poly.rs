use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::GaussianRational;

/// A ring variable. Each complex parameter owns two variables (itself and
/// its conjugate) that are tied only by the conjugation involution; a real
/// parameter owns one variable fixed by conjugation.
///
/// The low two bits encode the kind so conjugation needs no registry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn complex(slot: u32) -> Var {
        Var(slot << 2)
    }
    pub fn real(slot: u32) -> Var {
        Var((slot << 2) | 2)
    }
    pub fn slot(self) -> u32 {
        self.0 >> 2
    }
    pub fn is_conjugate(self) -> bool {
        self.0 & 3 == 1
    }
    pub fn is_real(self) -> bool {
        self.0 & 3 == 2
    }
    pub fn conj(self) -> Var {
        match self.0 & 3 {
            0 => Var(self.0 | 1),
            1 => Var(self.0 & !1),
            _ => self,
        }
    }
}

/// Power product, sorted by variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyMonomial(pub SmallVec<[(Var, u32); 4]>);

impl PolyMonomial {
    pub fn one() -> Self {
        PolyMonomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut s = SmallVec::new();
        if e > 0 {
            s.push((v, e));
        }
        PolyMonomial(s)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, o: &PolyMonomial) -> PolyMonomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PolyMonomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &PolyMonomial) -> Option<PolyMonomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(PolyMonomial(out))
    }

    /// Componentwise minimum (the monomial gcd).
    pub fn gcd(&self, o: &PolyMonomial) -> PolyMonomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = o.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        PolyMonomial(out)
    }

    pub fn conj(&self) -> PolyMonomial {
        let mut out: SmallVec<[(Var, u32); 4]> = self.0.iter().map(|&(v, e)| (v.conj(), e)).collect();
        out.sort_by_key(|&(v, _)| v);
        PolyMonomial(out)
    }

    /// Removes `v` entirely, returning its exponent and the remainder.
    pub fn split_off(&self, v: Var) -> (u32, PolyMonomial) {
        let mut out = SmallVec::new();
        let mut e = 0;
        for &(w, f) in &self.0 {
            if w == v {
                e = f;
            } else {
                out.push((w, f));
            }
        }
        (e, PolyMonomial(out))
    }
}

/// Graded lexicographic order; smaller variable index is more significant.
impl Ord for PolyMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &o.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // the monomial containing the more significant
                        // variable is larger
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for PolyMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial over Q(i); terms sorted with the leading
/// term first, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(PolyMonomial, GaussianRational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(GaussianRational::from_int(1))
    }

    pub fn constant(c: GaussianRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(PolyMonomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly { terms: vec![(PolyMonomial::var(v, 1), GaussianRational::from_int(1))] }
    }

    pub fn term(m: PolyMonomial, c: GaussianRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(PolyMonomial, GaussianRational)>) -> Poly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(PolyMonomial, GaussianRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(PolyMonomial, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::from_int(0)),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(PolyMonomial, GaussianRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|t| t.0 .0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    /// Gcd of all term monomials.
    pub fn monomial_content(&self) -> PolyMonomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return PolyMonomial::one() };
        let mut g = first.0.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &GaussianRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &PolyMonomial, k: &GaussianRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        // multiplication by a monomial preserves the term order
        Poly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * k)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                acc.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.leading().expect("nonzero");
        let dc_inv = dc.inv().expect("nonzero leading coefficient");
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(dm)?, c * &dc_inv));
            }
            return Some(Poly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(dm)?;
            let qc = &rc * &dc_inv;
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn conj(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect())
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Coefficients in `v`: entry `k` is the coefficient of `v^k`.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(PolyMonomial, GaussianRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[Poly]) -> Poly {
        let mut acc = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vm = PolyMonomial::var(v, k as u32);
            for (m, x) in &c.terms {
                acc.push((m.mul(&vm), x.clone()));
            }
        }
        Poly::from_terms(acc)
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e > 0 {
                let k = GaussianRational::from_int(e as i64);
                acc.push((rest.mul(&PolyMonomial::var(v, e - 1)), c * &k));
            }
        }
        Poly::from_terms(acc)
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom_lcm()))
    }

    pub fn is_real_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.im.is_zero())
    }

    pub fn max_coeff_is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.re.is_zero() && c.im.is_zero())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        Poly::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::complex(0))
    }
    fn y() -> Poly {
        Poly::var(Var::complex(1))
    }

    #[test]
    fn grlex_leading_term() {
        let p = x().add(&y().mul(&y())).add(&x().mul(&y()));
        // degree two terms dominate; between x*y and y^2, x is more significant
        assert_eq!(p.leading().unwrap().0, x().mul(&y()).leading().unwrap().0);
    }

    #[test]
    fn exact_division_round_trips() {
        let a = x().add(&Poly::one());
        let b = y().sub(&x().mul(&y()));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a));
        assert_eq!(y().exact_div(&x()), None);
    }

    #[test]
    fn conjugation_swaps_variable_kinds() {
        let xv = Var::complex(3);
        assert!(xv.conj().is_conjugate());
        assert_eq!(xv.conj().conj(), xv);
        assert_eq!(Var::real(2).conj(), Var::real(2));
    }

    #[test]
    fn univariate_split_round_trip() {
        let p = x().mul(&x()).mul(&y()).add(&y()).add(&Poly::constant(GaussianRational::i()));
        let v = Var::complex(0);
        let coeffs = p.to_univariate(v);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(Poly::from_univariate(v, &coeffs), p);
    }
}
