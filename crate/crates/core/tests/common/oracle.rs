//! A second, deliberately naive exterior calculus on factor lists.
//!
//! Forms are maps from sorted factor lists to coefficients; signs come from
//! bubble-sorting concatenated lists. Nothing here touches the bitmask
//! code of the library except at the conversion boundary.

use std::collections::BTreeMap;

use nilgeom::algebra::ComplexNilAlgebra;
use nilgeom::contraction::VectorForm01;
use nilgeom::exterior::{Form, Monomial};
use nilgeom::scalars::GaussianRational as G;

/// `(index, barred)`; holomorphic factors sort first.
pub type Factor = (usize, bool);

fn key(f: Factor) -> (bool, usize) {
    (f.1, f.0)
}

/// Sorted list and sign, or `None` for a repeated factor.
pub fn sort_factors(mut v: Vec<Factor>) -> Option<(Vec<Factor>, bool)> {
    let mut neg = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if key(v[j]) > key(v[j + 1]) {
                v.swap(j, j + 1);
                neg = !neg;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Naive(pub BTreeMap<Vec<Factor>, G>);

impl Naive {
    pub fn add_term(&mut self, factors: Vec<Factor>, c: G) {
        if c.is_zero() {
            return;
        }
        let Some((sorted, neg)) = sort_factors(factors) else { return };
        let c = if neg { -c } else { c };
        let e = self.0.entry(sorted.clone()).or_insert_with(|| G::from_int(0));
        *e = &*e + &c;
        if e.is_zero() {
            self.0.remove(&sorted);
        }
    }

    pub fn add(&self, o: &Naive) -> Naive {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &G) -> Naive {
        let mut out = Naive::default();
        for (k, v) in &self.0 {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, o: &Naive) -> Naive {
        let mut out = Naive::default();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let mut f = a.clone();
                f.extend(b.iter().copied());
                out.add_term(f, x * y);
            }
        }
        out
    }

    pub fn from_form(f: &Form<G>) -> Naive {
        let mut out = Naive::default();
        for (m, c) in f.terms() {
            out.add_term(m.factors(), c.clone());
        }
        out
    }

    /// Rebuilds a library form one factor at a time.
    pub fn to_form(&self, n: usize) -> Form<G> {
        let mut out = Form::zero(n);
        for (k, c) in &self.0 {
            let mut f = Form::scalar(n, c.clone());
            for &(j, bar) in k {
                f = f.wedge(&Form::monomial(n, Monomial::factor(j, bar), G::from_int(1)));
            }
            out = out.add(&f);
        }
        out
    }

    pub fn project(&self, p: usize, q: usize) -> Naive {
        let mut out = Naive::default();
        for (k, c) in &self.0 {
            let holo = k.iter().filter(|f| !f.1).count();
            if holo == p && k.len() - holo == q {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }
}

/// Structure equations as factor lists: `dη^j` and `dη̄^j`.
pub struct NaiveAlgebra {
    pub n: usize,
    d_holo: Vec<Naive>,
    d_anti: Vec<Naive>,
}

impl NaiveAlgebra {
    pub fn new(g: &ComplexNilAlgebra<G>) -> Self {
        let n = g.n();
        let mut d_holo = Vec::new();
        let mut d_anti = Vec::new();
        for j in 1..=n {
            let f = Naive::from_form(g.d_eta(j));
            // conj(c θ1∧θ2) = conj(c) θ̄1∧θ̄2, factor order kept
            let mut bar = Naive::default();
            for (k, c) in &f.0 {
                bar.add_term(k.iter().map(|&(i, b)| (i, !b)).collect(), c.conj());
            }
            d_holo.push(f);
            d_anti.push(bar);
        }
        NaiveAlgebra { n, d_holo, d_anti }
    }

    fn d_factor(&self, f: Factor) -> &Naive {
        if f.1 {
            &self.d_anti[f.0 - 1]
        } else {
            &self.d_holo[f.0 - 1]
        }
    }

    /// Graded Leibniz on each factor list.
    pub fn d(&self, a: &Naive) -> Naive {
        let mut out = Naive::default();
        for (k, c) in &a.0 {
            for i in 0..k.len() {
                let mut left = Naive::default();
                left.add_term(k[..i].to_vec(), if i % 2 == 0 { c.clone() } else { -c.clone() });
                let mut right = Naive::default();
                right.add_term(k[i + 1..].to_vec(), G::from_int(1));
                out = out.add(&left.wedge(self.d_factor(k[i])).wedge(&right));
            }
        }
        out
    }

    pub fn del(&self, a: &Naive) -> Naive {
        let mut out = Naive::default();
        for (k, c) in &a.0 {
            let mut one = Naive::default();
            one.add_term(k.clone(), c.clone());
            let holo = k.iter().filter(|f| !f.1).count();
            out = out.add(&self.d(&one).project(holo + 1, k.len() - holo));
        }
        out
    }
}

/// Contraction with the vector dual to the factor `f`.
pub fn interior(f: Factor, a: &Naive) -> Naive {
    let mut out = Naive::default();
    for (k, c) in &a.0 {
        if let Some(pos) = k.iter().position(|&x| x == f) {
            let mut rest = k.clone();
            rest.remove(pos);
            out.add_term(rest, if pos % 2 == 0 { c.clone() } else { -c.clone() });
        }
    }
    out
}

/// `Σ φ^k_j η̄^j ∧ (Z_k ⌟ α)`.
pub fn contract(phi: &VectorForm01<G>, a: &Naive) -> Naive {
    let mut out = Naive::default();
    for (k, j, c) in phi.entries() {
        let mut eta = Naive::default();
        eta.add_term(vec![(j, true)], c.clone());
        out = out.add(&eta.wedge(&interior((k, false), a)));
    }
    out
}

/// `(i/2) Σ η^j ∧ η̄^j` raised to the power `k`.
pub fn omega_power(n: usize, k: usize) -> Naive {
    let mut w = Naive::default();
    let half_i = G::from_parts(0, 1, 1, 2);
    for j in 1..=n {
        w.add_term(vec![(j, false), (j, true)], half_i.clone());
    }
    let mut out = Naive::default();
    out.add_term(Vec::new(), G::from_int(1));
    for _ in 0..k {
        out = out.wedge(&w);
    }
    out
}

/// `∂(ι_ψ ∂ ω^{n−2})` in the naive calculus.
pub fn theta(g: &ComplexNilAlgebra<G>, psi: &VectorForm01<G>) -> Form<G> {
    let a = NaiveAlgebra::new(g);
    let w = omega_power(g.n(), g.n() - 2);
    a.del(&contract(psi, &a.del(&w))).to_form(g.n())
}
