//! Scalar conditions `s = 0` in canonical form.
//!
//! A condition is stored as the monic numerator of the reduced fraction.
//! Two conditions are the same when their canonical polynomials agree up
//! to conjugation (`s = 0` and `s̄ = 0` carry the same information).

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::scalars::{GaussianRational, ParamScalar, Poly, PolyMonomial};

pub fn same_condition(a: &Poly, b: &Poly) -> bool {
    a == b || a.conj().monic() == *b
}

/// Canonical, deduplicated conditions; zero scalars are dropped.
pub fn normalize_conditions<'a>(items: impl IntoIterator<Item = &'a ParamScalar>) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for s in items {
        if let Some(p) = s.condition_polynomial() {
            if !out.iter().any(|q| same_condition(q, &p)) {
                out.push(p);
            }
        }
    }
    out
}

/// Nonconstant denominators, which the conditions assume nonzero.
pub fn denominator_hypotheses<'a>(items: impl IntoIterator<Item = &'a ParamScalar>) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for s in items {
        let d = s.denom();
        if d.is_constant() {
            continue;
        }
        let d = d.monic();
        if !out.iter().any(|q| same_condition(q, &d)) {
            out.push(d);
        }
    }
    out
}

/// Coefficients `c` with `target = Σ c_i span_i` over the Gaussian
/// rationals, if they exist.
pub fn constant_combination(target: &Poly, span: &[Poly]) -> Option<Vec<GaussianRational>> {
    let mut index: BTreeMap<PolyMonomial, usize> = BTreeMap::new();
    for p in span.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut m = Matrix::zeros(index.len(), span.len());
    for (c, p) in span.iter().enumerate() {
        for (mono, v) in p.terms() {
            m.set(index[mono], c, v.clone());
        }
    }
    let mut b = vec![GaussianRational::from_int(0); index.len()];
    for (mono, v) in target.terms() {
        b[index[mono]] = v.clone();
    }
    m.solve(&b)
}
