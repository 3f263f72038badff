//! Multivariate polynomial gcd over Q(i).
//!
//! Recursive content / primitive part with a primitive pseudo-remainder
//! sequence in the chosen main variable. Before any PRS, each variable gets
//! an upper bound on its degree in the gcd from univariate images; a zero
//! bound reduces the problem to the contents in that variable, so coprime
//! inputs never reach the PRS.

use super::poly::{Poly, PolyMonomial, Var};
use super::GaussianRational;

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }

    // pull out the common monomial factor first
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let one = GaussianRational::from_int(1);
    let a = strip_monomial(a, ma, &one);
    let b = strip_monomial(b, mb, &one);
    let g = gcd_no_monomial(&a, &b);
    g.mul_monomial(&mg, &one).monic()
}

fn strip_monomial(p: &Poly, m: PolyMonomial, one: &GaussianRational) -> Poly {
    if m.is_one() {
        return p.clone();
    }
    p.exact_div(&Poly::term(m, one.clone())).expect("monomial content divides")
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // one divides the other: the common case for repeated denominators
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.exact_div(small).is_some() {
        return small.monic();
    }

    let va = a.vars();
    let vb = b.vars();
    // a variable present in only one input cannot occur in the gcd
    if let Some(&v) = va.difference(&vb).next() {
        let c = content(a, v);
        return poly_gcd(&c, b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        let c = content(b, v);
        return poly_gcd(a, &c);
    }

    for &v in &va {
        if degree_bound(a, b, v) == 0 {
            return poly_gcd(&content(a, v), &content(b, v));
        }
    }

    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial has variables");

    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let cg = poly_gcd(&ca, &cb);
    let pa = primitive(&ua, &ca);
    let pb = primitive(&ub, &cb);
    let g = primitive_prs(pa, pb);
    Poly::from_univariate(v, &g).mul(&cg).monic()
}

/// Evaluation value of `w` in attempt `k`: a small Gaussian integer.
fn point(w: Var, k: u32) -> GaussianRational {
    let h = (w.0 as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (k as u64 + 1).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    let re = (h % 19) as i64 - 9;
    let im = ((h >> 32) % 17) as i64 - 8;
    GaussianRational::from_parts(re, 1, im, 1)
}

fn eval_except(p: &Poly, k: u32) -> GaussianRational {
    let mut acc = GaussianRational::from_int(0);
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for &(w, e) in &m.0 {
            let x = point(w, k);
            for _ in 0..e {
                t = &t * &x;
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Upper bound on `deg_v gcd(a, b)`. At a point where both leading
/// coefficients in `v` survive, the image of the gcd divides the gcd of the
/// images and keeps its degree.
fn degree_bound(a: &Poly, b: &Poly, v: Var) -> usize {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    for k in 0..6 {
        let ia: Vec<GaussianRational> = ua.iter().map(|c| eval_except(c, k)).collect();
        let ib: Vec<GaussianRational> = ub.iter().map(|c| eval_except(c, k)).collect();
        if ia.last().is_some_and(|c| c.is_zero()) || ib.last().is_some_and(|c| c.is_zero()) {
            continue;
        }
        return univariate_gcd_degree(ia, ib);
    }
    ua.len().min(ub.len()) - 1
}

fn trim_numeric(u: &mut Vec<GaussianRational>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Degree of the gcd of two nonzero univariate polynomials over Q(i).
fn univariate_gcd_degree(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> usize {
    trim_numeric(&mut a);
    trim_numeric(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().expect("nonempty").inv().expect("trimmed");
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * &lb;
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] = &a[k + shift] - &(&q * bk);
            }
            a.pop();
            trim_numeric(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &Poly, v: Var) -> Poly {
    content_of(&p.to_univariate(v))
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    // smallest coefficients first makes the chain collapse faster
    let mut sorted: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| (c.total_degree(), c.len()));
    for c in sorted {
        g = poly_gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive(coeffs: &[Poly], content: &Poly) -> Vec<Poly> {
    if content.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.exact_div(content).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut u: Vec<Poly>) -> Vec<Poly> {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
    if u.len() == 1 && u[0].is_zero() {
        u.clear();
    }
    u
}

fn degree(u: &[Poly]) -> Option<usize> {
    if u.is_empty() {
        None
    } else {
        Some(u.len() - 1)
    }
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        // r <- lb * r - lr * x^shift * b
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        r = trim(next);
    }
    r
}

fn make_primitive(u: Vec<Poly>) -> Vec<Poly> {
    let c = content_of(&u);
    let mut p = primitive(&u, &c);
    // fix the numeric scale by the leading coefficient's leading term
    if let Some(last) = p.last() {
        let k = last.leading_coeff().inv().expect("nonzero");
        p = p.iter().map(|c| c.scale(&k)).collect();
    }
    p
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut a, mut b) = (trim(a), trim(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return make_primitive(a);
        }
        if b.len() == 1 {
            return vec![Poly::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { make_primitive(r) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u32) -> Poly {
        Poly::var(Var::complex(k))
    }

    #[test]
    fn recovers_planted_factor() {
        let g = v(0).mul(&v(1)).sub(&Poly::one());
        let a = g.mul(&v(0).add(&v(2)));
        let b = g.mul(&v(1).mul(&v(1)).add(&Poly::constant(GaussianRational::i())));
        assert_eq!(poly_gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_inputs() {
        let a = v(0).add(&Poly::one());
        let b = v(0).sub(&Poly::one());
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn conjugate_variables_are_independent() {
        let x = Poly::var(Var::complex(0));
        let xb = Poly::var(Var::complex(0).conj());
        let a = x.mul(&xb).sub(&Poly::one());
        let b = x.sub(&Poly::one());
        assert!(poly_gcd(&a, &b).is_one());
        assert_eq!(poly_gcd(&a.mul(&b), &a.mul(&x)), a.monic());
    }

    #[test]
    fn degree_bound_sees_planted_factor() {
        let g = v(0).mul(&v(1)).sub(&Poly::one());
        let a = g.mul(&v(0).add(&v(2)));
        let b = g.mul(&v(1).mul(&v(1)).add(&Poly::constant(GaussianRational::i())));
        assert_eq!(degree_bound(&a, &b, Var::complex(0)), 1);
        assert_eq!(degree_bound(&a, &b, Var::complex(2)), 0);
        assert_eq!(degree_bound(&v(0).add(&v(1)), &v(0).sub(&v(1)), Var::complex(0)), 0);
    }
}
