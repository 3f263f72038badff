mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use nilgeom::algebra::ComplexNilAlgebra;
use nilgeom::cohomology::{bc_class_vanishes, bc_space, is_bc_harmonic, require_numeric, BcVerdict, CohomologyError, Functional};
use nilgeom::exterior::{basis, Form, Monomial};
use nilgeom::linalg::{Matrix, Pivot};
use nilgeom::metrics::HermitianMetric;
use nilgeom::scalars::GaussianRational as G;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn numeric_fixtures() -> Vec<ComplexNilAlgebra<G>> {
    ["ex1_case2_numeric", "ex2_case2_numeric"]
        .into_iter()
        .map(|n| require_numeric(&common::fixture(n).algebra).unwrap())
        .collect()
}

fn random_algebra(rng: &mut impl Rng) -> ComplexNilAlgebra<G> {
    match rng.gen_range(0..3) {
        0 => common::two_step(rng, 3, 2),
        1 => common::two_step(rng, 4, 2),
        _ => common::first_family(rng, 4),
    }
}

/// The functional vanishes on every `∂∂̄` of a monomial and not on `α`.
fn separates(g: &ComplexNilAlgebra<G>, f: &Functional, a: &Form<G>, p: usize, q: usize) -> bool {
    let n = g.n();
    let image_ok = basis(n, p - 1, q - 1).into_iter().all(|m| f.eval(&g.del_delbar(&Form::monomial(n, m, G::from_int(1)))).is_zero());
    image_ok && !f.eval(a).is_zero()
}

/// Invariant Bott-Chern harmonic space: `dα = 0` and `∂∂̄∗α = 0`.
/// `∗` is antilinear, so the second system is conjugated to stay linear.
fn harmonic_dimension(g: &ComplexNilAlgebra<G>, m: &HermitianMetric<G>, p: usize, q: usize) -> usize {
    let n = g.n();
    let cols = basis(n, p, q);
    let mut idx: BTreeMap<(bool, Monomial), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (col, mono) in cols.iter().enumerate() {
        let e = Form::monomial(n, *mono, G::from_int(1));
        let d = g.d(&e).terms().map(|(k, c)| ((false, *k), c.clone())).collect::<Vec<_>>();
        let h = g.del_delbar(&m.hodge_star(&e).unwrap()).terms().map(|(k, c)| ((true, *k), c.conj())).collect::<Vec<_>>();
        for (key, c) in d.into_iter().chain(h) {
            let next = idx.len();
            let r = *idx.entry(key).or_insert(next);
            entries.push((r, col, c));
        }
    }
    let mut mat = Matrix::<G>::zeros(idx.len().max(1), cols.len());
    for (r, c, v) in entries {
        mat.set(r, c, v);
    }
    cols.len() - mat.rank()
}

#[test]
fn torus_dimensions() {
    for n in [3, 4] {
        let g = ComplexNilAlgebra::<G>::torus(n);
        for p in 0..=n {
            for q in 0..=n {
                let h = bc_space(&g, p, q).unwrap();
                assert_eq!(h.dimension, binom(n, p) * binom(n, q), "n={n} ({p},{q})");
                assert_eq!(h.image_rank, 0);
            }
        }
    }
}

#[test]
fn harmonic_dimension_matches_cohomology() {
    let mut rng = common::rng(61);
    let mut algebras = numeric_fixtures();
    algebras.extend((0..6).map(|_| random_algebra(&mut rng)));
    for g in &algebras {
        let m = HermitianMetric::<G>::standard(g.n());
        for p in 0..=g.n() {
            for q in 0..=g.n() {
                let h = bc_space(g, p, q).unwrap();
                assert_eq!(harmonic_dimension(g, &m, p, q), h.dimension, "({p},{q})");
                assert_eq!(h.basis.len(), h.dimension);
            }
        }
    }
}

#[test]
fn harmonic_forms_have_nonzero_classes() {
    let mut rng = common::rng(67);
    let mut algebras = numeric_fixtures();
    algebras.extend((0..6).map(|_| random_algebra(&mut rng)));
    let mut seen = 0;
    for g in &algebras {
        let n = g.n();
        let m = HermitianMetric::<G>::standard(n);
        for p in 1..=n {
            for q in 1..=n {
                let harmonic: Vec<Form<G>> = basis(n, p, q)
                    .into_iter()
                    .map(|k| Form::monomial(n, k, G::from_int(1)))
                    .filter(|f| is_bc_harmonic(g, &m, f).unwrap())
                    .collect();
                for _ in 0..3 {
                    let mut a = Form::zero(n);
                    for h in &harmonic {
                        a = a.add(&h.scale(&common::small(&mut rng)));
                    }
                    if a.is_zero() {
                        continue;
                    }
                    assert!(is_bc_harmonic(g, &m, &a).unwrap());
                    match bc_class_vanishes(g, &a).unwrap() {
                        BcVerdict::NonzeroClass(f) => assert!(separates(g, &f, &a, p, q)),
                        v => panic!("harmonic form classified {}", v.label()),
                    }
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 50);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn exact_witnesses_verify(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = random_algebra(&mut rng);
        let n = g.n();
        let p = rng.gen_range(0..n);
        let q = rng.gen_range(0..n);
        let beta = common::random_bidegree_form(&mut rng, n, p, q, 3);
        let a = g.del_delbar(&beta);
        match bc_class_vanishes(&g, &a).unwrap() {
            BcVerdict::Exact(w) => prop_assert_eq!(g.del_delbar(&w), a),
            v => prop_assert!(false, "exact form classified {}", v.label()),
        }
    }

    #[test]
    fn verdicts_are_consistent(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = random_algebra(&mut rng);
        let n = g.n();
        let p = rng.gen_range(1..=n);
        let q = rng.gen_range(1..=n);
        let a = common::random_bidegree_form(&mut rng, n, p, q, 3);
        match bc_class_vanishes(&g, &a).unwrap() {
            BcVerdict::NotClosed => prop_assert!(!g.d(&a).is_zero()),
            BcVerdict::Exact(w) => prop_assert_eq!(g.del_delbar(&w), a),
            BcVerdict::NonzeroClass(f) => prop_assert!(g.d(&a).is_zero() && separates(&g, &f, &a, p, q)),
        }
    }

    #[test]
    fn pivot_strategies_agree(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut rng = common::rng(seed);
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.4) {
                    m.set(r, c, common::small(&mut rng));
                }
            }
        }
        // force a dependent row now and then
        if rows > 1 && rng.gen_bool(0.5) {
            let k = common::nonzero(&mut rng);
            for c in 0..cols {
                let v = m.get(0, c) * &k;
                m.set(rows - 1, c, v);
            }
        }
        let a = m.rref(Pivot::First).1.len();
        let b = m.rref(Pivot::Sparsest).1.len();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, m.rank_bareiss());
        prop_assert_eq!(a, m.transpose().rank());
    }
}

#[test]
fn errors() {
    let g = ComplexNilAlgebra::<G>::torus(3);
    assert!(matches!(bc_space(&g, 4, 0), Err(CohomologyError::BidegreeOutOfRange { p: 4, q: 0, n: 3 })));
    let mixed = Form::scalar(3, G::from_int(1)).add(&Form::monomial(3, Monomial::from_indices(&[1], &[]), G::from_int(1)));
    assert!(matches!(bc_class_vanishes(&g, &mixed), Err(CohomologyError::Inhomogeneous)));
    let symbolic = common::fixture("ex1_general").algebra;
    assert!(matches!(require_numeric(&symbolic), Err(CohomologyError::SymbolicRankRefused)));
}
