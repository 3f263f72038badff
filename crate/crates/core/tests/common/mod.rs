#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilgeom::algebra::ComplexNilAlgebra;
use nilgeom::contraction::VectorForm01;
use nilgeom::exterior::{basis, Form, Monomial};
use nilgeom::io;
use nilgeom::metrics::HermitianMetric;
use nilgeom::scalars::{GaussianRational as G, ParamScalar, Registry};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian rational with small numerators and denominators.
pub fn small(rng: &mut impl Rng) -> G {
    let re = G::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    let im = G::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    &re + &(&im * &G::i())
}

pub fn nonzero(rng: &mut impl Rng) -> G {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Modulus below 1/2, as required for deformation parameters.
pub fn tiny(rng: &mut impl Rng) -> G {
    let re = G::from_ratio(rng.gen_range(-2..=2), rng.gen_range(7..=9));
    let im = G::from_ratio(rng.gen_range(-2..=2), rng.gen_range(7..=9));
    &re + &(&im * &G::i())
}

pub fn tiny_nonzero(rng: &mut impl Rng) -> G {
    loop {
        let c = tiny(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn all_monomials(n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            out.extend(basis(n, p, q));
        }
    }
    out
}

pub fn random_form(rng: &mut impl Rng, n: usize, terms: usize) -> Form<G> {
    let monos = all_monomials(n);
    let mut f = Form::zero(n);
    for _ in 0..terms {
        f.add_term(*monos.choose(rng).unwrap(), small(rng));
    }
    f
}

pub fn random_bidegree_form(rng: &mut impl Rng, n: usize, p: usize, q: usize, terms: usize) -> Form<G> {
    let monos = basis(n, p, q);
    let mut f = Form::zero(n);
    if monos.is_empty() {
        return f;
    }
    for _ in 0..terms {
        f.add_term(*monos.choose(rng).unwrap(), small(rng));
    }
    f
}

/// `η^1..η^k` closed, `dη^j` for `j > k` a random (2,0) + (1,1) form in
/// the closed ones. Step two, so `d² = 0` holds automatically.
pub fn two_step(rng: &mut impl Rng, n: usize, k: usize) -> ComplexNilAlgebra<G> {
    let mut d = vec![Form::zero(n); n];
    for dj in d.iter_mut().skip(k) {
        for a in 1..=k {
            for b in 1..=k {
                if a < b && rng.gen_bool(0.5) {
                    dj.add_term(Monomial::from_indices(&[a, b], &[]), small(rng));
                }
                if rng.gen_bool(0.5) {
                    dj.add_term(Monomial::from_indices(&[a], &[b]), small(rng));
                }
            }
        }
    }
    ComplexNilAlgebra::new(n, d).unwrap()
}

/// First-family shape: only `dη^n` is nonzero, in the indices below `n`.
pub fn first_family(rng: &mut impl Rng, n: usize) -> ComplexNilAlgebra<G> {
    two_step(rng, n, n - 1)
}

pub fn first_family_params(a: &[G; 12]) -> ComplexNilAlgebra<G> {
    let m = Monomial::from_indices;
    let keys = [
        m(&[1, 2], &[]),
        m(&[1, 3], &[]),
        m(&[1], &[1]),
        m(&[1], &[2]),
        m(&[1], &[3]),
        m(&[2, 3], &[]),
        m(&[2], &[1]),
        m(&[2], &[2]),
        m(&[2], &[3]),
        m(&[3], &[1]),
        m(&[3], &[2]),
        m(&[3], &[3]),
    ];
    let mut d4 = Form::zero(4);
    for (k, c) in keys.into_iter().zip(a) {
        d4.add_term(k, c.clone());
    }
    ComplexNilAlgebra::new(4, vec![Form::zero(4), Form::zero(4), Form::zero(4), d4]).unwrap()
}

pub fn diagonal(n: usize, entries: &[G]) -> VectorForm01<G> {
    let mut v = VectorForm01::zero(n);
    for (k, c) in entries.iter().enumerate() {
        v.set(k + 1, k + 1, c.clone());
    }
    v
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> VectorForm01<G> {
    let mut v = VectorForm01::zero(n);
    for k in 1..=n {
        for j in 1..=n {
            if rng.gen_bool(0.5) {
                v.set(k, j, small(rng));
            }
        }
    }
    v
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures")
}

pub const FIXTURES: [&str; 9] = [
    "ex1_general",
    "ex1_case1",
    "ex1_case2",
    "ex1_case2_numeric",
    "ex2_general",
    "ex2_full",
    "ex2_case1",
    "ex2_case2",
    "ex2_case2_numeric",
];

pub struct Fixture {
    pub name: &'static str,
    pub reg: Registry,
    pub algebra: ComplexNilAlgebra<ParamScalar>,
    pub metric: HermitianMetric<ParamScalar>,
}

pub fn fixture(name: &'static str) -> Fixture {
    let dir = fixtures_dir().join(name);
    let read = |f: &str| std::fs::read_to_string(dir.join(f)).unwrap();
    let mut reg = Registry::new();
    let algebra = io::load_algebra(&read("algebra.json"), &mut reg).unwrap();
    let metric = io::load_metric(&read("metric.json"), &mut reg, algebra.n()).unwrap();
    Fixture { name, reg, algebra, metric }
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURES.iter().map(|n| fixture(n)).collect()
}

/// A random first-family algebra and diagonal `φ` solving its three
/// integrability equations (solved for `a7`, `a10`, `a11`).
pub fn integrable_first_family(rng: &mut impl Rng) -> (ComplexNilAlgebra<G>, VectorForm01<G>) {
    let mut a: [G; 12] = std::array::from_fn(|_| small(rng));
    let t: [G; 3] = std::array::from_fn(|_| tiny_nonzero(rng));
    a[6] = &(&(&a[3] * &t[0]) - &(&(&a[0] * &t[0]) * &t[1])) / &t[1];
    a[9] = &(&(&a[4] * &t[0]) - &(&(&a[1] * &t[0]) * &t[2])) / &t[2];
    a[10] = &(&(&a[8] * &t[1]) - &(&(&a[5] * &t[1]) * &t[2])) / &t[2];
    (first_family_params(&a), diagonal(4, &t))
}

/// `dη^3`, `dη^4` in the span of `η^{12}, η^{1|1}, η^{1|2}, η^{2|1}, η^{2|2}`.
pub fn second_family(a: &[G; 5], b: &[G; 5]) -> ComplexNilAlgebra<G> {
    let m = Monomial::from_indices;
    let keys = [m(&[1, 2], &[]), m(&[1], &[1]), m(&[1], &[2]), m(&[2], &[1]), m(&[2], &[2])];
    let mut d3 = Form::zero(4);
    let mut d4 = Form::zero(4);
    for (k, (x, y)) in keys.iter().zip(a.iter().zip(b)) {
        d3.add_term(*k, x.clone());
        d4.add_term(*k, y.clone());
    }
    ComplexNilAlgebra::new(4, vec![Form::zero(4), Form::zero(4), d3, d4]).unwrap()
}

/// Second family with `a4`, `b4` solved from `x1 t1 t2 − x3 t1 + x4 t2 = 0`.
pub fn integrable_second_family(rng: &mut impl Rng) -> (ComplexNilAlgebra<G>, VectorForm01<G>) {
    let mut a: [G; 5] = std::array::from_fn(|_| small(rng));
    let mut b: [G; 5] = std::array::from_fn(|_| small(rng));
    let t: [G; 2] = std::array::from_fn(|_| tiny_nonzero(rng));
    for x in [&mut a, &mut b] {
        x[3] = &(&(&x[2] * &t[0]) - &(&(&x[0] * &t[0]) * &t[1])) / &t[1];
    }
    (second_family(&a, &b), diagonal(4, &[t[0].clone(), t[1].clone()]))
}

/// The fixture's curve derivative, else its vector form, else zero.
pub fn fixture_vector(f: &Fixture) -> VectorForm01<ParamScalar> {
    let dir = fixtures_dir().join(f.name);
    let mut reg = f.reg.clone();
    if let Ok(src) = std::fs::read_to_string(dir.join("curve.json")) {
        return io::load_curve(&src, &mut reg, &f.algebra).unwrap().derivative_at_zero().unwrap();
    }
    if let Ok(src) = std::fs::read_to_string(dir.join("vector.json")) {
        return io::load_vector_form(&src, &mut reg, f.algebra.n()).unwrap();
    }
    VectorForm01::zero(f.algebra.n())
}
