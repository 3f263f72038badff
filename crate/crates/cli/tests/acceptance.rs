//! The eleven acceptance criteria, one pass/fail line each.
//!
//! ```text
//! cargo test -p nilgeom-cli --test acceptance -- --nocapture
//! ```

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;

use nilgeom::algebra::ComplexNilAlgebra;
use nilgeom::cohomology::{bc_class_vanishes, bc_space};
use nilgeom::conditions::{normalize_conditions, same_condition};
use nilgeom::deformation::DeformedStructure;
use nilgeom::exterior::{Form, Monomial};
use nilgeom::io;
use nilgeom::metrics::{check_special_metric, HermitianMetric, SpecialMetric};
use nilgeom::obstruction::{obstruction_form, taylor_consistency_check};
use nilgeom::scalars::{parse_scalar, GaussianRational as G, ParamScalar, Poly, Registry};
use nilgeom_cli::{run, Command, SessionConfig};

/// Wall-clock bound for the two symbolic obstruction criteria.
/// Every other comparison is exact equality, zero tolerance.
const OBSTRUCT_BUDGET: Duration = Duration::from_secs(5);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn dir(name: &str) -> PathBuf {
    common::fixtures_dir().join(name)
}

fn config(command: Command, name: &str) -> SessionConfig {
    let d = dir(name);
    let mut c = SessionConfig::new(command, d.join("algebra.json"));
    c.metric = Some(d.join("metric.json"));
    c
}

fn with_curve(mut c: SessionConfig, name: &str) -> SessionConfig {
    c.curve = Some(dir(name).join("curve.json"));
    c
}

fn report(c: &SessionConfig) -> Value {
    run(c).unwrap_or_else(|e| panic!("{:?} failed: {e}", c.command)).value
}

/// Registry with the fixture's algebra and curve parameters declared.
fn registry(name: &str) -> Registry {
    let d = dir(name);
    let mut reg = Registry::new();
    let alg = io::load_algebra(&std::fs::read_to_string(d.join("algebra.json")).unwrap(), &mut reg).unwrap();
    if let Ok(src) = std::fs::read_to_string(d.join("curve.json")) {
        io::load_curve(&src, &mut reg, &alg).unwrap();
    }
    reg
}

fn scalar(reg: &Registry, src: &str) -> ParamScalar {
    parse_scalar(src, reg).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn condition(reg: &Registry, src: &str) -> Poly {
    normalize_conditions([&scalar(reg, src)]).pop().unwrap_or_else(|| panic!("{src} is zero"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

/// Same conditions up to scalars and conjugation, in any order.
fn same_set(got: &[Poly], want: &[Poly]) -> bool {
    got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| same_condition(g, w)))
}

fn parsed_conditions(reg: &Registry, v: &Value) -> Vec<Poly> {
    strings(v).iter().map(|s| condition(reg, s)).collect()
}

/// Compares emitted `Θ` coefficients with expected ones; reports the
/// ratio of each coefficient to the expected value.
fn compare_theta(reg: &Registry, coeffs: &Value, want: &[(&str, String)]) -> (bool, String) {
    let got = coeffs.as_object().unwrap();
    let mut ok = got.len() == want.len();
    let mut ratios = Vec::new();
    for (k, w) in want {
        let w = scalar(reg, w);
        match got.get(*k).and_then(Value::as_str) {
            Some(g) => {
                let g = scalar(reg, g);
                ok &= g == w;
                ratios.push(reg.show(&g.div(&w).unwrap()));
            }
            None => {
                ok = false;
                ratios.push("missing".into());
            }
        }
    }
    ratios.dedup();
    (ok, format!("computed/paper = {}", ratios.join(", ")))
}

fn criterion_1() -> Outcome {
    let name = "ex1_case2";
    let reg = registry(name);
    let start = Instant::now();
    let r = report(&with_curve(config(Command::Obstruct, name), name));
    let elapsed = start.elapsed();
    let paper = "2*(a7*conj(a7) - a4*conj(a4))*(a1*u2/a4)";
    let (theta_ok, ratio) = compare_theta(&reg, &r["theta_coefficients"], &[("e[1,2,3|1,2,3]", paper.into())]);
    let got = parsed_conditions(&reg, &r["corollary"]["two_i_im_theta_conditions"]);
    let cond_ok = same_set(&got, &[condition(&reg, "(a4*conj(a4) - a7*conj(a7))*re(a1*u2/a4)")]);
    let fast = elapsed < OBSTRUCT_BUDGET;
    Outcome::new(
        theta_ok && cond_ok && fast,
        format!("theta {} ({ratio}); condition {}; {:.3} s", verdict(theta_ok), verdict(cond_ok), elapsed.as_secs_f64()),
    )
}

fn criterion_2() -> Outcome {
    let name = "ex2_case2";
    let reg = registry(name);
    let start = Instant::now();
    let r = report(&with_curve(config(Command::Obstruct, name), name));
    let elapsed = start.elapsed();
    let c = "(b3*conj(b3) - b4*conj(b4))*(b1/b4)*u2";
    let neg = format!("-({c})");
    let want = [
        ("e[1,2,3|1,2,3]", c.to_string()),
        ("e[1,2,3|1,2,4]", neg.clone()),
        ("e[1,2,4|1,2,3]", neg),
        ("e[1,2,4|1,2,4]", c.to_string()),
    ];
    let (theta_ok, ratio) = compare_theta(&reg, &r["theta_coefficients"], &want);
    let got = parsed_conditions(&reg, &r["corollary"]["two_i_im_theta_conditions"]);
    let cond_ok = same_set(&got, &[condition(&reg, "(b3*conj(b3) - b4*conj(b4))*re(b1*u2/b4)")]);
    let fast = elapsed < OBSTRUCT_BUDGET;
    Outcome::new(
        theta_ok && cond_ok && fast,
        format!("theta {} ({ratio}); condition {}; {:.3} s", verdict(theta_ok), verdict(cond_ok), elapsed.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["ex1_case1", "ex2_case1"] {
        let r = report(&with_curve(config(Command::Obstruct, name), name));
        let zero = r["theta"] == "0" && r["theta_coefficients"].as_object().unwrap().is_empty();
        ok &= zero;
        parts.push(format!("{name}: theta = {}", r["theta"].as_str().unwrap()));
    }
    Outcome::new(ok, parts.join("; "))
}

fn astheno_conditions(name: &str) -> (Registry, Vec<Poly>) {
    let mut c = config(Command::MetricCheck, name);
    c.mode = Some(SpecialMetric::Astheno);
    let reg = registry(name);
    let r = report(&c);
    let got = parsed_conditions(&reg, &r["conditions"]);
    (reg, got)
}

fn criterion_4() -> Outcome {
    let (reg, got1) = astheno_conditions("ex1_general");
    let sq: Vec<String> = [1, 2, 4, 5, 6, 7, 9, 10, 11].iter().map(|k| format!("a{k}*conj(a{k})")).collect();
    let want1 = condition(&reg, &format!("{} - 2*re(a3*conj(a8) + a3*conj(a12) + a8*conj(a12))", sq.join(" + ")));
    let ok1 = same_set(&got1, &[want1]);

    let (reg, got2) = astheno_conditions("ex2_general");
    let s = "b1*conj(b1) + b3*conj(b3) + b4*conj(b4)";
    // second condition with +|b4|², as in the harmonicity list of the
    // same example; the system display prints −|b4|²
    let want2 = [
        condition(&reg, &format!("2*re(b5*conj(b2)) - ({s})")),
        condition(&reg, &format!("{s} - b5*conj(a2) - b2*conj(a5)")),
        condition(&reg, &format!("2*re(a5*conj(a2)) - ({s})")),
    ];
    let ok2 = same_set(&got2, &want2);
    let literal = condition(&reg, "b1*conj(b1) + b3*conj(b3) - b4*conj(b4) - b5*conj(a2) - b2*conj(a5)");
    let literal_found = got2.iter().any(|g| same_condition(g, &literal));
    Outcome::new(
        ok1 && ok2,
        format!(
            "ex1_general {}; ex2_general {} ({} conditions; the -|b4|^2 display reading {})",
            verdict(ok1),
            verdict(ok2),
            got2.len(),
            if literal_found { "also matches" } else { "does not occur" }
        ),
    )
}

fn integrability(name: &str) -> (Registry, Vec<Poly>) {
    let mut c = config(Command::Integrability, name);
    c.vector = Some(dir(name).join("vector.json"));
    let mut reg = registry(name);
    let alg = io::load_algebra(&std::fs::read_to_string(dir(name).join("algebra.json")).unwrap(), &mut Registry::new()).unwrap();
    io::load_vector_form(&std::fs::read_to_string(dir(name).join("vector.json")).unwrap(), &mut reg, alg.n()).unwrap();
    let r = report(&c);
    let got = parsed_conditions(&reg, &r["conditions"]);
    (reg, got)
}

fn criterion_5() -> Outcome {
    let (reg, got1) = integrability("ex1_general");
    let want1 = ["a1*t1*t2 - a4*t1 + a7*t2", "a2*t1*t3 - a5*t1 + a10*t3", "a6*t2*t3 - a9*t2 + a11*t3"].map(|s| condition(&reg, s));
    let ok1 = same_set(&got1, &want1);
    let (reg, got2) = integrability("ex2_general");
    let ok2 = same_set(&got2, &[condition(&reg, "b1*t1*t2 - b3*t1 + b4*t2")]);
    Outcome::new(ok1 && ok2, format!("ex1_general {} ({}); ex2_general {} ({})", verdict(ok1), got1.len(), verdict(ok2), got2.len()))
}

fn hyperplane(n: usize) -> Monomial {
    let idx: Vec<usize> = (1..n).collect();
    Monomial::from_indices(&idx, &idx)
}

/// Reduced first family `a1, a3, a4, a7, a8`, SKT when
/// `2 Re(a3 ā8) = |a1|² + |a4|² + |a7|²`.
fn reduced_first_family(rng: &mut impl Rng, skt: bool) -> ComplexNilAlgebra<G> {
    let mut a: [G; 12] = std::array::from_fn(|_| G::from_int(0));
    for k in [0, 3, 6] {
        a[k] = common::small(rng);
    }
    a[2] = common::nonzero(rng);
    a[7] = if skt {
        let s = &(&(&a[0] * &a[0].conj()) + &(&a[3] * &a[3].conj())) + &(&a[6] * &a[6].conj());
        &(&s * &a[2]) / &(&G::from_int(2) * &(&a[2] * &a[2].conj()))
    } else {
        common::small(rng)
    };
    common::first_family_params(&a)
}

fn criterion_6() -> Outcome {
    // (1) symbolic n = 4 along the fixture curve, and 50 numeric n = 5
    let r = report(&with_curve(config(Command::Obstruct, "ex1_general"), "ex1_general"));
    let keys: Vec<&String> = r["theta_coefficients"].as_object().unwrap().keys().collect();
    let sym_ok = keys == ["e[1,2,3|1,2,3]"];
    let mut rng = common::rng(2024);
    let mut n5 = 0;
    for _ in 0..50 {
        let g = common::first_family(&mut rng, 5);
        let entries: Vec<G> = (0..5).map(|_| common::small(&mut rng)).collect();
        let psi = common::diagonal(5, &entries);
        let theta = obstruction_form(&g, &HermitianMetric::standard(5), &psi).unwrap();
        if theta.terms().all(|(k, _)| *k == hyperplane(5)) {
            n5 += 1;
        }
    }
    let part1 = sym_ok && n5 == 50;

    // (2) abelian: a1 = a2 = a6 = 0
    let mut c = with_curve(config(Command::Obstruct, "ex1_general"), "ex1_general");
    c.subst = Some("a1=0,a2=0,a6=0".into());
    let part2 = report(&c)["theta"] == "0";

    // (3) class of the hyperplane monomial against the SKT residual
    let mut agree = 0;
    let mut skt_count = 0;
    let total = 30;
    for k in 0..total {
        let g = match k % 5 {
            0..=2 => reduced_first_family(&mut rng, true),
            3 => reduced_first_family(&mut rng, false),
            _ => common::first_family(&mut rng, 4),
        };
        let m = HermitianMetric::<G>::standard(4);
        let skt = check_special_metric(&g, &m, SpecialMetric::Skt).holds();
        skt_count += skt as usize;
        let nonzero = bc_class_vanishes(&g, &Form::monomial(4, hyperplane(4), G::from_int(1))).unwrap().is_nonzero_class();
        agree += (skt == nonzero) as usize;
    }
    let part3 = agree == total;
    Outcome::new(
        part1 && part2 && part3,
        format!(
            "(1) symbolic {} and n=5 {n5}/50; (2) {}; (3) {agree}/{total} agree ({skt_count} SKT)",
            verdict(sym_ok),
            verdict(part2)
        ),
    )
}

fn random_triple(rng: &mut impl Rng) -> (ComplexNilAlgebra<G>, nilgeom::contraction::VectorForm01<G>) {
    match rng.gen_range(0..4) {
        0 => (common::first_family(rng, 4), common::random_vector(rng, 4)),
        1 => (common::two_step(rng, 4, 2), common::random_vector(rng, 4)),
        2 => (common::two_step(rng, 3, 2), common::random_vector(rng, 3)),
        _ => common::integrable_second_family(rng),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let mut fixtures_ok = 0;
    let fixtures = common::all_fixtures();
    for f in &fixtures {
        let n = f.algebra.n();
        let psi = common::fixture_vector(f);
        let w = common::random_bidegree_form(&mut rng, n, n - 2, n - 2, 3).to_param();
        let ok = [Form::zero(n), w].iter().all(|w| taylor_consistency_check(&f.algebra, &f.metric, &psi, w).unwrap().holds);
        fixtures_ok += ok as usize;
    }
    let mut random_ok = 0;
    for _ in 0..100 {
        let (g, psi) = random_triple(&mut rng);
        let n = g.n();
        let w = common::random_bidegree_form(&mut rng, n, n - 2, n - 2, 3);
        random_ok += taylor_consistency_check(&g, &HermitianMetric::standard(n), &psi, &w).unwrap().holds as usize;
    }
    Outcome::new(
        fixtures_ok == fixtures.len() && random_ok == 100,
        format!("fixtures {fixtures_ok}/{}; random {random_ok}/100", fixtures.len()),
    )
}

/// `(−1)^{deg}` applied termwise.
fn grade_sign(a: &Form<ParamScalar>) -> Form<ParamScalar> {
    let one = ParamScalar::one();
    a.linear_map(|m| Form::monomial(a.n(), m, if m.degree() % 2 == 0 { one.clone() } else { one.neg() }))
}

fn laws(g: &ComplexNilAlgebra<ParamScalar>, a: &Form<ParamScalar>, b: &Form<ParamScalar>) -> bool {
    g.del(&g.del(a)).is_zero()
        && g.delbar(&g.delbar(a)).is_zero()
        && g.del(&g.delbar(a)).add(&g.delbar(&g.del(a))).is_zero()
        && g.d(&a.conj()) == g.d(a).conj()
        && g.d(&a.wedge(b)) == g.d(a).wedge(b).add(&grade_sign(a).wedge(&g.d(b)))
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let mut failures = Vec::new();
    let mut checked = 0;
    for f in common::all_fixtures() {
        let n = f.algebra.n();
        for m in common::all_monomials(n) {
            let e = Form::monomial(n, m, ParamScalar::one());
            if !laws(&f.algebra, &e, &e.clone()) {
                failures.push(format!("{} on {m:?}", f.name));
            }
        }
        for _ in 0..500 {
            let a = common::random_form(&mut rng, n, 4).to_param();
            let b = common::random_form(&mut rng, n, 3).to_param();
            checked += 1;
            if !laws(&f.algebra, &a, &b) {
                failures.push(f.name.to_string());
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("{checked} random pairs over 9 fixtures plus all monomials; {} failures", failures.len()))
}

fn criterion_9() -> Outcome {
    let binom = |n: usize, k: usize| (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
    let mut ok = true;
    let mut count = 0;
    for n in [3, 4] {
        let g = ComplexNilAlgebra::<G>::torus(n);
        for p in 0..=n {
            for q in 0..=n {
                ok &= bc_space(&g, p, q).unwrap().dimension == binom(n, p) * binom(n, q);
                count += 1;
            }
        }
    }
    Outcome::new(ok, format!("{count} bidegrees"))
}

fn criterion_10() -> Outcome {
    let mut rng = common::rng(10);
    let mut agree = 0;
    for k in 0..200 {
        let (g, phi) = if k % 2 == 0 { common::integrable_first_family(&mut rng) } else { common::integrable_second_family(&mut rng) };
        let s = DeformedStructure::new(g, phi).unwrap();
        let mut ok = s.is_integrable();
        for _ in 0..2 {
            let p = rng.gen_range(0..=3);
            let q = rng.gen_range(0..=3);
            let a = common::random_bidegree_form(&mut rng, 4, p, q, 3);
            ok &= s.del_t_formula(&a).unwrap() == s.del_t(&a) && s.delbar_t_formula(&a).unwrap() == s.delbar_t(&a);
        }
        agree += ok as usize;
    }
    Outcome::new(agree == 200, format!("{agree}/200 integrable points"))
}

fn criterion_11() -> Outcome {
    let name = "ex1_case2_numeric";
    let run_with = |command, subst: &str| {
        let mut c = with_curve(config(command, name), name);
        c.subst = Some(subst.into());
        report(&c)
    };
    let t1 = run_with(Command::TheoremCheck, "u2=1,u3=0");
    let o1 = run_with(Command::Obstruct, "u2=1,u3=0");
    let t2 = run_with(Command::TheoremCheck, "u2=i,u3=0");
    let unsolvable = t1["verdict"] == "unsolvable";
    let nonzero = o1["corollary"]["two_i_im_theta"]["verdict"] == "nonzero-class";
    let solvable = t2["verdict"] == "solvable" && t2["verified"] == true;
    Outcome::new(
        unsolvable && nonzero && solvable,
        format!(
            "u2=1: theorem {}, Im class {}; u2=i: theorem {} (verified {})",
            t1["verdict"].as_str().unwrap(),
            o1["corollary"]["two_i_im_theta"]["verdict"].as_str().unwrap(),
            t2["verdict"].as_str().unwrap(),
            t2["verified"]
        ),
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "matches"
    } else {
        "differs"
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("Example-1 obstruction formula", criterion_1),
        ("Example-2 obstruction", criterion_2),
        ("case-(i) vanishing", criterion_3),
        ("astheno condition recovery", criterion_4),
        ("integrability systems", criterion_5),
        ("lemma suite", criterion_6),
        ("jet identity", criterion_7),
        ("operator laws", criterion_8),
        ("torus baseline", criterion_9),
        ("oracle equivalence for the deformed operators", criterion_10),
        ("theorem/corollary consistency", criterion_11),
    ];
    let mut failed = Vec::new();
    for (k, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {title}: {} [{:.2} s]", k + 1, o.detail, start.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
