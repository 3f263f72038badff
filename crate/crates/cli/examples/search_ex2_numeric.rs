//! Brute-force search for a numeric astheno-Kähler instance of the second
//! family with `b3 ≠ 0`, `b4 ≠ 0` and `|b3| ≠ |b4|`.
//!
//! Real values `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3` are tried for
//! `b1, b3, b4, a2, b2`; `b5` and `a5` are then forced by the two diagonal
//! conditions and kept only when they lie on the same grid. Every survivor
//! is checked against the exact `∂∂̄ω²` of the library, and the first
//! survivor is kept.
//!
//! The system forces `a2 = b2` and `a5 = b5` whenever `b1, b3, b4` are not
//! all zero (eliminate `a5` with the off-diagonal condition; the third
//! one becomes `|a2 − b2|² = 0`), so every solution has `dη^3 = dη^4`. The
//! log confirms this on all survivors.
//!
//! ```text
//! cargo run -p nilgeom-cli --example search_ex2_numeric > crates/cli/fixtures/ex2_case2_numeric/search.log
//! ```

use anyhow::{bail, Result};

use nilgeom::algebra::ComplexNilAlgebra;
use nilgeom::exterior::{Form, Monomial};
use nilgeom::metrics::{check_special_metric, HermitianMetric, SpecialMetric};
use nilgeom::contraction::VectorForm01;
use nilgeom::obstruction::obstruction_form;
use nilgeom::scalars::GaussianRational as G;

fn grid() -> Vec<G> {
    let mut out: Vec<G> = Vec::new();
    for q in 1..=3 {
        for p in 1..=3 {
            for s in [1, -1] {
                let v = G::from_ratio(s * p, q);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn sq(x: &G) -> G {
    x * &x.conj()
}

fn algebra(v: &[G; 7]) -> ComplexNilAlgebra<G> {
    let [a2, a5, b1, b2, b3, b4, b5] = v.clone();
    let m = |h: &[usize], a: &[usize]| Monomial::from_indices(h, a);
    let mut d3 = Form::zero(4);
    let mut d4 = Form::zero(4);
    for (k, c3, c4) in [
        (m(&[1, 2], &[]), &b1, &b1),
        (m(&[1], &[1]), &a2, &b2),
        (m(&[1], &[2]), &b3, &b3),
        (m(&[2], &[1]), &b4, &b4),
        (m(&[2], &[2]), &a5, &b5),
    ] {
        d3.add_term(k, c3.clone());
        d4.add_term(k, c4.clone());
    }
    ComplexNilAlgebra::new(4, vec![Form::zero(4), Form::zero(4), d3, d4]).expect("valid table")
}

fn main() -> Result<()> {
    let r = grid();
    let two = G::from_int(2);
    let metric = HermitianMetric::<G>::standard(4);
    let mut examined = 0usize;
    let mut solutions: Vec<[G; 7]> = Vec::new();
    for b1 in &r {
        for b3 in &r {
            for b4 in &r {
                if sq(b3) == sq(b4) {
                    continue;
                }
                let s = &(&sq(b1) + &sq(b3)) + &sq(b4);
                for a2 in &r {
                    for b2 in &r {
                        examined += 1;
                        let b5 = &s / &(&two * b2);
                        let a5 = &s / &(&two * a2);
                        if !r.contains(&b5) || !r.contains(&a5) {
                            continue;
                        }
                        let v = [a2.clone(), a5, b1.clone(), b2.clone(), b3.clone(), b4.clone(), b5];
                        if check_special_metric(&algebra(&v), &metric, SpecialMetric::Astheno).holds() {
                            solutions.push(v);
                        }
                    }
                }
            }
        }
    }
    println!("grid: {} real values p/q, |p| <= 3, 1 <= q <= 3", r.len());
    println!("candidates (b1, b3, b4, a2, b2) examined: {examined}");
    println!("astheno-Kähler solutions: {}", solutions.len());
    println!("first solutions (a2, a5, b1, b2, b3, b4, b5):");
    for v in solutions.iter().take(5) {
        println!("  {}", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    }
    let forced = solutions.iter().all(|v| v[0] == v[3] && v[1] == v[6]);
    println!("all solutions have a2 = b2 and a5 = b5: {forced}");
    let Some(chosen) = solutions.first() else { bail!("no solution on the grid") };
    let g = algebra(chosen);
    let report = g.validate();
    let names = ["a2", "a5", "b1", "b2", "b3", "b4", "b5"];
    println!("chosen: {}", names.iter().zip(chosen).map(|(n, c)| format!("{n}={c}")).collect::<Vec<_>>().join(" "));
    println!("d^2 = 0: {}", report.d_squared_zero);
    println!("nilpotent: {:?}", report.nilpotent);
    for mode in [SpecialMetric::Astheno, SpecialMetric::Skt, SpecialMetric::Balanced] {
        let res = check_special_metric(&g, &metric, mode);
        println!("{mode:?} residual: {}", res.residual.show_numeric());
    }
    let [_, _, b1, _, b3, b4, _] = chosen.clone();
    let mut psi = VectorForm01::zero(4);
    psi.set(1, 1, &b4 / &b3);
    psi.set(2, 2, G::from_int(1));
    let theta = obstruction_form(&g, &metric, &psi)?;
    println!("theta at u2=1: {}", theta.show_numeric());
    let expected = &(&b1 * &(&sq(&b3) - &sq(&b4))) / &b3;
    println!("b1*(|b3|^2-|b4|^2)/b3 = {expected}");
    Ok(())
}
